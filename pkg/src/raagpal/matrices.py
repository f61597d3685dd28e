"""Integer matrix images of automorphisms and the level-2 machinery.

Columns are exponent vectors of vertex images, taken in the
domination-derived vertex order, so composition maps to left
multiplication.  All arithmetic is exact (python ints).
"""

from dataclasses import dataclass

from .errors import NotInTheta
from . import words as W


# -- plain matrix helpers -------------------------------------------------


def identity_rows(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a, b):
    n = len(a)
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_mod2(a):
    return tuple(tuple(x % 2 for x in row) for row in a)


def identity_mod2(n):
    return identity_rows(n)


def determinant(rows):
    """Fraction-free Bareiss elimination; exact for integer input."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1] if n else 1


@dataclass(frozen=True)
class IntegerMatrix:
    order: tuple      # vertex names indexing rows/columns
    rows: tuple

    @property
    def n(self):
        return len(self.rows)

    def __mul__(self, other):
        return IntegerMatrix(self.order, mat_mul(self.rows, other.rows))

    def is_identity(self):
        return self.rows == identity_rows(self.n)

    def det(self):
        return determinant(self.rows)

    def to_json_obj(self):
        return {"order": list(self.order), "rows": [list(r) for r in self.rows]}


# -- abelianisation -------------------------------------------------------


def phi(a):
    """Integer matrix of the induced map on the abelianisation."""
    g = a.graph
    dd = g.domination()
    order = dd.vertex_order
    cols = []
    for c in order:
        exps = W.exponent_vector(a.images[c])
        cols.append([exps[r] for r in order])
    rows = tuple(tuple(cols[j][i] for j in range(g.n)) for i in range(g.n))
    return IntegerMatrix(order=tuple(g.vertices[i] for i in order), rows=rows)


def phi2(a):
    return mat_mod2(phi(a).rows)


# -- level-2 elementary matrices and symbols ------------------------------


def even_transvection(n, i, j):
    """Identity plus 2 in position (i, j); 0-based indices."""
    if i == j or not (0 <= i < n and 0 <= j < n):
        raise IndexError("bad even transvection indices (%d, %d)" % (i, j))
    rows = [list(r) for r in identity_rows(n)]
    rows[i][j] = 2
    return tuple(tuple(r) for r in rows)


def sign_flip(n, i):
    """Identity with -1 in position (i, i); 0-based index."""
    if not 0 <= i < n:
        raise IndexError("bad sign flip index %d" % i)
    rows = [list(r) for r in identity_rows(n)]
    rows[i][i] = -1
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class MatSym:
    """One letter of a word in the level-2 generators.

    kind "flip" is the diagonal sign change at i; kind "shear" adds twice
    row j into row i (entry 2 at (i, j)), raised to `power`.
    """

    kind: str
    i: int
    j: int = None
    power: int = 1

    def matrix(self, n):
        if self.kind == "flip":
            return sign_flip(n, self.i) if self.power % 2 else identity_rows(n)
        rows = [list(r) for r in identity_rows(n)]
        rows[self.i][self.j] = 2 * self.power
        return tuple(tuple(r) for r in rows)

    def inverse(self):
        if self.kind == "flip":
            return self
        return MatSym("shear", self.i, self.j, -self.power)

    def format(self, order=None):
        def nm(k):
            return order[k] if order else str(k + 1)
        body = nm(self.i) if self.kind == "flip" else "%s,%s" % (nm(self.i), nm(self.j))
        head = "Z" if self.kind == "flip" else "S"
        s = "%s(%s)" % (head, body)
        if self.kind == "shear" and self.power != 1:
            s += "^%d" % self.power
        return s


def eval_word(n, syms):
    acc = identity_rows(n)
    for s in syms:
        acc = mat_mul(acc, s.matrix(n))
    return acc


# -- relator suite --------------------------------------------------------


def _Z(i):
    return MatSym("flip", i)


def _S(i, j, p=1):
    return MatSym("shear", i, j, p)


def relator_instances(n):
    """Every instance of the ten defining relator families over pairwise
    distinct index tuples; yields (name, indices, symbol word)."""
    from itertools import permutations

    for i in range(n):
        yield ("r1", (i,), (_Z(i), _Z(i)))
    for i, j in permutations(range(n), 2):
        yield ("r2", (i, j), (_Z(i), _Z(j), _Z(i), _Z(j)))
        yield ("r3", (i, j), (_Z(i), _S(i, j), _Z(i), _S(i, j)))
        yield ("r4", (i, j), (_Z(j), _S(i, j), _Z(j), _S(i, j)))
    for i, j, k in permutations(range(n), 3):
        yield ("r5", (i, j, k), (_Z(i), _S(j, k), _Z(i), _S(j, k, -1)))
        yield ("r6", (i, j, k), (_S(k, i), _S(k, j), _S(k, i, -1), _S(k, j, -1)))
        yield ("r8", (i, j, k), (_S(j, i), _S(k, i), _S(j, i, -1), _S(k, i, -1)))
        yield ("r9", (i, j, k), (_S(k, j), _S(j, i), _S(k, j, -1), _S(j, i, -1), _S(k, i, -2)))
        half = (_S(i, j), _S(i, k, -1), _S(k, i), _S(j, i), _S(j, k), _S(k, j, -1))
        yield ("r10", (i, j, k), half + half)
    for i, j, k, l in permutations(range(n), 4):
        yield ("r7", (i, j, k, l), (_S(i, j), _S(k, l), _S(i, j, -1), _S(k, l, -1)))


def _shear_allowed(dd, i, j):
    """A shear at (i, j) images an elementary palindromic move of the column
    vertex, so the column vertex must be dominated by the row vertex."""
    u = dd.vertex_order[j]
    v = dd.vertex_order[i]
    return dd.dominates[u][v]


def relator_suite(n, g=None):
    """All relator instances, optionally filtered to those whose shears are
    valid for the graph's domination relation."""
    out = []
    dd = g.domination() if g is not None else None
    for name, idx, syms in relator_instances(n):
        if dd is not None:
            if len(dd.vertex_order) != n:
                raise ValueError("graph size does not match n")
            if not all(_shear_allowed(dd, s.i, s.j) for s in syms if s.kind == "shear"):
                continue
        out.append((name, idx, syms))
    return out


# -- block decomposition --------------------------------------------------


@dataclass(frozen=True)
class BlockDecomposition:
    class_sizes: tuple
    diagonal_blocks: tuple
    below_diagonal: dict
    allowed: dict
    violations: tuple


def _class_layout(dd):
    """Start offset of each class in the vertex order."""
    sizes = [len(c) for c in dd.classes]
    starts = []
    acc = 0
    for s in sizes:
        starts.append(acc)
        acc += s
    return sizes, starts


def block_decompose(m, dd):
    rows = m.rows if isinstance(m, IntegerMatrix) else m
    sizes, starts = _class_layout(dd)
    k = len(sizes)
    diag = []
    below = {}
    allowed = {}
    violations = []
    for bi in range(k):
        r0, rn = starts[bi], sizes[bi]
        diag.append(tuple(tuple(rows[r0 + r][starts[bi] + c] for c in range(rn)) for r in range(rn)))
        for bj in range(k):
            if bj == bi:
                continue
            c0, cn = starts[bj], sizes[bj]
            block = tuple(tuple(rows[r0 + r][c0 + c] for c in range(cn)) for r in range(rn))
            nonzero = any(any(row) for row in block)
            if bj > bi:
                if nonzero:
                    violations.append(("above-diagonal", bi, bj))
                continue
            rep_i = next(iter(dd.classes[bi]))
            rep_j = next(iter(dd.classes[bj]))
            ok = dd.dominates[rep_j][rep_i]
            allowed[(bi, bj)] = ok
            below[(bi, bj)] = block
            if nonzero and not ok:
                violations.append(("disallowed-block", bi, bj))
    return BlockDecomposition(
        class_sizes=tuple(sizes),
        diagonal_blocks=tuple(diag),
        below_diagonal=below,
        allowed=allowed,
        violations=tuple(violations),
    )


def free_block_check(m, dd):
    """Each free diagonal block must have exactly one odd entry per row and
    per column (a permutation pattern mod 2)."""
    bd = block_decompose(m, dd)
    for kind, block in zip(dd.class_kind, bd.diagonal_blocks):
        if kind != "free":
            continue
        for row in block:
            if sum(1 for x in row if x % 2) != 1:
                return False
        for col in zip(*block):
            if sum(1 for x in col if x % 2) != 1:
                return False
    return True


# -- constructive membership in the pure image ----------------------------


def _nearest_quotient(a, b):
    """Integer q minimising |a - q*b| (b != 0); ties keep the floor quotient."""
    q, r = divmod(a, b)
    # floor division leaves r with the sign of b; the competing remainder is
    # r - b, reached at quotient q + 1
    if 2 * abs(r) > abs(b):
        q += 1
    return q


def factor_theta(m, dd):
    """Express a matrix as an ordered product of flips and allowed shears.

    Left row operations reduce the matrix to the identity; the inverses of
    those operations, reversed, form the witness word.  Raises NotInTheta
    when the matrix fails a structural check or the reduction stalls.
    """
    rows = m.rows if isinstance(m, IntegerMatrix) else m
    n = len(rows)
    if mat_mod2(rows) != identity_mod2(n):
        raise NotInTheta("matrix is not congruent to the identity mod 2")
    bd = block_decompose(rows, dd)
    if bd.violations:
        raise NotInTheta("matrix violates the block structure: %r" % (bd.violations,))
    sizes, starts = _class_layout(dd)
    klass = []
    for bi, s in enumerate(sizes):
        klass.extend([bi] * s)
    a = [list(r) for r in rows]
    ops = []

    def row_add(r, src, coeff):
        # left-multiply by shear(r, src)^coeff
        if coeff == 0:
            return
        a[r] = [x + 2 * coeff * y for x, y in zip(a[r], a[src])]
        ops.append(_S(r, src, coeff))

    def negate(r):
        a[r] = [-x for x in a[r]]
        ops.append(_Z(r))

    # diagonal blocks: forward sweep touching only rows at or below the
    # pivot, so already-cleared columns stay clean
    for bi in range(len(sizes)):
        lo, hi = starts[bi], starts[bi] + sizes[bi]
        for c in range(lo, hi):
            while True:
                offs = [(abs(a[r][c]), r) for r in range(c + 1, hi) if a[r][c]]
                if not offs:
                    break
                _, r = max(offs, key=lambda t: (t[0], -t[1]))
                d, e = a[c][c], a[r][c]
                if abs(e) > abs(d):
                    row_add(r, c, -_nearest_quotient(e, 2 * d))
                    if abs(a[r][c]) >= abs(e):
                        raise NotInTheta("diagonal block reduction stalled")
                else:
                    row_add(c, r, -_nearest_quotient(d, 2 * e))
                    if abs(a[c][c]) >= abs(d):
                        raise NotInTheta("diagonal block reduction stalled")
            if a[c][c] == -1:
                negate(c)
            if a[c][c] != 1:
                raise NotInTheta("diagonal entry reduced to %d, not a unit" % a[c][c])
        # back substitution bottom-up: lower rows are unit vectors inside the
        # block, so each addition changes only the targeted entry
        for r in range(hi - 2, lo - 1, -1):
            for c in range(r + 1, hi):
                e = a[r][c]
                if not e:
                    continue
                if e % 2:
                    raise NotInTheta("stray odd entry %d at (%d, %d)" % (e, r, c))
                row_add(r, c, -e // 2)

    # below-diagonal blocks, rightmost column class first
    for bj in range(len(sizes) - 1, -1, -1):
        for c in range(starts[bj], starts[bj] + sizes[bj]):
            for r in range(starts[bj] + sizes[bj], n):
                e = a[r][c]
                if not e:
                    continue
                if e % 2 or not _shear_allowed(dd, r, c):
                    raise NotInTheta("stray entry %d at (%d, %d)" % (e, r, c))
                row_add(r, c, -e // 2)

    if a != [list(r) for r in identity_rows(n)]:
        raise NotInTheta("reduction did not reach the identity")
    # ops left-multiply in application order, so m is the product of their
    # inverses taken in that same order
    return [op.inverse() for op in ops]


def in_theta(m, dd):
    try:
        factor_theta(m, dd)
        return True
    except NotInTheta:
        return False
