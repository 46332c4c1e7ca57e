"""Exact matrices over GF(q), group closures, conjugacy classes, central quotients.

Matrices are immutable flat tuples of field-element indices in row-major
order; the row-major tuple order is the canonical total order used for all
tie-breaking and quotient representatives.  Groups are handled lazily: any
operation that only needs orbits works from generators and never materializes
the ambient group.
"""

from .gf import field_from_order, is_irreducible_poly, poly_mul_q

_DEFAULT_CAP = 10**6


class Matrix:
    """Immutable n x n matrix over a FieldCtx, entries as element indices."""

    __slots__ = ("ctx", "n", "entries", "_hash")

    def __init__(self, ctx, n, entries):
        entries = tuple(entries)
        if len(entries) != n * n:
            raise ValueError("expected %d entries, got %d" % (n * n, len(entries)))
        for e in entries:
            if not 0 <= e < ctx.q:
                raise ValueError("entry %r out of range for GF(%s)" % (e, ctx.name))
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_hash", hash((n, entries)))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ctx is other.ctx
            and self.n == other.n
            and self.entries == other.entries
        )

    def __lt__(self, other):
        if self.ctx is not other.ctx or self.n != other.n:
            raise ValueError("matrices not comparable")
        return self.entries < other.entries

    def __le__(self, other):
        return self == other or self < other

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r * self.n + c]

    def rows(self):
        n = self.n
        return tuple(self.entries[i * n:(i + 1) * n] for i in range(n))

    def __repr__(self):
        return "Matrix(GF(%s), %s)" % (self.ctx.name, mat_text(self))


def field_display(ctx):
    """'3' for prime fields, '3^2' for extensions."""
    return str(ctx.p) if ctx.m == 1 else ctx.name


def mat_text(M):
    """Row-major text form, rows ';'-separated, entries ','-separated."""
    return ";".join(",".join(str(e) for e in row) for row in M.rows())


def mat_header(M):
    """Header line naming the field and dimension."""
    return "GF(%s), n=%d" % (field_display(M.ctx), M.n)


def mat_parse(ctx, text):
    """Inverse of mat_text."""
    rows = [r for r in text.strip().split(";") if r != ""]
    entries = []
    for r in rows:
        entries.extend(int(e) for e in r.split(","))
    n = len(rows)
    return Matrix(ctx, n, entries)


def matrix(ctx, rows):
    """Matrix from a nested row sequence of element indices."""
    rows = [list(r) for r in rows]
    n = len(rows)
    flat = []
    for r in rows:
        if len(r) != n:
            raise ValueError("matrix must be square")
        flat.extend(r)
    return Matrix(ctx, n, flat)


def identity(ctx, n):
    return Matrix(ctx, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))


def scalar_matrix(ctx, n, c):
    return Matrix(ctx, n, tuple(c if i == j else 0 for i in range(n) for j in range(n)))


def basis_elem_matrix(ctx, n, i, j, c=1):
    """Identity plus c in position (i, j); the elementary transvection for i != j."""
    flat = [1 if r == s else 0 for r in range(n) for s in range(n)]
    flat[i * n + j] = ctx.add_i(flat[i * n + j], c)
    return Matrix(ctx, n, flat)


def block_diag(ctx, blocks):
    """Block-diagonal matrix from square blocks."""
    n = sum(b.n for b in blocks)
    flat = [0] * (n * n)
    off = 0
    for b in blocks:
        for i in range(b.n):
            for j in range(b.n):
                flat[(off + i) * n + (off + j)] = b[i, j]
        off += b.n
    return Matrix(ctx, n, flat)


def companion_matrix(ctx, coeffs):
    """Companion matrix of a monic polynomial (little-endian index coefficients)."""
    coeffs = tuple(coeffs)
    d = len(coeffs) - 1
    if d < 1 or coeffs[-1] != 1:
        raise ValueError("need a monic polynomial of positive degree")
    flat = [0] * (d * d)
    for i in range(1, d):
        flat[i * d + (i - 1)] = 1
    for i in range(d):
        flat[i * d + (d - 1)] = ctx.neg_i(coeffs[i])
    return Matrix(ctx, d, flat)


def mat_mul(A, B):
    """A * B."""
    if A.ctx is not B.ctx or A.n != B.n:
        raise ValueError("dimension or field mismatch")
    ctx = A.ctx
    n = A.n
    a = A.entries
    b = B.entries
    out = [0] * (n * n)
    if ctx.m == 1:
        p = ctx.p
        for i in range(n):
            ai = i * n
            for j in range(n):
                s = 0
                for k in range(n):
                    s += a[ai + k] * b[k * n + j]
                out[ai + j] = s % p
    else:
        mul_i = ctx.mul_i
        add_i = ctx.add_i
        for i in range(n):
            ai = i * n
            for j in range(n):
                s = 0
                for k in range(n):
                    s = add_i(s, mul_i(a[ai + k], b[k * n + j]))
                out[ai + j] = s
    return Matrix(ctx, n, out)


def transpose(M):
    n = M.n
    e = M.entries
    return Matrix(M.ctx, n, tuple(e[j * n + i] for i in range(n) for j in range(n)))


def scalar_mul(c, M):
    ctx = M.ctx
    return Matrix(ctx, M.n, tuple(ctx.mul_i(c, e) for e in M.entries))


def mat_add(A, B):
    if A.ctx is not B.ctx or A.n != B.n:
        raise ValueError("dimension or field mismatch")
    ctx = A.ctx
    return Matrix(ctx, A.n, tuple(ctx.add_i(x, y) for x, y in zip(A.entries, B.entries)))


def _gauss_jordan(M):
    """Reduced row echelon of [M | I]; returns (det_index, inverse rows or None)."""
    ctx = M.ctx
    n = M.n
    aug = [list(M.entries[i * n:(i + 1) * n]) + [1 if i == j else 0 for j in range(n)]
           for i in range(n)]
    det = 1
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if aug[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return 0, None
        if pivot != col:
            aug[col], aug[pivot] = aug[pivot], aug[col]
            det = ctx.neg_i(det)
        pv = aug[col][col]
        det = ctx.mul_i(det, pv)
        pv_inv = ctx.inv_i(pv)
        aug[col] = [ctx.mul_i(pv_inv, e) for e in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [ctx.sub_i(e, ctx.mul_i(f, g)) for e, g in zip(aug[r], aug[col])]
    inv_rows = [row[n:] for row in aug]
    return det, inv_rows


def det(M):
    """Determinant as an element index."""
    d, _ = _gauss_jordan(M)
    return d


def mat_inv(M):
    """Matrix inverse; errors on singular input."""
    d, inv_rows = _gauss_jordan(M)
    if d == 0:
        raise ValueError("matrix is singular")
    return matrix(M.ctx, inv_rows)


def mat_pow(M, e):
    """M^e, with negative e via the inverse."""
    if e < 0:
        return mat_pow(mat_inv(M), -e)
    result = identity(M.ctx, M.n)
    base = M
    while e > 0:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def char_poly(M):
    """Characteristic polynomial det(X*I - M), little-endian monic index tuple.

    Memoized Laplace expansion over GF(q)[X]; dimensions here are tiny.
    """
    ctx = M.ctx
    n = M.n
    # degree <= 1 polynomial entries of X*I - M
    P = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c0 = ctx.neg_i(M[i, j])
            P[i][j] = (c0, 1) if i == j else (c0,)

    def padd(f, g):
        if len(f) < len(g):
            f, g = g, f
        out = list(f)
        for i, c in enumerate(g):
            out[i] = ctx.add_i(out[i], c)
        return tuple(out)

    memo = {}

    def rec(row, colmask):
        if row == n:
            return (1,)
        key = colmask
        got = memo.get(key)
        if got is not None:
            return got
        total = (0,)
        sign_flip = False
        for j in range(n):
            bit = 1 << j
            if not colmask & bit:
                continue
            sub = rec(row + 1, colmask & ~bit)
            term = poly_mul_q(ctx, P[row][j], sub)
            if sign_flip:
                term = tuple(ctx.neg_i(c) for c in term)
            total = padd(total, term)
            sign_flip = not sign_flip
        memo[key] = total
        return total

    out = rec(0, (1 << n) - 1)
    out = tuple(out[i] if i < len(out) else 0 for i in range(n + 1))
    if out[-1] != 1:
        raise AssertionError("characteristic polynomial not monic")
    return out


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

def classical_sl_order(n, q):
    """|SL_n(q)| = q^(n(n-1)/2) * prod_{i=2..n} (q^i - 1)."""
    order = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        order *= q**i - 1
    return order


def classical_sp_order(dim, q):
    """|Sp_dim(q)| = q^(k^2) * prod_{i=1..k} (q^(2i) - 1) with k = dim/2."""
    k = dim // 2
    order = q ** (k * k)
    for i in range(1, k + 1):
        order *= q ** (2 * i) - 1
    return order


class GroupHandle:
    """Finitely generated matrix group, materialized lazily under a cap."""

    def __init__(self, ctx, n, generators, kind="closure", expected_order=None,
                 cap=_DEFAULT_CAP):
        self.ctx = ctx
        self.n = n
        self.generators = tuple(generators)
        self.kind = kind
        self.expected_order = expected_order
        self.cap = cap
        self._elements = None
        self._element_set = None

    @property
    def materialized(self):
        return self._elements is not None

    def elements(self):
        """Sorted tuple of all elements (materializes the group)."""
        if self._elements is None:
            if self.expected_order is not None and self.expected_order > self.cap:
                raise ValueError(
                    "group order %d (classical formula) exceeds cap %d"
                    % (self.expected_order, self.cap))
            seen = {identity(self.ctx, self.n)}
            frontier = [identity(self.ctx, self.n)]
            while frontier:
                new = []
                for g in frontier:
                    for s in self.generators:
                        h = mat_mul(g, s)
                        if h not in seen:
                            seen.add(h)
                            new.append(h)
                            if len(seen) > self.cap:
                                raise ValueError(
                                    "closure exceeded cap %d" % self.cap)
                frontier = new
            if self.expected_order is not None and len(seen) != self.expected_order:
                raise AssertionError(
                    "closure size %d != classical order %d"
                    % (len(seen), self.expected_order))
            self._elements = tuple(sorted(seen))
            self._element_set = frozenset(seen)
        return self._elements

    def element_set(self):
        self.elements()
        return self._element_set

    def order(self):
        if self.expected_order is not None:
            return self.expected_order
        return len(self.elements())

    def __contains__(self, M):
        return M in self.element_set()

    def __repr__(self):
        return "GroupHandle(%s, n=%d, GF(%s), %d gens)" % (
            self.kind, self.n, self.ctx.name, len(self.generators))


def sl_group(n, q, cap=_DEFAULT_CAP):
    """SL_n(q) generated by all elementary transvections I + c*e_ij."""
    ctx = field_from_order(q)
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                for c in range(1, q):
                    gens.append(basis_elem_matrix(ctx, n, i, j, c))
    return GroupHandle(ctx, n, gens, kind="SL", expected_order=classical_sl_order(n, q),
                       cap=cap)


def sp_preset_form(dim, q):
    """Bundled invariant alternating form: antidiagonal, +1 above center, -1 below."""
    if dim % 2 != 0:
        raise ValueError("symplectic dimension must be even")
    ctx = field_from_order(q)
    flat = [0] * (dim * dim)
    for i in range(dim // 2):
        flat[i * dim + (dim - 1 - i)] = 1
        flat[(dim - 1 - i) * dim + i] = ctx.neg_i(1)
    return Matrix(ctx, dim, flat)


def sp_form_check(M, form):
    """True iff M preserves the alternating form: M^T * form * M == form."""
    return mat_mul(mat_mul(transpose(M), form), M) == form


def sp_group(dim, q, form=None, cap=_DEFAULT_CAP):
    """Sp_dim(q) generated by all symplectic transvections for the given form."""
    ctx = field_from_order(q)
    if form is None:
        form = sp_preset_form(dim, q)
    if form.n != dim or form.ctx is not ctx:
        raise ValueError("form has wrong dimension or field")
    gens = []
    # projective representatives: first nonzero coordinate = 1
    for vec_id in range(1, q**dim):
        v = []
        t = vec_id
        for _ in range(dim):
            v.append(t % q)
            t //= q
        first = next(c for c in v if c != 0)
        if first != 1:
            continue
        # row vector v^T * form^T, then T = I + c * v (Fv)^T
        fv = [0] * dim
        for i in range(dim):
            s = 0
            for k in range(dim):
                s = ctx.add_i(s, ctx.mul_i(form[i, k], v[k]))
            fv[i] = s
        for c in range(1, q):
            flat = [1 if i == j else 0 for i in range(dim) for j in range(dim)]
            for i in range(dim):
                if v[i] == 0:
                    continue
                cvi = ctx.mul_i(c, v[i])
                for j in range(dim):
                    if fv[j] != 0:
                        flat[i * dim + j] = ctx.add_i(flat[i * dim + j],
                                                      ctx.mul_i(cvi, fv[j]))
            T = Matrix(ctx, dim, flat)
            if not sp_form_check(T, form):
                raise AssertionError("generated transvection fails the form check")
            gens.append(T)
    handle = GroupHandle(ctx, dim, gens, kind="Sp",
                         expected_order=classical_sp_order(dim, q), cap=cap)
    handle.form = form
    return handle


def closure(generators, cap=_DEFAULT_CAP):
    """Group closure of a generator list."""
    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generator")
    ctx = generators[0].ctx
    n = generators[0].n
    return GroupHandle(ctx, n, generators, kind="closure", cap=cap)


def element_order(g, cap=_DEFAULT_CAP):
    """Multiplicative order of an invertible matrix."""
    I = identity(g.ctx, g.n)
    M = g
    k = 1
    while M != I:
        M = mat_mul(M, g)
        k += 1
        if k > cap:
            raise ValueError("order exceeds cap %d" % cap)
    return k


def is_semisimple(M):
    """True iff the element order is coprime to the field characteristic."""
    return element_order(M) % M.ctx.p != 0


def is_irreducible_elem(M):
    """True iff the characteristic polynomial is irreducible over GF(q)."""
    return is_irreducible_poly(M.ctx, char_poly(M))


# ---------------------------------------------------------------------------
# conjugacy classes (group side and quotient side share one ops protocol)
# ---------------------------------------------------------------------------

class RawOps:
    """Multiplication/inversion/canonicalization for plain matrix groups."""

    def mul(self, a, b):
        return mat_mul(a, b)

    def inv(self, a):
        return mat_inv(a)

    def canon(self, a):
        return a

    def identity_of(self, a):
        return identity(a.ctx, a.n)


_RAW_OPS = RawOps()


class ConjClass:
    """Conjugacy class as an explicit orbit with a canonical element order."""

    def __init__(self, ops, generators, base, elements):
        self.ops = ops
        self.generators = tuple(generators)
        self.base = base
        self.elements = tuple(sorted(elements))
        self.index = {x: i for i, x in enumerate(self.elements)}
        self.element_set = frozenset(elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return self.ops.canon(x) in self.element_set

    def __repr__(self):
        return "ConjClass(size=%d)" % len(self.elements)


def _orbit(ops, generators, start, cap):
    gens = [(g, ops.inv(g)) for g in generators]
    start = ops.canon(start)
    seen = {start}
    frontier = [start]
    while frontier:
        new = []
        for x in frontier:
            for g, ginv in gens:
                y = ops.canon(ops.mul(ops.mul(g, x), ginv))
                if y not in seen:
                    seen.add(y)
                    new.append(y)
                    if len(seen) > cap:
                        raise ValueError("conjugacy orbit exceeded cap %d" % cap)
        frontier = new
    return seen


def conj_class(ambient, x, cap=_DEFAULT_CAP):
    """Conjugacy class of x under an ambient group, generator list, or quotient."""
    if isinstance(ambient, CentralQuotient):
        ops = ambient.ops()
        gens = ambient.projected_generators()
        x = ambient.rep(x)
    elif isinstance(ambient, GroupHandle):
        ops = _RAW_OPS
        gens = ambient.generators
    else:
        ops = _RAW_OPS
        gens = tuple(ambient)
    orbit = _orbit(ops, gens, x, cap)
    return ConjClass(ops, gens, ops.canon(x), orbit)


# ---------------------------------------------------------------------------
# central quotients
# ---------------------------------------------------------------------------

class QuotientOps:
    """Group operations on canonical coset representatives."""

    def __init__(self, quotient):
        self.quotient = quotient

    def mul(self, a, b):
        return self.quotient.rep(mat_mul(a, b))

    def inv(self, a):
        return self.quotient.rep(mat_inv(a))

    def canon(self, a):
        return self.quotient.rep(a)

    def identity_of(self, a):
        return self.quotient.rep(identity(a.ctx, a.n))


class CentralQuotient:
    """Quotient of a matrix group by its scalar center {c*I : c^n = 1}.

    The canonical representative of a coset is the row-major least scalar
    multiple.
    """

    def __init__(self, parent, n):
        self.parent = parent
        ctx = parent.ctx
        dim = parent.n
        scalars = [c for c in range(1, ctx.q) if ctx.pow_i(c, n) == 1]
        self.scalar_indices = tuple(scalars)
        self.center = tuple(scalar_matrix(ctx, dim, c) for c in scalars)
        self._ops = QuotientOps(self)

    def rep(self, M):
        best = M
        ctx = M.ctx
        for c in self.scalar_indices:
            if c == 1:
                continue
            cand = scalar_mul(c, M)
            if cand.entries < best.entries:
                best = cand
        return best

    def ops(self):
        return self._ops

    def projected_generators(self):
        return tuple(self.rep(g) for g in self.parent.generators)

    def order(self):
        return self.parent.order() // len(self.center)

    def elements(self):
        """Sorted tuple of canonical representatives (materializes the parent)."""
        reps = {self.rep(M) for M in self.parent.elements()}
        return tuple(sorted(reps))

    def __repr__(self):
        return "CentralQuotient(center=%d)" % len(self.center)


def central_quotient(G, n):
    """Quotient of G by its scalar subgroup {c*I : c^n = 1}."""
    return CentralQuotient(G, n)


def n_bracket(x, G, cap=_DEFAULT_CAP):
    """Scalar center elements c*I whose multiple c*x stays in the class of x.

    Returns a tuple of scalar matrices; verified to be a subgroup.
    """
    ctx = x.ctx
    n = x.n
    cls = conj_class(G, x, cap)
    out = []
    for c in range(1, ctx.q):
        if ctx.pow_i(c, n) != 1:
            continue
        if scalar_mul(c, x) in cls.element_set:
            out.append(c)
    # subgroup check: closed under multiplication
    got = set(out)
    for a in out:
        for b in out:
            if ctx.mul_i(a, b) not in got:
                raise AssertionError("bracket set is not closed")
    return tuple(scalar_matrix(ctx, n, c) for c in sorted(out))


# ---------------------------------------------------------------------------
# permutation helpers (used by the symmetric-group witnesses)
# ---------------------------------------------------------------------------

def perm_matrix(ctx, images):
    """Permutation matrix sending basis vector i to basis vector images[i] (0-based)."""
    n = len(images)
    flat = [0] * (n * n)
    for i, img in enumerate(images):
        flat[img * n + i] = 1
    return Matrix(ctx, n, flat)


def matrix_to_perm(M):
    """Inverse of perm_matrix; errors if M is not a permutation matrix."""
    n = M.n
    images = [None] * n
    for i in range(n):
        col = [M[r, i] for r in range(n)]
        ones = [r for r, v in enumerate(col) if v == 1]
        if len(ones) != 1 or sum(col) != 1:
            raise ValueError("not a permutation matrix")
        images[i] = ones[0]
    return tuple(images)


def perm_from_cycles(n, cycles):
    """Permutation images (0-based) from 1-based cycles like [(1,2),(3,4)]."""
    images = list(range(n))
    for cyc in cycles:
        for k in range(len(cyc)):
            src = cyc[k] - 1
            dst = cyc[(k + 1) % len(cyc)] - 1
            images[src] = dst
    return tuple(images)


def perm_cycles_text(images):
    """1-based cycle notation, fixed points omitted; '()' for the identity."""
    n = len(images)
    seen = [False] * n
    parts = []
    for start in range(n):
        if seen[start] or images[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = images[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = images[nxt]
        parts.append("(" + " ".join(str(i + 1) for i in cyc) + ")")
    return "".join(parts) if parts else "()"
