"""Vectors, matrices and canonical subspaces over a FieldCtx.

Entries are stored as raw field-element codes (ints) so the hot paths in orbit
enumeration stay table-lookup cheap; FieldElement views are available where a
typed value is wanted.  Subspaces are kept in reduced row-echelon form with
strictly increasing pivot columns, so two Subspace values are equal exactly
when they are the same point set.
"""

from __future__ import annotations

from .gf import FieldCtx, FieldElement


class LinAlgError(Exception):
    pass


class SingularMatrix(LinAlgError):
    pass


def _codes_of(ctx, entries):
    codes = []
    for e in entries:
        if isinstance(e, FieldElement):
            if e.ctx != ctx:
                raise LinAlgError("mixed field contexts in vector")
            codes.append(e.code)
        else:
            codes.append(int(e) % ctx.order if int(e) >= ctx.order else int(e))
    return tuple(codes)


class Vector:
    """Row vector over a FieldCtx."""

    __slots__ = ("ctx", "codes")

    def __init__(self, ctx: FieldCtx, entries):
        self.ctx = ctx
        self.codes = _codes_of(ctx, entries)

    @property
    def coords(self):
        return tuple(self.ctx.element(c) for c in self.codes)

    def __len__(self):
        return len(self.codes)

    def __add__(self, other):
        ADD = self.ctx.ADD
        return Vector(self.ctx, tuple(ADD[a][b] for a, b in zip(self.codes, other.codes)))

    def __sub__(self, other):
        ADD, NEG = self.ctx.ADD, self.ctx.NEG
        return Vector(self.ctx, tuple(ADD[a][NEG[b]] for a, b in zip(self.codes, other.codes)))

    def __neg__(self):
        NEG = self.ctx.NEG
        return Vector(self.ctx, tuple(NEG[a] for a in self.codes))

    def scale(self, c):
        code = c.code if isinstance(c, FieldElement) else c
        MUL = self.ctx.MUL
        return Vector(self.ctx, tuple(MUL[code][a] for a in self.codes))

    def is_zero(self):
        return not any(self.codes)

    def __eq__(self, other):
        return (isinstance(other, Vector) and self.codes == other.codes
                and self.ctx == other.ctx)

    def __hash__(self):
        return hash(self.codes)

    def __repr__(self):
        return f"Vector{self.codes}"


def vec_mat_codes(v_codes, mat_rows, ctx):
    """v * M at the code level; rows of M are code tuples."""
    ADD, MUL = ctx.ADD, ctx.MUL
    d = len(mat_rows[0])
    out = [0] * d
    for c, row in zip(v_codes, mat_rows):
        if c:
            if c == 1:
                for j in range(d):
                    rj = row[j]
                    if rj:
                        out[j] = ADD[out[j]][rj]
            else:
                mc = MUL[c]
                for j in range(d):
                    rj = row[j]
                    if rj:
                        out[j] = ADD[out[j]][mc[rj]]
    return tuple(out)


class Matrix:
    """Square matrix over a FieldCtx, acting on row vectors from the right."""

    __slots__ = ("ctx", "rows")

    def __init__(self, ctx: FieldCtx, rows):
        self.ctx = ctx
        self.rows = tuple(_codes_of(ctx, r) for r in rows)
        d = len(self.rows)
        if any(len(r) != d for r in self.rows):
            raise LinAlgError("matrix must be square")

    @staticmethod
    def identity(ctx, d):
        return Matrix(ctx, tuple(tuple(1 if i == j else 0 for j in range(d))
                                 for i in range(d)))

    @property
    def d(self):
        return len(self.rows)

    def __mul__(self, other):
        if self.ctx != other.ctx:
            raise LinAlgError("mixed contexts")
        return Matrix(self.ctx, tuple(vec_mat_codes(r, other.rows, self.ctx)
                                      for r in self.rows))

    def apply(self, v: Vector) -> Vector:
        return Vector(self.ctx, vec_mat_codes(v.codes, self.rows, self.ctx))

    def transpose(self):
        return Matrix(self.ctx, tuple(zip(*self.rows)))

    def conj_entries(self):
        """Entrywise x -> x^q (quadratic-extension contexts only)."""
        CONJ = self.ctx.CONJ
        return Matrix(self.ctx, tuple(tuple(CONJ[c] for c in r) for r in self.rows))

    def inverse(self):
        ctx, d = self.ctx, self.d
        aug = [list(self.rows[i]) + [1 if j == i else 0 for j in range(d)]
               for i in range(d)]
        reduced, pivots = _rref_rows(aug, ctx)
        if len(pivots) < d or pivots != list(range(d)):
            raise SingularMatrix("matrix is not invertible")
        return Matrix(ctx, tuple(tuple(reduced[i][d:]) for i in range(d)))

    def is_invertible(self):
        _, pivots = _rref_rows([list(r) for r in self.rows], self.ctx)
        return len(pivots) == self.d

    def is_scalar(self):
        d = self.d
        lam = self.rows[0][0]
        if lam == 0:
            return False
        for i in range(d):
            for j in range(d):
                if self.rows[i][j] != (lam if i == j else 0):
                    return False
        return True

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.ctx == other.ctx)

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Matrix{self.rows}"


def _rref_rows(rows, ctx):
    """In-place RREF of a list of code lists; returns (rows, pivot columns).

    Zero rows sink to the bottom and are dropped from the returned list.
    """
    ADD, MUL, NEG, INV = ctx.ADD, ctx.MUL, ctx.NEG, ctx.INV
    nrows = len(rows)
    if nrows == 0:
        return [], []
    width = len(rows[0])
    pivots = []
    r = 0
    for col in range(width):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        lead = rows[r][col]
        if lead != 1:
            inv = INV[lead]
            mi = MUL[inv]
            rows[r] = [mi[c] for c in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r and rows[i][col]:
                factor = NEG[rows[i][col]]
                mf = MUL[factor]
                ri = rows[i]
                rows[i] = [ADD[ri[j]][mf[prow[j]]] for j in range(width)]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return [row for row in rows[:r]], pivots


class Subspace:
    """RREF-canonical subspace of the ambient row space F^d."""

    __slots__ = ("ctx", "ambient", "rows", "pivots")

    def __init__(self, ctx, ambient, rows, pivots, _token=None):
        if _token is not _SUBSPACE_TOKEN:
            raise LinAlgError("use rref()/span helpers to build Subspace values")
        self.ctx = ctx
        self.ambient = ambient
        self.rows = rows
        self.pivots = pivots

    @property
    def dim(self):
        return len(self.rows)

    def basis_vectors(self):
        return [Vector(self.ctx, r) for r in self.rows]

    def contains_codes(self, codes):
        ADD, MUL, NEG = self.ctx.ADD, self.ctx.MUL, self.ctx.NEG
        v = list(codes)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                mf = MUL[NEG[c]]
                for j in range(len(v)):
                    if row[j]:
                        v[j] = ADD[v[j]][mf[row[j]]]
        return not any(v)

    def contains(self, v: Vector) -> bool:
        return self.contains_codes(v.codes)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains_codes(r) for r in other.rows)

    def vectors(self):
        """All vectors of the subspace (desk scale only)."""
        ctx = self.ctx
        out = [Vector(ctx, (0,) * self.ambient)]
        for row in self.rows:
            rv = Vector(ctx, row)
            out = [v + rv.scale(c) for c in range(ctx.order) for v in out]
            # keep deterministic order: coefficient-major
        return out

    def key(self):
        return self.rows

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.rows == other.rows
                and self.ambient == other.ambient and self.ctx == other.ctx)

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, rows={self.rows})"


_SUBSPACE_TOKEN = object()


def _make_subspace(ctx, ambient, rows, pivots):
    return Subspace(ctx, ambient, tuple(tuple(r) for r in rows), tuple(pivots),
                    _token=_SUBSPACE_TOKEN)


def rref(rows) -> Subspace:
    """Canonical subspace spanned by the given vectors (or code tuples)."""
    rows = list(rows)
    if not rows:
        raise LinAlgError("need at least one row to infer the ambient space")
    if isinstance(rows[0], Vector):
        ctx = rows[0].ctx
        ambient = len(rows[0])
        code_rows = [list(v.codes) for v in rows]
    else:
        raise LinAlgError("rref expects Vector rows")
    reduced, pivots = _rref_rows(code_rows, ctx)
    return _make_subspace(ctx, ambient, reduced, pivots)


def span(ctx, ambient, code_rows) -> Subspace:
    """rref at the code level (internal fast path)."""
    reduced, pivots = _rref_rows([list(r) for r in code_rows], ctx)
    return _make_subspace(ctx, ambient, reduced, pivots)


def zero_subspace(ctx, ambient) -> Subspace:
    return _make_subspace(ctx, ambient, (), ())


def act(U: Subspace, g: Matrix) -> Subspace:
    """Image of U under the right action v -> v*g, recanonicalized."""
    ctx = U.ctx
    image = [vec_mat_codes(r, g.rows, ctx) for r in U.rows]
    reduced, pivots = _rref_rows([list(r) for r in image], ctx)
    return _make_subspace(ctx, U.ambient, reduced, pivots)


def join(U: Subspace, W: Subspace) -> Subspace:
    if U.ambient != W.ambient or U.ctx != W.ctx:
        raise LinAlgError("ambient spaces differ")
    reduced, pivots = _rref_rows([list(r) for r in U.rows + W.rows], U.ctx)
    return _make_subspace(U.ctx, U.ambient, reduced, pivots)


def meet(U: Subspace, W: Subspace) -> Subspace:
    """Intersection via the Zassenhaus double-block reduction."""
    if U.ambient != W.ambient or U.ctx != W.ctx:
        raise LinAlgError("ambient spaces differ")
    ctx, d = U.ctx, U.ambient
    block = [list(r) + list(r) for r in U.rows]
    block += [list(r) + [0] * d for r in W.rows]
    reduced, _ = _rref_rows(block, ctx)
    inter = [row[d:] for row in reduced if not any(row[:d])]
    reduced2, pivots2 = _rref_rows(inter, ctx)
    return _make_subspace(ctx, d, reduced2, pivots2)


def support(v: Vector, basis_labels=None):
    """Labels of the nonzero coordinates of v."""
    if basis_labels is None:
        basis_labels = list(range(len(v)))
    return {basis_labels[i] for i, c in enumerate(v.codes) if c}
