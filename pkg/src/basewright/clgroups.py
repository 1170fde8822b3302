"""Classical matrix groups over small fields.

Builds generator sets for GL_d(q), GU_d(q), Sp_d(q) and GO^e_d(q) preserving
the standard forms, with the construction certified in two independent ways:
every generator is checked to be an isometry, and a Schreier-Sims computation
on the projective 1-space action must reproduce the classical order formula.
Also exposes scalar subgroups, the characteristic-2 identification of
Sp_{2m}(q) with GO_{2m+1}(q), and stored Mathieu-group permutation generators.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from typing import Optional

from .gf import FieldCtx
from .linalg import Matrix, Vector, span, vec_mat_codes
from .forms import (
    ClassicalForm, linear_form, unitary_form, symplectic_form, quadratic_form,
    evalB, evalQ, is_isometry,
)
from .bsgs import ChainBuilder, Permutation, perm_chain

FAMILIES = ("GL", "GU", "Sp", "GOplus", "GOminus", "GOcirc")

#: largest number of projective points we certify by Schreier-Sims
BUILD_POINT_CAP = 4200


class ClGroupError(Exception):
    pass


class Inadmissible(ClGroupError):
    pass


class OddQ(ClGroupError):
    pass


class MissingData(ClGroupError):
    pass


class OrderMismatch(ClGroupError):
    pass


@dataclass(frozen=True)
class MatrixGroup:
    family: str
    d: int
    q: int
    ctx: FieldCtx
    form: Optional[ClassicalForm]
    gens: tuple
    order: int

    def __repr__(self):
        return f"MatrixGroup({self.family}, d={self.d}, q={self.q}, order={self.order})"


@dataclass(frozen=True)
class PermGenSet:
    name: str
    degree: int
    gens: tuple
    order: int


@dataclass(frozen=True)
class SpOddCorrespondence:
    """Records how the odd-dimensional orthogonal model realizes the
    symplectic coset actions: GO_{2m+1}(q), q even, acting on non-degenerate
    2m-dimensional subspaces of + or - type."""
    sp_dim: int
    ambient_dim: int
    subspace_dim: int
    q: int


# ---------------------------------------------------------------------------
# Order formulas and scalars
# ---------------------------------------------------------------------------

def _check_admissible(family, d, q):
    if family not in FAMILIES:
        raise Inadmissible(f"unknown family {family!r}")
    if d < 1 or q < 2:
        raise Inadmissible(f"({family}, {d}, {q})")
    if family == "Sp" and (d % 2 or d < 2):
        raise Inadmissible("Sp needs even dimension >= 2")
    if family in ("GOplus", "GOminus") and (d % 2 or d < 2):
        raise Inadmissible(f"{family} needs even dimension >= 2")
    if family == "GOminus" and d < 4:
        raise Inadmissible("GOminus needs dimension >= 4")
    if family == "GOcirc" and (d % 2 == 0 or d < 3):
        raise Inadmissible("GOcirc needs odd dimension >= 3")
    if family == "GU" and d < 2:
        raise Inadmissible("GU needs dimension >= 2")


def order_formula(family, d, q) -> int:
    """Exact order of the full isometry group."""
    _check_admissible(family, d, q)
    if family == "GL":
        n = 1
        for i in range(d):
            n *= q ** d - q ** i
        return n
    if family == "GU":
        n = q ** (d * (d - 1) // 2)
        for i in range(1, d + 1):
            n *= q ** i - (-1) ** i
        return n
    if family == "Sp":
        m = d // 2
        n = q ** (m * m)
        for i in range(1, m + 1):
            n *= q ** (2 * i) - 1
        return n
    if family in ("GOplus", "GOminus"):
        m = d // 2
        eps = 1 if family == "GOplus" else -1
        n = 2 * q ** (m * (m - 1)) * (q ** m - eps)
        for i in range(1, m):
            n *= q ** (2 * i) - 1
        return n
    # GOcirc
    m = (d - 1) // 2
    if q % 2 == 0:
        return order_formula("Sp", 2 * m, q)
    n = 2 * q ** (m * m)
    for i in range(1, m + 1):
        n *= q ** (2 * i) - 1
    return n


def _scalar_codes(family, ctx, q):
    """Codes c with cI in the isometry group."""
    if family == "GL":
        return [c for c in range(1, ctx.order)]
    if family == "GU":
        # norm condition c^(q+1) = 1
        return [c for c in range(1, ctx.order)
                if ctx.MUL[c][ctx.CONJ[c]] == 1]
    # symplectic / quadratic: c^2 = 1
    return [c for c in range(1, ctx.order) if ctx.MUL[c][c] == 1]


def scalars(G: MatrixGroup):
    """All scalar matrices contained in G."""
    codes = _scalar_codes(G.family, G.ctx, G.q)
    d = G.d
    return [Matrix(G.ctx, tuple(tuple(c if i == j else 0 for j in range(d))
                                for i in range(d)))
            for c in codes]


# ---------------------------------------------------------------------------
# Projective Schreier-Sims certification
# ---------------------------------------------------------------------------

class MatrixActionOps:
    """Group ops for matrices (stored as code row-tuples) acting on canonical
    subspaces (stored as their RREF row-tuples)."""

    def __init__(self, ctx, d):
        self.ctx = ctx
        self.d = d
        self.identity = tuple(tuple(1 if i == j else 0 for j in range(d))
                              for i in range(d))
        self._inv_cache = {}

    def mul(self, g, h):
        ctx = self.ctx
        return tuple(vec_mat_codes(r, h, ctx) for r in g)

    def inv(self, g):
        cached = self._inv_cache.get(g)
        if cached is None:
            cached = Matrix(self.ctx, g).inverse().rows
            self._inv_cache[g] = cached
        return cached

    def act(self, point, g):
        ctx = self.ctx
        return span(ctx, self.d, [vec_mat_codes(r, g, ctx) for r in point]).rows

    def is_identity(self, g):
        # scalar matrices are the kernel of the projective action
        if g == self.identity:
            return True
        lam = g[0][0]
        if lam == 0:
            return False
        return all(g[i][j] == (lam if i == j else 0)
                   for i in range(self.d) for j in range(self.d))

    def first_moved_point(self, h):
        for v in _normalized_vectors(self.ctx, self.d):
            point = (v,)
            if self.act(point, h) != point:
                return point
        raise ClGroupError("identity matrix has no moved point")


def _normalized_vectors(ctx, d):
    """All nonzero vectors with leading coefficient 1, lexicographic order
    (one representative per 1-space)."""
    order = ctx.order
    MUL = ctx.MUL
    for code in range(1, order ** d):
        digits = []
        rest = code
        for _ in range(d):
            digits.append(rest % order)
            rest //= order
        lead = next(c for c in digits if c)
        if lead != 1:
            continue
        yield tuple(digits)


def num_projective_points(q_ctx_order, d):
    return (q_ctx_order ** d - 1) // (q_ctx_order - 1)


# ---------------------------------------------------------------------------
# Candidate generator streams
# ---------------------------------------------------------------------------

def _basis_matrix_rows(ctx, d, images):
    return tuple(tuple(r) for r in images)


def _transvection(form, v_codes, lam_code, sign_neg=False, quad_scale=False):
    """x -> x + lam*B(x,v)*v (optionally x -> x - B(x,v)/Q(v)*v etc.),
    assembled row by row from the basis images."""
    ctx, d = form.ctx, form.d
    ADD, MUL, NEG = ctx.ADD, ctx.MUL, ctx.NEG
    v = Vector(ctx, v_codes)
    rows = []
    for i in range(d):
        b = Vector(ctx, tuple(1 if j == i else 0 for j in range(d)))
        c = evalB(form, b, v).code
        c = MUL[lam_code][c]
        if sign_neg:
            c = NEG[c]
        row = list(b.codes)
        if c:
            mc = MUL[c]
            for j in range(d):
                if v_codes[j]:
                    row[j] = ADD[row[j]][mc[v_codes[j]]]
        rows.append(tuple(row))
    return tuple(rows)


def _gl_candidates(ctx, d):
    order = ctx.order
    # elementary transvections E_ij(c)
    for i in range(d):
        for j in range(d):
            if i == j:
                continue
            for c in range(1, order):
                rows = [[1 if a == b else 0 for b in range(d)] for a in range(d)]
                rows[i][j] = c
                yield tuple(tuple(r) for r in rows)
    # coordinate cycle
    rows = [[0] * d for _ in range(d)]
    for i in range(d):
        rows[i][(i + 1) % d] = 1
    yield tuple(tuple(r) for r in rows)
    # diagonal torus
    for c in range(2, order):
        rows = [[0] * d for _ in range(d)]
        for i in range(d):
            rows[i][i] = c if i == 0 else 1
        yield tuple(tuple(r) for r in rows)


def _form_candidates(family, form):
    ctx, d = form.ctx, form.d
    order = ctx.order
    q_even = ctx.p == 2
    quadratic = form.kind == "quadratic"
    for v in _normalized_vectors(ctx, d):
        if family == "Sp":
            for lam in range(1, order):
                yield _transvection(form, v, lam)
        elif family == "GU":
            vv = Vector(ctx, v)
            bvv = evalB(form, vv, vv).code
            if bvv == 0:
                for lam in range(1, order):
                    yield _transvection(form, v, lam)
            else:
                # pseudo-reflections x -> x + (xi - 1) B(x,v)/B(v,v) v with
                # xi of norm 1; needed for the small cases transvections miss
                inv_b = ctx.INV[bvv]
                for xi in range(2, order):
                    if ctx.MUL[xi][ctx.CONJ[xi]] != 1:
                        continue
                    coeff = ctx.MUL[ctx.ADD[xi][ctx.NEG[1]]][inv_b]
                    yield _transvection(form, v, coeff)
        else:
            qv = evalQ(form, Vector(ctx, v)).code
            if qv == 0:
                continue
            inv_q = ctx.INV[qv]
            if q_even:
                yield _transvection(form, v, inv_q)
            else:
                yield _transvection(form, v, inv_q, sign_neg=True)
    if family == "GU":
        # torus elements moving the determinant through all norm classes
        labels = form.labels
        if "e1" in labels and "f1" in labels:
            i, j = labels.index("e1"), labels.index("f1")
            for beta in range(2, order):
                rows = [[1 if a == b else 0 for b in range(d)] for a in range(d)]
                rows[i][i] = beta
                # conjugate-inverse partner keeps B(e1, f1) = 1
                rows[j][j] = ctx.INV[ctx.CONJ[beta]]
                yield tuple(tuple(r) for r in rows)
    if quadratic or family == "GU":
        # hyperbolic-pair swaps as a safety net for small exceptional cases
        labels = form.labels
        pairs = [(labels.index(f"e{k}"), labels.index(f"f{k}"))
                 for k in range(1, d // 2 + 1)
                 if f"e{k}" in labels and f"f{k}" in labels]
        for i, j in pairs:
            rows = [[1 if a == b else 0 for b in range(d)] for a in range(d)]
            rows[i][i] = rows[j][j] = 0
            rows[i][j] = rows[j][i] = 1
            yield tuple(tuple(r) for r in rows)
        if len(pairs) >= 2:
            (i1, j1), (i2, j2) = pairs[0], pairs[1]
            rows = [[1 if a == b else 0 for b in range(d)] for a in range(d)]
            for a, b in ((i1, i2), (i2, i1), (j1, j2), (j2, j1)):
                rows[a] = [0] * d
                rows[a][b] = 1
            yield tuple(tuple(r) for r in rows)


def _standard_form(family, d, q):
    if family == "GL":
        return None
    if family == "GU":
        return unitary_form(q, d)
    if family == "Sp":
        return symplectic_form(q, d)
    sign = {"GOplus": "+", "GOminus": "-", "GOcirc": "o"}[family]
    return quadratic_form(q, d, sign)


def build_group(family, d, q) -> MatrixGroup:
    """Certified construction of the full isometry group."""
    _check_admissible(family, d, q)
    form = _standard_form(family, d, q)
    ctx = form.ctx if form is not None else FieldCtx.of_order(q)
    npoints = num_projective_points(ctx.order, d)
    if npoints > BUILD_POINT_CAP:
        raise Inadmissible(
            f"({family}, {d}, {q}): {npoints} projective points exceeds the "
            f"certified construction cap {BUILD_POINT_CAP}")
    total = order_formula(family, d, q)
    target = total // len(_scalar_codes(family, ctx, q))

    ops = MatrixActionOps(ctx, d)
    builder = ChainBuilder(ops)
    accepted = []
    if family == "GL":
        stream = _gl_candidates(ctx, d)
    else:
        stream = _form_candidates(family, form)
    for rows in stream:
        if builder.chain.order >= target:
            break
        residue, _ = builder.chain.sift(rows)
        if ops.is_identity(residue):
            continue
        cand = Matrix(ctx, rows)
        if form is not None and not is_isometry(form, cand):
            continue
        if form is None and not cand.is_invertible():
            continue
        accepted.append(cand)
        builder.insert(rows)
        builder.process(target_order=target)
    got = builder.chain.order
    if got != target:
        raise OrderMismatch(
            f"({family}, {d}, {q}): certified order {got}, expected {target} "
            f"modulo scalars")
    gens = list(accepted)
    for c in _scalar_codes(family, ctx, q):
        if c != 1:
            gens.append(Matrix(ctx, tuple(tuple(c if i == j else 0
                                                for j in range(d))
                                          for i in range(d))))
    return MatrixGroup(family=family, d=d, q=q, ctx=ctx, form=form,
                       gens=tuple(gens), order=total)


def form_group(family, d, q) -> MatrixGroup:
    """Group metadata (standard form, exact order) without generators.

    Constructions that only need the ambient form and the order formula can
    use this shell even when the dimension exceeds the certified-build cap.
    """
    _check_admissible(family, d, q)
    form = _standard_form(family, d, q)
    ctx = form.ctx if form is not None else FieldCtx.of_order(q)
    return MatrixGroup(family=family, d=d, q=q, ctx=ctx, form=form,
                       gens=(), order=order_formula(family, d, q))


def sp_to_odd_orthogonal(m, q):
    """The odd-dimensional orthogonal model of Sp_{2m}(q) in characteristic 2.

    Returns (GO_{2m+1}(q), correspondence): the coset actions of the
    symplectic group on its two orthogonal subgroups become the actions of
    GO_{2m+1}(q) on non-degenerate 2m-dimensional subspaces of + and - type.
    """
    if q % 2:
        raise OddQ("the identification needs even q")
    G = build_group("GOcirc", 2 * m + 1, q)
    if G.order != order_formula("Sp", 2 * m, q):
        raise OrderMismatch("odd orthogonal model order disagrees")
    return G, SpOddCorrespondence(sp_dim=2 * m, ambient_dim=2 * m + 1,
                                  subspace_dim=2 * m, q=q)


# ---------------------------------------------------------------------------
# Stored permutation groups
# ---------------------------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _data_dir():
    env = os.environ.get("BASEWRIGHT_DATA")
    if env:
        return env
    return os.path.join(os.path.dirname(__file__), "data")


def _parse_cycles(text):
    cycles = []
    for body in _CYCLE_RE.findall(text):
        body = body.strip()
        if not body:
            continue
        cycles.append(tuple(int(t) for t in re.split(r"[,\s]+", body)))
    return cycles


def load_permgroup(name) -> PermGenSet:
    """Loads stored generators and certifies their order by Schreier-Sims."""
    path = os.path.join(_data_dir(), f"{name.lower()}.txt")
    if not os.path.exists(path):
        raise MissingData(f"no generator file for {name} at {path}")
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    if not lines:
        raise MissingData(f"empty generator file {path}")
    head = lines[0].split()
    if len(head) != 3:
        raise MissingData(f"bad header in {path}")
    fname, degree, expected = head[0], int(head[1]), int(head[2])
    gens = [Permutation.from_cycles(_parse_cycles(ln), degree, one_based=True)
            for ln in lines[1:]]
    chain = perm_chain(gens, degree)
    if chain.order != expected:
        raise OrderMismatch(
            f"{name}: stored generators give order {chain.order}, "
            f"expected {expected}")
    return PermGenSet(name=fname, degree=degree, gens=tuple(gens),
                      order=expected)
