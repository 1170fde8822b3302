"""Explicit base candidates for the standard subspace actions.

Six numbered construction tables, each keyed by (family, dimension, field,
sign): table 1 lists singular 1-space bases, table 2 totally singular 2-space
bases (including the plain linear rows), tables 3 and 4 non-degenerate
2-space bases of plus and minus type, and table 6 the even-characteristic
odd-dimensional orthogonal model of the symplectic coset actions.  The module
also builds the non-scalar witness showing that d-2 one-spaces never suffice
for the even-dimensional orthogonal groups, so the 1-space bounds are tight.

All free parameters (mu, lambda, alpha, zeta) are resolved by deterministic
scans and recorded in the candidate's provenance block.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import find_zeta, is_square, solve_trace
from .linalg import Matrix, Vector, join, span
from .forms import evalB, evalQ, is_isometry, perp, orbit_tag
from .clgroups import Inadmissible, OddQ, form_group
from .actions import ActionSpec, _expected_tag


class TableError(Exception):
    pass


class BadInput(TableError):
    pass


@dataclass(frozen=True)
class BaseCandidate:
    spec: ActionSpec
    points: tuple       # Subspace values, pairwise distinct
    provenance: dict    # table / row / chosen parameters

    @property
    def size(self):
        return len(self.points)

    def dump(self):
        """JSON-ready description: provenance plus explicit point bases."""
        out = dict(self.provenance)
        out["points"] = [[list(r) for r in U.rows] for U in self.points]
        return out


def _finish(spec, points, table, row, params):
    seen = set()
    for U in points:
        if U in seen:
            raise TableError(f"duplicate point {U} in table {table} row {row}")
        seen.add(U)
    F = spec.group.form
    if F is None:
        for U in points:
            if U.dim != spec.k:
                raise TableError(f"point of dim {U.dim}, wanted {spec.k}")
    else:
        tags = {_expected_tag(spec, F, U) for U in points}
        if len(tags) != 1:
            raise TableError(f"points not in a single orbit: tags {tags}")
        params = dict(params)
        params["orbit_tag"] = repr(next(iter(tags)))
    prov = {"table": table, "row": row, "family": spec.group.family,
            "d": spec.group.d, "q": spec.group.q, "sign": spec.sign,
            "params": params}
    return BaseCandidate(spec=spec, points=tuple(points), provenance=prov)


# ---------------------------------------------------------------------------
# Table 1: singular 1-spaces
# ---------------------------------------------------------------------------

def table1_base(family, d, q) -> BaseCandidate:
    """Base of at most d (orthogonal: d-1) singular 1-spaces."""
    if family == "GL":
        raise Inadmissible("table 1 needs a form")
    if family in ("GOplus", "GOminus", "GOcirc"):
        if d < 5:
            raise Inadmissible("orthogonal rows of table 1 need d >= 5")
    elif d < 3:
        raise Inadmissible("table 1 needs d >= 3")
    G = form_group(family, d, q)
    F, ctx = G.form, G.ctx
    params = {}

    def V(i):
        return F.one_space({"e1": 1, f"e{i}": 1})

    def W(i):
        return F.one_space({"e1": 1, f"f{i}": 1})

    e1, f1 = F.one_space({"e1": 1}), F.one_space({"f1": 1})
    if family == "GU" and d % 2:
        a = (d - 1) // 2
        mu = solve_trace(ctx, -ctx.one)
        params["mu"] = mu.code
        pts = [e1, f1] + [V(i) for i in range(2, a + 1)] \
            + [W(i) for i in range(2, a + 1)] \
            + [F.one_space({"e1": 1, "f1": mu, "x": 1})]
        row = "GU_odd"
    elif family in ("GU", "Sp"):
        a = d // 2
        pts = [e1, f1] + [V(i) for i in range(2, a + 1)] \
            + [W(i) for i in range(2, a + 1)]
        row = "GU_even_Sp"
    elif family == "GOplus":
        a = d // 2
        pts = [e1, f1] + [V(i) for i in range(2, a + 1)] \
            + [W(j) for j in range(2, a)]
        row = "GOplus"
    elif family == "GOcirc":
        a = (d - 1) // 2
        pts = [e1, f1] + [V(i) for i in range(2, a + 1)] \
            + [W(j) for j in range(2, a)] \
            + [F.one_space({"e1": -1, "f1": 1, "x": 1})]
        row = "GOcirc"
    else:  # GOminus
        a = (d - 2) // 2
        zeta = F.zeta
        params["zeta"] = zeta.code
        pts = [e1, f1] + [V(i) for i in range(2, a + 1)] \
            + [W(j) for j in range(2, a)] \
            + [F.one_space({"e1": -1, "f1": 1, "x": 1}),
               F.one_space({"e1": -zeta, "f1": 1, "y": 1})]
        row = "GOminus"
    spec = ActionSpec(G, "singular_k", k=1)
    return _finish(spec, pts, 1, row, params)


# ---------------------------------------------------------------------------
# Table 2: totally singular 2-spaces
# ---------------------------------------------------------------------------

def _gl_table2(G):
    ctx, d = G.ctx, G.d
    a = (d + 1) // 2

    def v(*idxs):
        # v_{d+1} wraps to v_1
        codes = [0] * d
        for i in idxs:
            codes[(i - 1) % d] = ctx.ADD[codes[(i - 1) % d]][1]
        return tuple(codes)

    def plane(r1, r2):
        return span(ctx, d, [r1, r2])

    if d == 4:
        # the alternating-sum plane must include v4 here, otherwise an
        # independent rescaling of v4 fixes all five spaces when q > 2
        pts = [plane(v(1), v(2)), plane(v(3), v(4)), plane(v(1, 3), v(2, 4)),
               plane(v(2), v(4)), plane(v(1, 2), v(3))]
        return pts, "GL_d4"
    Y1 = plane(v(*range(1, 2 * a, 2)), v(*range(2, 2 * a - 1, 2)))
    X = [plane(v(2 * i - 1), v(2 * i)) for i in range(1, a + 1)]
    Y2 = plane(v(1), v(3, 2 * a - 2, d))
    return X + [Y1, Y2], "GL_generic"


def _check_hyperbolic_plane(F, u: Vector, v: Vector):
    """The ordered pair must span a hyperbolic plane: both vectors singular
    and B(u, v) nonzero (the table rows do not always normalize B to 1)."""
    for w in (u, v):
        if evalB(F, w, w).code != 0:
            raise TableError("plane generator is not isotropic")
        if F.kind == "quadratic" and evalQ(F, w).code != 0:
            raise TableError("plane generator is not singular")
    if evalB(F, u, v).code == 0:
        raise TableError("generators are orthogonal; plane is not hyperbolic")


def table2_base(family, d, q) -> BaseCandidate:
    """Base of totally singular 2-spaces (linear rows: plain 2-spaces)."""
    G = form_group(family, d, q)
    F, ctx = G.form, G.ctx
    spec = ActionSpec(G, "singular_k", k=2)
    params = {}
    if family == "GL":
        if d < 4:
            raise Inadmissible("linear rows of table 2 need d >= 4")
        pts, row = _gl_table2(G)
        return _finish(spec, pts, 2, row, params)

    a = (d + 1) // 2
    V1 = F.two_space({"e1": 1}, {"e2": 1})
    V2 = F.two_space({"f1": 1}, {"f2": 1})

    def Wi(i):
        return F.two_space({"e1": 1, f"e{i}": 1},
                           {"e2": 1, "f1": -1, f"f{i}": 1})

    if family == "GU" and d == 4:
        mu = next(ctx.element(c) for c in range(1, ctx.order)
                  if ctx.ADD[c][ctx.CONJ[c]] == 0)
        params["mu"] = mu.code
        pts = [V1, V2,
               F.two_space({"e1": 1, "f1": mu}, {"e2": 1, "f2": mu}),
               F.two_space({"e1": 1}, {"f2": 1}),
               F.two_space({"e1": 1, "e2": -1}, {"f1": 1, "f2": 1})]
        row = "GU_d4"
    elif family == "Sp" and d == 4:
        last = ({"e1": 1, "f2": 1}, {"e2": 1, "f1": 1, "f2": 1}) if q % 2 == 0 \
            else ({"e1": 1, "f2": 1}, {"e2": 1, "f1": 1})
        pts = [V1, V2,
               F.two_space({"e1": 1, "f1": 1, "f2": 1}, {"e2": 1, "f1": 1}),
               F.two_space(*last)]
        row = "Sp_d4_even_q" if q % 2 == 0 else "Sp_d4_odd_q"
    elif family == "GU" and d == 5:
        lam = solve_trace(ctx, ctx.one)
        params["lambda"] = lam.code
        pts = [V1, V2,
               F.two_space({"e2": -1, "f2": lam, "x": 1}, {"f1": 1}),
               F.two_space({"e1": -1, "f1": lam, "x": 1}, {"f2": 1})]
        row = "GU_d5"
    elif family in ("Sp", "GU") and d == 6:
        pts = [V1, V2,
               F.two_space({"e1": 1, "e3": 1}, {"e2": 1, "f1": -1, "f3": 1}),
               F.two_space({"e1": 1, "e2": -1}, {"f1": 1, "f2": 1})]
        row = "Sp_GU_d6"
    elif a >= 4:
        A = [V1, V2] + [Wi(i) for i in range(3, a)]
        if family in ("GU", "Sp", "GOplus") and d % 2 == 0:
            last = F.two_space(
                {"e1": 1, f"e{a}": 1},
                {"e2": 1, f"e{a}": -1, "f1": -1, "f2": 1, f"f{a}": 1})
            row = "even_dim_generic"
        elif family == "GU":
            lam = solve_trace(ctx, ctx.one)
            params["lambda"] = lam.code
            last = F.two_space({"e1": -1, "f1": lam, "x": 1},
                               {"e3": 1, "f2": 1})
            row = "GU_odd_generic"
        elif family == "GOcirc":
            last = F.two_space({"e1": -1, "f1": 1, "x": 1},
                               {"e3": 1, "f2": 1})
            row = "GOcirc_generic"
        elif family == "GOminus":
            zeta = F.zeta
            params["zeta"] = zeta.code
            last = F.two_space(
                {"e1": -1, "e2": 1, "f1": 1, "x": 1},
                {"e1": -zeta, "f1": 1, "f2": zeta, "y": 1})
            row = "GOminus_generic"
        else:
            raise Inadmissible(f"no table 2 row for ({family}, {d}, {q})")
        pts = A + [last]
    else:
        raise Inadmissible(f"no table 2 row for ({family}, {d}, {q})")
    return _finish(spec, pts, 2, row, params)


# ---------------------------------------------------------------------------
# 1-space bases in the non-degenerate / non-singular orbits
# ---------------------------------------------------------------------------

def _gu_orthonormal_rows(F):
    """Rows of an orthonormal basis of the standard unitary space, plus the
    certificate check B(w_i, w_j) = delta_ij."""
    ctx, d = F.ctx, F.d
    mu = solve_trace(ctx, ctx.one)
    nu = ctx.element(ctx.NEG[ctx.CONJ[mu.code]])
    neg1 = ctx.NEG[1]
    s = next(c for c in range(1, ctx.order)
             if ctx.MUL[c][ctx.CONJ[c]] == neg1)
    rows = []
    for j in range(1, d // 2 + 1):
        rows.append(F.vec({f"e{j}": 1, f"f{j}": mu}).codes)
        u2 = F.vec({f"e{j}": 1, f"f{j}": nu})
        rows.append(u2.scale(s).codes)
    if d % 2:
        rows.append(F.basis_vector("x").codes)
    vecs = [Vector(ctx, r) for r in rows]
    for i in range(d):
        for j in range(d):
            want = 1 if i == j else 0
            if evalB(F, vecs[i], vecs[j]).code != want:
                raise TableError("orthonormal base change failed")
    return rows, {"mu": mu.code, "scale": s}


def _combine(ctx, rows, coeffs):
    """Vector sum(coeffs[i] * rows[i]) at the code level."""
    d = len(rows[0])
    out = [0] * d
    for c, r in zip(coeffs, rows):
        code = c.code if hasattr(c, "code") else c
        if code:
            mc = ctx.MUL[code]
            for j in range(d):
                if r[j]:
                    out[j] = ctx.ADD[out[j]][mc[r[j]]]
    return tuple(out)


def _gu_n1(G):
    F, ctx, d, q = G.form, G.ctx, G.d, G.q
    rows, params = _gu_orthonormal_rows(F)

    def line(coeffs):
        return span(ctx, d, [_combine(ctx, rows, coeffs)])

    def unit(i):
        return [1 if j == i else 0 for j in range(d)]

    if d % 2 or q > 2:
        alpha = ctx.primitive_element()
        for mu in (alpha, alpha.inverse(), alpha * alpha):
            coeffs = [1] * (d - 1) + [mu]
            v = Vector(ctx, _combine(ctx, rows, coeffs))
            if evalB(F, v, v).code != 0:
                break
        else:
            raise TableError("no non-degenerate closing vector found")
        params["closing_mu"] = mu.code
        pts = [line(unit(i)) for i in range(d - 1)] + [line(coeffs)]
        row = "GU_d_odd_or_q_gt_2"
    else:
        pts = [line(unit(0)), line(unit(1))]
        for i in range(2, d):
            coeffs = [0] * d
            coeffs[0] = coeffs[1] = coeffs[i] = 1
            pts.append(line(coeffs))
        row = "GU_d_even_q2"
    return pts, row, params


def _nonsquare_alpha(ctx):
    """First alpha with -alpha a non-square."""
    for c in range(1, ctx.order):
        if not is_square(ctx.element(ctx.NEG[c])):
            return ctx.element(c)
    raise TableError("no suitable alpha; field has no non-squares")


def _xy_square_lines(F):
    """First two vectors of <x, y> with Q nonzero (odd q: a square) spanning
    1-spaces different from <x> and from each other."""
    ctx = F.ctx
    xs = F.one_space({"x": 1})
    found = []
    for cx in range(ctx.order):
        for cy in range(ctx.order):
            if cx == 0 and cy == 0:
                continue
            v = F.vec({"x": cx, "y": cy})
            qv = evalQ(F, v)
            if qv.code == 0 or (ctx.p != 2 and not is_square(qv)):
                continue
            L = span(ctx, F.d, [v.codes])
            if L == xs or L in found:
                continue
            found.append(L)
            if len(found) == 2:
                return found
    raise TableError("not enough square-value lines in <x, y>")


def _go_n1(G, sign):
    F, ctx, d, q = G.form, G.ctx, G.d, G.q
    fam = G.family
    params = {}

    def w(k, nu):
        return {f"e{k}": 1, f"f{k}": -nu}

    def one(combo):
        return F.one_space(combo)

    def merged(base, extra):
        out = dict(base)
        out.update(extra)
        return out

    x = one({"x": 1}) if "x" in F.labels else None
    if fam == "GOminus" and d == 4:
        if q == 3:
            raise Inadmissible("the (4, -) q=3 orbit is an exact special case")
        v1, v2 = _xy_square_lines(F)
        v2vec = Vector(ctx, v2.rows[0])
        pts = [x, v1, span(ctx, d, [(F.basis_vector("e1") + v2vec).codes])]
        return pts, "d4_minus", params
    if fam == "GOcirc" and d == 5:
        if sign == "+":
            pts = [x, one({"e1": 1, "x": 1}), one({"f1": 1, "x": 1}),
                   one({"e2": 1, "x": 1})]
            return pts, "d5_perp_plus", params
        if sign == "-":
            alpha = _nonsquare_alpha(ctx)
            params["alpha"] = alpha.code
            pts = [one(w(1, alpha)),
                   one(merged(w(1, alpha), {"e2": 1})),
                   one(merged(w(1, alpha), {"f2": 1})),
                   one(merged(w(2, alpha), {"e1": 1})),
                   one(merged(w(2, ctx.one + alpha), {"f1": 1, "x": 1}))]
            return pts, "d5_perp_minus", params
        raise Inadmissible("odd-dimensional rows need a perp sign")
    if fam == "GOplus" and d >= 6:
        a = d // 2
        neg1 = ctx.element(ctx.NEG[1])
        pts = [one(w(1, neg1))]
        pts += [one(merged(w(1, neg1), {f"e{i}": 1})) for i in range(2, a + 1)]
        pts += [one(merged(w(1, neg1), {f"f{j}": 1})) for j in range(2, a)]
        pts.append(one(merged(w(2, neg1), {"e1": 1})))
        return pts, "plus_generic", params
    if fam == "GOminus" and d >= 6:
        a = (d - 2) // 2
        if q == 3:
            pts = [x]
            pts += [one({f"e{i}": 1, "x": 1}) for i in range(1, a + 1)]
            pts.append(one(merged(w(1, ctx.one), {"y": 1})))
            pts += [one({f"f{j}": 1, "x": 1}) for j in range(1, a)]
            return pts, "minus_q3", params
        v1, v2 = _xy_square_lines(F)
        v2vec = Vector(ctx, v2.rows[0])
        pts = [x, v1]
        for i in range(1, a + 1):
            pts.append(span(ctx, d,
                            [(F.basis_vector(f"e{i}") + v2vec).codes]))
        pts += [one({f"f{j}": 1, "x": 1}) for j in range(1, a)]
        return pts, "minus_generic", params
    if fam == "GOcirc" and d >= 7:
        a = (d - 1) // 2
        if sign == "+":
            pts = [x]
            pts += [one({f"e{i}": 1, "x": 1}) for i in range(1, a + 1)]
            pts += [one({f"f{j}": 1, "x": 1}) for j in range(1, a)]
            return pts, "odd_perp_plus", params
        if sign == "-":
            alpha = _nonsquare_alpha(ctx)
            params["alpha"] = alpha.code
            pts = [one(w(1, alpha))]
            pts += [one(merged(w(1, alpha), {f"e{i}": 1}))
                    for i in range(2, a + 1)]
            pts += [one(merged(w(1, alpha), {f"f{j}": 1}))
                    for j in range(2, a)]
            pts.append(one(merged(w(2, alpha), {"e1": 1})))
            pts.append(one(merged(w(2, ctx.one + alpha), {"f1": 1, "x": 1})))
            return pts, "odd_perp_minus", params
        raise Inadmissible("odd-dimensional rows need a perp sign")
    raise Inadmissible(f"no 1-space row for ({fam}, {d}, {q}, {sign})")


def table_n1_base(family, d, q, sign=None) -> BaseCandidate:
    """Base inside a non-degenerate (odd q) or non-singular (even q)
    1-space orbit; unitary and orthogonal families only."""
    if family == "GU":
        if d < 3:
            raise Inadmissible("unitary 1-space rows need d >= 3")
        G = form_group(family, d, q)
        pts, row, params = _gu_n1(G)
        spec = ActionSpec(G, "nondeg_k", k=1)
        return _finish(spec, pts, "n1", row, params)
    if family not in ("GOplus", "GOminus", "GOcirc"):
        raise Inadmissible("1-space rows exist for GU and the GO families")
    if d < 4:
        raise Inadmissible("orthogonal 1-space rows need d >= 4")
    if family == "GOcirc" and q % 2 == 0:
        raise Inadmissible("even q odd dimension has no such orbit")
    G = form_group(family, d, q)
    pts, row, params = _go_n1(G, sign)
    if q % 2 == 0:
        spec = ActionSpec(G, "nonsingular_1")
    else:
        spec = ActionSpec(G, "nondeg_k", k=1)
    return _finish(spec, pts, "n1", row, params)


# ---------------------------------------------------------------------------
# Tables 3 and 4: non-degenerate 2-spaces
# ---------------------------------------------------------------------------

def _check_elliptic_plane(F, u: Vector, v: Vector, zeta):
    if (evalQ(F, u).code != 1 or evalQ(F, v) != zeta
            or evalB(F, u, v).code != 1):
        raise TableError("generators do not form an elliptic pair")


def _table3(G):
    F, ctx, d, q = G.form, G.ctx, G.d, G.q
    fam = G.family
    a = (d + 1) // 2
    params = {}
    V1 = ({"e1": 1}, {"f1": 1})
    V2 = ({"e2": 1}, {"f1": 1, "f2": 1})

    def Wi(i):
        return ({"e1": 1, f"e{i}": 1}, {"f2": 1, f"f{i}": 1})

    if fam in ("Sp", "GU") and d == 6:
        if q % 2 == 0:
            raise Inadmissible("the d=6 row needs odd q")
        pairs = [V1, V2, Wi(3),
                 ({"e1": 1, "e2": 1}, {"e1": 1, "f2": 1, "f3": 1})]
        row = "Sp_GU_d6_odd_q"
    elif fam == "GU" and d % 2 and a >= 3:
        lam = solve_trace(ctx, ctx.one)
        params["lambda"] = lam.code
        pairs = [V1, V2] + [Wi(i) for i in range(3, a)]
        pairs.append(({"e1": lam, "f1": -1, "x": 1},
                      {"e2": lam, "f2": -1, "x": 1}))
        row = "GU_odd"
    elif fam in ("GU", "Sp", "GOplus", "GOminus") and d % 2 == 0 and a >= 4:
        pairs = [V1, V2] + [Wi(i) for i in range(3, a)]
        if fam == "GOminus":
            zeta = F.zeta
            params["zeta"] = zeta.code
            pairs.append(({"e1": 1, "f1": -1, "x": 1},
                          {"e2": zeta, "f2": -1, "y": 1}))
            row = "GOminus"
        elif q % 2 == 0:
            pairs.append(({"e2": 1, f"e{a}": 1, "f1": 1},
                          {"e1": 1, "f2": 1, f"f{a}": 1}))
            row = "even_dim_even_q"
        else:
            pairs.append(({f"e{a}": 1, "f1": 1},
                          {"e2": 1, "f1": 1, f"f{a}": 1}))
            row = "even_dim_odd_q"
    elif fam == "GOcirc" and a >= 4:
        pairs = [V1, V2] + [Wi(i) for i in range(3, a)]
        pairs.append(({"e1": 1, "f1": -1, "x": 1},
                      {"e2": 1, "f2": -1, "x": 1}))
        row = "GOcirc"
    else:
        raise Inadmissible(f"no table 3 row for ({fam}, {d}, {q})")
    pts = []
    for c1, c2 in pairs:
        u, v = F.vec(c1), F.vec(c2)
        _check_hyperbolic_plane(F, u, v)
        pts.append(span(ctx, d, [u.codes, v.codes]))
    return pts, row, params


def _table4(G):
    F, ctx, d = G.form, G.ctx, G.d
    fam = G.family
    a = (d + 1) // 2
    if a < 4:
        raise Inadmissible("minus-type rows need d >= 7")
    zeta = F.zeta if fam == "GOminus" else find_zeta(ctx)
    params = {"zeta": zeta.code}
    pairs = [({"e1": 1, "f1": 1}, {"e2": 1, "f1": 1, "f2": zeta})]
    if zeta.code != 1:
        pairs.append(({"e2": 1, "f1": 1, "f2": 1}, {"e1": 1, "f1": zeta}))
    else:
        pairs.append(({"e1": 1, "f1": 1, "f2": 1}, {"e2": 1, "f2": 1}))
    for i in range(3, a):
        pairs.append(({"e1": 1, f"e{i}": 1, "f1": 1},
                      {"e2": 1, f"e{i}": zeta, f"f{i}": 1}))
    if fam == "GOcirc":
        pairs.append(({"e2": 1, "f1": 1, "x": 1},
                      {"e1": 1, "e3": 1, "f3": zeta}))
        row = "GOcirc"
    elif fam == "GOplus":
        pairs.append(({"e1": 1, "e2": 1, "f2": 1, f"f{a}": 1},
                      {"e3": 1, "f1": 1, "f3": zeta}))
        row = "GOplus"
    elif fam == "GOminus":
        pairs.append(({"e1": 1, "e3": -1, "x": 1},
                      {"f1": 1, "f3": 1, "y": 1}))
        row = "GOminus"
    else:
        raise Inadmissible("minus-type 2-space rows are orthogonal only")
    pts = []
    for c1, c2 in pairs:
        u, v = F.vec(c1), F.vec(c2)
        _check_elliptic_plane(F, u, v, zeta)
        pts.append(span(ctx, d, [u.codes, v.codes]))
    return pts, row, params


def table3_table4_base(family, d, q, sign=None) -> BaseCandidate:
    """Base of non-degenerate 2-spaces: plus type (table 3, orthogonal sign
    '+' or symplectic/unitary sign None) or minus type (table 4, sign '-')."""
    orthogonal = family in ("GOplus", "GOminus", "GOcirc")
    G = form_group(family, d, q)
    if orthogonal:
        if sign not in ("+", "-"):
            raise BadInput("orthogonal rows need sign '+' or '-'")
        if d < 7:
            raise Inadmissible("orthogonal 2-space rows need d >= 7")
        if family == "GOcirc" and q % 2 == 0:
            raise Inadmissible("even q odd dimension has no such orbit")
        if sign == "-":
            pts, row, params = _table4(G)
            spec = ActionSpec(G, "nondeg_k", k=2, sign="-")
            return _finish(spec, pts, 4, row, params)
        pts, row, params = _table3(G)
        spec = ActionSpec(G, "nondeg_k", k=2, sign="+")
        return _finish(spec, pts, 3, row, params)
    if family not in ("Sp", "GU"):
        raise Inadmissible("no non-degenerate 2-space rows for this family")
    if sign is not None:
        raise BadInput("symplectic/unitary rows take no sign")
    if d < 5:
        raise Inadmissible("non-degenerate 2-space rows need d >= 5")
    pts, row, params = _table3(G)
    spec = ActionSpec(G, "nondeg_k", k=2)
    return _finish(spec, pts, 3, row, params)


# ---------------------------------------------------------------------------
# Table 6: the symplectic coset actions, odd orthogonal model
# ---------------------------------------------------------------------------

def table6_base(m, q, sign) -> BaseCandidate:
    """Base of exactly 2m non-degenerate 2m-subspaces of the (2m+1)-space."""
    if q % 2:
        raise OddQ("the odd-dimensional model needs even q")
    if m < 2:
        raise Inadmissible("table 6 needs m >= 2")
    if sign not in ("+", "-"):
        raise BadInput("sign must be '+' or '-'")
    G = form_group("GOcirc", 2 * m + 1, q)
    F, ctx, d = G.form, G.ctx, G.d
    zeta = find_zeta(ctx)
    lam = next(ctx.element(c) for c in range(1, ctx.order)
               if ctx.MUL[c][c] == zeta.code)
    params = {"zeta": zeta.code, "lambda": lam.code}

    def A(i):
        return [F.basis_vector(f"e{i}").codes, F.basis_vector(f"f{i}").codes]

    def B_(i):
        return [F.vec({f"e{i}": 1, "x": 1}).codes,
                F.vec({f"f{i}": 1, "x": lam}).codes]

    def P(i):   # <e_i, f_i + x>
        return [F.basis_vector(f"e{i}").codes,
                F.vec({f"f{i}": 1, "x": 1}).codes]

    def M(i):   # <e_i + x, f_i>
        return [F.vec({f"e{i}": 1, "x": 1}).codes,
                F.basis_vector(f"f{i}").codes]

    def space(slots):
        rows = []
        for blk in slots:
            rows += blk
        return span(ctx, d, rows)

    if sign == "+":
        base = [A(i) for i in range(1, m + 1)]
        pts = [space(base)]
        for i in range(1, m + 1):
            pts.append(space(base[:i - 1] + [P(i)] + base[i:]))
        for j in range(1, m):
            pts.append(space(base[:j - 1] + [M(j)] + base[j:]))
        row = "plus"
    else:
        base = [B_(1)] + [A(i) for i in range(2, m + 1)]
        pts = [space(base)]
        for i in range(2, m + 1):
            pts.append(space(base[:i - 1] + [P(i)] + base[i:]))
        for j in range(2, m):
            pts.append(space(base[:j - 1] + [M(j)] + base[j:]))
        pts.append(space([A(1), B_(2)] + base[2:]))
        pts.append(space([P(1), B_(2)] + base[2:]))
        row = "minus"
    spec = ActionSpec(G, "coset_sp_go", k=2 * m, sign=sign)
    return _finish(spec, pts, 6, row, params)


# ---------------------------------------------------------------------------
# The tightness witness
# ---------------------------------------------------------------------------

def tightness_witness(F, spaces) -> Matrix:
    """A non-scalar isometry fixing d-2 given 1-spaces of an even-dimensional
    quadratic space.

    The witness fixes pointwise a (d-2)-space W containing the given lines.
    When some u in the 2-dimensional perp of W has Q(u) nonzero, the witness
    is the transvection (even q) or reflection (odd q) in u.  Otherwise the
    perp is a totally singular plane <u1, u2> inside W, and the witness is
    the shear v -> v + B(v, u1) u2 - B(v, u2) u1.
    """
    if F.kind != "quadratic" or F.d % 2 or F.d < 6:
        raise BadInput("need an even-dimensional quadratic space, d >= 6")
    spaces = list(spaces)
    if len(spaces) != F.d - 2:
        raise BadInput(f"need exactly {F.d - 2} one-spaces, got {len(spaces)}")
    if any(U.dim != 1 for U in spaces):
        raise BadInput("all given subspaces must be 1-dimensional")
    ctx, d = F.ctx, F.d
    W = spaces[0]
    for U in spaces[1:]:
        W = join(W, U)
    for i in range(d):
        if W.dim >= d - 2:
            break
        cand = span(ctx, d, [tuple(1 if j == i else 0 for j in range(d))])
        if not W.contains_subspace(cand):
            W = join(W, cand)
    P = perp(F, W)
    if P.dim != 2:
        raise TableError("perp of the enclosing space is not a plane")
    u = None
    for v in P.vectors():
        if not v.is_zero() and evalQ(F, v).code != 0:
            u = v
            break
    if u is not None:
        from .clgroups import _transvection
        inv_q = ctx.INV[evalQ(F, u).code]
        rows = _transvection(F, u.codes, inv_q, sign_neg=(ctx.p != 2))
    else:
        u1, u2 = Vector(ctx, P.rows[0]), Vector(ctx, P.rows[1])
        rows = []
        for i in range(d):
            b = Vector(ctx, tuple(1 if j == i else 0 for j in range(d)))
            img = b + u2.scale(evalB(F, b, u1)) - u1.scale(evalB(F, b, u2))
            rows.append(img.codes)
    g = Matrix(ctx, rows)
    if not is_isometry(F, g):
        raise TableError("witness construction produced a non-isometry")
    if g.is_scalar():
        raise TableError("witness construction produced a scalar")
    from .linalg import act
    for U in spaces:
        if act(U, g) != U:
            raise TableError("witness does not stabilize the given lines")
    return g
