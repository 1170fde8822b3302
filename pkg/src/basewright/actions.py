"""Primitive actions as explicit point sets.

Subspace orbits of the classical groups, the symplectic coset action in its
odd-dimensional orthogonal model, and the action of Sym(l) on uniform set
partitions, each with induced permutation images of the group generators and
closed-form degree oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .linalg import Subspace, span, vec_mat_codes
from .forms import classify, orbit_tag
from .clgroups import MatrixGroup, PermGenSet
from .bsgs import Permutation

ORBIT_CAP = 10 ** 6

KINDS = ("singular_k", "nondeg_k", "nonsingular_1", "coset_sp_go", "partitions")


class ActionError(Exception):
    pass


class OrbitTooLarge(ActionError):
    pass


class SeedTagMismatch(ActionError):
    pass


class BadShape(ActionError):
    pass


class BadParams(ActionError):
    pass


class NoFormula(ActionError):
    pass


@dataclass(frozen=True)
class ActionSpec:
    group: Optional[MatrixGroup]
    kind: str
    k: int = 1
    sign: Optional[str] = None   # subspace type for nondeg_k / coset type
    s: int = 0                   # partitions only
    t: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ActionError(f"unknown action kind {self.kind!r}")


@dataclass(frozen=True)
class Orbit:
    spec: ActionSpec
    points: tuple
    index: dict
    perm_gens: PermGenSet

    @property
    def degree(self):
        return len(self.points)


# ---------------------------------------------------------------------------
# Degree formulas
# ---------------------------------------------------------------------------

def _prod(iterable):
    n = 1
    for v in iterable:
        n *= v
    return n


def _gaussian_binomial(d, k, q):
    num = _prod(q ** (d - i) - 1 for i in range(k))
    den = _prod(q ** (i + 1) - 1 for i in range(k))
    return num // den


def _eps_of(family):
    return {"GOplus": 1, "GOminus": -1}.get(family)


def _sign_value(sign):
    if sign == "+":
        return 1
    if sign == "-":
        return -1
    raise NoFormula(f"need an explicit subspace type, got {sign!r}")


def degree_formula(spec: ActionSpec) -> int:
    """Closed-form orbit size; raises NoFormula for untabulated kinds."""
    if spec.kind == "partitions":
        l, s, t = spec.s * spec.t, spec.s, spec.t
        return math.factorial(l) // (math.factorial(t) ** s * math.factorial(s))
    G = spec.group
    if G is None:
        raise NoFormula("spec has no group")
    d, q, k = G.d, G.q, spec.k
    fam = G.family
    if spec.kind == "coset_sp_go":
        m = (d - 1) // 2 if fam == "GOcirc" else d // 2
        eps = _sign_value(spec.sign)
        return q ** m * (q ** m + eps) // 2
    if spec.kind == "nonsingular_1":
        if fam not in ("GOplus", "GOminus") or q % 2:
            raise NoFormula("nonsingular 1-spaces are the even-q even-d case")
        eps = _eps_of(fam)
        return q ** ((d - 2) // 2) * (q ** (d // 2) - eps)
    if spec.kind == "singular_k":
        if fam == "GL":
            return _gaussian_binomial(d, k, q)
        if fam == "Sp":
            return _prod((q ** (d - 2 * k + 2 * i) - 1) // (q ** i - 1)
                         for i in range(1, k + 1))
        if fam == "GU":
            num = _prod(q ** i - (-1) ** i for i in range(d - 2 * k + 1, d + 1))
            den = _prod(q ** (2 * i) - 1 for i in range(1, k + 1))
            return num // den
        if fam in ("GOplus", "GOminus"):
            eps = _eps_of(fam)
            m = d // 2
            num = (q ** m - eps) * (q ** (m - k) + eps)
            num *= _prod(q ** (2 * i) - 1 for i in range(m - k + 1, m))
            den = _prod(q ** i - 1 for i in range(1, k + 1))
            return num // den
        if fam == "GOcirc":
            m = (d - 1) // 2
            num = _prod(q ** (2 * i) - 1 for i in range(m - k + 1, m + 1))
            den = _prod(q ** i - 1 for i in range(1, k + 1))
            return num // den
    if spec.kind == "nondeg_k":
        if fam == "Sp":
            if k % 2:
                raise NoFormula("symplectic non-degenerate spaces have even dimension")
            num = q ** (k * (d - k) // 2)
            num *= _prod(q ** (2 * i) - 1
                         for i in range((d - k + 2) // 2, d // 2 + 1))
            den = _prod(q ** (2 * i) - 1 for i in range(1, k // 2 + 1))
            return num // den
        if fam == "GU":
            num = q ** (k * (d - k))
            num *= _prod(q ** i - (-1) ** i for i in range(d - k + 1, d + 1))
            den = _prod(q ** i - (-1) ** i for i in range(1, k + 1))
            return num // den
        if fam in ("GOplus", "GOminus"):
            eps = _eps_of(fam)
            m = d // 2
            if k % 2 == 0:
                sub = _sign_value(spec.sign)
                num = q ** (k * (d - k) // 2) * (q ** m - eps)
                num *= _prod(q ** (2 * i) - 1 for i in range((d - k) // 2, m))
                den = 2 * (q ** (k // 2) - sub) * (q ** ((d - k) // 2) - eps * sub)
                den *= _prod(q ** (2 * i) - 1 for i in range(1, k // 2))
                return num // den
            if q % 2 == 0 and k > 1:
                raise NoFormula("odd-dimensional non-degenerate spaces need odd q")
            num = q ** ((k * d - k * k - 1) // 2) * (q ** m - eps)
            num *= _prod(q ** (2 * i) - 1 for i in range((d - k + 1) // 2, m))
            den = (2 if q % 2 else 1)
            den *= _prod(q ** (2 * i) - 1 for i in range(1, (k - 1) // 2 + 1))
            return num // den
        if fam == "GOcirc":
            if k % 2:
                raise NoFormula("odd-dimensional case handled via the complement")
            m = (d - 1) // 2
            sub = _sign_value(spec.sign)
            num = q ** (k * (d - k) // 2)
            num *= _prod(q ** (2 * i) - 1 for i in range((d - k + 1) // 2, m + 1))
            den = 2 * (q ** (k // 2) - sub)
            den *= _prod(q ** (2 * i) - 1 for i in range(1, k // 2))
            return num // den
    raise NoFormula(f"no degree formula for {fam}, kind {spec.kind}, k={k}")


# ---------------------------------------------------------------------------
# Orbit enumeration
# ---------------------------------------------------------------------------

def _expected_tag(spec: ActionSpec, form, seed: Subspace):
    tag = classify(form, seed)
    if spec.kind == "singular_k":
        if tag != "totally_singular" or seed.dim != spec.k:
            raise SeedTagMismatch(
                f"seed is {tag} of dim {seed.dim}, wanted totally singular "
                f"dim {spec.k}")
    elif spec.kind == "nonsingular_1":
        if tag != "nonsingular_1":
            raise SeedTagMismatch(f"seed is {tag}, wanted nonsingular_1")
    elif spec.kind == "nondeg_k":
        want_dim = spec.k
        if not tag.startswith("nondegenerate") or seed.dim != want_dim:
            raise SeedTagMismatch(
                f"seed is {tag} of dim {seed.dim}, wanted non-degenerate "
                f"dim {want_dim}")
        if spec.sign in ("+", "-") and tag not in ("nondegenerate",
                                                   f"nondegenerate({spec.sign})"):
            raise SeedTagMismatch(f"seed is {tag}, wanted type {spec.sign}")
    elif spec.kind == "coset_sp_go":
        if tag != f"nondegenerate({spec.sign})":
            raise SeedTagMismatch(f"seed is {tag}, wanted "
                                  f"nondegenerate({spec.sign})")
    return orbit_tag(form, seed)


def enumerate_orbit(spec: ActionSpec, seed: Subspace, cap=ORBIT_CAP) -> Orbit:
    """Breadth-first closure of the seed under the group generators."""
    G = spec.group
    if G is None or spec.kind == "partitions":
        raise ActionError("use partition_action for partition specs")
    form = G.form
    seed_tag = _expected_tag(spec, form, seed) if form is not None else None
    ctx, d = G.ctx, G.d
    gen_rows = [g.rows for g in G.gens]
    start = seed.rows
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for rows in frontier:
            for g in gen_rows:
                image = span(ctx, d, [vec_mat_codes(r, g, ctx) for r in rows]).rows
                if image not in seen:
                    if len(seen) >= cap:
                        raise OrbitTooLarge(
                            f"orbit through {start} exceeds cap {cap}")
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    ordered = sorted(seen)
    index = {rows: i for i, rows in enumerate(ordered)}
    points = tuple(span(ctx, d, rows) for rows in ordered)
    if form is not None and len(ordered) <= 10 ** 5:
        for U in points:
            if orbit_tag(form, U) != seed_tag:
                raise SeedTagMismatch("orbit is not tag-homogeneous")
    perms = []
    for g in gen_rows:
        images = tuple(
            index[span(ctx, d, [vec_mat_codes(r, g, ctx) for r in rows]).rows]
            for rows in ordered)
        perms.append(Permutation(images))
    tag = f"{G.family}_{G.d}_{G.q}_{spec.kind}_{spec.k}"
    pg = PermGenSet(name=tag, degree=len(ordered), gens=tuple(perms),
                    order=G.order)
    return Orbit(spec=spec, points=points, index=index, perm_gens=pg)


# ---------------------------------------------------------------------------
# Canonical seeds
# ---------------------------------------------------------------------------

def standard_seed(spec: ActionSpec) -> Subspace:
    """A canonical point with the spec's classify-tag, assembled from the
    standard basis."""
    from .gf import solve_trace, find_zeta, is_square
    G = spec.group
    F = G.form
    if F is None:
        if spec.kind != "singular_k":
            raise ActionError("linear groups only act on plain subspaces here")
        rows = [tuple(1 if j == i else 0 for j in range(G.d))
                for i in range(spec.k)]
        return span(G.ctx, G.d, rows)
    ctx, d, k = G.ctx, G.d, spec.k
    labels = F.labels
    npairs = sum(1 for l in labels if l.startswith("e"))

    def pair_rows(count, start=1):
        out = []
        for j in range(start, start + count):
            out.append(F.basis_vector(f"e{j}").codes)
            out.append(F.basis_vector(f"f{j}").codes)
        return out

    if spec.kind == "singular_k":
        if k > npairs:
            raise ActionError(f"no totally singular {k}-space available")
        rows = [F.basis_vector(f"e{j}").codes for j in range(1, k + 1)]
        return span(ctx, d, rows)
    if spec.kind == "nonsingular_1":
        return F.one_space({"e1": 1, "f1": 1})
    if spec.kind == "coset_sp_go":
        if spec.sign == "+":
            return span(ctx, d, pair_rows(npairs))
        zeta = find_zeta(ctx)
        lam = next(c for c in range(1, ctx.order)
                   if ctx.MUL[c][c] == zeta.code)
        u = F.vec({f"e{npairs}": 1, f"f{npairs}": 1})
        v = F.vec({f"f{npairs}": 1, "x": lam})
        return span(ctx, d, pair_rows(npairs - 1) + [u.codes, v.codes])
    if spec.kind != "nondeg_k":
        raise ActionError(f"no canonical seed for kind {spec.kind!r}")

    if F.kind in ("unitary", "symplectic"):
        if k % 2 == 0:
            return span(ctx, d, pair_rows(k // 2))
        if F.kind == "symplectic":
            raise ActionError("symplectic non-degenerate spaces have even dimension")
        rows = pair_rows((k - 1) // 2)
        if "x" in labels:
            rows.append(F.basis_vector("x").codes)
        else:
            mu = solve_trace(ctx, ctx.one)
            j = (k - 1) // 2 + 1
            rows.append(F.vec({f"e{j}": 1, f"f{j}": mu}).codes)
        return span(ctx, d, rows)

    # quadratic forms
    if k == 1:
        if ctx.p == 2:
            raise ActionError("even q 1-spaces are the nonsingular_1 kind")
        if spec.sign in (None, "sq"):
            return F.one_space({"e1": 1, "f1": 1})
        if spec.sign == "ns":
            nu = next(c for c in range(2, ctx.order)
                      if not is_square(ctx.element(c)))
            return F.one_space({"e1": 1, "f1": nu})
        raise ActionError(f"bad 1-space orbit selector {spec.sign!r}")
    if k % 2:
        raise ActionError("only even-dimensional or 1-dimensional seeds built")
    if spec.sign == "+":
        return span(ctx, d, pair_rows(k // 2))
    if spec.sign != "-":
        raise ActionError(f"need a type for quadratic {k}-spaces, got {spec.sign!r}")
    rows = pair_rows(k // 2 - 1)
    if F.sign == "-":
        rows += [F.basis_vector("x").codes, F.basis_vector("y").codes]
        return span(ctx, d, rows)
    # build an elliptic plane on the last two hyperbolic pairs
    if k // 2 + 1 > npairs:
        raise ActionError("not enough hyperbolic pairs for a minus-type seed")
    a, b = npairs - 1, npairs
    zeta = find_zeta(ctx)
    u = F.vec({f"e{a}": 1, f"f{a}": 1})
    v = F.vec({f"e{b}": 1, f"f{a}": 1, f"f{b}": zeta})
    return span(ctx, d, rows + [u.codes, v.codes])


# ---------------------------------------------------------------------------
# Partition action
# ---------------------------------------------------------------------------

def _canonical_partition(blocks):
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def partition_action(l, s, t) -> Orbit:
    """Sym(l) on partitions of {0..l-1} into s blocks of size t."""
    if l != s * t or s < 2 or t < 2 or l < 5:
        raise BadShape(f"need l = s*t with s,t >= 2 and l >= 5, got ({l},{s},{t})")
    spec = ActionSpec(group=None, kind="partitions", s=s, t=t)
    n = degree_formula(spec)
    if n > ORBIT_CAP:
        raise OrbitTooLarge(f"{n} partitions exceeds cap {ORBIT_CAP}")
    gens = [Permutation.from_cycles([(0, 1)], l),
            Permutation.from_cycles([tuple(range(l))], l)]
    seed = _canonical_partition(tuple(range(b * t, (b + 1) * t)) for b in range(s))
    seen = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for part in frontier:
            for g in gens:
                image = _canonical_partition(
                    tuple(g(x) for x in block) for block in part)
                if image not in seen:
                    seen.add(image)
                    nxt.append(image)
        frontier = nxt
    ordered = sorted(seen)
    if len(ordered) != n:
        raise ActionError("partition enumeration disagrees with the formula")
    index = {p: i for i, p in enumerate(ordered)}
    perms = tuple(
        Permutation(tuple(index[_canonical_partition(
            tuple(g(x) for x in block) for block in part)]
            for part in ordered))
        for g in gens)
    pg = PermGenSet(name=f"Sym({l})_partitions_{s}x{t}", degree=n, gens=perms,
                    order=math.factorial(l))
    return Orbit(spec=spec, points=tuple(ordered), index=index, perm_gens=pg)


# ---------------------------------------------------------------------------
# Pure bound formulas
# ---------------------------------------------------------------------------

def _ceil_log(base, value):
    """Smallest a >= 0 with base^a >= value (exact integers)."""
    if base < 2 or value < 1:
        raise BadParams(f"ceil_log({base}, {value})")
    a = 0
    power = 1
    while power < value:
        power *= base
        a += 1
    return a


def bound_functions(kind, **params) -> int:
    """The closed-form base-size bounds, evaluated exactly."""
    if kind in ("HLM_i", "HLM_ii", "HLM_iii"):
        d, k = params.get("d"), params.get("k")
        if not d or not k or k < 1 or d < k:
            raise BadParams(f"{kind} needs 1 <= k <= d")
        add = {"HLM_i": 10, "HLM_ii": 11, "HLM_iii": 5}[kind]
        return d // k + add
    if kind == "partitions":
        s, t = params.get("s"), params.get("t")
        if not s or not t or s < 2 or t < 2:
            raise BadParams("partitions bound needs s, t >= 2")
        return _ceil_log(s, t) + 3
    if kind == "diagonal":
        k, torder = params.get("k"), params.get("t_order")
        if not k or not torder or k < 2 or torder < 60:
            raise BadParams("diagonal bound needs k >= 2 and a simple group order")
        return _ceil_log(torder, k) + 2
    if kind == "product":
        k, m, bh = params.get("k"), params.get("m"), params.get("b_inner")
        if not k or not m or bh is None or k < 2 or m < 2 or bh < 1:
            raise BadParams("product bound needs k, m >= 2 and b_inner >= 1")
        num = _ceil_log(2, k)
        den = m.bit_length() - 1
        return -(-num // den) + bh
    raise BadParams(f"unknown bound kind {kind!r}")
