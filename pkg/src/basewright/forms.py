"""Standard sesquilinear, alternating and quadratic forms with labeled bases,
subspace classification (totally singular / non-degenerate with sign /
non-singular 1-space), and isometry certification.

Basis layout: (e_1..e_a, f_1..f_a) for symplectic and plus-type quadratic
spaces, with x appended for odd dimension and (x, y) appended for minus-type
quadratic spaces.  B(e_i, f_j) = delta_ij, Q(e_i) = Q(f_i) = 0, Q(x) = 1,
B(x, y) = 1, Q(y) = zeta with X^2 + X + zeta irreducible.  The unitary form is
sesquilinear, conjugating its second argument.  In even characteristic and odd
dimension the bilinear form B is degenerate with radical <x>; the quadratic
form itself is still non-degenerate and this is the standard odd-dimensional
form in that case too.
"""

from __future__ import annotations

from .gf import FieldCtx, FieldElement, find_zeta, is_square
from .linalg import (
    Vector, Matrix, Subspace, meet, span, zero_subspace,
)


class FormError(Exception):
    pass


class KindMismatch(FormError):
    pass


def scalar_from_int(ctx: FieldCtx, n: int) -> int:
    """Code of the image of the integer n in the prime subfield."""
    code = 0
    one = 1
    for _ in range(n % ctx.p):
        code = ctx.ADD[code][one]
    return code


class ClassicalForm:
    """A classical form on F^d with the standard labeled basis.

    kind is one of linear/unitary/symplectic/quadratic; sign is '+', '-', 'o'
    or None; gram holds B on basis pairs; qvals holds Q on basis vectors for
    the quadratic kind.
    """

    def __init__(self, kind, sign, ctx, d, gram, qvals, zeta, labels):
        self.kind = kind
        self.sign = sign
        self.ctx = ctx
        self.d = d
        self.gram = gram            # tuple of tuples of codes, or None (linear)
        self.qvals = qvals          # tuple of codes, or None
        self.zeta = zeta            # FieldElement or None
        self.labels = tuple(labels)
        self.label_index = {lab: i for i, lab in enumerate(self.labels)}

    # -- vector builders -----------------------------------------------------

    def basis_vector(self, label) -> Vector:
        i = self.label_index[label]
        return Vector(self.ctx, tuple(1 if j == i else 0 for j in range(self.d)))

    def vec(self, combo) -> Vector:
        """Vector from a {label: coefficient} map; ints are taken mod p."""
        codes = [0] * self.d
        for lab, c in combo.items():
            code = c.code if isinstance(c, FieldElement) else scalar_from_int(self.ctx, c)
            codes[self.label_index[lab]] = code
        return Vector(self.ctx, codes)

    def one_space(self, combo) -> Subspace:
        return span(self.ctx, self.d, [self.vec(combo).codes])

    def two_space(self, combo1, combo2) -> Subspace:
        return span(self.ctx, self.d,
                    [self.vec(combo1).codes, self.vec(combo2).codes])

    def __repr__(self):
        s = self.sign or ""
        return f"ClassicalForm({self.kind}{s}, d={self.d}, GF({self.ctx.order}))"


def _labels(a, extra):
    return tuple(f"e{i}" for i in range(1, a + 1)) + \
        tuple(f"f{i}" for i in range(1, a + 1)) + tuple(extra)


def linear_form(q: int, d: int) -> ClassicalForm:
    ctx = FieldCtx.of_order(q)
    labels = tuple(f"v{i}" for i in range(1, d + 1))
    return ClassicalForm("linear", None, ctx, d, None, None, None, labels)


def unitary_form(q: int, d: int) -> ClassicalForm:
    ctx = FieldCtx.quadratic_of(q)
    a = d // 2
    labels = _labels(a, ("x",) if d % 2 else ())
    gram = [[0] * d for _ in range(d)]
    for i in range(a):
        gram[i][a + i] = 1
        gram[a + i][i] = 1
    if d % 2:
        gram[d - 1][d - 1] = 1
    return ClassicalForm("unitary", None, ctx, d,
                         tuple(tuple(r) for r in gram), None, None, labels)


def symplectic_form(q: int, d: int) -> ClassicalForm:
    if d % 2:
        raise FormError("symplectic forms need even dimension")
    ctx = FieldCtx.of_order(q)
    a = d // 2
    neg1 = ctx.NEG[1]
    gram = [[0] * d for _ in range(d)]
    for i in range(a):
        gram[i][a + i] = 1
        gram[a + i][i] = neg1
    return ClassicalForm("symplectic", None, ctx, d,
                         tuple(tuple(r) for r in gram), None, None, _labels(a, ()))


def quadratic_form(q: int, d: int, sign: str) -> ClassicalForm:
    ctx = FieldCtx.of_order(q)
    if sign == "+":
        if d % 2:
            raise FormError("plus type needs even dimension")
        a = d // 2
        extra = ()
    elif sign == "-":
        if d % 2 or d < 2:
            raise FormError("minus type needs even dimension >= 2")
        a = (d - 2) // 2
        extra = ("x", "y")
    elif sign == "o":
        if d % 2 == 0:
            raise FormError("circle type needs odd dimension")
        a = (d - 1) // 2
        extra = ("x",)
    else:
        raise FormError(f"unknown sign {sign!r}")
    labels = _labels(a, extra)
    zeta = find_zeta(ctx) if sign == "-" else None
    qvals = [0] * d
    gram = [[0] * d for _ in range(d)]
    for i in range(a):
        gram[i][a + i] = 1
        gram[a + i][i] = 1
    two = scalar_from_int(ctx, 2)
    if sign == "o":
        qvals[d - 1] = 1
        gram[d - 1][d - 1] = two          # B(x,x) = 2Q(x); zero when q even
    elif sign == "-":
        qvals[d - 2] = 1                  # Q(x) = 1
        qvals[d - 1] = zeta.code          # Q(y) = zeta
        gram[d - 2][d - 1] = 1
        gram[d - 1][d - 2] = 1
        gram[d - 2][d - 2] = two
        gram[d - 1][d - 1] = ctx.MUL[two][zeta.code]
    return ClassicalForm("quadratic", sign, ctx, d,
                         tuple(tuple(r) for r in gram), tuple(qvals), zeta, labels)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def evalB(F: ClassicalForm, u: Vector, v: Vector) -> FieldElement:
    if F.kind == "linear":
        raise KindMismatch("linear spaces carry no form")
    ctx = F.ctx
    ADD, MUL = ctx.ADD, ctx.MUL
    vc = v.codes
    if F.kind == "unitary":
        CONJ = ctx.CONJ
        vc = tuple(CONJ[c] for c in vc)
    total = 0
    for i, ui in enumerate(u.codes):
        if not ui:
            continue
        gi = F.gram[i]
        rowsum = 0
        for j, vj in enumerate(vc):
            if vj and gi[j]:
                rowsum = ADD[rowsum][MUL[gi[j]][vj]]
        total = ADD[total][MUL[ui][rowsum]]
    return ctx.element(total)


def evalQ(F: ClassicalForm, u: Vector) -> FieldElement:
    if F.kind != "quadratic":
        raise KindMismatch(f"evalQ on kind {F.kind}")
    ctx = F.ctx
    ADD, MUL = ctx.ADD, ctx.MUL
    total = 0
    codes = u.codes
    for i, ui in enumerate(codes):
        if not ui:
            continue
        total = ADD[total][MUL[MUL[ui][ui]][F.qvals[i]]]
        gi = F.gram[i]
        for j in range(i + 1, F.d):
            uj = codes[j]
            if uj and gi[j]:
                total = ADD[total][MUL[MUL[ui][uj]][gi[j]]]
    return ctx.element(total)


# ---------------------------------------------------------------------------
# Perp / radical / classification
# ---------------------------------------------------------------------------

def _nullspace(ctx, constraint_rows, d) -> Subspace:
    """{v in F^d : v . c = 0 for every constraint row c} (plain dot product)."""
    from .linalg import _rref_rows, _make_subspace
    reduced, pivots = _rref_rows([list(r) for r in constraint_rows], ctx)
    free_cols = [j for j in range(d) if j not in pivots]
    NEG = ctx.NEG
    basis = []
    for fc in free_cols:
        v = [0] * d
        v[fc] = 1
        for row, p in zip(reduced, pivots):
            v[p] = NEG[row[fc]]
        basis.append(v)
    reduced2, pivots2 = _rref_rows(basis, ctx)
    return _make_subspace(ctx, d, reduced2, pivots2)


def perp(F: ClassicalForm, U: Subspace) -> Subspace:
    """{v : B(v, u) = 0 for all u in U}."""
    ctx = F.ctx
    MUL, ADD = ctx.MUL, ctx.ADD
    constraints = []
    for u in U.rows:
        uc = u
        if F.kind == "unitary":
            uc = tuple(ctx.CONJ[c] for c in u)
        # v . (gram @ conj(u)^T) = 0
        col = []
        for i in range(F.d):
            gi = F.gram[i]
            s = 0
            for j in range(F.d):
                if uc[j] and gi[j]:
                    s = ADD[s][MUL[gi[j]][uc[j]]]
            col.append(s)
        constraints.append(col)
    if not constraints:
        return span(ctx, F.d, [tuple(1 if j == i else 0 for j in range(F.d))
                               for i in range(F.d)])
    return _nullspace(ctx, constraints, F.d)


def radical(F: ClassicalForm, U: Subspace) -> Subspace:
    return meet(U, perp(F, U))


def restrict_form(F: ClassicalForm, U: Subspace):
    """(gram, qvals) of the restriction of F to U, in U's basis coordinates."""
    k = U.dim
    rows = [Vector(F.ctx, r) for r in U.rows]
    gram = tuple(tuple(evalB(F, rows[i], rows[j]).code for j in range(k))
                 for i in range(k))
    qvals = None
    if F.kind == "quadratic":
        qvals = tuple(evalQ(F, rows[i]).code for i in range(k))
    return gram, qvals


def _restricted_subform(F: ClassicalForm, U: Subspace) -> ClassicalForm:
    gram, qvals = restrict_form(F, U)
    labels = tuple(f"u{i}" for i in range(1, U.dim + 1))
    return ClassicalForm(F.kind, None, F.ctx, U.dim, gram, qvals, F.zeta, labels)


def _is_singular_vector(F: ClassicalForm, v: Vector) -> bool:
    if F.kind == "quadratic":
        return evalQ(F, v).code == 0
    if F.kind == "symplectic":
        return True
    return evalB(F, v, v).code == 0


def witt_index(F: ClassicalForm, U: Subspace = None) -> int:
    """Witt index of (the restriction of) the form, by explicit hyperbolic-
    plane splitting.  Desk-scale dimensions only."""
    if U is not None:
        return witt_index(_restricted_subform(F, U))
    return _witt_recurse(F)


def _full_space(ctx, d):
    return span(ctx, d, [tuple(1 if j == i else 0 for j in range(d))
                         for i in range(d)])


def _witt_recurse(F: ClassicalForm) -> int:
    ctx, d = F.ctx, F.d
    if d == 0:
        return 0
    # find a singular vector outside the bilinear radical
    rad = radical(F, _full_space(ctx, d))
    target = None
    for code in range(1, ctx.order ** d):
        v = _decode_vector(ctx, code, d)
        if _is_singular_vector(F, v) and not v.is_zero() and not rad.contains(v):
            target = v
            break
    if target is None:
        return 0
    # partner z with B(target, z) != 0
    z = None
    for code in range(1, ctx.order ** d):
        cand = _decode_vector(ctx, code, d)
        if evalB(F, target, cand).code != 0:
            z = cand
            break
    if z is None:
        return 0
    # normalize z to a singular partner by scanning z + c*target
    best = None
    for c in range(ctx.order):
        cand = z + target.scale(c)
        if _is_singular_vector(F, cand) and evalB(F, target, cand).code != 0:
            best = cand
            break
    if best is None:
        # no singular partner in the line; plane is not hyperbolic
        return 0
    plane = span(ctx, d, [target.codes, best.codes])
    comp = meet(perp(F, plane), _full_space(ctx, d))
    if comp.dim == 0:
        return 1
    return 1 + _witt_recurse(_restricted_subform(F, comp))


def _decode_vector(ctx, code, d):
    n = ctx.order
    codes = []
    for _ in range(d):
        codes.append(code % n)
        code //= n
    return Vector(ctx, codes)


def classify(F: ClassicalForm, U: Subspace) -> str:
    """Tag in {totally_singular, nondegenerate(+|-|o|''), nonsingular_1,
    degenerate_other}; linear spaces are all tagged 'linear'."""
    if F.kind == "linear":
        return "linear"
    if U.dim == 0:
        return "totally_singular"
    rows = [Vector(F.ctx, r) for r in U.rows]
    ts = all(evalB(F, u, v).code == 0 for u in rows for v in rows)
    if ts and F.kind == "quadratic":
        ts = all(evalQ(F, u).code == 0 for u in rows)
    if ts:
        return "totally_singular"
    R = radical(F, U)
    if R.dim == 0:
        if F.kind != "quadratic":
            return "nondegenerate"
        k = U.dim
        if k % 2:
            return "nondegenerate(o)"
        w = witt_index(F, U)
        return "nondegenerate(+)" if w == k // 2 else "nondegenerate(-)"
    if (U.dim == 1 and F.kind == "quadratic" and F.ctx.p == 2
            and evalQ(F, rows[0]).code != 0):
        return "nonsingular_1"
    return "degenerate_other"


def orbit_tag(F: ClassicalForm, U: Subspace):
    """classify() refined with the extra invariant separating the q-odd
    orthogonal 1-space orbits: the sign of the perp for odd ambient dimension,
    the square class of Q on the line for even ambient dimension."""
    tag = classify(F, U)
    if (F.kind == "quadratic" and U.dim == 1 and F.ctx.p != 2
            and tag.startswith("nondegenerate")):
        u = Vector(F.ctx, U.rows[0])
        if F.d % 2:
            P = perp(F, U)
            w = witt_index(F, P)
            psign = "+" if w == P.dim // 2 else "-"
            return (tag, "perp" + psign)
        return (tag, "disc_sq" if is_square(evalQ(F, u)) else "disc_ns")
    return (tag, None)


def discriminant_square(F: ClassicalForm, U: Subspace) -> bool:
    """Whether det of the restricted Gram matrix is a square (q odd only);
    cross-check companion to the Witt-index sign computation."""
    if F.ctx.p == 2:
        raise FormError("discriminant classes are trivial in characteristic 2")
    gram, _ = restrict_form(F, U)
    det = _det(F.ctx, gram)
    if det == 0:
        raise FormError("degenerate restriction has no discriminant")
    return is_square(F.ctx.element(det))


def _det(ctx, gram):
    from .linalg import _rref_rows
    rows = [list(r) for r in gram]
    n = len(rows)
    MUL, NEG, INV, ADD = ctx.MUL, ctx.NEG, ctx.INV, ctx.ADD
    det = 1
    for col in range(n):
        piv = None
        for i in range(col, n):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = NEG[det]
        lead = rows[col][col]
        det = MUL[det][lead]
        inv = INV[lead]
        for i in range(col + 1, n):
            if rows[i][col]:
                f = MUL[NEG[rows[i][col]]][inv]
                mf = MUL[f]
                rows[i] = [ADD[rows[i][j]][mf[rows[col][j]]] for j in range(n)]
    return det


# ---------------------------------------------------------------------------
# Isometries and distinguished pairs
# ---------------------------------------------------------------------------

def is_isometry(F: ClassicalForm, g: Matrix) -> bool:
    if F.kind == "linear":
        return g.is_invertible()
    if not g.is_invertible():
        return False
    d = F.d
    imgs = [Vector(F.ctx, r) for r in g.rows]  # image of i-th basis vector
    for i in range(d):
        for j in range(d):
            if evalB(F, imgs[i], imgs[j]).code != F.gram[i][j]:
                return False
    if F.kind == "quadratic":
        for i in range(d):
            if evalQ(F, imgs[i]).code != F.qvals[i]:
                return False
    return True


def pair_check(F: ClassicalForm, u: Vector, v: Vector, kind: str) -> bool:
    if kind == "hyperbolic":
        ok = (evalB(F, u, u).code == 0 and evalB(F, v, v).code == 0
              and evalB(F, u, v).code == 1)
        if ok and F.kind == "quadratic":
            ok = evalQ(F, u).code == 0 and evalQ(F, v).code == 0
        return ok
    if kind == "elliptic":
        if F.kind != "quadratic" or F.zeta is None:
            raise KindMismatch("elliptic pairs live in minus-type quadratic spaces")
        return (evalQ(F, u) == F.ctx.one and evalQ(F, v) == F.zeta
                and evalB(F, u, v).code == 1)
    raise FormError(f"unknown pair kind {kind!r}")
