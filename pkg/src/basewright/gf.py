"""Exact arithmetic in small finite fields GF(p^f), including quadratic
extensions GF(q^2) with their conjugation x -> x^q and trace to GF(q).

Elements are stored as integer codes 0 .. p^f - 1 whose base-p digits are the
polynomial-basis coordinates (constant coefficient first).  The modulus is the
lexicographically smallest monic irreducible polynomial of degree f, so element
encodings are reproducible across runs.  All arithmetic goes through tables
precomputed at context construction; the desk-scale cap keeps those tables
small and cache-resident.
"""

from __future__ import annotations

from functools import lru_cache

DESK_SCALE_CAP = 16  # largest base field order we ever construct


class FieldError(Exception):
    """Base class for field arithmetic errors."""


class MixedContext(FieldError):
    """Operands belong to different field contexts."""


class DivisionByZero(FieldError):
    """Multiplicative inverse of zero requested."""


class NotQuadraticExtension(FieldError):
    """Operation needs a GF(q^2) context with a designated subfield."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Polynomial helpers over GF(p), used only during context construction.
# Polynomials are coefficient tuples, constant term first, no trailing zeros.
# ---------------------------------------------------------------------------

def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p) if m[-1] != 1 else 1
    while len(a) - 1 >= dm and a:
        if a[-1] == 0:
            a.pop()
            continue
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
    return _poly_trim(a)


def _poly_is_irreducible(m, p):
    """Trial division by all monic polynomials of degree <= deg(m)/2."""
    deg = len(m) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for code in range(p ** d):
            g = [0] * (d + 1)
            rest = code
            for i in range(d):
                g[i] = rest % p
                rest //= p
            g[d] = 1
            _, r = _poly_divmod(m, tuple(g), p)
            if not r:
                return False
    return True


def _poly_divmod(a, b, p):
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b) and a:
        if a[-1] == 0:
            a.pop()
            continue
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        q[shift] = coef
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bi) % p
    return _poly_trim(q), _poly_trim(a)


def _smallest_irreducible(p: int, f: int):
    """Monic irreducible of degree f with lexicographically least coefficients
    (constant coefficient varies fastest)."""
    if f == 1:
        return (0, 1)
    for code in range(p ** f):
        coeffs = []
        rest = code
        for _ in range(f):
            coeffs.append(rest % p)
            rest //= p
        m = tuple(coeffs) + (1,)
        if _poly_is_irreducible(m, p):
            return m
    raise FieldError(f"no irreducible polynomial of degree {f} over GF({p})")


class FieldCtx:
    """A finite field GF(p^f), optionally marked as a quadratic extension.

    Parameters
    ----------
    p : prime characteristic
    f : extension degree over the prime field
    quadratic : when True, f must be even and the context designates the
        subfield GF(p^(f/2)) for conj/trace purposes.
    """

    def __init__(self, p: int, f: int, quadratic: bool = False):
        if not _is_prime(p):
            raise FieldError(f"p={p} is not prime")
        if f < 1:
            raise FieldError(f"f={f} must be positive")
        if quadratic and f % 2 != 0:
            raise NotQuadraticExtension(f"f={f} is odd; no index-2 subfield designated")
        base_order = p ** (f // 2) if quadratic else p ** f
        if base_order > DESK_SCALE_CAP:
            raise FieldError(
                f"field order exceeds the desk-scale cap (q={base_order} > {DESK_SCALE_CAP})")
        self.p = p
        self.f = f
        self.order = p ** f
        self.is_quadratic_extension = quadratic
        self.subfield_order = p ** (f // 2) if quadratic else None
        self.modulus = _smallest_irreducible(p, f)
        self._build_tables()

    # -- construction helpers ------------------------------------------------

    @staticmethod
    @lru_cache(maxsize=None)
    def of_order(order: int) -> "FieldCtx":
        """GF(order) with the canonical modulus."""
        p, f = _factor_prime_power(order)
        return FieldCtx(p, f)

    @staticmethod
    @lru_cache(maxsize=None)
    def quadratic_of(q: int) -> "FieldCtx":
        """GF(q^2) with designated subfield GF(q)."""
        p, f = _factor_prime_power(q)
        return FieldCtx(p, 2 * f, quadratic=True)

    def _build_tables(self):
        p, f, n = self.p, self.f, self.order
        mod = self.modulus

        def decode(code):
            c = []
            for _ in range(f):
                c.append(code % p)
                code //= p
            return tuple(c)

        def encode(poly):
            code = 0
            for i in range(len(poly) - 1, -1, -1):
                code = code * p + poly[i]
            return code

        self._decode = decode
        polys = [decode(c) for c in range(n)]
        add = [[0] * n for _ in range(n)]
        for a in range(n):
            pa = polys[a]
            for b in range(a, n):
                pb = polys[b]
                s = encode(tuple((x + y) % p for x, y in zip(pa, pb)))
                add[a][b] = s
                add[b][a] = s
        self.ADD = add
        self.NEG = [encode(tuple((-x) % p for x in polys[a])) for a in range(n)]
        mul = [[0] * n for _ in range(n)]
        for a in range(n):
            pa = _poly_trim(polys[a])
            for b in range(a, n):
                prod = _poly_mod(_poly_mul(pa, _poly_trim(polys[b]), p), mod, p)
                prod = prod + (0,) * (f - len(prod))
                m = encode(prod)
                mul[a][b] = m
                mul[b][a] = m
        self.MUL = mul
        inv = [0] * n
        for a in range(1, n):
            for b in range(1, n):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self.INV = inv
        self.SQUARES = frozenset(mul[a][a] for a in range(n))
        if self.is_quadratic_extension:
            q = self.subfield_order
            conj = list(range(n))
            for a in range(n):
                conj[a] = self.pow_code(a, q)
            self.CONJ = conj
            self.SUBFIELD = [a for a in range(n) if conj[a] == a]

    # -- raw code arithmetic (used by linalg for speed) ----------------------

    def pow_code(self, a: int, e: int) -> int:
        r = 1
        base = a
        while e:
            if e & 1:
                r = self.MUL[r][base]
            base = self.MUL[base][base]
            e >>= 1
        return r

    # -- elements ------------------------------------------------------------

    def element(self, code: int) -> "FieldElement":
        if not 0 <= code < self.order:
            raise FieldError(f"code {code} out of range for field of order {self.order}")
        return FieldElement(self, code)

    def from_coeffs(self, coeffs) -> "FieldElement":
        if len(coeffs) != self.f:
            raise FieldError(f"expected {self.f} coordinates, got {len(coeffs)}")
        code = 0
        for c in reversed(list(coeffs)):
            code = code * self.p + (c % self.p)
        return self.element(code)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self):
        """All field elements in deterministic (coordinate-lexicographic) order."""
        return [FieldElement(self, c) for c in range(self.order)]

    def primitive_element(self) -> "FieldElement":
        """Smallest-code generator of the multiplicative group."""
        target = self.order - 1
        for c in range(1, self.order):
            seen = 1
            x = c
            while x != 1:
                x = self.MUL[x][c]
                seen += 1
            if seen == target:
                return FieldElement(self, c)
        raise FieldError("no primitive element found")  # pragma: no cover

    def __eq__(self, other):
        return self is other or (
            isinstance(other, FieldCtx)
            and (self.p, self.f, self.is_quadratic_extension)
            == (other.p, other.f, other.is_quadratic_extension))

    def __hash__(self):
        return hash((self.p, self.f, self.is_quadratic_extension))

    def __repr__(self):
        tag = f"GF({self.order})"
        if self.is_quadratic_extension:
            tag += f"/GF({self.subfield_order})"
        return f"FieldCtx({tag})"


def _factor_prime_power(n: int):
    for p in range(2, n + 1):
        if _is_prime(p) and n % p == 0:
            f = 0
            m = n
            while m % p == 0:
                m //= p
                f += 1
            if m != 1:
                raise FieldError(f"{n} is not a prime power")
            return p, f
    raise FieldError(f"{n} is not a prime power")


class FieldElement:
    """Element of a FieldCtx, identified by its integer code."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        self.ctx = ctx
        self.code = code

    @property
    def coeffs(self):
        return self.ctx._decode(self.code)

    def _check(self, other: "FieldElement"):
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise MixedContext(f"{self.ctx!r} vs {other.ctx!r}")

    def __add__(self, other):
        self._check(other)
        return FieldElement(self.ctx, self.ctx.ADD[self.code][other.code])

    def __sub__(self, other):
        self._check(other)
        return FieldElement(self.ctx, self.ctx.ADD[self.code][self.ctx.NEG[other.code]])

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.NEG[self.code])

    def __mul__(self, other):
        self._check(other)
        return FieldElement(self.ctx, self.ctx.MUL[self.code][other.code])

    def inverse(self):
        if self.code == 0:
            raise DivisionByZero("inv(0)")
        return FieldElement(self.ctx, self.ctx.INV[self.code])

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.ctx, self.ctx.pow_code(self.code, e))

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        return (isinstance(other, FieldElement)
                and self.code == other.code and self.ctx == other.ctx)

    def __hash__(self):
        return hash((self.code, self.ctx.order))

    def __repr__(self):
        return f"{self.coeffs}@GF({self.ctx.order})"


# ---------------------------------------------------------------------------
# Named operations
# ---------------------------------------------------------------------------

def arith(a: FieldElement, b: FieldElement, kind: str) -> FieldElement:
    """Field arithmetic dispatch: kind in {add, mul, inv, neg}.

    inv and neg are unary; b is ignored for them (pass a again by convention).
    """
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "inv":
        return a.inverse()
    if kind == "neg":
        return -a
    raise FieldError(f"unknown arith kind {kind!r}")


def conj(a: FieldElement) -> FieldElement:
    """The involutory automorphism x -> x^q of GF(q^2)."""
    ctx = a.ctx
    if not ctx.is_quadratic_extension:
        raise NotQuadraticExtension(repr(ctx))
    return FieldElement(ctx, ctx.CONJ[a.code])


def trace_to_subfield(a: FieldElement) -> FieldElement:
    """a + a^q, landing in the designated subfield GF(q)."""
    ctx = a.ctx
    if not ctx.is_quadratic_extension:
        raise NotQuadraticExtension(repr(ctx))
    return FieldElement(ctx, ctx.ADD[a.code][ctx.CONJ[a.code]])


def solve_trace(ctx: FieldCtx, target: FieldElement) -> FieldElement:
    """First element (code order) of GF(q^2) whose trace to GF(q) is target."""
    if not ctx.is_quadratic_extension:
        raise NotQuadraticExtension(repr(ctx))
    if ctx.CONJ[target.code] != target.code:
        raise FieldError("trace target must lie in the designated subfield")
    for c in range(ctx.order):
        if ctx.ADD[c][ctx.CONJ[c]] == target.code:
            return FieldElement(ctx, c)
    raise FieldError("trace is surjective; unreachable")  # pragma: no cover


def find_zeta(ctx: FieldCtx) -> FieldElement:
    """First zeta (code order) such that X^2 + X + zeta has no root in GF(q)."""
    for c in range(ctx.order):
        if all(ctx.ADD[ctx.ADD[ctx.MUL[t][t]][t]][c] != 0 for t in range(ctx.order)):
            return FieldElement(ctx, c)
    raise FieldError("no irreducible X^2+X+zeta; unreachable for prime powers")


def is_square(a: FieldElement) -> bool:
    return a.code in a.ctx.SQUARES
