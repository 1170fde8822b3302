import pytest

from basewright.gf import (
    FieldCtx, FieldError, MixedContext, DivisionByZero, NotQuadraticExtension,
    arith, conj, trace_to_subfield, solve_trace, find_zeta, is_square,
)


def gf(n):
    return FieldCtx.of_order(n)


def gfq2(q):
    return FieldCtx.quadratic_of(q)


class TestConstruction:
    def test_modulus_irreducible_gf4(self):
        ctx = gf(4)
        # lexicographically smallest irreducible of degree 2 over GF(2): X^2+X+1
        assert ctx.modulus == (1, 1, 1)

    def test_modulus_gf9(self):
        ctx = gf(9)
        # X^2+1 is irreducible over GF(3) and lexicographically first
        assert ctx.modulus == (1, 0, 1)

    def test_desk_scale_cap(self):
        with pytest.raises(FieldError):
            FieldCtx(2, 5)  # GF(32) exceeds the cap

    def test_quadratic_needs_even_degree(self):
        with pytest.raises(NotQuadraticExtension):
            FieldCtx(2, 3, quadratic=True)

    def test_not_prime(self):
        with pytest.raises(FieldError):
            FieldCtx(4, 1)


class TestArith:
    def test_char2_add(self):
        ctx = gf(2)
        assert (ctx.one + ctx.one).code == 0

    def test_gf4_omega_squared(self):
        ctx = gf(4)
        omega = ctx.from_coeffs((0, 1))
        assert omega * omega == ctx.from_coeffs((1, 1))  # w^2 = w + 1

    def test_gf9_inverse_of_two(self):
        # 2 * 2 = 4 = 1 mod 3, so the prime-subfield element 2 is self-inverse
        ctx = gf(9)
        two = ctx.from_coeffs((2, 0))
        assert two.inverse() == two
        assert two * two == ctx.one

    def test_inverse_axiom_everywhere(self):
        for n in (2, 3, 4, 5, 7, 8, 9, 16):
            ctx = gf(n)
            for a in ctx.elements():
                if a:
                    assert a * a.inverse() == ctx.one
                    assert a ** (n - 1) == ctx.one

    def test_mixed_context(self):
        with pytest.raises(MixedContext):
            gf(4).one + gf(9).one

    def test_div_by_zero(self):
        with pytest.raises(DivisionByZero):
            gf(4).zero.inverse()

    def test_arith_dispatch(self):
        ctx = gf(3)
        two = ctx.element(2)
        assert arith(two, two, "add") == ctx.one
        assert arith(two, two, "mul") == ctx.one
        assert arith(two, two, "inv") == two
        assert arith(two, two, "neg") == ctx.one


class TestConjTrace:
    def test_conj_gf4(self):
        ctx = gfq2(2)
        omega = ctx.element(2)
        assert conj(omega) == omega * omega  # w^2 = w+1

    def test_conj_involution_and_subfield_fixed(self):
        for q in (2, 3, 4):
            ctx = gfq2(q)
            for a in ctx.elements():
                assert conj(conj(a)) == a
            for c in ctx.SUBFIELD:
                assert conj(ctx.element(c)) == ctx.element(c)
            assert len(ctx.SUBFIELD) == q

    def test_conj_requires_extension(self):
        with pytest.raises(NotQuadraticExtension):
            conj(gf(4).one)

    def test_trace_gf4(self):
        ctx = gfq2(2)
        omega = ctx.element(2)
        assert trace_to_subfield(omega) == ctx.one
        assert trace_to_subfield(ctx.zero) == ctx.zero

    def test_trace_image_is_subfield(self):
        for q in (2, 3, 4):
            ctx = gfq2(q)
            image = {trace_to_subfield(a).code for a in ctx.elements()}
            assert image == set(ctx.SUBFIELD)
            assert len(image) == q

    def test_trace_additive(self):
        ctx = gfq2(3)
        els = ctx.elements()
        for a in els[:5]:
            for b in els[:5]:
                assert trace_to_subfield(a + b) == trace_to_subfield(a) + trace_to_subfield(b)


class TestSolveTrace:
    def test_gf4_target_one(self):
        ctx = gfq2(2)
        mu = solve_trace(ctx, ctx.one)
        assert mu.code == 2  # omega, first non-subfield hit in code order
        assert trace_to_subfield(mu) == ctx.one

    def test_target_zero(self):
        ctx = gfq2(2)
        assert solve_trace(ctx, ctx.zero) == ctx.zero

    def test_gf9_target_two(self):
        ctx = gfq2(3)
        two = ctx.element(2)
        mu = solve_trace(ctx, two)
        assert trace_to_subfield(mu) == two


class TestZetaSquares:
    def test_zeta_gf2(self):
        assert find_zeta(gf(2)).code == 1

    def test_zeta_gf3(self):
        assert find_zeta(gf(3)).code == 2

    def test_zeta_gf4(self):
        assert find_zeta(gf(4)).code == 2  # omega

    def test_zeta_irreducibility_property(self):
        for n in (2, 3, 4, 5, 7, 8, 9):
            ctx = gf(n)
            z = find_zeta(ctx)
            for t in ctx.elements():
                assert t * t + t + z != ctx.zero

    def test_squares_gf3(self):
        ctx = gf(3)
        assert is_square(ctx.zero)
        assert is_square(ctx.one)
        assert not is_square(ctx.element(2))

    def test_even_char_all_squares(self):
        for n in (2, 4, 8):
            assert all(is_square(a) for a in gf(n).elements())

    def test_odd_q_square_count(self):
        for n in (3, 5, 7, 9):
            ctx = gf(n)
            nonzero_squares = sum(1 for a in ctx.elements() if a and is_square(a))
            assert nonzero_squares == (n - 1) // 2
