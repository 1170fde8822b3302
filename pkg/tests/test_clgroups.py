import os

import pytest

from basewright.forms import evalB, evalQ, is_isometry, unitary_form
from basewright.linalg import Matrix, Vector
from basewright.bsgs import perm_chain
from basewright.clgroups import (
    MatrixGroup, PermGenSet, Inadmissible, OddQ, MissingData, OrderMismatch,
    build_group, order_formula, scalars, sp_to_odd_orthogonal, load_permgroup,
    num_projective_points,
)


def brute_force_isometry_count(F):
    """Backtracking count of all matrices preserving the form: rows are
    chosen one at a time subject to the Gram constraints."""
    ctx, d = F.ctx, F.d
    order = ctx.order
    vectors = []
    for code in range(1, order ** d):
        digits = []
        rest = code
        for _ in range(d):
            digits.append(rest % order)
            rest //= order
        vectors.append(Vector(ctx, digits))
    basis = [F.basis_vector(l) for l in F.labels]
    gram = [[evalB(F, basis[i], basis[j]) for j in range(d)] for i in range(d)]
    count = 0

    def rec(rows):
        nonlocal count
        i = len(rows)
        if i == d:
            if Matrix(ctx, tuple(v.codes for v in rows)).is_invertible():
                count += 1
            return
        for v in vectors:
            if evalB(F, v, v) != gram[i][i]:
                continue
            ok = True
            for j, w in enumerate(rows):
                if evalB(F, w, v) != gram[j][i] or evalB(F, v, w) != gram[i][j]:
                    ok = False
                    break
            if ok:
                rec(rows + [v])

    rec([])
    return count


class TestOrderFormula:
    def test_known_values(self):
        assert order_formula("GL", 2, 2) == 6
        assert order_formula("Sp", 4, 2) == 720
        assert order_formula("Sp", 6, 2) == 1451520
        assert order_formula("GOplus", 6, 2) == 40320
        assert order_formula("GOminus", 4, 3) == 1440
        assert order_formula("GOcirc", 7, 3) == 18341406720

    def test_gl_product_form(self):
        for d, q in [(3, 2), (4, 3)]:
            expected = 1
            for i in range(d):
                expected *= q ** d - q ** i
            assert order_formula("GL", d, q) == expected

    def test_gu3_2_matches_brute_force(self):
        assert order_formula("GU", 3, 2) == brute_force_isometry_count(unitary_form(2, 3))

    def test_even_q_odd_dim_is_symplectic(self):
        assert order_formula("GOcirc", 7, 2) == order_formula("Sp", 6, 2)

    def test_inadmissible(self):
        with pytest.raises(Inadmissible):
            order_formula("Sp", 5, 2)
        with pytest.raises(Inadmissible):
            order_formula("GOcirc", 6, 2)
        with pytest.raises(Inadmissible):
            order_formula("GOminus", 2, 3)
        with pytest.raises(Inadmissible):
            order_formula("XX", 3, 2)


class TestBuildGroup:
    @pytest.mark.parametrize("family,d,q", [
        ("GL", 3, 2), ("GL", 4, 3), ("Sp", 4, 2), ("Sp", 6, 2),
        ("GU", 3, 2), ("GU", 4, 2), ("GOplus", 6, 2), ("GOplus", 4, 2),
        ("GOminus", 4, 3), ("GOminus", 6, 2), ("GOcirc", 7, 3),
    ])
    def test_certified_order_and_isometry(self, family, d, q):
        G = build_group(family, d, q)
        assert G.order == order_formula(family, d, q)
        if family != "GL":
            for g in G.gens:
                assert is_isometry(G.form, g)
        else:
            for g in G.gens:
                assert g.is_invertible()

    def test_sp4_2_order(self):
        assert build_group("Sp", 4, 2).order == 720

    def test_cap(self):
        with pytest.raises(Inadmissible):
            build_group("GL", 16, 3)

    def test_gominus_4_3_exists(self):
        G = build_group("GOminus", 4, 3)
        assert G.order == 1440


class TestScalars:
    def test_sp_even_q(self):
        assert len(scalars(build_group("Sp", 4, 2))) == 1

    def test_gl_3_3(self):
        G = build_group("GL", 3, 3)
        mats = scalars(G)
        assert len(mats) == 2
        assert all(m.is_scalar() for m in mats)

    def test_gu_3_2(self):
        assert len(scalars(build_group("GU", 3, 2))) == 3

    def test_quadratic_odd_q(self):
        assert len(scalars(build_group("GOplus", 6, 3))) == 2


class TestSpOddOrthogonal:
    def test_m3_q2(self):
        G, corr = sp_to_odd_orthogonal(3, 2)
        assert G.order == 1451520
        assert corr.ambient_dim == 7
        assert corr.subspace_dim == 6
        # the standard form in even characteristic has <x> as bilinear radical
        x = G.form.basis_vector("x")
        assert evalQ(G.form, x).code == 1
        for lbl in G.form.labels:
            assert evalB(G.form, x, G.form.basis_vector(lbl)).code == 0

    def test_odd_q_rejected(self):
        with pytest.raises(OddQ):
            sp_to_odd_orthogonal(3, 3)


class TestLoadPermgroup:
    @pytest.mark.parametrize("name,degree,order", [
        ("M11", 11, 7920), ("M12", 12, 95040),
        ("M23", 23, 10200960), ("M24", 24, 244823040),
    ])
    def test_orders(self, name, degree, order):
        g = load_permgroup(name)
        assert g.degree == degree
        assert g.order == order
        assert perm_chain(g.gens, degree).order == order

    def test_missing(self):
        with pytest.raises(MissingData):
            load_permgroup("M22")

    def test_corrupt_data(self, tmp_path, monkeypatch):
        (tmp_path / "m11.txt").write_text("M11 11 7920\n(1,2)\n")
        monkeypatch.setenv("BASEWRIGHT_DATA", str(tmp_path))
        with pytest.raises(OrderMismatch):
            load_permgroup("M11")

    def test_transitivity_m24(self):
        g = load_permgroup("M24")
        # 5-transitive: orbit of an ordered 5-tuple has size 24*23*22*21*20
        chain = perm_chain(g.gens, 24, base_hint=[0, 1, 2, 3, 4])
        sizes = [len(lv.orbit) for lv in chain.levels[:5]]
        assert sizes == [24, 23, 22, 21, 20]


class TestProjectiveCount:
    def test_point_counts(self):
        assert num_projective_points(2, 6) == 63
        assert num_projective_points(4, 3) == 21
