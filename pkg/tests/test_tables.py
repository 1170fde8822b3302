import json
import random

import pytest

from basewright.clgroups import Inadmissible, OddQ, build_group
from basewright.forms import evalQ, is_isometry, quadratic_form
from basewright.linalg import Matrix, act, span
from basewright.actions import ActionSpec, enumerate_orbit, standard_seed
from basewright.tables import (
    TableError, BadInput, BaseCandidate,
    table1_base, table2_base, table_n1_base, table3_table4_base,
    table6_base, tightness_witness,
)


class TestTable1:
    @pytest.mark.parametrize("family,d,q,size", [
        ("GU", 3, 2, 3), ("GU", 4, 2, 4), ("GU", 5, 2, 5), ("GU", 4, 3, 4),
        ("Sp", 4, 2, 4), ("Sp", 4, 3, 4), ("Sp", 6, 2, 6),
        ("GOplus", 6, 2, 5), ("GOminus", 8, 2, 7), ("GOcirc", 7, 3, 6),
    ])
    def test_sizes(self, family, d, q, size):
        cand = table1_base(family, d, q)
        assert cand.size == size
        assert len(set(cand.points)) == size
        assert all(U.dim == 1 for U in cand.points)

    def test_sp_4_3_explicit_points(self):
        cand = table1_base("Sp", 4, 3)
        F = cand.spec.group.form
        want = {F.one_space({"e1": 1}), F.one_space({"f1": 1}),
                F.one_space({"e1": 1, "e2": 1}),
                F.one_space({"e1": 1, "f2": 1})}
        assert set(cand.points) == want

    def test_points_lie_in_singular_orbit(self):
        G = build_group("GOplus", 6, 2)
        cand = table1_base("GOplus", 6, 2)
        spec = ActionSpec(G, "singular_k", k=1)
        orb = enumerate_orbit(spec, standard_seed(spec))
        assert all(U.rows in orb.index for U in cand.points)

    def test_rejects(self):
        with pytest.raises(Inadmissible):
            table1_base("GL", 4, 2)
        with pytest.raises(Inadmissible):
            table1_base("GOplus", 4, 2)
        with pytest.raises(Inadmissible):
            table1_base("GU", 2, 3)


class TestTable2:
    @pytest.mark.parametrize("family,d,q,size", [
        ("GL", 4, 2, 5), ("GL", 4, 3, 5), ("GL", 5, 2, 5), ("GL", 6, 2, 5),
        ("GU", 4, 2, 5), ("Sp", 4, 3, 4), ("GU", 5, 2, 4),
        ("Sp", 6, 2, 4), ("GU", 6, 2, 4), ("GU", 8, 2, 4),
        ("Sp", 8, 2, 4), ("GOplus", 8, 2, 4), ("GOminus", 8, 2, 4),
        ("GOcirc", 9, 3, 5), ("GOcirc", 7, 3, 4),
    ])
    def test_sizes(self, family, d, q, size):
        cand = table2_base(family, d, q)
        assert cand.size == size
        assert all(U.dim == 2 for U in cand.points)
        assert len(set(cand.points)) == size

    def test_points_lie_in_singular_2_orbit(self):
        G = build_group("Sp", 6, 2)
        cand = table2_base("Sp", 6, 2)
        spec = ActionSpec(G, "singular_k", k=2)
        orb = enumerate_orbit(spec, standard_seed(spec))
        assert all(U.rows in orb.index for U in cand.points)

    def test_gl_points_pairwise_distinct_planes(self):
        cand = table2_base("GL", 6, 2)
        pts = list(cand.points)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                assert pts[i] != pts[j]

    def test_rejects(self):
        with pytest.raises(Inadmissible):
            table2_base("GL", 3, 2)
        with pytest.raises(Inadmissible):
            table2_base("GOplus", 6, 2)
        with pytest.raises(Inadmissible):
            table2_base("Sp", 5, 2)


class TestNondeg1Spaces:
    @pytest.mark.parametrize("family,d,q,sign,size", [
        ("GU", 3, 2, None, 3), ("GU", 3, 3, None, 3), ("GU", 4, 2, None, 4),
        ("GU", 4, 3, None, 4), ("GU", 5, 2, None, 5),
        ("GOminus", 4, 2, None, 3),
        ("GOcirc", 5, 3, "+", 4), ("GOcirc", 5, 3, "-", 5),
        ("GOplus", 6, 2, None, 5), ("GOplus", 6, 3, None, 5),
        ("GOminus", 6, 2, None, 5), ("GOminus", 6, 3, None, 5),
        ("GOplus", 8, 2, None, 7), ("GOminus", 8, 2, None, 7),
        ("GOcirc", 7, 3, "+", 6), ("GOcirc", 7, 3, "-", 6),
    ])
    def test_sizes(self, family, d, q, sign, size):
        cand = table_n1_base(family, d, q, sign=sign)
        assert cand.size == size
        assert all(U.dim == 1 for U in cand.points)

    def test_points_lie_in_nonsingular_orbit(self):
        G = build_group("GOminus", 6, 2)
        cand = table_n1_base("GOminus", 6, 2)
        spec = ActionSpec(G, "nonsingular_1")
        orb = enumerate_orbit(spec, standard_seed(spec))
        assert all(U.rows in orb.index for U in cand.points)

    def test_gu_points_nondegenerate(self):
        cand = table_n1_base("GU", 4, 3)
        F = cand.spec.group.form
        from basewright.forms import classify
        for U in cand.points:
            assert classify(F, U) == "nondegenerate"

    def test_rejects(self):
        with pytest.raises(Inadmissible):
            table_n1_base("GOminus", 4, 3)      # exact special case
        with pytest.raises(Inadmissible):
            table_n1_base("GOcirc", 7, 4)       # even q, odd dimension
        with pytest.raises(Inadmissible):
            table_n1_base("GOcirc", 7, 3)       # missing perp sign
        with pytest.raises(Inadmissible):
            table_n1_base("Sp", 4, 3)
        with pytest.raises(Inadmissible):
            table_n1_base("GL", 4, 3)


class TestNondeg2Spaces:
    @pytest.mark.parametrize("family,d,q,sign,size", [
        ("Sp", 6, 3, None, 4), ("GU", 6, 3, None, 4), ("GU", 5, 2, None, 3),
        ("Sp", 8, 2, None, 4), ("Sp", 8, 3, None, 4), ("GU", 8, 2, None, 4),
        ("GOplus", 8, 2, "+", 4), ("GOplus", 8, 3, "+", 4),
        ("GOminus", 8, 2, "+", 4), ("GOminus", 8, 3, "+", 4),
        ("GOcirc", 9, 3, "+", 5), ("GOcirc", 7, 3, "+", 4),
        ("GOplus", 8, 2, "-", 4), ("GOplus", 8, 3, "-", 4),
        ("GOminus", 8, 2, "-", 4), ("GOcirc", 9, 3, "-", 5),
    ])
    def test_sizes(self, family, d, q, sign, size):
        cand = table3_table4_base(family, d, q, sign=sign)
        assert cand.size == size
        assert all(U.dim == 2 for U in cand.points)
        assert cand.provenance["table"] == (4 if sign == "-" else 3)

    def test_points_lie_in_nondeg_orbit(self):
        G = build_group("Sp", 6, 3)
        cand = table3_table4_base("Sp", 6, 3)
        spec = ActionSpec(G, "nondeg_k", k=2)
        orb = enumerate_orbit(spec, standard_seed(spec))
        assert all(U.rows in orb.index for U in cand.points)

    def test_minus_points_lie_in_minus_orbit(self):
        G = build_group("GOcirc", 7, 3)
        cand = table3_table4_base("GOcirc", 7, 3, sign="-")
        spec = ActionSpec(G, "nondeg_k", k=2, sign="-")
        orb = enumerate_orbit(spec, standard_seed(spec))
        assert all(U.rows in orb.index for U in cand.points)

    def test_rejects(self):
        with pytest.raises(Inadmissible):
            table3_table4_base("Sp", 6, 2)      # d = 6 needs odd q
        with pytest.raises(Inadmissible):
            table3_table4_base("Sp", 4, 3)
        with pytest.raises(BadInput):
            table3_table4_base("GOplus", 8, 2)  # missing sign
        with pytest.raises(BadInput):
            table3_table4_base("Sp", 8, 3, sign="+")
        with pytest.raises(Inadmissible):
            table3_table4_base("GOcirc", 7, 4, sign="+")
        with pytest.raises(Inadmissible):
            table3_table4_base("GL", 8, 2, sign="+")


class TestCosetSubspaces:
    @pytest.mark.parametrize("m,q,sign", [
        (2, 2, "+"), (2, 2, "-"), (3, 2, "+"), (3, 2, "-"), (3, 4, "-"),
    ])
    def test_sizes_and_types(self, m, q, sign):
        cand = table6_base(m, q, sign)
        assert cand.size == 2 * m
        assert all(U.dim == 2 * m for U in cand.points)
        assert cand.spec.sign == sign

    def test_points_lie_in_coset_orbit(self):
        from basewright.clgroups import sp_to_odd_orthogonal
        G, _ = sp_to_odd_orthogonal(3, 2)
        for sign in ("+", "-"):
            cand = table6_base(3, 2, sign)
            spec = ActionSpec(G, "coset_sp_go", k=6, sign=sign)
            orb = enumerate_orbit(spec, standard_seed(spec))
            assert all(U.rows in orb.index for U in cand.points)

    def test_rejects(self):
        with pytest.raises(OddQ):
            table6_base(3, 3, "+")
        with pytest.raises(Inadmissible):
            table6_base(1, 2, "+")
        with pytest.raises(BadInput):
            table6_base(3, 2, "o")


def random_nonsingular_lines(F, count, rng):
    """count distinct 1-spaces with Q nonzero on a spanning vector."""
    lines = set()
    while len(lines) < count:
        codes = tuple(rng.randrange(F.ctx.order) for _ in range(F.d))
        if all(c == 0 for c in codes):
            continue
        U = span(F.ctx, F.d, [codes])
        from basewright.linalg import Vector
        if evalQ(F, Vector(F.ctx, U.rows[0])).code == 0:
            continue
        lines.add(U)
    return list(lines)


class TestTightnessWitness:
    @pytest.mark.parametrize("q,d,sign", [
        (2, 6, "+"), (2, 6, "-"), (3, 6, "+"), (3, 6, "-"),
        (2, 8, "+"), (2, 8, "-"),
    ])
    def test_random_tuples(self, q, d, sign):
        F = quadratic_form(q, d, sign)
        rng = random.Random(d * 100 + q * 10 + (sign == "+"))
        for _ in range(10):
            lines = random_nonsingular_lines(F, d - 2, rng)
            g = tightness_witness(F, lines)
            assert is_isometry(F, g)
            assert not g.is_scalar()
            for U in lines:
                assert act(U, g) == U

    def test_degenerate_perp_branch(self):
        # lines whose enclosing (d-2)-space has totally singular perp
        F = quadratic_form(2, 6, "+")
        lines = [F.one_space({"e1": 1, "f1": 1}),
                 F.one_space({"e2": 1, "f2": 1}),
                 F.one_space({"e1": 1, "e2": 1, "f1": 1}),
                 F.one_space({"e3": 1, "f1": 1, "f2": 1})]
        g = tightness_witness(F, lines)
        assert is_isometry(F, g)
        assert not g.is_scalar()
        for U in lines:
            assert act(U, g) == U

    def test_bad_inputs(self):
        F = quadratic_form(2, 6, "+")
        with pytest.raises(BadInput):
            tightness_witness(F, [F.one_space({"e1": 1})])
        with pytest.raises(BadInput):
            tightness_witness(quadratic_form(3, 7, "o"),
                              [quadratic_form(3, 7, "o").one_space({"x": 1})] * 5)


class TestProvenance:
    def test_dump_round_trips_through_json(self):
        cand = table1_base("GU", 5, 2)
        blob = json.dumps(cand.dump())
        back = json.loads(blob)
        assert back["table"] == 1
        assert back["family"] == "GU"
        assert back["d"] == 5 and back["q"] == 2
        assert len(back["points"]) == cand.size

    def test_params_recorded(self):
        cand = table6_base(3, 2, "-")
        assert "lambda" in cand.provenance["params"]
        assert "zeta" in cand.provenance["params"]
