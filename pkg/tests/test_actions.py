import pytest

from basewright.clgroups import build_group, sp_to_odd_orthogonal
from basewright.forms import classify
from basewright.actions import (
    ActionSpec, Orbit, ActionError, OrbitTooLarge, SeedTagMismatch, BadShape,
    BadParams, NoFormula,
    degree_formula, enumerate_orbit, standard_seed, partition_action,
    bound_functions,
)
from basewright.bsgs import perm_chain


def orbit_of(G, kind, k=1, sign=None):
    spec = ActionSpec(G, kind, k=k, sign=sign)
    return enumerate_orbit(spec, standard_seed(spec)), spec


class TestDegreeExamples:
    def test_symplectic_singular_point(self):
        G = build_group("Sp", 6, 2)
        orb, spec = orbit_of(G, "singular_k", 1)
        assert orb.degree == 63 == degree_formula(spec)

    def test_orth_plus_singular_point(self):
        G = build_group("GOplus", 6, 2)
        orb, spec = orbit_of(G, "singular_k", 1)
        assert orb.degree == 35 == degree_formula(spec)

    def test_orth_plus_nonsingular_point(self):
        G = build_group("GOplus", 6, 2)
        orb, spec = orbit_of(G, "nonsingular_1")
        assert orb.degree == 28 == degree_formula(spec)

    def test_coset_degrees(self):
        G, _ = sp_to_odd_orthogonal(3, 2)
        for sign, n in (("-", 28), ("+", 36)):
            orb, spec = orbit_of(G, "coset_sp_go", k=6, sign=sign)
            assert orb.degree == n == degree_formula(spec)


class TestFormulaMatchesEnumeration:
    CASES = [
        ("GL", 3, 2, "singular_k", 1, None),
        ("GL", 4, 2, "singular_k", 2, None),
        ("GL", 3, 3, "singular_k", 1, None),
        ("Sp", 4, 2, "singular_k", 1, None),
        ("Sp", 4, 3, "singular_k", 2, None),
        ("Sp", 6, 2, "singular_k", 2, None),
        ("Sp", 4, 3, "nondeg_k", 2, None),
        ("Sp", 6, 2, "nondeg_k", 2, None),
        ("GU", 3, 2, "singular_k", 1, None),
        ("GU", 4, 2, "singular_k", 2, None),
        ("GU", 3, 2, "nondeg_k", 1, None),
        ("GU", 4, 2, "nondeg_k", 2, None),
        ("GU", 4, 3, "singular_k", 1, None),
        ("GOplus", 6, 2, "singular_k", 2, None),
        ("GOplus", 6, 3, "singular_k", 1, None),
        ("GOplus", 6, 2, "nondeg_k", 2, "+"),
        ("GOplus", 6, 2, "nondeg_k", 2, "-"),
        ("GOminus", 6, 2, "singular_k", 1, None),
        ("GOminus", 6, 2, "nondeg_k", 2, "+"),
        ("GOminus", 6, 3, "nondeg_k", 1, "sq"),
        ("GOminus", 6, 3, "nondeg_k", 1, "ns"),
        ("GOcirc", 7, 3, "singular_k", 1, None),
        ("GOcirc", 7, 3, "nondeg_k", 2, "+"),
        ("GOcirc", 7, 3, "nondeg_k", 2, "-"),
    ]

    @pytest.mark.parametrize("family,d,q,kind,k,sign", CASES)
    def test_agreement(self, family, d, q, kind, k, sign):
        G = build_group(family, d, q)
        spec = ActionSpec(G, kind, k=k, sign=sign)
        orb = enumerate_orbit(spec, standard_seed(spec))
        if kind == "nondeg_k" and k == 1 and q % 2:
            # odd-q 1-space orbits: both square classes have the formula size
            assert orb.degree == degree_formula(
                ActionSpec(G, kind, k=k, sign=None))
        else:
            assert orb.degree == degree_formula(spec)

    def test_transitivity_and_closure(self):
        G = build_group("GOplus", 6, 2)
        spec = ActionSpec(G, "singular_k", k=1)
        orb = enumerate_orbit(spec, standard_seed(spec))
        for p in orb.perm_gens.gens:
            assert sorted(p.images) == list(range(orb.degree))
        chain = perm_chain(orb.perm_gens.gens, orb.degree)
        assert len(chain.levels[0].orbit) == orb.degree

    def test_tag_homogeneous(self):
        G = build_group("GOminus", 6, 2)
        spec = ActionSpec(G, "nonsingular_1")
        orb = enumerate_orbit(spec, standard_seed(spec))
        for U in orb.points:
            assert classify(G.form, U) == "nonsingular_1"


class TestActionKernel:
    def test_kernel_is_scalars(self):
        # permutation image order = |G| / |scalars|
        from basewright.clgroups import scalars
        for family, d, q in [("Sp", 4, 3), ("GU", 3, 2), ("GOplus", 6, 2)]:
            G = build_group(family, d, q)
            spec = ActionSpec(G, "singular_k", k=1)
            orb = enumerate_orbit(spec, standard_seed(spec))
            chain = perm_chain(orb.perm_gens.gens, orb.degree)
            assert chain.order == G.order // len(scalars(G))


class TestSeedValidation:
    def test_seed_tag_mismatch(self):
        G = build_group("Sp", 4, 2)
        spec = ActionSpec(G, "singular_k", k=2)
        bad = standard_seed(ActionSpec(G, "singular_k", k=1))
        with pytest.raises(SeedTagMismatch):
            enumerate_orbit(spec, bad)

    def test_cap(self):
        G = build_group("Sp", 6, 2)
        spec = ActionSpec(G, "singular_k", k=1)
        with pytest.raises(OrbitTooLarge):
            enumerate_orbit(spec, standard_seed(spec), cap=10)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ActionError):
            ActionSpec(None, "mystery")


class TestPartitions:
    def test_degrees(self):
        assert partition_action(6, 3, 2).degree == 15
        assert partition_action(6, 2, 3).degree == 10
        assert partition_action(8, 2, 4).degree == 35

    def test_all_shapes_up_to_ten(self):
        import math
        for l in range(5, 11):
            for s in range(2, l):
                if l % s or l // s < 2:
                    continue
                t = l // s
                orb = partition_action(l, s, t)
                assert orb.degree == math.factorial(l) // (
                    math.factorial(t) ** s * math.factorial(s))

    def test_bad_shape(self):
        with pytest.raises(BadShape):
            partition_action(4, 2, 2)
        with pytest.raises(BadShape):
            partition_action(6, 2, 2)
        with pytest.raises(BadShape):
            partition_action(7, 2, 3)

    def test_canonical_points(self):
        orb = partition_action(6, 3, 2)
        for part in orb.points:
            assert part == tuple(sorted(tuple(sorted(b)) for b in part))

    def test_full_symmetric_image(self):
        orb = partition_action(6, 2, 3)
        chain = perm_chain(orb.perm_gens.gens, orb.degree)
        assert chain.order == 720  # faithful: Sym(6) on 10 points


class TestNoFormula:
    def test_sp_odd_nondeg(self):
        G = build_group("Sp", 4, 2)
        with pytest.raises(NoFormula):
            degree_formula(ActionSpec(G, "nondeg_k", k=1))

    def test_gocirc_odd_nondeg(self):
        G = build_group("GOcirc", 7, 3)
        with pytest.raises(NoFormula):
            degree_formula(ActionSpec(G, "nondeg_k", k=3, sign="+"))


class TestBounds:
    def test_hlm(self):
        assert bound_functions("HLM_i", d=12, k=3) == 14
        assert bound_functions("HLM_ii", d=12, k=3) == 15
        assert bound_functions("HLM_iii", d=10, k=2) == 10

    def test_partitions_bound(self):
        assert bound_functions("partitions", s=2, t=8) == 6
        assert bound_functions("partitions", s=3, t=2) == 4

    def test_diagonal_bound(self):
        assert bound_functions("diagonal", k=2, t_order=60) == 3
        assert bound_functions("diagonal", k=3601, t_order=60) == 5

    def test_product_bound(self):
        assert bound_functions("product", k=4, m=24, b_inner=7) == 8

    def test_bad_params(self):
        with pytest.raises(BadParams):
            bound_functions("HLM_i", d=3, k=5)
        with pytest.raises(BadParams):
            bound_functions("partitions", s=1, t=3)
        with pytest.raises(BadParams):
            bound_functions("nonsense")
