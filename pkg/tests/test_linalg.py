import random

import pytest

from basewright.gf import FieldCtx
from basewright.linalg import (
    Vector, Matrix, Subspace, LinAlgError, SingularMatrix,
    rref, span, act, meet, join, support, zero_subspace,
)


def gf(n):
    return FieldCtx.of_order(n)


def vec(ctx, *codes):
    return Vector(ctx, codes)


def basis_vec(ctx, d, i):
    return Vector(ctx, tuple(1 if j == i else 0 for j in range(d)))


def random_vector(ctx, d, rng):
    return Vector(ctx, tuple(rng.randrange(ctx.order) for _ in range(d)))


def rank_by_minors(rows, ctx):
    """Independent rank oracle: largest k with a nonzero k x k minor."""
    import itertools
    n = len(rows)
    d = len(rows[0].codes)

    def det(idx_r, idx_c):
        sub = [[rows[i].codes[j] for j in idx_c] for i in idx_r]
        k = len(sub)
        total = ctx.zero
        one = ctx.one
        for perm in itertools.permutations(range(k)):
            sign_odd = _parity(perm)
            prod = one
            for i in range(k):
                prod = prod * ctx.element(sub[i][perm[i]])
            total = total - prod if sign_odd else total + prod
        return total

    best = 0
    for k in range(1, min(n, d) + 1):
        found = False
        for idx_r in itertools.combinations(range(n), k):
            for idx_c in itertools.combinations(range(d), k):
                if det(idx_r, idx_c) != ctx.zero:
                    found = True
                    break
            if found:
                break
        if found:
            best = k
    return best


def _parity(perm):
    seen = [False] * len(perm)
    odd = False
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            odd = not odd
    return odd


class TestRref:
    def test_already_canonical(self):
        ctx = gf(2)
        U = rref([vec(ctx, 1, 1, 0), vec(ctx, 0, 0, 1)])
        assert U.rows == ((1, 1, 0), (0, 0, 1))
        assert U.pivots == (0, 2)

    def test_scaling_collapse(self):
        ctx = gf(3)
        U = rref([vec(ctx, 2, 0), vec(ctx, 1, 0)])
        assert U.dim == 1
        assert U.rows == ((1, 0),)

    def test_idempotence(self):
        ctx = gf(4)
        rng = random.Random(7)
        for _ in range(25):
            rows = [random_vector(ctx, 5, rng) for _ in range(3)]
            U = rref(rows)
            assert rref(U.basis_vectors()) == U if U.dim else True

    def test_rank_matches_minor_oracle(self):
        ctx = gf(3)
        rng = random.Random(11)
        for _ in range(15):
            rows = [random_vector(ctx, 4, rng) for _ in range(3)]
            U = span(ctx, 4, [v.codes for v in rows])
            assert U.dim == rank_by_minors(rows, ctx)


class TestAct:
    def test_identity_and_scalars(self):
        ctx = gf(5)
        U = rref([vec(ctx, 1, 2, 3), vec(ctx, 0, 1, 4)])
        I = Matrix.identity(ctx, 3)
        assert act(U, I) == U
        two = Matrix(ctx, ((2, 0, 0), (0, 2, 0), (0, 0, 2)))
        assert act(U, two) == U

    def test_permutation_matrix(self):
        ctx = gf(2)
        U = rref([basis_vec(ctx, 3, 0)])
        g = Matrix(ctx, ((0, 1, 0), (1, 0, 0), (0, 0, 1)))
        assert act(U, g) == rref([basis_vec(ctx, 3, 1)])

    def test_right_action_composition(self):
        ctx = gf(3)
        rng = random.Random(3)
        for _ in range(10):
            rows = [random_vector(ctx, 4, rng) for _ in range(2)]
            U = rref(rows)
            g = _random_invertible(ctx, 4, rng)
            h = _random_invertible(ctx, 4, rng)
            assert act(act(U, g), h) == act(U, g * h)

    def test_dim_preserved(self):
        ctx = gf(4)
        rng = random.Random(5)
        U = rref([random_vector(ctx, 5, rng) for _ in range(3)])
        g = _random_invertible(ctx, 5, rng)
        assert act(U, g).dim == U.dim


def _random_invertible(ctx, d, rng):
    while True:
        m = Matrix(ctx, tuple(tuple(rng.randrange(ctx.order) for _ in range(d))
                              for _ in range(d)))
        if m.is_invertible():
            return m


class TestMeetJoin:
    def test_meet_join_self(self):
        ctx = gf(2)
        U = rref([vec(ctx, 1, 0, 1), vec(ctx, 0, 1, 1)])
        assert meet(U, U) == U
        assert join(U, U) == U

    def test_plane_intersection(self):
        ctx = gf(2)
        e = [basis_vec(ctx, 4, i) for i in range(4)]
        U = rref([e[0], e[1]])
        W = rref([e[1], e[2]])
        assert meet(U, W) == rref([e[1]])

    def test_grassmann_identity(self):
        ctx = gf(3)
        rng = random.Random(17)
        for _ in range(40):
            U = rref([random_vector(ctx, 5, rng) for _ in range(rng.randint(1, 3))])
            W = rref([random_vector(ctx, 5, rng) for _ in range(rng.randint(1, 3))])
            assert meet(U, W).dim + join(U, W).dim == U.dim + W.dim

    def test_meet_matches_pointset_oracle(self):
        ctx = gf(3)
        rng = random.Random(23)
        for _ in range(10):
            U = rref([random_vector(ctx, 4, rng) for _ in range(2)])
            W = rref([random_vector(ctx, 4, rng) for _ in range(2)])
            common = {v.codes for v in U.vectors()} & {v.codes for v in W.vectors()}
            M = meet(U, W)
            assert {v.codes for v in M.vectors()} == common


class TestMatrix:
    def test_inverse(self):
        ctx = gf(3)
        rng = random.Random(29)
        for _ in range(10):
            g = _random_invertible(ctx, 4, rng)
            assert g * g.inverse() == Matrix.identity(ctx, 4)

    def test_singular_raises(self):
        ctx = gf(2)
        m = Matrix(ctx, ((1, 1), (1, 1)))
        with pytest.raises(SingularMatrix):
            m.inverse()

    def test_is_scalar(self):
        ctx = gf(5)
        assert Matrix(ctx, ((3, 0), (0, 3))).is_scalar()
        assert not Matrix(ctx, ((3, 0), (0, 2))).is_scalar()
        assert not Matrix(ctx, ((0, 0), (0, 0))).is_scalar()


class TestSupportAndMisc:
    def test_support_labels(self):
        ctx = gf(2)
        labels = ["e1", "e2", "f1", "f2"]
        v = vec(ctx, 1, 0, 0, 1)
        assert support(v, labels) == {"e1", "f2"}

    def test_support_zero(self):
        ctx = gf(2)
        assert support(vec(ctx, 0, 0, 0)) == set()

    def test_support_gf3_signed(self):
        ctx = gf(3)
        labels = ["e1", "f1", "x"]
        v = vec(ctx, 2, 1, 1)  # -e1 + f1 + x
        assert support(v, labels) == {"e1", "f1", "x"}

    def test_subspace_constructor_guarded(self):
        ctx = gf(2)
        with pytest.raises(LinAlgError):
            Subspace(ctx, 2, ((1, 0),), (0,))

    def test_zero_subspace(self):
        ctx = gf(2)
        Z = zero_subspace(ctx, 3)
        assert Z.dim == 0
        assert Z.contains(vec(ctx, 0, 0, 0))
        assert not Z.contains(vec(ctx, 1, 0, 0))
