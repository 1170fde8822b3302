"""Stabilizer chains: deterministic Schreier-Sims, membership sifting,
pointwise stabilizers, greedy bases, order lower bounds and exact minimal-base
search with orbit-representative and order-bound pruning.

The engine is generic over the element type: a small ops adapter supplies
multiplication, inversion, identity and the point action.  Permutations (the
common case) act on 0..n-1; the classical-group layer plugs in matrices acting
on canonical subspaces with the same machinery.
"""

from __future__ import annotations

from collections import deque


class BsgsError(Exception):
    pass


class BudgetExceeded(BsgsError):
    """Search budget exhausted; carries the certified interval."""

    def __init__(self, lower, upper, witness):
        super().__init__(f"minimal base size in [{lower}, {upper}]")
        self.lower = lower
        self.upper = upper
        self.witness = witness


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------

class Permutation:
    """A bijection on {0..n-1}, stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise BsgsError("not a bijection")
        self.images = images

    @property
    def degree(self):
        return len(self.images)

    @staticmethod
    def identity(n):
        return Permutation(range(n))

    @staticmethod
    def from_cycles(cycles, degree, one_based=False):
        images = list(range(degree))
        for cyc in cycles:
            pts = [p - 1 for p in cyc] if one_based else list(cyc)
            for i, p in enumerate(pts):
                images[p] = pts[(i + 1) % len(pts)]
        return Permutation(images)

    def cycles(self, one_based=False):
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = []
            p = start
            while not seen[p]:
                seen[p] = True
                cyc.append(p + 1 if one_based else p)
                p = self.images[p]
            out.append(tuple(cyc))
        return out

    def __mul__(self, other):
        """Right-action composition: (g*h)(p) = h(g(p))."""
        o = other.images
        return Permutation(tuple(o[i] for i in self.images))

    def inverse(self):
        inv = [0] * self.degree
        for i, img in enumerate(self.images):
            inv[img] = i
        return Permutation(inv)

    def __call__(self, p):
        return self.images[p]

    def is_identity(self):
        return all(i == img for i, img in enumerate(self.images))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        cyc = self.cycles(one_based=True)
        return "Permutation(id)" if not cyc else "Permutation" + "".join(
            "(" + ",".join(map(str, c)) + ")" for c in cyc)


class PermOps:
    """Element ops for permutations stored as raw image tuples."""

    def __init__(self, degree):
        self.degree = degree
        self.identity = tuple(range(degree))

    @staticmethod
    def mul(g, h):
        return tuple(h[i] for i in g)

    @staticmethod
    def inv(g):
        out = [0] * len(g)
        for i, img in enumerate(g):
            out[img] = i
        return tuple(out)

    @staticmethod
    def act(point, g):
        return g[point]

    def is_identity(self, g):
        return g == self.identity

    def moved_points(self, g):
        return [i for i, img in enumerate(g) if img != i]


# ---------------------------------------------------------------------------
# Generic stabilizer chain
# ---------------------------------------------------------------------------

class _Level:
    __slots__ = ("base", "gens", "orbit", "queue")

    def __init__(self, base, identity):
        self.base = base
        self.gens = []
        self.orbit = {base: identity}   # point -> transversal representative
        self.queue = deque()


class StabChain:
    """Base points, per-level strong generators and transversals."""

    def __init__(self, ops, levels):
        self.ops = ops
        self.levels = levels

    @property
    def base_points(self):
        return [lv.base for lv in self.levels]

    @property
    def order(self):
        n = 1
        for lv in self.levels:
            n *= len(lv.orbit)
        return n

    def generators(self):
        """Generators of the whole group (the level-0 strong set)."""
        return list(self.levels[0].gens) if self.levels else []

    def strong_generators(self):
        seen = []
        for lv in self.levels:
            for g in lv.gens:
                if g not in seen:
                    seen.append(g)
        return seen

    def sift(self, g, start=0):
        """Returns (residue, level); residue is the ops identity iff g is in
        the group generated below `start` (membership test at start=0)."""
        ops = self.ops
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            gamma = ops.act(lv.base, g)
            if gamma not in lv.orbit:
                return g, i
            g = ops.mul(g, ops.inv(lv.orbit[gamma]))
        return g, len(self.levels)

    def contains(self, g):
        residue, _ = self.sift(g)
        return self.ops.is_identity(residue)

    def suffix(self, k):
        """The chain of the subgroup fixing the first k base points."""
        return StabChain(self.ops, self.levels[k:])


class ChainBuilder:
    """Resumable incremental Schreier-Sims construction.

    Generators may be inserted one at a time; process() works through the
    pending Schreier generators and may be interrupted by a target order,
    which certifies completeness early (the orbit-size product never exceeds
    the true group order, so reaching the target proves the chain correct).
    """

    def __init__(self, ops, base_hint=()):
        self.ops = ops
        self.levels = [_Level(b, ops.identity) for b in base_hint]
        self.chain = StabChain(ops, self.levels)
        self._hint_len = len(self.levels)

    def _new_base_point(self, h):
        ops = self.ops
        if isinstance(ops, PermOps):
            for p in range(ops.degree):
                if h[p] != p:
                    return p
            raise BsgsError("identity has no moved point")
        return ops.first_moved_point(h)

    def _add_gen(self, h, lo, hi):
        # register h as a strong generator at levels lo..hi inclusive
        for l in range(lo, hi + 1):
            lv = self.levels[l]
            lv.gens.append(h)
            for p in list(lv.orbit):
                lv.queue.append((p, h))

    def insert(self, g, from_level=0):
        if isinstance(g, Permutation):
            g = g.images
        h, j = self.chain.sift(g, from_level)
        if self.ops.is_identity(h):
            return False
        if j == len(self.levels):
            self.levels.append(_Level(self._new_base_point(h), self.ops.identity))
        self._add_gen(h, from_level, j)
        return True

    def process(self, target_order=None):
        """Drains pending Schreier generators, deepest dirty level first."""
        ops, levels, chain = self.ops, self.levels, self.chain

        def done():
            return target_order is not None and chain.order >= target_order

        if done():
            return
        while True:
            i = None
            for l in range(len(levels) - 1, -1, -1):
                if levels[l].queue:
                    i = l
                    break
            if i is None:
                return
            lv = levels[i]
            p, s = lv.queue.popleft()
            q = ops.act(p, s)
            rep_p = lv.orbit[p]
            if q not in lv.orbit:
                lv.orbit[q] = ops.mul(rep_p, s)
                for s2 in lv.gens:
                    lv.queue.append((q, s2))
                if done():
                    return
            else:
                sg = ops.mul(ops.mul(rep_p, s), ops.inv(lv.orbit[q]))
                if not ops.is_identity(sg):
                    if self.insert(sg, i + 1) and done():
                        return

    def finish(self):
        # drop trailing trivial levels not forced by the hint
        while (len(self.levels) > self._hint_len
               and len(self.levels[-1].orbit) == 1
               and not self.levels[-1].gens):
            self.levels.pop()
        return self.chain


def schreier_sims(gens, ops, base_hint=(), target_order=None):
    """Deterministic incremental Schreier-Sims.

    base_hint forces the given points to head the base (levels are created
    for them even when redundant).  When target_order is supplied the
    construction stops as soon as the chain order reaches it.
    """
    builder = ChainBuilder(ops, base_hint=base_hint)
    for g in gens:
        builder.insert(g)
    builder.process(target_order)
    return builder.finish()


# ---------------------------------------------------------------------------
# Derived operations (permutation domain)
# ---------------------------------------------------------------------------

def perm_chain(gens, degree, base_hint=(), target_order=None) -> StabChain:
    ops = PermOps(degree)
    return schreier_sims(gens, ops, base_hint=base_hint, target_order=target_order)


def pointwise_stabilizer(chain: StabChain, points) -> StabChain:
    """Chain for the subgroup fixing every listed point, via base change."""
    points = list(points)
    rebuilt = schreier_sims(chain.generators(), chain.ops, base_hint=points)
    return rebuilt.suffix(len(points))


def is_base(chain: StabChain, points) -> bool:
    return pointwise_stabilizer(chain, points).order == 1


def _orbits(gens, degree):
    seen = [False] * degree
    out = []
    for start in range(degree):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = deque([start])
        while queue:
            p = queue.popleft()
            for g in gens:
                q = g[p]
                if not seen[q]:
                    seen[q] = True
                    comp.append(q)
                    queue.append(q)
        out.append(sorted(comp))
    return out


def greedy_base(chain: StabChain):
    """Point-greedy base: repeatedly fix a point whose stabilizer is smallest
    (equivalently, a point in a largest orbit; ties to the smallest index)."""
    if not isinstance(chain.ops, PermOps):
        raise BsgsError("greedy_base works on permutation chains")
    degree = chain.ops.degree
    base = []
    current = chain
    while current.order > 1:
        gens = current.generators()
        orbits = [o for o in _orbits(gens, degree) if len(o) > 1]
        best = max(orbits, key=lambda o: (len(o), -o[0]))
        point = best[0]
        base.append(point)
        current = pointwise_stabilizer(current, [point])
    return base


def order_lower_bound(group_order: int, n: int) -> int:
    """Smallest b with n^b >= group_order (exact integer arithmetic)."""
    if group_order <= 1:
        return 0
    if n < 2:
        raise BsgsError("need n >= 2")
    b = 0
    power = 1
    while power < group_order:
        power *= n
        b += 1
    return b


def exact_min_base(chain: StabChain, cutoff=None, budget=10 ** 8):
    """Exact minimal base size by DFS over stabilizer-orbit representatives.

    Returns (size, witness points).  Within each node only one point per
    orbit of the current stabilizer is tried (orbit-equivalent points give
    conjugate stabilizers, so this preserves minimality); branches that
    cannot beat the best known base by the |G| <= n^b bound are pruned.
    Raises BudgetExceeded with the certified interval when the node budget
    runs out.
    """
    if not isinstance(chain.ops, PermOps):
        raise BsgsError("exact_min_base works on permutation chains")
    degree = chain.ops.degree
    if chain.order == 1:
        return 0, []
    best_points = greedy_base(chain)
    best_size = len(best_points)
    lower = order_lower_bound(chain.order, degree)
    if cutoff is not None and best_size > cutoff:
        best_size = cutoff + 1  # only search for bases within the cutoff
    if best_size <= lower:
        return best_size, best_points
    nodes = 0
    proven = True

    def dfs(current, prefix):
        nonlocal best_size, best_points, nodes, proven
        nodes += 1
        if nodes > budget:
            proven = False
            raise _Stop
        order = current.order
        if order == 1:
            if len(prefix) < best_size:
                best_size = len(prefix)
                best_points = list(prefix)
            return
        if len(prefix) + order_lower_bound(order, degree) >= best_size:
            return
        gens = current.generators()
        for orbit in _orbits(gens, degree):
            if len(orbit) == 1:
                continue  # fixed points never shrink the stabilizer
            point = orbit[0]
            dfs(pointwise_stabilizer(current, [point]), prefix + [point])

    class _Stop(Exception):
        pass

    try:
        dfs(chain, [])
    except _Stop:
        pass
    if not proven:
        raise BudgetExceeded(lower, best_size, best_points)
    if cutoff is not None and best_size > cutoff:
        raise BudgetExceeded(best_size, best_size, None)
    return best_size, best_points
