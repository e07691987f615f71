"""Matroids, lattices of flats, Mobius/Whitney data and matroid maps.

A matroid is stored as its full family of independent sets; ranks of all
subsets are tabulated once by a subset-lattice DP over bitmasks, so rank
and closure queries are cheap.  Desk scale is small ground sets (n <= 10),
where exactness beats cleverness.

Maps between matroids follow the usual zero-element convention: every
ground set is silently extended by the reserved label "o", maps send o to
o, and deleting an element is the map sending it to o.  The label o never
participates in rank computations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .labels import label_key, sort_labels

ZERO = "o"


class MatroidError(ValueError):
    pass


class NotEquicardinal(MatroidError):
    pass


class ExchangeFailure(MatroidError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotIntersectionClosed(MatroidError):
    pass


class NotMatroidal(MatroidError):
    pass


class UnknownElement(MatroidError):
    pass


class KOutOfRange(MatroidError):
    pass


class NotSurjective(MatroidError):
    pass


class Matroid:
    def __init__(self, elements, independents):
        elems = set(elements)
        if ZERO in elems:
            raise MatroidError(f"the label {ZERO!r} is reserved for the zero element")
        self.elements = tuple(sort_labels(elems))
        self._index = {e: i for i, e in enumerate(self.elements)}
        indep = frozenset(frozenset(s) for s in independents)
        self._validate(indep)
        self.independents = indep
        self._rank_table = self._tabulate_ranks()
        self.rank_total = self._rank_table[(1 << len(self.elements)) - 1]
        self._lattice = None

    def _validate(self, indep):
        if frozenset() not in indep:
            raise MatroidError("the empty set must be independent")
        for s in indep:
            for e in s:
                if e not in self._index:
                    raise UnknownElement(f"independent set uses unknown element {e!r}")
                if frozenset(s - {e}) not in indep:
                    raise MatroidError(f"independents not closed under subsets at {set(s)}")
        by_size: dict[int, list] = {}
        for s in indep:
            by_size.setdefault(len(s), []).append(s)
        sizes = sorted(by_size)
        for small, large in itertools.combinations(sizes, 2):
            for x in by_size[small]:
                for y in by_size[large]:
                    if not any(x | {e} in indep for e in y - x):
                        raise ExchangeFailure(
                            f"exchange fails for {set(x)} and {set(y)}", witness=(x, y)
                        )

    def _tabulate_ranks(self):
        n = len(self.elements)
        size = 1 << n
        is_ind = bytearray(size)
        for s in self.independents:
            is_ind[self._mask(s)] = 1
        table = [0] * size
        for m in range(1, size):
            if is_ind[m]:
                table[m] = m.bit_count()
            else:
                best = 0
                mm = m
                while mm:
                    low = mm & -mm
                    r = table[m ^ low]
                    if r > best:
                        best = r
                    mm ^= low
                table[m] = best
        return table

    def _mask(self, subset) -> int:
        m = 0
        for e in subset:
            i = self._index.get(e)
            if i is None:
                raise UnknownElement(f"{e!r} is not in the ground set")
            m |= 1 << i
        return m

    def rank(self, subset) -> int:
        return self._rank_table[self._mask(subset)]

    def is_independent(self, subset) -> bool:
        return frozenset(subset) in self.independents

    def closure(self, subset) -> frozenset:
        m = self._mask(subset)
        r = self._rank_table[m]
        return frozenset(
            e for e in self.elements if self._rank_table[m | (1 << self._index[e])] == r
        )

    def lattice(self) -> "GeometricLattice":
        if self._lattice is None:
            self._lattice = GeometricLattice(self)
        return self._lattice

    def __eq__(self, other):
        return (
            isinstance(other, Matroid)
            and self.elements == other.elements
            and self.independents == other.independents
        )

    def __hash__(self):
        return hash((self.elements, self.independents))

    def __repr__(self):
        return f"Matroid(rank {self.rank_total} on {len(self.elements)} elements)"


class GeometricLattice:
    """Flats of a matroid ordered by containment, graded by rank.

    Meets are intersections, joins are closures of unions; semimodularity
    and atomicity are verified at construction.
    """

    def __init__(self, matroid: Matroid):
        self.matroid = matroid
        n = len(matroid.elements)
        flats = {matroid.closure(())}
        for k in range(1, n + 1):
            for combo in itertools.combinations(matroid.elements, k):
                flats.add(matroid.closure(combo))
        self.flats = tuple(
            sorted(flats, key=lambda f: (matroid.rank(f), label_key(f)))
        )
        self.rank_of = {f: matroid.rank(f) for f in self.flats}
        self.bottom = self.flats[0]
        self.top = frozenset(matroid.elements)
        self.atoms = tuple(f for f in self.flats if self.rank_of[f] == 1)
        self.coatoms = tuple(
            f for f in self.flats if self.rank_of[f] == matroid.rank_total - 1
        )
        self._mobius = None
        self._check_geometric()

    def _check_geometric(self):
        flat_set = set(self.flats)
        for p, q in itertools.combinations(self.flats, 2):
            meet = p & q
            if meet not in flat_set:
                raise MatroidError(f"flats not intersection-closed at {set(p)}, {set(q)}")
            join = self.join(p, q)
            if self.rank_of[p] + self.rank_of[q] < self.rank_of[meet] + self.rank_of[join]:
                raise MatroidError(f"semimodularity fails at {set(p)}, {set(q)}")
        for f in self.flats:
            below = [a for a in self.atoms if a <= f]
            if self.matroid.closure(frozenset().union(*below) if below else ()) != f:
                raise MatroidError(f"flat {set(f)} is not a join of atoms")

    def leq(self, p, q) -> bool:
        return p <= q

    def join(self, p, q) -> frozenset:
        return self.matroid.closure(p | q)

    def meet(self, p, q) -> frozenset:
        return p & q

    def join_all(self, flats) -> frozenset:
        acc = frozenset()
        for f in flats:
            acc = acc | f
        return self.matroid.closure(acc)

    def covers(self):
        out = []
        for p in self.flats:
            rp = self.rank_of[p]
            for q in self.flats:
                if self.rank_of[q] == rp + 1 and p < q:
                    out.append((p, q))
        return out

    def up_set(self, p):
        return tuple(f for f in self.flats if p <= f)

    def atoms_below(self, p):
        return tuple(a for a in self.atoms if a <= p)

    def mobius(self) -> dict:
        """Mobius values mu(bottom, p), by the standard recursion."""
        if self._mobius is None:
            mu = {}
            for p in self.flats:  # sorted by rank, so all q < p are done
                if p == self.bottom:
                    mu[p] = 1
                else:
                    mu[p] = -sum(mu[q] for q in self.flats if q < p and q in mu)
            self._mobius = mu
        return self._mobius

    def whitney(self) -> "WhitneyVector":
        mu = self.mobius()
        w = [0] * (self.matroid.rank_total + 1)
        for f in self.flats:
            w[self.rank_of[f]] += abs(mu[f])
        return WhitneyVector(tuple(w))

    def __len__(self):
        return len(self.flats)

    def __repr__(self):
        return f"GeometricLattice({len(self.flats)} flats, rank {self.matroid.rank_total})"


@dataclass(frozen=True)
class WhitneyVector:
    """Whitney numbers of the first kind, w[k] = sum of |mu| over rank-k flats."""

    w: tuple

    def __getitem__(self, k):
        return self.w[k]

    def __len__(self):
        return len(self.w)

    def dominates(self, other: "WhitneyVector") -> bool:
        if len(self.w) != len(other.w):
            return False
        return all(a >= b for a, b in zip(self.w, other.w))

    def as_list(self):
        return list(self.w)


def whitney_first(matroid: Matroid) -> WhitneyVector:
    return matroid.lattice().whitney()


def uniform(r: int, n: int) -> Matroid:
    """The uniform matroid: every subset of size at most r is independent."""
    if not 0 <= r <= n:
        raise ValueError("need 0 <= r <= n")
    elements = range(1, n + 1)
    independents = itertools.chain.from_iterable(
        itertools.combinations(elements, k) for k in range(r + 1)
    )
    return Matroid(elements, independents)


def matroid_from_bases(elements, bases) -> Matroid:
    bases = [frozenset(b) for b in bases]
    if not bases:
        raise NotEquicardinal("at least one basis is required")
    size = len(bases[0])
    for b in bases:
        if len(b) != size:
            raise NotEquicardinal(f"bases {set(bases[0])} and {set(b)} differ in size")
    independents = set()
    for b in bases:
        for k in range(len(b) + 1):
            independents.update(itertools.combinations(b, k))
    return Matroid(elements, independents)


def matroid_from_flats(elements, flats) -> Matroid:
    """Reconstruct a matroid from its family of flats.

    The family must contain the ground set and be closed under pairwise
    intersections.  Validity is established by a round trip: the rank
    function derived from chain heights must reproduce exactly the given
    family as the flats of the result.
    """
    elems = frozenset(elements)
    family = {frozenset(f) for f in flats}
    if elems not in family:
        raise NotIntersectionClosed("the ground set (empty intersection) must be a flat")
    for f, g in itertools.combinations(family, 2):
        if f & g not in family:
            raise NotIntersectionClosed(f"missing intersection {set(f & g)}")
    for f in family:
        if not f <= elems:
            raise UnknownElement(f"flat {set(f)} leaves the ground set")
    ordered = sorted(family, key=len)
    height = {}
    for f in ordered:
        below = [height[g] for g in ordered if g < f and g in height]
        height[f] = max(below, default=-1) + 1
    sorted_family = sorted(family, key=len)

    def close(subset):
        for f in sorted_family:
            if subset <= f:
                return f
        raise AssertionError("unreachable: ground set is a flat")

    independents = [
        combo
        for k in range(len(elems) + 1)
        for combo in itertools.combinations(sort_labels(elems), k)
        if height[close(frozenset(combo))] == k
    ]
    try:
        matroid = Matroid(elems, independents)
    except MatroidError as exc:
        raise NotMatroidal(f"derived independence system is not a matroid: {exc}") from exc
    if set(matroid.lattice().flats) != family:
        raise NotMatroidal("flat family does not round-trip")
    return matroid


def truncate(matroid: Matroid, k: int) -> Matroid:
    """Rank function clamped at rank_total - k."""
    if not 0 <= k <= matroid.rank_total:
        raise KOutOfRange(f"truncation order {k} outside 0..{matroid.rank_total}")
    bound = matroid.rank_total - k
    return Matroid(
        matroid.elements, (s for s in matroid.independents if len(s) <= bound)
    )


class SetMap:
    """A map between ground sets extended by o, with o mapped to o."""

    def __init__(self, source: Matroid, target: Matroid, assignment):
        a = dict(assignment)
        a.setdefault(ZERO, ZERO)
        if a[ZERO] != ZERO:
            raise MatroidError("the zero element must map to itself")
        allowed_values = set(target.elements) | {ZERO}
        for e in source.elements:
            if e not in a:
                raise MatroidError(f"assignment not total: missing {e!r}")
            if a[e] not in allowed_values:
                raise UnknownElement(f"{e!r} maps outside the target ground set")
        for key in a:
            if key != ZERO and key not in source._index:
                raise UnknownElement(f"assignment key {key!r} is not a source element")
        self.source = source
        self.target = target
        self.assignment = {e: a[e] for e in source.elements}
        self.assignment[ZERO] = ZERO

    @classmethod
    def identity(cls, source: Matroid, target: Matroid | None = None) -> "SetMap":
        target = source if target is None else target
        return cls(source, target, {e: e for e in source.elements})

    def __call__(self, e):
        return self.assignment[e]

    def image_set(self, subset) -> frozenset:
        return frozenset(self.assignment[e] for e in subset) - {ZERO}

    def then(self, other: "SetMap") -> "SetMap":
        if self.target != other.source:
            raise MatroidError("maps not composable")
        return SetMap(
            self.source, other.target, {e: other.assignment[self.assignment[e]] for e in self.assignment}
        )


@dataclass(frozen=True)
class MapClassification:
    is_weak: bool
    is_strong: bool
    is_surjective: bool
    is_non_annihilating: bool


def classify_map(f: SetMap) -> MapClassification:
    """Weakness via the rank inequality on all subsets, strength via flat
    preimages, plus surjectivity and the atoms-to-atoms condition."""
    src, tgt = f.source, f.target
    weak = True
    for k in range(len(src.elements) + 1):
        for combo in itertools.combinations(src.elements, k):
            if tgt.rank(f.image_set(combo)) > src.rank(combo):
                weak = False
                break
        if not weak:
            break
    strong = True
    for flat in tgt.lattice().flats:
        pre = frozenset(e for e in src.elements if f(e) in flat or f(e) == ZERO)
        if src.closure(pre) != pre:
            strong = False
            break
    surjective = f.image_set(src.elements) >= frozenset(tgt.elements)
    non_annihilating = all(
        tgt.rank(tgt.closure(f.image_set(a))) == 1 for a in src.lattice().atoms
    )
    return MapClassification(weak, strong, surjective, non_annihilating)


class FlatMap:
    """An order-preserving map between lattices of flats."""

    def __init__(self, source_lattice, target_lattice, assignment, require_rank_nonincreasing=False):
        self.source_lattice = source_lattice
        self.target_lattice = target_lattice
        self.assignment = dict(assignment)
        for p in source_lattice.flats:
            if p not in self.assignment:
                raise MatroidError(f"flat map not total at {set(p)}")
        for p, q in source_lattice.covers():
            if not self.assignment[p] <= self.assignment[q]:
                raise MatroidError(f"flat map is not order-preserving at {set(p)} < {set(q)}")
        if require_rank_nonincreasing:
            for p in source_lattice.flats:
                if target_lattice.rank_of[self.assignment[p]] > source_lattice.rank_of[p]:
                    raise MatroidError(f"flat map increases rank at {set(p)}")

    def __call__(self, p):
        return self.assignment[p]

    def then(self, other: "FlatMap") -> "FlatMap":
        return FlatMap(
            self.source_lattice,
            other.target_lattice,
            {p: other.assignment[self.assignment[p]] for p in self.assignment},
        )

    def is_order_isomorphism(self) -> bool:
        values = set(self.assignment.values())
        if len(values) != len(self.assignment) or values != set(self.target_lattice.flats):
            return False
        inverse = {v: k for k, v in self.assignment.items()}
        return all(
            inverse[p] <= inverse[q]
            for p in self.target_lattice.flats
            for q in self.target_lattice.flats
            if p <= q
        )


def induced_flat_map(f: SetMap) -> FlatMap:
    """The flat map p -> closure of the image of p, for a weak map."""
    if not classify_map(f).is_weak:
        raise MatroidError("induced flat maps are defined for weak maps")
    src_lat = f.source.lattice()
    tgt_lat = f.target.lattice()
    assignment = {p: f.target.closure(f.image_set(p)) for p in src_lat.flats}
    return FlatMap(src_lat, tgt_lat, assignment, require_rank_nonincreasing=True)


def factor_through_truncation(f: SetMap):
    """Factor a surjective weak map through the truncation by the rank drop."""
    cls = classify_map(f)
    if not cls.is_weak:
        raise MatroidError("factorization applies to weak maps")
    if not cls.is_surjective:
        raise NotSurjective("factorization applies to surjective maps")
    k = f.source.rank_total - f.target.rank_total
    truncated = truncate(f.source, k)
    id_k = SetMap(f.source, truncated, {e: e for e in f.source.elements})
    tau_k = SetMap(truncated, f.target, dict(f.assignment))
    assert classify_map(id_k).is_weak and classify_map(tau_k).is_weak
    return id_k, tau_k


def surjection_rank_witness(f: SetMap, flat) -> frozenset:
    """A source flat over ``flat`` with equal rank, for surjective weak maps.

    Greedily picks the lexicographically smallest maximal independent subset
    of the target flat and closes its (lexicographically smallest) preimage.
    """
    cls = classify_map(f)
    if not cls.is_weak:
        raise MatroidError("rank witnesses exist for weak maps")
    if not cls.is_surjective:
        raise NotSurjective("rank witnesses exist for surjective maps")
    tgt = f.target
    flat = frozenset(flat)
    if tgt.closure(flat) != flat:
        raise MatroidError(f"{set(flat)} is not a flat of the target")
    basis = []
    for y in sort_labels(flat):
        if tgt.is_independent(frozenset(basis) | {y}):
            basis.append(y)
    lifted = []
    for y in basis:
        pre = sort_labels(e for e in f.source.elements if f(e) == y)
        lifted.append(pre[0])
    witness = f.source.closure(lifted)
    if f.source.rank(witness) != tgt.rank(flat):
        raise MatroidError("rank witness failed; map is not surjective weak")
    if tgt.closure(f.image_set(witness)) != flat:
        raise MatroidError("rank witness failed; map is not surjective weak")
    return witness
