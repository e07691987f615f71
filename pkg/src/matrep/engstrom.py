"""Engstrom representations of matroids and the maps they induce.

The pipeline: a rank- and order-reversing immersion of the lattice of flats
into a boolean lattice turns each flat into a join of copies of a template
complex X; the homotopy colimit over the lattice (minus the bottom) is the
representation T, covered by one subcomplex per atom.  Reduced Betti
numbers of T are a weighted count of suspensions of join powers of X, with
Whitney numbers of the first kind as weights, and weak maps of matroids
induce simplicial maps between representations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complexes import (
    BettiVector,
    NotSimplicial,
    SimplicialComplex,
    SimplicialMap,
    iterated_join,
    reduced_betti,
    suspension_iter,
)
from .diagrams import DiagramMorphism, FinitePoset, InclusionDiagram, hocolim, induced_map
from .labels import label_key, sort_labels
from .matroid import FlatMap, Matroid, MatroidError, SetMap, classify_map, induced_flat_map


class InvalidImmersion(ValueError):
    pass


class NotAdmissible(ValueError):
    pass


class NoAtomInImage(ValueError):
    pass


class NotFree(ValueError):
    pass


@dataclass(frozen=True)
class Immersion:
    """An assignment of subsets of {1..rho} to flats; see validate_immersion."""

    matroid: Matroid
    rho: int
    assignment: tuple  # sorted ((flat, frozenset-of-indices), ...) pairs

    @classmethod
    def from_dict(cls, matroid: Matroid, rho: int, mapping) -> "Immersion":
        items = tuple(
            sorted(
                ((frozenset(f), frozenset(s)) for f, s in dict(mapping).items()),
                key=lambda kv: label_key(kv[0]),
            )
        )
        return cls(matroid, rho, items)

    def as_dict(self) -> dict:
        return dict(self.assignment)

    def __call__(self, flat) -> frozenset:
        return self.as_dict()[frozenset(flat)]


def canonical_immersion(matroid: Matroid, rho: int) -> Immersion:
    """The immersion sending a rank-k flat to {1, ..., rho - k}."""
    if rho < matroid.rank_total:
        raise InvalidImmersion(f"need rho >= {matroid.rank_total}")
    lat = matroid.lattice()
    return Immersion.from_dict(
        matroid, rho, {f: frozenset(range(1, rho - lat.rank_of[f] + 1)) for f in lat.flats}
    )


def validate_immersion(immersion: Immersion):
    """Check the rank- and order-reversing conditions.

    Returns (True, None) or (False, witness string) for the first failure.
    """
    lat = immersion.matroid.lattice()
    mapping = immersion.as_dict()
    universe = frozenset(range(1, immersion.rho + 1))
    for f in lat.flats:
        if f not in mapping:
            return False, f"no value at flat {set(f)}"
        if not mapping[f] <= universe:
            return False, f"value at {set(f)} leaves 1..{immersion.rho}"
        if len(mapping[f]) != immersion.rho - lat.rank_of[f]:
            return False, f"rank reversal fails at {set(f)}"
    for p, q in lat.covers():
        if not mapping[q] <= mapping[p]:
            return False, f"order reversal fails at {set(p)} < {set(q)}"
    return True, None


@dataclass(frozen=True)
class ImmersedMatroid:
    matroid: Matroid
    immersion: Immersion

    def __post_init__(self):
        if self.immersion.matroid != self.matroid:
            raise InvalidImmersion("immersion belongs to a different matroid")
        ok, witness = validate_immersion(self.immersion)
        if not ok:
            raise InvalidImmersion(witness)

    @property
    def rho(self) -> int:
        return self.immersion.rho


def immersed(matroid: Matroid, rho: int | None = None, immersion: Immersion | None = None) -> ImmersedMatroid:
    if immersion is None:
        immersion = canonical_immersion(matroid, matroid.rank_total if rho is None else rho)
    return ImmersedMatroid(matroid, immersion)


def is_admissible(tau: SetMap, l: Immersion, l_prime: Immersion) -> bool:
    """Whether l(p) is contained in l'(tau#(p)) for every flat p."""
    if l.rho != l_prime.rho:
        raise InvalidImmersion("immersions must share rho")
    flat_map = induced_flat_map(tau)
    lp = l_prime.as_dict()
    return all(l(p) <= lp[flat_map(p)] for p in l.matroid.lattice().flats)


def copies_complex(x: SimplicialComplex, indices) -> SimplicialComplex:
    """Join of disjoint copies of x, one per index, vertices (index, v)."""
    idx = sorted(indices)
    if not idx or x.is_empty:
        return SimplicialComplex.empty()
    facets = []
    for choice in itertools.product(sorted(x.facets, key=label_key), repeat=len(idx)):
        facets.append(frozenset((i, v) for i, f in zip(idx, choice) for v in f))
    return SimplicialComplex(facets)


def build_diagram(im: ImmersedMatroid, x: SimplicialComplex) -> InclusionDiagram:
    """The lattice-of-flats diagram whose space at p joins the copies of x
    selected by the immersion value at p."""
    if x.is_empty:
        raise ValueError("the template complex must be nonempty")
    lat = im.matroid.lattice()
    poset = FinitePoset.from_leq(lat.flats, lambda a, b: a <= b)
    spaces = {f: copies_complex(x, im.immersion(f)) for f in lat.flats}
    return InclusionDiagram(poset, spaces)


@dataclass
class Representation:
    immersed: ImmersedMatroid
    template: SimplicialComplex
    Y: SimplicialComplex
    T: SimplicialComplex
    atom_subcomplexes: dict  # atom flat -> SimplicialComplex
    provenance: dict  # hocolim vertex -> lattice flat

    @property
    def lattice(self):
        return self.immersed.matroid.lattice()

    def upset_complex(self, flat) -> SimplicialComplex:
        """Subcomplex of Y over the flats containing ``flat``; realizes
        intersections of atom subcomplexes via provenance."""
        flat = frozenset(flat)
        keep = {v for v, p in self.provenance.items() if flat <= p}
        return self.Y.full_subcomplex(keep)


def build_representation(im: ImmersedMatroid, x: SimplicialComplex) -> Representation:
    """Hocolim over the whole lattice (Y), over the lattice minus bottom (T),
    and over each atom's up-set (the covering subcomplexes)."""
    diagram = build_diagram(im, x)
    lat = im.matroid.lattice()
    hc = hocolim(diagram)
    prov = hc.provenance
    bottom = lat.bottom
    t_complex = hc.complex.full_subcomplex(
        v for v, p in prov.items() if p != bottom
    )
    atoms = {}
    for a in lat.atoms:
        atoms[a] = hc.complex.full_subcomplex(v for v, p in prov.items() if a <= p)
    return Representation(im, x, hc.complex, t_complex, atoms, prov)


def expected_betti(im: ImmersedMatroid, x: SimplicialComplex) -> BettiVector:
    """Betti numbers of T predicted by the wedge decomposition.

    The rank-i layer contributes w_i copies of the (i-1)-fold suspension of
    the (rho-i)-fold join power of x; reduced Betti numbers add over wedges.
    """
    w = im.matroid.lattice().whitney()
    total = BettiVector()
    for i in range(1, im.matroid.rank_total + 1):
        if w[i] == 0:
            continue
        layer = suspension_iter(iterated_join(x, im.rho - i), i - 1)
        total = total + reduced_betti(layer).scale(w[i])
    return total


def arrangement_flats(rep: Representation) -> FinitePoset:
    """The intersection poset of the atom subcomplexes.

    A set of atoms is closed when no further atom subcomplex contains the
    intersection of the chosen ones; the empty intersection is all of Y.
    """
    atoms = sort_labels(rep.atom_subcomplexes)
    vertex_sets = {a: rep.atom_subcomplexes[a].vertices for a in atoms}
    all_vertices = rep.Y.vertices
    closed = set()
    for k in range(len(atoms) + 1):
        for combo in itertools.combinations(atoms, k):
            meet = all_vertices
            for a in combo:
                meet = meet & vertex_sets[a]
            closure = frozenset(b for b in atoms if meet <= vertex_sets[b])
            closed.add(closure)
    return FinitePoset.from_leq(closed, lambda s, t: s <= t)


def arrangement_matches_lattice(rep: Representation) -> bool:
    """Whether the intersection poset is isomorphic to the lattice of flats,
    under atom-set <-> flat (join of the atoms, bottom for the empty set)."""
    lat = rep.lattice
    poset = arrangement_flats(rep)
    forward = {}
    for s in poset.elements:
        forward[s] = lat.join_all(s) if s else lat.bottom
    if sorted(forward.values(), key=label_key) != sorted(lat.flats, key=label_key):
        return False
    backward = {f: frozenset(lat.atoms_below(f)) for f in lat.flats}
    if set(backward.values()) != set(poset.elements):
        return False
    for s in poset.elements:
        for t in poset.elements:
            if (s <= t) != (forward[s] <= forward[t]):
                return False
    return True


def reroute_annihilating(tau: SetMap) -> FlatMap:
    """Replace a weak map's flat map by a non-annihilating one.

    Atoms sent to the bottom flat are rerouted to the lexicographically
    smallest atom in the image; the rest of the lattice map is rebuilt as
    the join of the patched atom values, which keeps it order-preserving.
    """
    base = induced_flat_map(tau)
    src_lat = base.source_lattice
    tgt_lat = base.target_lattice
    image_atoms = sorted(
        {
            base(p)
            for p in src_lat.flats
            if p != src_lat.bottom and tgt_lat.rank_of[base(p)] == 1
        },
        key=label_key,
    )
    if not image_atoms:
        raise NoAtomInImage("the image contains no atom to reroute into")
    a = image_atoms[0]
    patched_atom = {
        p: (a if base(p) == tgt_lat.bottom else base(p)) for p in src_lat.atoms
    }
    assignment = {}
    for p in src_lat.flats:
        below = src_lat.atoms_below(p)
        if below:
            assignment[p] = tgt_lat.join_all(patched_atom[q] for q in below)
        else:
            assignment[p] = base(p)
    rerouted = FlatMap(src_lat, tgt_lat, assignment)
    assert all(tgt_lat.rank_of[rerouted(q)] == 1 for q in src_lat.atoms)
    return rerouted


def _representation_flat_map(tau: SetMap) -> FlatMap:
    cls = classify_map(tau)
    if not cls.is_weak:
        raise MatroidError("representation maps are induced by weak maps")
    if cls.is_non_annihilating:
        return induced_flat_map(tau)
    return reroute_annihilating(tau)


def induced_representation_map(
    tau: SetMap,
    im_m: ImmersedMatroid,
    im_n: ImmersedMatroid,
    x: SimplicialComplex,
    y_complex: SimplicialComplex | None = None,
    f_x: SimplicialMap | None = None,
) -> SimplicialMap:
    """The simplicial map T_x(M, l) -> T_y(N, l') induced by a weak map.

    Components include each selected copy of x into the copies selected at
    the image flat and apply f_x diagonally; annihilating maps are rerouted
    first so the image stays inside the target representation.
    """
    if y_complex is None:
        y_complex = x
    if f_x is None:
        f_x = SimplicialMap.identity(x)
    if f_x.source != x or f_x.target != y_complex:
        raise ValueError("f_x must map the source template to the target template")
    l, lp = im_m.immersion, im_n.immersion
    if l.rho != lp.rho:
        raise NotAdmissible("immersions must share rho")
    if not is_admissible(tau, l, lp):
        raise NotAdmissible("the weak map does not respect the immersions")
    g = _representation_flat_map(tau)
    src_lat = im_m.matroid.lattice()
    tgt_lat = im_n.matroid.lattice()
    for p in src_lat.flats:
        if p != src_lat.bottom and not l(p) <= lp.as_dict()[g(p)]:
            raise NotAdmissible(f"rerouted image violates the immersions at {set(p)}")

    d_m = build_diagram(im_m, x).restrict(
        [f for f in src_lat.flats if f != src_lat.bottom]
    )
    d_n = build_diagram(im_n, y_complex).restrict(
        [f for f in tgt_lat.flats if f != tgt_lat.bottom]
    )
    poset_map = {p: g(p) for p in d_m.poset.elements}
    components = {}
    for p in d_m.poset.elements:
        source_space = d_m.space(p)
        target_space = d_n.space(poset_map[p])
        vm = {(i, v): (i, f_x(v)) for (i, v) in source_space.vertices}
        components[p] = SimplicialMap(source_space, target_space, vm)
    morphism = DiagramMorphism(d_m, d_n, poset_map, components)
    return induced_map(morphism)


def verify_surjectivity(tau, im_m, im_n, x) -> bool:
    """Surjective admissible weak maps give surjections in homology, hence
    componentwise Betti decrease."""
    from .complexes import homology_map

    cls = classify_map(tau)
    if not cls.is_weak or not cls.is_surjective:
        raise MatroidError("needs a surjective weak map")
    rmap = induced_representation_map(tau, im_m, im_n, x)
    hm = homology_map(rmap)
    return hm.is_surjective() and hm.source_betti.dominates(hm.target_betti)


def verify_strict_decrease(tau, im_m, im_n, x) -> bool:
    """Under a genuine rank drop, Betti numbers strictly decrease in every
    degree carried by the layers between the two ranks."""
    r_m = im_m.matroid.rank_total
    r_n = im_n.matroid.rank_total
    if r_m <= r_n:
        raise ValueError("strict decrease needs a rank drop")
    if im_m.rho != im_n.rho:
        raise NotAdmissible("immersions must share rho")
    cls = classify_map(tau)
    if not cls.is_weak or not cls.is_surjective:
        raise MatroidError("needs a surjective weak map")
    if not is_admissible(tau, im_m.immersion, im_n.immersion):
        raise NotAdmissible("the weak map does not respect the immersions")
    betti_m = expected_betti(im_m, x)
    betti_n = expected_betti(im_n, x)
    flagged = set()
    for i in range(r_n + 1, r_m + 1):
        layer = suspension_iter(iterated_join(x, im_m.rho - i), i - 1)
        flagged.update(reduced_betti(layer).degrees())
    if not flagged:
        return True
    return all(betti_m[k] > betti_n[k] for k in flagged)


def verify_stability(im: ImmersedMatroid, x: SimplicialComplex) -> bool:
    """T at an oversized rho is, at the Betti level, the join of the extra
    join power of x with T at the matroid's own rank."""
    r = im.matroid.rank_total
    rep_rho = build_representation(im, x)
    rep_r = build_representation(immersed(im.matroid), x)
    extra = reduced_betti(iterated_join(x, im.rho - r))
    combined = extra.join_with(reduced_betti(rep_r.T))
    return reduced_betti(rep_rho.T) == combined


class GroupAction:
    """A finite group of simplicial symmetries of a complex, given by
    generator vertex permutations; the action must be free."""

    def __init__(self, komplex: SimplicialComplex, generators):
        self.complex = komplex
        verts = tuple(sort_labels(komplex.vertices))
        gens = []
        for g in generators:
            perm = dict(g)
            if set(perm) != set(verts) or set(perm.values()) != set(verts):
                raise NotSimplicial("generator is not a vertex permutation")
            gens.append(perm)
        self.generators = gens
        identity = {v: v for v in verts}
        seen = {tuple(identity[v] for v in verts): identity}
        frontier = [identity]
        while frontier:
            new = []
            for e in frontier:
                for g in gens:
                    composed = {v: g[e[v]] for v in verts}
                    key = tuple(composed[v] for v in verts)
                    if key not in seen:
                        seen[key] = composed
                        new.append(composed)
            frontier = new
            if len(seen) > 100_000:
                raise ValueError("group too large")
        self.elements = list(seen.values())
        self.order = len(self.elements)
        self._identity = identity
        for e in self.nonidentity_elements():
            _check_simplicial_and_free(komplex, e)

    def nonidentity_elements(self):
        return [e for e in self.elements if e != self._identity]


def _check_simplicial_and_free(komplex: SimplicialComplex, perm):
    simplices = sorted(komplex.nonempty_simplices(), key=label_key)
    universe = set(komplex.nonempty_simplices())
    for s in simplices:
        if frozenset(perm[v] for v in s) not in universe:
            raise NotSimplicial(f"permutation breaks simplex {sort_labels(s)}")
    for s in simplices:
        if frozenset(perm[v] for v in s) == s:
            raise NotFree(f"permutation fixes simplex {sort_labels(s)} setwise")


def _extend_perm(perm):
    def lifted(vertex):
        p, s = vertex
        return (p, frozenset((i, perm[v]) for (i, v) in s))

    return lifted


def check_equivariance(action: GroupAction, tau, im_m, im_n, x) -> bool:
    """The action on x extends copywise to both representations; it must
    stay simplicial and free there (and on all atom intersections), and the
    induced map must commute with it on vertices."""
    if action.complex != x:
        raise ValueError("action must act on the template complex")
    rep_m = build_representation(im_m, x)
    rep_n = build_representation(im_n, x)
    rmap = induced_representation_map(tau, im_m, im_n, x)
    for perm in action.nonidentity_elements():
        lifted = _extend_perm(perm)
        for rep in (rep_m, rep_n):
            simplices = rep.Y.nonempty_simplices()
            for s in simplices:
                image = frozenset(lifted(v) for v in s)
                if image not in simplices:
                    raise NotSimplicial("extended action breaks a simplex")
                if image == s:
                    raise NotFree("extended action fixes a simplex setwise")
            for flat in rep.lattice.flats:
                if flat == rep.lattice.bottom:
                    continue
                sub = rep.upset_complex(flat)
                for s in sub.nonempty_simplices():
                    if frozenset(lifted(v) for v in s) == s:
                        raise NotFree("extended action fixes an intersection simplex")
        for v in rmap.source.vertices:
            if rmap.vertex_map[lifted(v)] != lifted(rmap.vertex_map[v]):
                return False
    return True


@dataclass
class XArrangementReport:
    """Betti- and dimension-level checks of the covering-family conditions."""

    d: int
    total_space_ok: bool
    atom_spaces_ok: dict
    intersections_ok: dict
    codimension_drops_ok: dict

    @property
    def all_pass(self) -> bool:
        return (
            self.total_space_ok
            and all(self.atom_spaces_ok.values())
            and all(self.intersections_ok.values())
            and all(self.codimension_drops_ok.values())
        )


def verify_xarrangement(rep: Representation, x: SimplicialComplex) -> XArrangementReport:
    """Check, at the level of Betti vectors and dimensions, that Y and the
    atom subcomplexes intersect like join powers of x: Y matches the full
    join power, each atom subcomplex drops one, every intersection matches
    the join power of its corank, and each non-containing atom subcomplex
    cuts an intersection down by exactly one more step."""
    lat = rep.lattice
    rho = rep.immersed.rho
    powers = {e: iterated_join(x, e) for e in range(rho + 1)}
    power_betti = {e: reduced_betti(k) for e, k in powers.items()}

    total_ok = (
        reduced_betti(rep.Y) == power_betti[rho] and rep.Y.dim == powers[rho].dim
    )
    atom_ok = {}
    for a, sub in rep.atom_subcomplexes.items():
        atom_ok[a] = (
            reduced_betti(sub) == power_betti[rho - 1] and sub.dim == powers[rho - 1].dim
        )
    inter_ok = {}
    upsets = {}
    for f in lat.flats:
        if f == lat.bottom:
            continue
        sub = rep.upset_complex(f)
        upsets[f] = sub
        e = rho - lat.rank_of[f]
        inter_ok[f] = reduced_betti(sub) == power_betti[e] and sub.dim == powers[e].dim
    drops_ok = {}
    for f, sub in upsets.items():
        e = rho - lat.rank_of[f]
        for a in lat.atoms:
            a_vertices = rep.atom_subcomplexes[a].vertices
            if sub.vertices <= a_vertices:
                continue  # the atom subcomplex contains this intersection
            cut = rep.upset_complex(lat.join(f, a))
            drops_ok[(f, a)] = reduced_betti(cut) == power_betti[e - 1]
    return XArrangementReport(rho, total_ok, atom_ok, inter_ok, drops_ok)
