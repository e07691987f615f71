"""Acceptance suite: every criterion exact, one printed line per criterion.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines.
All comparisons use exact rational arithmetic; there are no tolerances.
"""

import time

from matrep.catalog import (
    contrast_diagrams,
    five_point_immersion,
    five_point_matroid,
    identity_map,
    rank3_chain,
    representation_instances,
    swap_action_on_s0,
)
from matrep.complexes import (
    BettiVector,
    compose_matrices,
    homology_map,
    reduced_betti,
    sphere,
)
from matrep.diagrams import colim, hocolim
from matrep.engstrom import (
    ImmersedMatroid,
    arrangement_matches_lattice,
    build_representation,
    canonical_immersion,
    check_equivariance,
    expected_betti,
    immersed,
    induced_representation_map,
    verify_stability,
    verify_strict_decrease,
)
from matrep.matroid import induced_flat_map, uniform, whitney_first


def record(number: int, description: str, ok: bool) -> bool:
    print(f"ACCEPTANCE {number:02d} {'PASS' if ok else 'FAIL'}: {description}")
    return ok


def bv(counts):
    return BettiVector(counts)


def test_criterion_01_formula_construction_agreement():
    ok = True
    for name, im, template in representation_instances():
        started = time.perf_counter()
        rep = build_representation(im, template)
        agree = reduced_betti(rep.T) == expected_betti(im, template)
        elapsed = time.perf_counter() - started
        ok = ok and agree and elapsed < 60.0
    assert record(1, "constructed Betti equals formula on all eight instances", ok)


def test_criterion_02_reference_values():
    direct_24 = reduced_betti(build_representation(immersed(uniform(2, 4)), sphere(0)).T)
    formula_34 = expected_betti(immersed(uniform(3, 4)), sphere(1))
    direct_23 = reduced_betti(build_representation(immersed(uniform(2, 3)), sphere(1)).T)
    ok = (
        direct_24 == bv({0: 7})
        and formula_34 == bv({1: 3, 2: 6, 3: 4})
        and direct_23 == bv({0: 2, 1: 3})
    )
    assert record(2, "reference values 7, (3,6,4) and (2,3) reproduced", ok)


def test_criterion_03_whitney_monotonicity():
    m, n, l = rank3_chain()
    wm, wn, wl = whitney_first(m), whitney_first(n), whitney_first(l)
    ok = (
        wm.as_list() == [1, 4, 6, 3]
        and wn.as_list() == [1, 4, 5, 2]
        and wl.as_list() == [1, 3, 3, 1]
        and wm.dominates(wn)
        and wn.dominates(wl)
    )
    assert record(3, "Whitney vectors decrease along the rank-3 chain", ok)


def test_criterion_04_homology_surjectivity():
    m, n, l = rank3_chain()
    s0 = sphere(0)
    ok = True
    for src, tgt in [(m, n), (n, l)]:
        rmap = induced_representation_map(identity_map(src, tgt), immersed(src), immersed(tgt), s0)
        ok = ok and homology_map(rmap).is_surjective()
    assert record(4, "induced maps surject on homology in every degree", ok)


def test_criterion_05_strict_decrease():
    s0 = sphere(0)
    im_m = immersed(uniform(3, 4), rho=3)
    im_n = immersed(uniform(2, 4), rho=3)
    tau = identity_map(uniform(3, 4), uniform(2, 4))
    ok = (
        verify_strict_decrease(tau, im_m, im_n, s0)
        and expected_betti(im_m, s0)[1] == 13
        and expected_betti(im_n, s0)[1] == 7
    )
    assert record(5, "rank drop forces 13 > 7 in the flagged degree", ok)


def test_criterion_06_functoriality():
    m, n, l = rank3_chain()
    s0 = sphere(0)
    h_mn = homology_map(induced_representation_map(identity_map(m, n), immersed(m), immersed(n), s0))
    h_nl = homology_map(induced_representation_map(identity_map(n, l), immersed(n), immersed(l), s0))
    h_ml = homology_map(induced_representation_map(identity_map(m, l), immersed(m), immersed(l), s0))
    product = compose_matrices(h_nl, h_mn)
    matrices_equal = all(
        h_ml.matrices.get(k, []) == product.get(k, []) for k in set(h_ml.matrices) | set(product)
    )
    direct = induced_flat_map(identity_map(m, l))
    composed = induced_flat_map(identity_map(m, n)).then(induced_flat_map(identity_map(n, l)))
    pair = frozenset({3, 4})
    flat_maps_differ = (
        direct(pair) == frozenset({3, 4}) and composed(pair) == frozenset({2, 3, 4})
    )
    ok = matrices_equal and flat_maps_differ
    assert record(6, "homology matrices compose although flat maps do not", ok)


def test_criterion_07_colim_hocolim_contrast():
    first, second, _ = contrast_diagrams()
    two_sphere = bv({2: 1})
    ok = (
        reduced_betti(colim(first)) == two_sphere
        and reduced_betti(colim(second)) == bv({})
        and reduced_betti(hocolim(first).complex) == two_sphere
        and reduced_betti(hocolim(second).complex) == two_sphere
    )
    assert record(7, "colimits differ while homotopy colimits agree", ok)


def test_criterion_08_stability():
    s0 = sphere(0)
    im3 = immersed(uniform(2, 3), rho=3)
    im4 = immersed(uniform(2, 3), rho=4)
    ok = (
        verify_stability(im3, s0)
        and verify_stability(im4, s0)
        and reduced_betti(build_representation(im3, s0).T) == bv({1: 5})
        and reduced_betti(build_representation(im4, s0).T) == bv({2: 5})
    )
    assert record(8, "oversized immersions suspend: degrees shift, count stays 5", ok)


def test_criterion_09_mobius_suite():
    from matrep.catalog import catalog_matroid, catalog_names

    ok = True
    for name in catalog_names():
        lat = catalog_matroid(name).lattice()
        mu = lat.mobius()
        ok = ok and all(mu[f] != 0 for f in lat.flats)
        for atom in lat.atoms:
            rhs = -sum(mu[q] for q in lat.coatoms if not atom <= q)
            ok = ok and mu[lat.top] == rhs
    assert record(9, "Mobius nonvanishing and coatom identity on every lattice", ok)


def test_criterion_10_arrangement_recovery():
    ok = True
    for name, im, template in representation_instances():
        if im.rho != im.matroid.rank_total:
            continue
        rep = build_representation(im, template)
        ok = ok and arrangement_matches_lattice(rep)
    assert record(10, "intersection posets recover the lattices of flats", ok)


def test_criterion_11_equivariance():
    action = swap_action_on_s0()
    s0 = sphere(0)
    ok = True
    for name, im, template in representation_instances():
        if template != s0:
            continue
        ident = identity_map(im.matroid, im.matroid)
        ok = ok and check_equivariance(action, ident, im, im, s0)
    m, n, l = rank3_chain()
    for src, tgt in [(m, n), (n, l), (m, l)]:
        ok = ok and check_equivariance(action, identity_map(src, tgt), immersed(src), immersed(tgt), s0)
    assert record(11, "the two-element swap extends freely and commutes", ok)


def test_criterion_12_immersion_independence():
    ex = five_point_matroid()
    documented = ImmersedMatroid(ex, five_point_immersion())
    hat = ImmersedMatroid(ex, canonical_immersion(ex, 3))
    t1 = reduced_betti(build_representation(documented, sphere(0)).T)
    t2 = reduced_betti(build_representation(hat, sphere(0)).T)
    ok = documented.immersion != hat.immersion and t1 == t2
    assert record(12, "distinct 3-immersions give equal Betti vectors", ok)
