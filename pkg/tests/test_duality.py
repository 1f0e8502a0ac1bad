"""Functors, Stone maps, round trips, hom dualization, theorem validators."""

import itertools

import pytest

from framelab import NotFrameHom, Poset, enumerate_posets, isomorphic
from framelab.lattices import (
    FinDLat,
    LatticeHom,
    birkhoff_lattice,
    compose_homs,
    enumerate_homs,
)
from framelab.duality import (
    VALIDATOR_NAMES,
    clop_up_lattice,
    dualize_hom,
    lattice_content_id,
    phi_join_law,
    priestley_space_of,
    prime_filter_subset_oracle,
    round_trip_frame,
    round_trip_space,
    validate,
    validate_all,
)
from framelab.posets import bits
from framelab.spaces import FinPriestley, compose_space_maps, map_predicate

_B2 = birkhoff_lattice(Poset.antichain(2))


def b2():
    return _B2


def corpus(max_size=3):
    return [
        birkhoff_lattice(p) for n in range(max_size + 1) for p in enumerate_posets(n)
    ]


# -- prime filters and the dual space -----------------------------------------


def test_priestley_space_of_b2():
    record = priestley_space_of(b2())
    # two incomparable points, phi of the atoms are the two singletons
    assert record.space.size == 2
    assert not record.space.points.leq(0, 1)
    assert not record.space.points.leq(1, 0)
    atoms = sorted(record.phi_mask(a) for a in (1, 2))
    assert atoms == [0b01, 0b10]
    assert record.phi_mask(0) == 0
    assert record.phi_mask(3) == 0b11


def test_priestley_space_of_chains():
    two = FinDLat.chain(2)
    rec = priestley_space_of(two)
    assert rec.space.size == 1
    assert rec.phi_mask(1) == 1 and rec.phi_mask(0) == 0
    three = FinDLat.chain(3)
    rec3 = priestley_space_of(three)
    assert rec3.space.size == 2
    # prime filters up(1) strictly contains up(2); phi(m) is the top singleton
    assert sorted(rec3.point_filters) == [0b100, 0b110]
    (m_point,) = bits(rec3.phi_mask(1))
    assert rec3.space.points.up[m_point] == 1 << m_point


def test_prime_filter_oracle_matches_fast_path_everywhere_small():
    for lat in corpus(3):
        oracle = prime_filter_subset_oracle(lat, oracle_bound=16)
        if oracle is None:
            continue
        rec = priestley_space_of(lat)
        assert sorted(rec.point_filters) == oracle


def test_oracle_bound_skips_large_lattices():
    lat = birkhoff_lattice(Poset.antichain(5))
    assert prime_filter_subset_oracle(lat) is None
    # the record still builds through the fast path
    assert priestley_space_of(lat).space.size == 5


def test_dual_of_trivial_lattice_is_empty_space():
    rec = priestley_space_of(birkhoff_lattice(Poset.empty()))
    assert rec.space.size == 0


@pytest.mark.parametrize("n", range(5))
def test_convention_round_trip_on_points(n):
    for p in enumerate_posets(n):
        rec = priestley_space_of(birkhoff_lattice(p))
        assert isomorphic(rec.space.points, p)


# -- clopen upset lattice -------------------------------------------------------


def test_clop_up_lattice_examples():
    assert clop_up_lattice(FinPriestley(Poset.antichain(2))).size == 4
    assert clop_up_lattice(FinPriestley(Poset.chain(2))).size == 3
    assert clop_up_lattice(FinPriestley(Poset.empty())).size == 1


# -- hom dualization ---------------------------------------------------------------


def test_dualize_identity():
    lat = b2()
    f = dualize_hom(LatticeHom.identity(lat))
    assert f.mapping.image == tuple(range(f.source.size))


def test_dualize_examples_three_chain():
    three, two = FinDLat.chain(3), FinDLat.chain(2)
    up_m = priestley_space_of(three).point_filters.index(0b110)
    up_1 = priestley_space_of(three).point_filters.index(0b100)
    f = dualize_hom(LatticeHom(three, two, (0, 1, 1)))
    assert f.mapping.image == (up_m,)
    g = dualize_hom(LatticeHom(three, two, (0, 0, 1)))
    assert g.mapping.image == (up_1,)


def test_dualize_requires_frame_hom():
    with pytest.raises(NotFrameHom):
        dualize_hom(LatticeHom(b2(), FinDLat.chain(2), (0, 1, 1, 1)))


def test_functor_laws_small():
    lats = corpus(2)
    for src in lats:
        ident = dualize_hom(LatticeHom.identity(src))
        assert ident.mapping.image == tuple(range(ident.source.size))
    for a, b, c in itertools.product(lats, repeat=3):
        for h in enumerate_homs(a, b, "frameHom"):
            fh = dualize_hom(h)
            for g in enumerate_homs(b, c, "frameHom"):
                fg = dualize_hom(g)
                composite = dualize_hom(compose_homs(g, h))
                chained = compose_space_maps(fh, fg)  # dualization reverses order
                assert composite.mapping.image == chained.mapping.image


def test_dualization_full_and_injective_small():
    from framelab.posets import monotone_maps

    lats = corpus(3)
    for src in lats:
        for tgt in lats:
            homs = enumerate_homs(src, tgt, "frameHom")
            duals = {dualize_hom(h).mapping.image for h in homs}
            assert len(duals) == len(homs)  # injective
            xs = priestley_space_of(src).space
            xt = priestley_space_of(tgt).space
            monos = {m.image for m in monotone_maps(xt.points, xs.points)}
            assert duals == monos  # full: every monotone map arises


def test_dualized_maps_are_l_morphisms():
    for src in corpus(3):
        for tgt in corpus(2):
            for h in enumerate_homs(src, tgt, "frameHom"):
                assert map_predicate(dualize_hom(h), "lMorphism")


# -- round trips ------------------------------------------------------------------


@pytest.mark.parametrize("n", range(5))
def test_round_trips(n):
    for p in enumerate_posets(n):
        lat = birkhoff_lattice(p)
        assert round_trip_frame(lat).size == lat.size
        space = FinPriestley(p)
        assert round_trip_space(space).size == space.size


def test_round_trip_examples():
    report = round_trip_frame(b2())
    assert sorted(report.witness) == [0b00, 0b01, 0b10, 0b11]
    eps = round_trip_space(FinPriestley(Poset.chain(2)))
    assert sorted(eps.witness) == [0, 1]
    trivial = birkhoff_lattice(Poset.empty())
    assert round_trip_frame(trivial).witness == (0,)


# -- phi join law ---------------------------------------------------------------------


def test_phi_join_law_examples():
    lat = b2()
    assert phi_join_law(lat, [])
    assert phi_join_law(lat, [1, 2])
    assert phi_join_law(lat, range(lat.size))


def test_phi_join_law_exhaustive_small():
    for lat in corpus(3):
        if lat.size > 10:
            continue
        for mask in range(1 << lat.size):
            assert phi_join_law(lat, bits(mask))


# -- validators -------------------------------------------------------------------------


def test_validator_names_are_complete():
    assert len(VALIDATOR_NAMES) == 12


@pytest.mark.parametrize("name", VALIDATOR_NAMES)
def test_validators_pass_on_small_corpus(name):
    pool = corpus(3)
    for lat in pool:
        report = validate(name, lat, corpus=pool)
        assert report.passed, (name, report.witness)
        assert report.validator == name
        assert report.micros >= 0


def test_validate_all_returns_every_validator():
    reports = validate_all(FinDLat.chain(3))
    assert [r.validator for r in reports] == list(VALIDATOR_NAMES)
    assert all(r.passed for r in reports)


def test_validate_unknown_name():
    with pytest.raises(KeyError):
        validate("fermat", FinDLat.chain(2))


def test_report_structure():
    report = validate("coreChain", b2(), lattice_id="abc")
    doc = report.as_dict()
    assert doc["lattice"] == "abc"
    assert doc["validator"] == "coreChain"
    assert doc["status"] == "pass"
    assert "witness" not in doc


def test_content_ids_stable_and_distinct():
    a = lattice_content_id(b2())
    assert a == lattice_content_id(birkhoff_lattice(Poset.antichain(2)))
    assert a != lattice_content_id(FinDLat.chain(3))
