"""Lattice structure, antichain counts, and Moebius round trips."""

import random
import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pidlab.lattice import (
    Antichain,
    LatticeError,
    RedundancyLattice,
    below,
    bottom_node,
    dump_lines,
    enumerate_antichains,
    moebius_atoms,
    recompose,
    top_node,
)


class TestAntichain:
    def test_canonical_form(self):
        a = Antichain([(2, 1), (0,)])
        b = Antichain([(0,), (1, 2)])
        assert a == b and hash(a) == hash(b)
        assert a.label() == "{1}{23}"

    def test_comparable_sets_rejected(self):
        with pytest.raises(LatticeError):
            Antichain([(0,), (0, 1)])

    def test_empty_rejected(self):
        with pytest.raises(LatticeError):
            Antichain([])


class TestEnumeration:
    def test_counts(self):
        assert len(enumerate_antichains(1)) == 1
        assert len(enumerate_antichains(2)) == 4
        assert len(enumerate_antichains(3)) == 18
        assert len(enumerate_antichains(4)) == 166

    def test_n2_nodes(self):
        nodes = set(enumerate_antichains(2))
        assert nodes == {
            Antichain([(0,), (1,)]),
            Antichain([(0,)]),
            Antichain([(1,)]),
            Antichain([(0, 1)]),
        }

    def test_cap_at_four(self):
        with pytest.raises(LatticeError):
            enumerate_antichains(5)

    def test_runtime_under_one_second(self):
        RedundancyLattice._cache.pop(4, None)
        t0 = time.perf_counter()
        enumerate_antichains(2)
        enumerate_antichains(3)
        enumerate_antichains(4)
        assert time.perf_counter() - t0 < 1.0


class TestOrder:
    def test_bottom_below_singleton(self):
        assert below(Antichain([(0,), (1,)]), Antichain([(0,)]))

    def test_incomparable_singletons(self):
        assert not below(Antichain([(0,)]), Antichain([(1,)]))

    def test_composite_example(self):
        # {1}{23} <= {12}{13}: both targets contain a subset
        assert below(Antichain([(0,), (1, 2)]), Antichain([(0, 1), (0, 2)]))

    def test_bottom_and_top_are_extremes(self):
        for n in (2, 3):
            lat = RedundancyLattice(n)
            for a in lat.nodes:
                assert lat.leq(bottom_node(n), a)
                assert lat.leq(a, top_node(n))

    def test_order_is_partial_order(self):
        lat = RedundancyLattice(3)
        nodes = lat.nodes
        for a in nodes:
            assert lat.leq(a, a)
        for a in nodes:
            for b in nodes:
                if a != b and lat.leq(a, b) and lat.leq(b, a):
                    pytest.fail("antisymmetry violated")
        rng = random.Random(0)
        for _ in range(500):
            a, b, c = rng.choice(nodes), rng.choice(nodes), rng.choice(nodes)
            if lat.leq(a, b) and lat.leq(b, c):
                assert lat.leq(a, c)

    def test_downset_monotone(self):
        lat = RedundancyLattice(3)
        for a in lat.nodes:
            for b in lat.nodes:
                if lat.leq(b, a) and b != a:
                    assert set(lat.downsets[b]) <= set(lat.downsets[a])


class TestMoebius:
    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=1, max_value=4), st.randoms(use_true_random=False))
    def test_round_trip_exact(self, n, rng):
        lat = RedundancyLattice(n)
        icap = {a: rng.uniform(-5, 5) for a in lat.nodes}
        atoms = moebius_atoms(lat, icap)
        back = recompose(lat, atoms)
        for a in lat.nodes:
            assert back[a] == pytest.approx(icap[a], abs=1e-12)

    def test_constant_icap_gives_bottom_atom(self):
        lat = RedundancyLattice(3)
        icap = {a: 0.75 for a in lat.nodes}
        atoms = moebius_atoms(lat, icap)
        assert atoms[lat.bottom] == pytest.approx(0.75, abs=1e-12)
        for a in lat.nodes:
            if a != lat.bottom:
                assert atoms[a] == pytest.approx(0.0, abs=1e-12)

    def test_bivariate_bookkeeping(self):
        # icap values (R, I1, I2, I12) -> atoms (R, I1-R, I2-R, I12-I1-I2+R)
        lat = RedundancyLattice(2)
        red, u1, u2, joint = Antichain([(0,), (1,)]), Antichain([(0,)]), Antichain([(1,)]), Antichain([(0, 1)])
        icap = {red: 0.0, u1: 0.0, u2: 0.0, joint: 1.0}
        atoms = moebius_atoms(lat, icap)
        assert atoms[red] == 0.0
        assert atoms[u1] == 0.0
        assert atoms[u2] == 0.0
        assert atoms[joint] == 1.0

    def test_missing_node_rejected(self):
        lat = RedundancyLattice(2)
        with pytest.raises(LatticeError):
            moebius_atoms(lat, {lat.bottom: 1.0})


class TestDump:
    def test_dump_shape(self):
        lat = RedundancyLattice(2)
        lines = dump_lines(lat)
        assert len(lines) == 4
        assert lines[0].split("\t")[0] == "{1}{2}"
        # bottom has no predecessors
        assert lines[0].split("\t")[1] == "-"

    def test_hasse_covers_n2(self):
        lat = RedundancyLattice(2)
        assert set(lat.covers[Antichain([(0, 1)])]) == {
            Antichain([(0,)]),
            Antichain([(1,)]),
        }
        assert set(lat.covers[Antichain([(0,)])]) == {Antichain([(0,), (1,)])}
