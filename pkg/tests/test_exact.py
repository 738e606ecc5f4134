from itertools import combinations, permutations

import numpy as np
import pytest
from numpy.testing import assert_allclose

from hoprisk import (
    ExactEngineCapError,
    build_network,
    complete_network,
    event_prob,
    joint_pmf,
    one_hop_prob,
    r_prob,
)
from hoprisk.stats import check_orthant_monotone

from oracle import brute_force_joint_pmf, random_network
from tables import TABLE_GRIDS


def test_one_hop_single_attempt():
    net = build_network([(0, 0, 0.0), (1, 0, 0.0)], [(0, 1)], q=0.5)
    assert one_hop_prob(net, {0, 1}, {0, 1}, {0}) == 0.5


def test_one_hop_target_equals_sources():
    # no node to hit indirectly: only the misses on the outside count
    net = complete_network([3], 0.2, 0.0)
    assert one_hop_prob(net, {0, 1, 2}, {0, 1}, {0, 1}) == 1.0
    net2 = complete_network([3], 0.2, 0.4)
    # two sources each have one outside neighbor to miss
    assert one_hop_prob(net2, {0, 1, 2}, {0, 1}, {0, 1}) == pytest.approx(0.6**2)


def test_one_hop_k5_self_set(example_net):
    assert one_hop_prob(example_net, range(5), {0}, {0}) == pytest.approx(0.9**4)


def test_one_hop_empty_sources_cannot_spread():
    net = complete_network([2], 0.2, 0.7)
    assert one_hop_prob(net, {0, 1}, {0}, set()) == 0.0
    assert one_hop_prob(net, {0, 1}, set(), set()) == 1.0


def test_one_hop_containment_validation(example_net):
    with pytest.raises(ValueError):
        one_hop_prob(example_net, {0, 1}, {0, 2}, {0})
    with pytest.raises(ValueError):
        one_hop_prob(example_net, {0, 1}, {0}, {1})


def test_r_prob_k5_values(example_net):
    assert r_prob(example_net, range(5), {0}, {0}, 2) == pytest.approx(0.9**4)
    assert r_prob(example_net, range(5), {0, 1}, {0}, 2) == pytest.approx(0.1 * 0.9**6)
    assert r_prob(example_net, range(5), {0, 1}, {0, 1}, 2) == pytest.approx(0.9**6)


def test_r_prob_empty_sets(example_net):
    for depth in (1, 2, 5):
        assert r_prob(example_net, range(5), set(), set(), depth) == 1.0


def test_r_prob_depth_validation(example_net):
    with pytest.raises(ValueError):
        r_prob(example_net, range(5), {0}, {0}, 0)


def test_event_prob_empty_target(example_net):
    assert event_prob(example_net, set(), 2) == pytest.approx(0.8**5)


def test_event_prob_p_zero():
    net = complete_network([3], 0.0, 0.5)
    assert event_prob(net, {0}, 3) == 0.0
    assert event_prob(net, set(), 3) == 1.0


def test_event_prob_forced_path():
    # only the head can fall directly; q=1 then drags the whole path along
    net = build_network(
        [(0, 0, 0.5), (1, 0, 0.0), (2, 0, 0.0)], [(0, 1), (1, 2)], q=1.0
    )
    assert event_prob(net, {0, 1, 2}, 2) == pytest.approx(0.5)
    assert event_prob(net, {0, 1}, 2) == 0.0


def test_joint_pmf_reproduces_reference_grids(example_net):
    for depth, grid in TABLE_GRIDS.items():
        pmf = joint_pmf(example_net, depth)
        assert_allclose(pmf.probs, grid, atol=5e-5)
    pmf4 = joint_pmf(example_net, 4)
    assert pmf4.marginal(1)[3] == pytest.approx(0.0565, abs=5e-5)


def test_joint_pmf_no_propagation_is_binomial_product():
    net = complete_network([2, 3], 0.3, 0.0)
    pmf = joint_pmf(net, 4)
    from math import comb

    for (x1, x2), prob in pmf.cells():
        expected = (
            comb(2, x1) * 0.3**x1 * 0.7 ** (2 - x1)
            * comb(3, x2) * 0.3**x2 * 0.7 ** (3 - x2)
        )
        assert prob == pytest.approx(expected, abs=1e-12)


def test_joint_pmf_depth_zero_is_direct_only():
    net = complete_network([2, 2], 0.4, 0.9)
    pmf = joint_pmf(net, 0)
    from math import comb

    for (x1, x2), prob in pmf.cells():
        expected = (
            comb(2, x1) * 0.4**x1 * 0.6 ** (2 - x1)
            * comb(2, x2) * 0.4**x2 * 0.6 ** (2 - x2)
        )
        assert prob == pytest.approx(expected, abs=1e-12)


def test_joint_pmf_normalization_random_instances():
    rng = np.random.default_rng(500)
    for _ in range(20):
        net = random_network(rng, max_nodes=6, max_edges=9)
        pmf = joint_pmf(net, int(rng.integers(0, 4)))
        assert abs(pmf.probs.sum() - 1.0) < 1e-9


def test_oracle_equivalence_random_graphs():
    rng = np.random.default_rng(123)
    for _ in range(25):
        net = random_network(rng)
        depth = int(rng.integers(1, 4))
        got = joint_pmf(net, depth).probs
        want = brute_force_joint_pmf(net, depth).probs
        assert_allclose(got, want, atol=1e-12)


def test_label_symmetry_within_types():
    # homogeneous complete graph: which ids carry which type cannot matter
    base = None
    for perm in list(permutations([0, 0, 1, 1, 1]))[:6]:
        nodes = [(i, perm[i], 0.35) for i in range(5)]
        net = build_network(nodes, combinations(range(5), 2), q=0.15)
        probs = joint_pmf(net, 2).probs
        if base is None:
            base = probs
        else:
            assert_allclose(probs, base, atol=1e-15)


def test_saturation_beyond_node_count():
    net = build_network(
        [(0, 0, 0.4), (1, 1, 0.2), (2, 1, 0.7), (3, 0, 0.1)],
        [(0, 1), (1, 2), (2, 3)],
        q={(0, 1): 0.3, (1, 0): 0.9, (1, 2): 0.5, (2, 1): 0.1, (2, 3): 0.8, (3, 2): 0.2},
    )
    saturated = joint_pmf(net, net.n_nodes).probs
    for depth in (5, 7, 11):
        assert np.array_equal(joint_pmf(net, depth).probs, saturated)


def test_upper_orthants_monotone_in_depth(example_net):
    pmfs = [joint_pmf(example_net, depth) for depth in range(1, 5)]
    for lo, hi in zip(pmfs, pmfs[1:]):
        report = check_orthant_monotone(lo, hi, tol=1e-12)
        assert report.passed, report.summary()


def test_node_cap_refusal():
    net = complete_network([30], 0.1, 0.1)
    with pytest.raises(ExactEngineCapError, match="simulate"):
        joint_pmf(net, 2)
    small = complete_network([7], 0.1, 0.1)
    with pytest.raises(ExactEngineCapError):
        joint_pmf(small, 1, max_nodes=5)
    # a raised cap admits the same network
    pmf = joint_pmf(small, 1, max_nodes=7)
    assert abs(pmf.probs.sum() - 1.0) < 1e-9


def test_unknown_node_in_target(example_net):
    with pytest.raises(ValueError, match="unknown"):
        event_prob(example_net, {0, 9}, 1)
