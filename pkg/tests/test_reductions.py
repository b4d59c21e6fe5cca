from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest

from domlab import (
    KPartiteGraph,
    OVInstance,
    Pattern,
    indepset_to_multidom,
    load_ov,
    oracle_multidom,
    ov_to_hdom,
    ov_to_induced_matching,
    ov_to_multidom,
    save_ov,
    solve_ov_bruteforce,
    verify_reduction,
)
from domlab.reductions import pad_special_coordinates


def _random_ov(seed, sizes, d, zero_prob=0.5):
    rng = random.Random(seed)
    return OVInstance.from_lists(
        d, [[tuple(0 if rng.random() < zero_prob else 1 for _ in range(d))
             for _ in range(s)] for s in sizes])


def _random_kpartite(seed, sizes, p=0.5):
    rng = random.Random(seed)
    edges = []
    for i in range(len(sizes)):
        for j in range(i + 1, len(sizes)):
            for a in range(sizes[i]):
                for b in range(sizes[j]):
                    if rng.random() < p:
                        edges.append(((i, a), (j, b)))
    return KPartiteGraph(sizes, edges)


def test_ov_bruteforce_classic_pair():
    inst = OVInstance.from_lists(2, [[(0, 1)], [(1, 0)]])
    assert solve_ov_bruteforce(inst, 1)


def test_ov_bruteforce_all_ones():
    inst = OVInstance.from_lists(2, [[(1, 1)], [(1, 1)], [(1, 1)]])
    assert not solve_ov_bruteforce(inst, 1)
    assert not solve_ov_bruteforce(inst, 2)


def test_ov_bruteforce_all_zeros():
    inst = OVInstance.from_lists(2, [[(0, 0)]] * 3)
    assert solve_ov_bruteforce(inst, 2)


def test_ov_json_round_trip(tmp_path):
    inst = _random_ov(3, [2, 3], 4)
    path = tmp_path / "ov.json"
    save_ov(inst, path)
    assert load_ov(path) == inst
    assert load_ov(save_ov(inst)) == inst


def test_ov_instance_validation():
    with pytest.raises(ValueError):
        OVInstance.from_lists(2, [[(0, 1)]])  # only one set
    with pytest.raises(ValueError):
        OVInstance.from_lists(2, [[(0, 1)], [(0,)]])  # wrong dimension
    with pytest.raises(ValueError):
        OVInstance.from_lists(1, [[(2,)], [(0,)]])  # non-binary


def test_ov_to_multidom_vertex_count():
    inst = OVInstance.from_lists(2, [[(0, 1)], [(1, 0)]])
    out = ov_to_multidom(inst, 1)
    # 1 + 1 vectors, 2 dimensions, (k+1)*C(k,r) = 3*2 redundant
    assert out.graph.n == 10
    assert out.params["redundant_vertices"] == 6


def test_ov_to_multidom_size_formula_random():
    for seed in range(25):
        rng = random.Random(seed)
        k = rng.choice([2, 3, 4])
        r = rng.randint(1, k - 1)
        sizes = [rng.randint(1, 3) for _ in range(k)]
        d = rng.randint(1, 4)
        out = ov_to_multidom(_random_ov(seed, sizes, d), r)
        assert out.graph.n == sum(sizes) + d + (k + 1) * comb(k, r)
        assert len(out.id_map) == out.graph.n


def test_ov_to_multidom_forcing_one_vertex_per_part():
    # every brute-force solution picks exactly one vertex from each vector part
    for seed in range(20):
        inst = _random_ov(seed, [2, 2], 3, zero_prob=0.6)
        out = ov_to_multidom(inst, 1)
        sol = oracle_multidom(out.graph, 2, 1, "multiple", max_n=out.graph.n)
        if sol is None:
            continue
        parts = [out.id_map[v][1] for v in sol.vertices]
        assert all(out.id_map[v][0] == "vector" for v in sol.vertices)
        assert sorted(parts) == [0, 1]


def test_ov_to_hdom_block_sizes():
    inst = _random_ov(1, [3, 2, 3], 2)
    out = ov_to_hdom(inst, Pattern.path(3))
    assert out.params["block_sizes"] == [4, 4, 4]
    big = _random_ov(1, [6, 2, 3], 2)
    assert ov_to_hdom(big, Pattern.path(3)).params["block_sizes"] == [4, 4, 6]


def test_ov_to_hdom_requires_matching_k():
    with pytest.raises(ValueError):
        ov_to_hdom(_random_ov(0, [1, 1], 2), Pattern.path(3))


def test_ov_matching_padding_dimension_count():
    inst = _random_ov(2, [1, 1, 1, 1], 3)
    out = ov_to_induced_matching(inst)
    assert out.params["d_padded"] == 3 + 4 * 5
    assert pad_special_coordinates(inst).d == 3 + 4 * 5


def test_ov_matching_padding_preserves_answer():
    for seed in range(30):
        inst = _random_ov(seed, [2, 1, 1, 2], 3, zero_prob=0.55)
        assert solve_ov_bruteforce(inst, 1) == solve_ov_bruteforce(
            pad_special_coordinates(inst), 1)


def test_ov_matching_rejects_odd_k():
    with pytest.raises(ValueError):
        ov_to_induced_matching(_random_ov(0, [1, 1, 1], 2))


def test_indepset_reduction_block_structure():
    src = _random_kpartite(0, [2, 2, 2])
    out = indepset_to_multidom(src, 2, Fraction(1, 2))
    roles = [role for role in out.id_map if role[0] == "redundant"]
    assert len(roles) == 2 * 3  # k blocks of size k+1
    assert out.params["k_prime"] == 3
    assert out.problem.kind == "multiple" and out.problem.r == 1


def test_indepset_reduction_part_count_mismatch():
    with pytest.raises(ValueError):
        indepset_to_multidom(_random_kpartite(0, [2, 2]), 2, Fraction(1, 2))


def test_generated_graphs_are_simple_and_maps_total():
    inst = _random_ov(5, [2, 2, 2], 3)
    for out in (ov_to_multidom(inst, 1), ov_to_multidom(inst, 2),
                ov_to_hdom(inst, Pattern.clique(3))):
        assert len(out.id_map) == out.graph.n
        assert len(set(out.id_map)) == out.graph.n
        for u, v in out.graph.edges():
            assert u != v


def test_verify_reduction_ov_multidom_sample():
    for seed in range(20):
        rng = random.Random(seed)
        k = rng.choice([2, 3])
        r = rng.randint(1, k - 1)
        inst = _random_ov(seed, [rng.randint(1, 3) for _ in range(k)],
                          rng.randint(1, 4), zero_prob=0.6)
        assert verify_reduction("ov-multidom", inst, r)


def test_verify_reduction_yes_and_no_fixtures():
    yes = OVInstance.from_lists(2, [[(0, 0)], [(0, 0)], [(0, 0)], [(0, 0)]])
    no = OVInstance.from_lists(2, [[(1, 1)], [(1, 1)], [(1, 1)], [(1, 1)]])
    assert verify_reduction("ov-matching", yes)
    assert verify_reduction("ov-matching", no)
    assert verify_reduction("ov-multidom", yes, 2)
    assert verify_reduction("ov-multidom", no, 1)


def test_verify_reduction_is_multidom_complete_source():
    complete = KPartiteGraph(
        [2, 2, 2],
        [((i, a), (j, b)) for i in range(3) for j in range(i + 1, 3)
         for a in range(2) for b in range(2)])
    assert verify_reduction("is-multidom", complete, (2, Fraction(1, 2), 1))


def test_verify_reduction_unknown_generator():
    with pytest.raises(ValueError):
        verify_reduction("nope", _random_ov(0, [1, 1], 1), 1)
