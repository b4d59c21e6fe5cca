"""Brute-force ground-truth deciders.

Deliberately independent of the fast solvers: adjacency is consulted through
plain Python sets built from Graph queries, never through heavy-vertex logic,
candidate families, or matrix products. Agreement with the fast solvers is
therefore evidence, not tautology.
"""

from __future__ import annotations

import itertools

from .graph import Graph
from .multidom import KPartiteGraph, Problem, Solution
from .patterndom import Pattern

DEFAULT_MAX_N = 20
MAX_TRANSVERSALS = 10**6


class OracleBudgetError(RuntimeError):
    """Instance too large for an exhaustive scan; fail loudly, never crawl."""


def _neighbor_sets(G: Graph) -> list[set[int]]:
    return [set(G.adjacency(v)) for v in range(G.n)]


def oracle_multidom(G: Graph, k: int, r: int, variant: str,
                    max_n: int = DEFAULT_MAX_N) -> Solution | None:
    """Exhaustive scan of all C(n, k) subsets in lexicographic order."""
    if variant not in ("multiple", "tuple"):
        raise ValueError(f"unknown variant {variant!r}")
    if not (1 <= r <= k <= G.n):
        raise ValueError(f"need 1 <= r <= k <= n, got r={r}, k={k}, n={G.n}")
    if G.n > max_n:
        raise OracleBudgetError(f"n={G.n} exceeds oracle budget {max_n}")
    nbrs = _neighbor_sets(G)
    for S in itertools.combinations(range(G.n), k):
        chosen = set(S)
        feasible = True
        for v in range(G.n):
            if variant == "multiple":
                if v in chosen:
                    continue
                hits = len(nbrs[v] & chosen)
            else:
                hits = len((nbrs[v] | {v}) & chosen)
            if hits < r:
                feasible = False
                break
        if feasible:
            return Solution(Problem(variant, k, r), S)
    return None


def oracle_pattern(G: Graph, H: Pattern, max_n: int = DEFAULT_MAX_N,
                   max_k: int = 6) -> Solution | None:
    """Exhaustive subset scan plus permutation isomorphism."""
    if G.n > max_n:
        raise OracleBudgetError(f"n={G.n} exceeds oracle budget {max_n}")
    if H.k > max_k:
        raise OracleBudgetError(f"pattern size {H.k} exceeds oracle budget {max_k}")
    nbrs = _neighbor_sets(G)
    closed = [nbrs[v] | {v} for v in range(G.n)]
    problem = Problem("pattern", H.k, pattern_edges=H.edges)
    for S in itertools.combinations(range(G.n), H.k):
        chosen = set(S)
        if any(closed[v].isdisjoint(chosen) for v in range(G.n)):
            continue
        induced = {(i, j) for i, j in itertools.combinations(range(H.k), 2)
                   if S[j] in nbrs[S[i]]}
        for perm in itertools.permutations(range(H.k)):
            mapped = {(min(perm[i], perm[j]), max(perm[i], perm[j])) for i, j in induced}
            if mapped == set(H.edges):
                return Solution(problem, S)
    return None


def oracle_unbalanced_clique(kp: KPartiteGraph) -> tuple[tuple[int, int], ...] | None:
    """Exhaustive transversal scan for one-vertex-per-part cliques."""
    count = 1
    for s in kp.sizes:
        count *= s
        if count > MAX_TRANSVERSALS:
            raise OracleBudgetError("part-size product exceeds transversal budget")
    for choice in itertools.product(*(range(s) for s in kp.sizes)):
        trans = tuple((i, a) for i, a in enumerate(choice))
        if all(kp.has_edge(i, a, j, b)
               for (i, a), (j, b) in itertools.combinations(trans, 2)):
            return trans
    return None
