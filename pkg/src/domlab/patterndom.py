"""Pattern-domination solvers: dominating cliques, independent sets, induced
matchings, and generic patterns via dominating-k-set listing plus isomorphism."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator

from .algebra import BoolMatrix, complement_zero_pairs
from .graph import Graph, delete_closed_neighborhood, heavy_vertices
from .multidom import (
    Problem,
    Solution,
    _edge_sets_isomorphic,
    build_candidate_families,
    list_2_dominating_sets,
)

MAX_PATTERN_SIZE = 8


class PatternTooLargeError(ValueError):
    """Isomorphism checking is factorial in the pattern size; capped at 8."""


@dataclass(frozen=True)
class Pattern:
    """Simple undirected graph on vertex set [0, k); the shape a dominating
    set is asked to induce."""

    k: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"pattern needs k >= 1, got {self.k}")
        for u, v in self.edges:
            if not (0 <= u < v < self.k):
                raise ValueError(f"bad pattern edge ({u},{v}) for k={self.k}")

    @classmethod
    def from_edges(cls, k: int, edges: Iterable[tuple[int, int]]) -> "Pattern":
        return cls(k, frozenset((min(u, v), max(u, v)) for u, v in edges))

    @classmethod
    def clique(cls, k: int) -> "Pattern":
        return cls.from_edges(k, itertools.combinations(range(k), 2))

    @classmethod
    def edgeless(cls, k: int) -> "Pattern":
        return cls.from_edges(k, [])

    @classmethod
    def matching(cls, k: int) -> "Pattern":
        if k % 2:
            raise ValueError(f"perfect matching needs even k, got {k}")
        return cls.from_edges(k, [(2 * i, 2 * i + 1) for i in range(k // 2)])

    @classmethod
    def path(cls, k: int) -> "Pattern":
        return cls.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def load_pattern(source) -> Pattern:
    """Parse {"k": int, "edges": [[i, j], ...]} from a path, string, or stream."""
    if hasattr(source, "read"):
        data = json.load(source)
    else:
        text = str(source)
        if text.lstrip().startswith("{"):
            data = json.loads(text)
        else:
            with open(text) as fh:
                data = json.load(fh)
    return Pattern.from_edges(int(data["k"]), [tuple(e) for e in data["edges"]])


def enumerate_cliques(G: Graph, t: int) -> list[tuple[int, ...]]:
    """All t-cliques, sorted within and lexicographic across. For t >= 2 the
    count is asserted against the (2m)^{t/2} bound."""
    if t < 1:
        raise ValueError(f"clique size must be >= 1, got {t}")
    out: list[tuple[int, ...]] = []

    def extend(clique: list[int], common: int, start: int):
        if len(clique) == t:
            out.append(tuple(clique))
            return
        for v in range(start, G.n):
            if (common >> v) & 1:
                clique.append(v)
                extend(clique, common & G.neighbor_mask(v), v + 1)
                clique.pop()

    extend([], G.full_mask(), 0)
    if t >= 2:
        assert len(out) ** 2 <= (2 * G.m) ** t, "clique count exceeds (2m)^{t/2}"
    return out


def _domination_complement_bits(G: Graph, vertices: Iterable[int]) -> int:
    covered = 0
    for v in vertices:
        covered |= G.closed_mask(v)
    return G.full_mask() ^ covered


def solve_dominating_clique(G: Graph, k: int) -> Solution | None:
    """First k-clique (in the half-split scan order) whose closed neighborhood
    is all of V, or None."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    problem = Problem("clique", k)
    if k == 1:
        for v in range(G.n):
            if G.closed_mask(v) == G.full_mask():
                return Solution(problem, (v,))
        return None
    if k == 2:
        for u, v in list_2_dominating_sets(G):
            if G.has_edge(u, v):
                return Solution(problem, (u, v))
        return None
    r1 = enumerate_cliques(G, (k - 1) // 2)
    r2 = enumerate_cliques(G, k // 2)
    heavy = heavy_vertices(G, k)
    rows = [(S, h) for S in r1 for h in heavy]
    if not rows or not r2:
        return None
    A = BoolMatrix.from_row_ints(
        [_domination_complement_bits(G, S + (h,)) for S, h in rows], G.n)
    B = BoolMatrix.from_row_ints(
        [_domination_complement_bits(G, T) for T in r2], G.n).transpose()
    for i, j in complement_zero_pairs(A, B):
        S, h = rows[i]
        union = set(S) | {h} | set(r2[j])
        if len(union) != k:
            continue
        cand = tuple(sorted(union))
        if all(G.has_edge(u, v) for u, v in itertools.combinations(cand, 2)):
            return Solution(problem, cand)
    return None


def solve_dominating_indepset(G: Graph, k: int) -> Solution | None:
    """Recursion on heavy vertices of the current instance: pick heavy v,
    delete N[v], solve for k-1; bases are the universal vertex (k=1) and
    non-adjacent dominating pairs (k=2)."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    verts = _indepset_search(G, k)
    if verts is None:
        return None
    return Solution(Problem("indepset", k), verts)


def _indepset_search(G: Graph, k: int) -> tuple[int, ...] | None:
    if k == 1:
        for v in range(G.n):
            if G.closed_mask(v) == G.full_mask():
                return (v,)
        return None
    if k == 2:
        for u, v in list_2_dominating_sets(G):
            if not G.has_edge(u, v):
                return (u, v)
        return None
    for v in heavy_vertices(G, k):
        sub, id_map = delete_closed_neighborhood(G, v)
        rest = _indepset_search(sub, k - 1)
        if rest is not None:
            return tuple(sorted((v,) + tuple(id_map[u] for u in rest)))
    return None


def solve_dominating_induced_matching(G: Graph, k: int) -> Solution | None:
    """Dominating set of k vertices inducing exactly k/2 independent edges.

    Splits the k/2 matching edges into edge subsets of sizes ceil(k/4) and
    floor(k/4); a complement-product zero pair certifies domination and the
    induced-matching shape is checked on the endpoint union.
    """
    if k % 2 or k < 2:
        raise ValueError(f"k must be even and >= 2, got {k}")
    problem = Problem("matching", k)
    if k == 2:
        for u, v in list_2_dominating_sets(G):
            if G.has_edge(u, v):
                return Solution(problem, (u, v), {"matching_edges": [(u, v)]})
        return None
    edges = list(G.edges())
    fam_s = list(itertools.combinations(edges, (k + 3) // 4))
    fam_t = list(itertools.combinations(edges, k // 4))
    if not fam_s or not fam_t:
        return None
    A = BoolMatrix.from_row_ints(
        [_domination_complement_bits(G, itertools.chain.from_iterable(es)) for es in fam_s],
        G.n)
    B = BoolMatrix.from_row_ints(
        [_domination_complement_bits(G, itertools.chain.from_iterable(et)) for et in fam_t],
        G.n).transpose()
    for i, j in complement_zero_pairs(A, B):
        chosen = fam_s[i] + fam_t[j]
        ends = [v for e in chosen for v in e]
        if len(set(ends)) != k:
            continue
        cand = tuple(sorted(ends))
        induced = [e for e in itertools.combinations(cand, 2) if G.has_edge(*e)]
        if len(induced) == k // 2 and set(induced) == set(chosen):
            return Solution(problem, cand, {"matching_edges": sorted(chosen)})
    return None


def list_dominating_ksets(G: Graph, k: int) -> Iterator[tuple[int, ...]]:
    """All k-subsets S with N[S] = V, each yielded once.

    For k >= 2 this reuses the quota-1 candidate-family split (every
    dominating set contains a heavy vertex) and the complement product.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k == 1:
        for v in range(G.n):
            if G.closed_mask(v) == G.full_mask():
                yield (v,)
        return
    if k > G.n:
        return
    fam_s, fam_t = build_candidate_families(G, k, 1)
    if not fam_s.members or not fam_t.members:
        return
    A = BoolMatrix.from_row_ints(
        [_domination_complement_bits(G, S) for S in fam_s.members], G.n)
    B = BoolMatrix.from_row_ints(
        [_domination_complement_bits(G, T) for T in fam_t.members], G.n).transpose()
    seen: set[tuple[int, ...]] = set()
    for i, j in complement_zero_pairs(A, B):
        union = set(fam_s.members[i]) | set(fam_t.members[j])
        if len(union) != k:
            continue
        cand = tuple(sorted(union))
        if cand not in seen:
            seen.add(cand)
            yield cand


def solve_pattern_domination(G: Graph, H: Pattern) -> Solution | None:
    """First dominating k-set inducing a subgraph isomorphic to H."""
    if H.k > MAX_PATTERN_SIZE:
        raise PatternTooLargeError(f"pattern size {H.k} exceeds {MAX_PATTERN_SIZE}")
    problem = Problem("pattern", H.k, pattern_edges=H.edges)
    for S in list_dominating_ksets(G, H.k):
        pos = {v: i for i, v in enumerate(S)}
        local = frozenset(
            (pos[u], pos[v]) for u, v in itertools.combinations(S, 2) if G.has_edge(u, v))
        if _edge_sets_isomorphic(H.k, local, H.edges):
            return Solution(problem, S)
    return None
