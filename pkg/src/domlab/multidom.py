"""Solvers for r-Multiple and r-Tuple k-Dominating Set.

Covers the candidate-family level-matrix algorithm, 2-dominating-pair
listing, the clique-graph pipeline for r = k-1, and unbalanced k-clique
detection with the triangle-grouping construction.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import BoolMatrix, complement_zero_pairs, _stripes
from .graph import Graph, heavy_vertices

VARIANTS = ("multiple", "tuple")


@dataclass(frozen=True)
class Problem:
    """What a Solution claims to solve.

    kinds: multiple | tuple (with r), dominating, clique, indepset, matching,
    pattern (with pattern_edges on vertices 0..k-1).
    """

    kind: str
    k: int
    r: int | None = None
    pattern_edges: frozenset[tuple[int, int]] | None = None


@dataclass(frozen=True)
class Solution:
    problem: Problem
    vertices: tuple[int, ...]
    certificate: dict | None = None


@dataclass(frozen=True)
class CandidateFamily:
    """All vertex subsets of a fixed size containing at least `quota` heavy
    vertices, lexicographically sorted."""

    size: int
    quota: int
    members: tuple[tuple[int, ...], ...]


class KPartiteGraph:
    """k-partite graph with cross-part adjacency stored as bit rows.

    adj[i][a][j] is the bitmask over part j of neighbors of vertex a in
    part i. Intra-part edges are forbidden.
    """

    __slots__ = ("sizes", "adj")

    def __init__(self, sizes: Sequence[int], edges: Iterable[tuple[tuple[int, int], tuple[int, int]]]):
        self.sizes = tuple(sizes)
        k = len(self.sizes)
        self.adj = [[[0] * k for _ in range(s)] for s in self.sizes]
        for (i, a), (j, b) in edges:
            if i == j:
                raise ValueError(f"intra-part edge in part {i}: {a}-{b}")
            if not (0 <= i < k and 0 <= j < k and 0 <= a < self.sizes[i] and 0 <= b < self.sizes[j]):
                raise ValueError(f"edge out of range: ({i},{a})-({j},{b})")
            self.adj[i][a][j] |= 1 << b
            self.adj[j][b][i] |= 1 << a

    @property
    def k(self) -> int:
        return len(self.sizes)

    def has_edge(self, i: int, a: int, j: int, b: int) -> bool:
        return (self.adj[i][a][j] >> b) & 1 == 1

    def neighbors_mask(self, i: int, a: int, j: int) -> int:
        return self.adj[i][a][j]

    def edges(self) -> Iterable[tuple[tuple[int, int], tuple[int, int]]]:
        """Cross edges as ((i, a), (j, b)) with i < j, lexicographic."""
        for i in range(self.k):
            for a in range(self.sizes[i]):
                for j in range(i + 1, self.k):
                    m = self.adj[i][a][j]
                    while m:
                        b = (m & -m).bit_length() - 1
                        m &= m - 1
                        yield ((i, a), (j, b))


def _set_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _edge_sets_isomorphic(k: int, edges_a: frozenset[tuple[int, int]],
                          edges_b: frozenset[tuple[int, int]]) -> bool:
    """Graph isomorphism on vertex set [0, k) by permutation search with
    degree-sequence pruning. Intended for k <= 8."""
    if len(edges_a) != len(edges_b):
        return False
    deg_a = [0] * k
    deg_b = [0] * k
    for u, v in edges_a:
        deg_a[u] += 1
        deg_a[v] += 1
    for u, v in edges_b:
        deg_b[u] += 1
        deg_b[v] += 1
    if sorted(deg_a) != sorted(deg_b):
        return False
    for perm in itertools.permutations(range(k)):
        if any(deg_a[v] != deg_b[perm[v]] for v in range(k)):
            continue
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in edges_b for u, v in edges_a):
            return True
    return False


def diagnose_solution(G: Graph, problem: Problem, vertices: Sequence[int]) -> str | None:
    """None when `vertices` solves `problem` on G; otherwise a message naming
    the violated condition."""
    S = tuple(sorted(vertices))
    if len(set(S)) != len(S):
        return "duplicate vertices in solution"
    if len(S) != problem.k:
        return f"solution has {len(S)} vertices, expected k={problem.k}"
    if any(v < 0 or v >= G.n for v in S):
        return "vertex id out of range"
    smask = _set_mask(S)
    kind = problem.kind

    if kind in ("multiple", "tuple"):
        r = problem.r
        if r is None:
            return "problem is missing r"
        for v in range(G.n):
            if kind == "multiple":
                if (smask >> v) & 1:
                    continue
                hits = (G.neighbor_mask(v) & smask).bit_count()
            else:
                hits = (G.closed_mask(v) & smask).bit_count()
            if hits < r:
                return f"vertex {v} has {hits} < {r} dominators"
        return None

    covered = 0
    for v in S:
        covered |= G.closed_mask(v)
    if covered != G.full_mask():
        missed = next(v for v in range(G.n) if not (covered >> v) & 1)
        return f"vertex {missed} is not dominated"

    if kind == "dominating":
        return None

    induced = [(u, v) for u, v in itertools.combinations(S, 2) if G.has_edge(u, v)]
    k = problem.k
    if kind == "clique":
        if len(induced) != k * (k - 1) // 2:
            return "solution does not induce a clique"
        return None
    if kind == "indepset":
        if induced:
            u, v = induced[0]
            return f"solution vertices {u},{v} are adjacent"
        return None
    if kind == "matching":
        if k % 2:
            return "matching size k must be even"
        deg = {v: 0 for v in S}
        for u, v in induced:
            deg[u] += 1
            deg[v] += 1
        if len(induced) != k // 2 or any(d != 1 for d in deg.values()):
            return "solution does not induce a perfect matching"
        return None
    if kind == "pattern":
        if problem.pattern_edges is None:
            return "problem is missing pattern edges"
        pos = {v: i for i, v in enumerate(S)}
        local = frozenset((pos[u], pos[v]) for u, v in induced)
        if not _edge_sets_isomorphic(k, local, problem.pattern_edges):
            return "induced subgraph is not isomorphic to the pattern"
        return None
    return f"unknown problem kind {kind!r}"


def verify_solution(G: Graph, problem: Problem, vertices: Sequence[int]) -> bool:
    """Direct definition check of the variant/pattern condition."""
    return diagnose_solution(G, problem, vertices) is None


def solve_multidom_bruteforce(G: Graph, k: int, r: int, variant: str) -> Solution | None:
    """Exhaustive scan over all k-subsets in lexicographic order; first
    feasible subset wins. Ground truth for the fast solvers."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if not (1 <= r <= k <= G.n):
        raise ValueError(f"need 1 <= r <= k <= n, got r={r}, k={k}, n={G.n}")
    problem = Problem(variant, k, r)
    masks = G._nbr_mask if variant == "multiple" else G._closed_mask
    for S in itertools.combinations(range(G.n), k):
        smask = _set_mask(S)
        ok = True
        for v in range(G.n):
            if variant == "multiple" and (smask >> v) & 1:
                continue
            if (masks[v] & smask).bit_count() < r:
                ok = False
                break
        if ok:
            return Solution(problem, S)
    return None


def build_candidate_families(G: Graph, k: int, r: int) -> tuple[CandidateFamily, CandidateFamily]:
    """The two families whose disjoint unions cover every k-set with >= r
    heavy vertices: sizes ceil((k-r)/2)+floor(r/2) and floor((k-r)/2)+ceil(r/2),
    with heavy quotas floor(r/2) and ceil(r/2)."""
    if not (1 <= r <= k - 1):
        raise ValueError(f"need 1 <= r <= k-1, got r={r}, k={k}")
    heavy = set(heavy_vertices(G, k))
    size_s = (k - r + 1) // 2 + r // 2
    quota_s = r // 2
    size_t = (k - r) // 2 + (r + 1) // 2
    quota_t = (r + 1) // 2

    def members(size: int, quota: int) -> tuple[tuple[int, ...], ...]:
        return tuple(c for c in itertools.combinations(range(G.n), size)
                     if sum(1 for v in c if v in heavy) >= quota)

    return (CandidateFamily(size_s, quota_s, members(size_s, quota_s)),
            CandidateFamily(size_t, quota_t, members(size_t, quota_t)))


def _member_levels(G: Graph, member: tuple[int, ...], r: int, variant: str) -> list[int]:
    """Per-vertex domination count from `member`, capped at r; the multiple
    variant exempts the member's own vertices by forcing level r."""
    mmask = _set_mask(member)
    out = []
    for v in range(G.n):
        if variant == "multiple":
            if (mmask >> v) & 1:
                out.append(r)
            else:
                out.append(min(r, (G.neighbor_mask(v) & mmask).bit_count()))
        else:
            out.append(min(r, (G.closed_mask(v) & mmask).bit_count()))
    return out


def solve_multidom_fast(G: Graph, k: int, r: int, variant: str,
                        stats: dict | None = None, threads: int = 1) -> Solution | None:
    """Candidate-family solver: a disjoint pair (S, T) is a solution iff every
    vertex collects at least r capped domination levels from the two sides.

    The pair test is evaluated on bit-packed level masks; by the saturation
    identity min(r,a)+min(r,b) >= r <=> a+b >= r this decides exactly the
    min-degree >= r condition of the truncated polynomial product.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if not (1 <= r <= k - 1):
        raise ValueError(f"fast solver needs 1 <= r <= k-1, got r={r}, k={k}")
    fam_s, fam_t = build_candidate_families(G, k, r)
    if stats is not None:
        stats["candidate_family_sizes"] = [len(fam_s.members), len(fam_t.members)]
        stats["product_dims"] = [len(fam_s.members), G.n, len(fam_t.members)]
        stats["scalar_op_count"] = len(fam_s.members) * G.n * len(fam_t.members)
    problem = Problem(variant, k, r)

    # Row side: masks of vertices at level <= c; column side: level == b.
    rows = []
    for S in fam_s.members:
        lv = _member_levels(G, S, r, variant)
        le = []
        acc = 0
        for c in range(r):
            for v in range(G.n):
                if lv[v] == c:
                    acc |= 1 << v
            le.append(acc)
        rows.append((S, _set_mask(S), le))
    cols = []
    for T in fam_t.members:
        lv = _member_levels(G, T, r, variant)
        eq = []
        for b in range(r):
            m = 0
            for v in range(G.n):
                if lv[v] == b:
                    m |= 1 << v
            eq.append(m)
        cols.append((T, _set_mask(T), eq))

    def scan(stripe: range) -> Solution | None:
        for i in stripe:
            S, smask, le = rows[i]
            for T, tmask, eq in cols:
                if smask & tmask:
                    continue
                # bad <=> some vertex has combined level < r
                if any(eq[b] & le[r - 1 - b] for b in range(r)):
                    continue
                return Solution(problem, tuple(sorted(S + T)))
        return None

    if threads <= 1 or len(rows) <= 1:
        return scan(range(len(rows)))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for hit in pool.map(scan, _stripes(len(rows), threads)):
            if hit is not None:
                return hit
    return None


def list_2_dominating_sets(G: Graph) -> list[tuple[int, int]]:
    """All pairs {u, v}, u < v, with N[u] ∪ N[v] = V, via the complement
    closed-neighborhood bit matrix."""
    full = G.full_mask()
    comp = [full ^ G.closed_mask(v) for v in range(G.n)]
    A = BoolMatrix.from_row_ints(comp, G.n)
    pairs = complement_zero_pairs(A, A.transpose())
    return sorted({(min(i, j), max(i, j)) for i, j in pairs if i != j})


def build_clique_graph(G: Graph, k: int) -> tuple[KPartiteGraph, list[list[int]]]:
    """k-partite graph whose k-cliques correspond to pairwise-dominating
    k-sets: parts 1..k-1 are copies of the heavy set, part k a copy of V;
    cross edges join distinct originals that form a dominating pair."""
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    heavy = list(heavy_vertices(G, k))
    labels = [list(heavy) for _ in range(k - 1)] + [list(range(G.n))]
    dom2 = set(list_2_dominating_sets(G))
    edges = []
    for i in range(k):
        for j in range(i + 1, k):
            for a, u in enumerate(labels[i]):
                for b, v in enumerate(labels[j]):
                    if u != v and (min(u, v), max(u, v)) in dom2:
                        edges.append(((i, a), (j, b)))
    return KPartiteGraph([len(p) for p in labels], edges), labels


def grouping_parameters(k: int, gamma: Fraction) -> tuple[int, int] | None:
    """Triangle-grouping split (alpha, beta) with alpha + 2*beta + 1 = k,
    where beta = (k-1+1/gamma)/3. Requires k-1+1/gamma to be an integer
    divisible by 3 and 2/gamma < k-1; returns None otherwise."""
    g = Fraction(gamma)
    if not (0 < g <= 1):
        raise ValueError(f"gamma must be in (0, 1], got {gamma}")
    t = k - 1 + 1 / g
    if t.denominator != 1 or t.numerator % 3 != 0:
        return None
    if 2 / g >= k - 1:
        return None
    beta = t.numerator // 3
    alpha = k - 1 - 2 * beta
    if alpha <= 0 or beta <= 0:
        return None
    return alpha, beta


def _range_cliques(kp: KPartiteGraph, parts: Sequence[int]) -> list[tuple[tuple[int, int], ...]]:
    """All transversal cliques (one vertex per listed part, pairwise adjacent),
    in lexicographic index order."""
    out: list[tuple[tuple[int, int], ...]] = []

    def extend(idx: int, chosen: list[tuple[int, int]]):
        if idx == len(parts):
            out.append(tuple(chosen))
            return
        j = parts[idx]
        for b in range(kp.sizes[j]):
            if all(kp.has_edge(i, a, j, b) for i, a in chosen):
                chosen.append((j, b))
                extend(idx + 1, chosen)
                chosen.pop()

    extend(0, [])
    return out


def _joins_clique(kp: KPartiteGraph, w1: tuple[tuple[int, int], ...],
                  w2: tuple[tuple[int, int], ...]) -> bool:
    return all(kp.has_edge(i, a, j, b) for i, a in w1 for j, b in w2)


def _grouped_triangle(kp: KPartiteGraph, alpha: int, beta: int) -> tuple[tuple[int, int], ...] | None:
    k = kp.k
    parts1 = list(range(alpha + 1))
    parts2 = list(range(alpha + 1, alpha + 1 + beta))
    parts3 = list(range(alpha + 1 + beta, k))
    w1 = _range_cliques(kp, parts1)
    w2 = _range_cliques(kp, parts2)
    w3 = _range_cliques(kp, parts3)
    if not (w1 and w2 and w3):
        return None
    # compatibility bit rows towards W3, then triangle scan over W1 x W2
    w1_to_3 = [_set_mask(c for c, x in enumerate(w3) if _joins_clique(kp, a, x)) for a in w1]
    w2_to_3 = [_set_mask(c for c, x in enumerate(w3) if _joins_clique(kp, b, x)) for b in w2]
    for ia, a in enumerate(w1):
        for ib, b in enumerate(w2):
            if not _joins_clique(kp, a, b):
                continue
            both = w1_to_3[ia] & w2_to_3[ib]
            if both:
                ic = (both & -both).bit_length() - 1
                return tuple(sorted(a + b + w3[ic]))
    return None


def _backtrack_kclique(kp: KPartiteGraph) -> tuple[tuple[int, int], ...] | None:
    order = sorted(range(kp.k), key=lambda i: (kp.sizes[i], i))
    chosen: list[tuple[int, int]] = []

    def extend(idx: int) -> bool:
        if idx == kp.k:
            return True
        j = order[idx]
        for b in range(kp.sizes[j]):
            if all(kp.has_edge(i, a, j, b) for i, a in chosen):
                chosen.append((j, b))
                if extend(idx + 1):
                    return True
                chosen.pop()
        return False

    if extend(0):
        return tuple(sorted(chosen))
    return None


def detect_unbalanced_kclique(kp: KPartiteGraph,
                              gamma: Fraction | None = None) -> tuple[tuple[int, int], ...] | None:
    """One vertex per part forming a clique, or None.

    With a gamma hint satisfying the grouping conditions, partial cliques are
    grouped into three blocks and a triangle is searched; otherwise plain
    backtracking over parts ordered by increasing size.
    """
    params = grouping_parameters(kp.k, gamma) if gamma is not None else None
    if params is not None:
        return _grouped_triangle(kp, *params)
    return _backtrack_kclique(kp)


def solve_multidom_kminus1(G: Graph, k: int) -> Solution | None:
    """(k-1)-Multiple k-Dominating Set through the clique-graph pipeline.

    A k-clique of the pairwise-domination graph maps to a solution whose
    members are all closed-dominated >= k-1 times. Solutions with a weakly
    dominated member (legal under the V\\S convention, e.g. {a,b,d} in the
    path a-b-c-d) have no clique image, so a candidate-family pass completes
    the search when the clique side comes up empty.
    """
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    problem = Problem("multiple", k, k - 1)
    kp, labels = build_clique_graph(G, k)
    wit = detect_unbalanced_kclique(kp)
    if wit is not None:
        verts = tuple(sorted(labels[i][a] for i, a in wit))
        return Solution(problem, verts, {"clique_witness": list(wit)})
    fallback = solve_multidom_fast(G, k, k - 1, "multiple")
    if fallback is not None:
        return Solution(problem, fallback.vertices, {"clique_witness": None})
    return None
