"""Hypergraph generators: THera, Naive-THera and the HyperCL null model.

Node ``v_i`` of the generator description is dense id ``i - 1``.  All
generators draw from a single ``random.Random(seed)`` stream, so a fixed
seed reproduces the output exactly.  Duplicate hyperedges are kept; analysis
code deduplicates on load.
"""

from __future__ import annotations

import math
import os
import random
from bisect import bisect_right
from dataclasses import asdict, dataclass, field
from itertools import accumulate
from typing import Mapping, Sequence

from .core import Hypergraph
from .errors import InfeasibleParametersError, ParseError

__all__ = [
    "SizeDistribution",
    "TheraParams",
    "LevelIndex",
    "assign_edge_budget",
    "build_levels",
    "intra_community_generate",
    "hierarchical_generate",
    "generate_thera",
    "generate_naive_thera",
    "generate_hypercl",
    "hypercl_counterpart",
    "size_distribution_from",
    "load_sizes",
]


@dataclass(frozen=True)
class SizeDistribution:
    """Expected number of hyperedges per size."""

    counts: Mapping[int, int]

    def __post_init__(self):
        counts = {int(k): int(v) for k, v in dict(self.counts).items() if int(v) != 0}
        if any(v < 0 for v in counts.values()):
            raise ValueError("size counts must be non-negative")
        if not counts:
            raise ValueError("size distribution needs at least one hyperedge")
        if min(counts) < 2:
            raise ValueError("hyperedge sizes must be at least 2")
        object.__setattr__(self, "counts", dict(sorted(counts.items())))

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def max_size(self) -> int:
        return max(self.counts)

    def scaled(self, factor: float) -> "SizeDistribution":
        return SizeDistribution({k: max(0, round(v * factor)) for k, v in self.counts.items()})

    def _table(self) -> tuple[list[int], list[int], int]:
        sizes = list(self.counts)
        cum = list(accumulate(self.counts[k] for k in sizes))
        return sizes, cum, cum[-1]

    @classmethod
    def parse(cls, text: str) -> "SizeDistribution":
        """Accept ``"3:4000,4:2000"`` or lines of ``size count``."""
        counts: dict[int, int] = {}
        chunks = [c for c in text.replace(",", "\n").splitlines() if c.strip() and not c.strip().startswith("#")]
        for lineno, chunk in enumerate(chunks, start=1):
            parts = chunk.replace(":", " ").split()
            if len(parts) != 2:
                raise ParseError(f"expected 'size count', got {chunk.strip()!r}", lineno)
            try:
                k, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(f"non-integer entry {chunk.strip()!r}", lineno) from None
            counts[k] = counts.get(k, 0) + v
        return cls(counts)

    @classmethod
    def from_file(cls, path: str | os.PathLike) -> "SizeDistribution":
        with open(path, encoding="utf-8") as fh:
            return cls.parse(fh.read())


@dataclass(frozen=True)
class TheraParams:
    n: int
    S: SizeDistribution
    C: int = 10
    p: float = 0.8
    alpha: float = 2.0
    beta: int = 2
    seed: int = 0
    community: str = "literal"

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.C < 1:
            raise ValueError("community size must be at least 1")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if self.alpha < 1.0:
            raise ValueError("alpha must be at least 1")
        if self.beta < 1 or int(self.beta) != self.beta:
            raise ValueError("beta must be a positive integer")
        if self.community not in ("literal", "anchor-block"):
            raise ValueError("community must be 'literal' or 'anchor-block'")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["S"] = {str(k): v for k, v in self.S.counts.items()}
        return d


@dataclass
class LevelIndex:
    """Contiguous node ranges per level: level l holds ids ``starts[l] .. starts[l] + sizes[l] - 1``."""

    starts: list[int] = field(default_factory=list)
    sizes: list[int] = field(default_factory=list)

    @property
    def depth(self) -> int:
        return len(self.sizes)

    def level_of(self, v: int) -> int:
        return bisect_right(self.starts, v) - 1

    def placed(self, T: int) -> int:
        """Number of nodes at levels 0..T."""
        return self.starts[T] + self.sizes[T]

    def weights(self, T: int, alpha: float) -> list[float]:
        """Cumulative level weights alpha^-l * |level l| for l = 0..T."""
        return list(accumulate(alpha ** (-l) * self.sizes[l] for l in range(T + 1)))

    def node_levels(self, n: int) -> list[int]:
        out = [0] * n
        for l, (s, k) in enumerate(zip(self.starts, self.sizes)):
            out[s : s + k] = [l] * k
        return out


def build_levels(n: int, C: int, beta: int) -> LevelIndex:
    """Level 0 is node 0; level T >= 1 takes the next min(C*T^beta, remaining) nodes."""
    idx = LevelIndex([0], [1])
    placed = 1
    T = 0
    while placed < n:
        T += 1
        k = min(C * T**beta, n - placed)
        idx.starts.append(placed)
        idx.sizes.append(k)
        placed += k
    return idx


def assign_edge_budget(n: int, m: int, rng: random.Random) -> list[int]:
    """Hyperedges anchored per node: 0 for node 0, at least 1 elsewhere, summing to m."""
    if n < 2:
        raise InfeasibleParametersError("need at least two nodes")
    if m < n - 1:
        raise InfeasibleParametersError(
            f"m={m} hyperedges cannot give each of the {n - 1} anchor nodes one edge; "
            f"use m >= {n - 1} or n <= {m + 1}"
        )
    AE = [0] + [1] * (n - 1)
    for a in rng.choices(range(1, n), k=m - (n - 1)):
        AE[a] += 1
    return AE


def _community_range(v: int, C: int, levels: LevelIndex, T: int, rule: str = "literal") -> tuple[int, int]:
    """Id range ``[lo, hi)`` of the community an anchor ``v`` at level ``T`` draws from.

    Communities are blocks of C consecutive ids starting at id 1. With the
    ``literal`` rule the block starts at C*ceil((idx-2)/C)+1 for the 1-based
    index idx = v+1, so anchors other than a block's first node draw from the
    following block. ``anchor-block`` uses the block that contains ``v``.
    The range is clipped to level ``T``.
    """
    if rule == "literal":
        lo = C * (-(-(v - 1) // C)) + 1
    elif rule == "anchor-block":
        lo = 1 + ((v - 1) // C) * C
    else:
        raise ValueError(f"unknown community rule {rule!r}")
    hi = min(lo + C, levels.placed(T))
    return lo, max(lo, hi)


def intra_community_generate(
    anchor: int,
    C: int,
    T: int,
    s: int,
    levels: LevelIndex,
    rng: random.Random,
    rule: str = "literal",
) -> list[int]:
    """Anchor plus min(s-1, |V_C|) distinct uniform nodes of its community V_C (anchor excluded)."""
    lo, hi = _community_range(anchor, C, levels, T, rule)
    inside = lo <= anchor < hi
    pool = hi - lo - inside
    k = min(s - 1, pool)
    if k <= 0:
        return [anchor]
    if inside:
        off = anchor - lo
        mates = [lo + i + (i >= off) for i in rng.sample(range(pool), k)]
    else:
        mates = [lo + i for i in rng.sample(range(pool), k)]
    mates.append(anchor)
    return mates


def hierarchical_generate(
    e: set[int],
    T: int,
    s: int,
    levels: LevelIndex,
    cum_weights: Sequence[float],
    rng: random.Random,
) -> set[int]:
    """Add nodes drawn level-first (weight alpha^-l per node) until ``e`` has ``s`` nodes.

    ``cum_weights`` is :meth:`LevelIndex.weights` for the current level ``T``;
    ``s`` must not exceed the nodes placed at levels 0..T.
    """
    total = cum_weights[T]
    starts = levels.starts
    sizes = levels.sizes
    rand = rng.random
    while len(e) < s:
        l = bisect_right(cum_weights, rand() * total)
        if l > T:
            l = T
        e.add(starts[l] + int(rand() * sizes[l]))
    return e


def generate_thera(params: TheraParams) -> Hypergraph:
    """Generate a hypergraph with hierarchical levels and per-level communities.

    Every node except the first anchors its budgeted number of hyperedges in
    id order. Each hyperedge draws a size s, then a coin q. If q < p it is
    filled from the anchor's community, and any shortfall is topped up by
    level-weighted sampling among nodes at the anchor's level or below.
    """
    P = params
    rng = random.Random(P.seed)
    n, C, alpha = P.n, P.C, float(P.alpha)
    m = P.S.total
    AE = assign_edge_budget(n, m, rng)
    levels = build_levels(n, C, P.beta)
    sizes, cum, total = P.S._table()
    rand = rng.random
    edges: list[tuple[int, ...]] = []
    append = edges.append
    clamps = 0
    intra = 0
    for T in range(1, levels.depth):
        cw = levels.weights(T, alpha)
        placed = levels.placed(T)
        start = levels.starts[T]
        for v in range(start, start + levels.sizes[T]):
            for _ in range(AE[v]):
                s = sizes[bisect_right(cum, rand() * total)]
                q = rand()
                if s > placed:
                    s = placed
                    clamps += 1
                if q < P.p:
                    intra += 1
                    e = set(intra_community_generate(v, C, T, s, levels, rng, P.community))
                else:
                    e = {v}
                if len(e) < s:
                    hierarchical_generate(e, T, s, levels, cw, rng)
                append(tuple(sorted(e)))
    meta = {
        "model": "thera",
        "params": P.to_dict(),
        "levels": [[s, s + k] for s, k in zip(levels.starts, levels.sizes)],
        "community_size": C,
        "intra_draws": intra,
        "clamp_events": clamps,
    }
    return Hypergraph.from_sorted(edges, n, metadata=meta)


def generate_naive_thera(n: int, S: SizeDistribution, C: int, seed: int = 0) -> Hypergraph:
    """Hyperedges drawn entirely inside fixed blocks of C consecutive nodes."""
    if n < 2 or C < 1:
        raise ValueError("need n >= 2 and C >= 1")
    rng = random.Random(seed)
    sizes, cum, total = S._table()
    rand = rng.random
    edges = []
    clamps = 0
    for _ in range(S.total):
        s = sizes[bisect_right(cum, rand() * total)]
        v = int(rand() * n)
        lo = (v // C) * C
        hi = min(lo + C, n)
        if s > hi - lo:
            s = hi - lo
            clamps += 1
        off = v - lo
        mates = [lo + i + (i >= off) for i in rng.sample(range(hi - lo - 1), s - 1)]
        mates.append(v)
        edges.append(tuple(sorted(mates)))
    meta = {
        "model": "naive-thera",
        "params": {"n": n, "S": {str(k): c for k, c in S.counts.items()}, "C": C, "seed": seed},
        "communities": math.ceil(n / C),
        "clamp_events": clamps,
    }
    return Hypergraph.from_sorted(edges, n, metadata=meta)


def _weighted_without_replacement(rng, nodes, weights, s, exclude):
    # exponential-key sampling over the remaining positive-weight nodes
    keyed = []
    for v, w in zip(nodes, weights):
        if w > 0 and v not in exclude:
            keyed.append((rng.random() ** (1.0 / w), v))
    keyed.sort(reverse=True)
    return [v for _, v in keyed[:s]]


def generate_hypercl(
    degree_seq: Sequence[float],
    size_seq: Sequence[int],
    seed: int = 0,
    node_count: int | None = None,
) -> Hypergraph:
    """One hyperedge per entry of ``size_seq``, nodes drawn proportional to ``degree_seq``.

    Duplicate draws inside a hyperedge are rejected; duplicate hyperedges are kept.
    """
    weights = [float(w) for w in degree_seq]
    if any(w < 0 for w in weights):
        raise ValueError("weights must be non-negative")
    positive = sum(1 for w in weights if w > 0)
    if size_seq and max(size_seq) > positive:
        raise InfeasibleParametersError(
            f"hyperedge of size {max(size_seq)} needs more than the {positive} nodes with positive weight"
        )
    rng = random.Random(seed)
    cum = list(accumulate(weights))
    total = cum[-1] if cum else 0.0
    last = len(weights) - 1
    rand = rng.random
    edges = []
    fallbacks = 0
    for s in size_seq:
        e: set[int] = set()
        tries = 0
        limit = 50 * s
        while len(e) < s and tries < limit:
            i = bisect_right(cum, rand() * total)
            e.add(i if i <= last else last)
            tries += 1
        if len(e) < s:
            fallbacks += 1
            e.update(_weighted_without_replacement(rng, range(len(weights)), weights, s - len(e), e))
        edges.append(tuple(sorted(e)))
    n = node_count if node_count is not None else len(weights)
    meta = {"model": "hypercl", "seed": seed, "exact_fallbacks": fallbacks}
    return Hypergraph.from_sorted(edges, n, metadata=meta)


def hypercl_counterpart(H: Hypergraph, seed: int = 0) -> Hypergraph:
    """HyperCL draw with the degree and size sequences of ``H``."""
    return generate_hypercl(H.degrees().tolist(), H.sizes().tolist(), seed, node_count=H.node_count)


def size_distribution_from(H: Hypergraph) -> SizeDistribution:
    """Histogram of hyperedge sizes."""
    counts: dict[int, int] = {}
    for e in H.edges:
        counts[len(e)] = counts.get(len(e), 0) + 1
    return SizeDistribution(counts)


def load_sizes(spec: str) -> SizeDistribution:
    """Size distribution from a histogram file (``size count`` lines) or an inline ``k:count,...`` list."""
    if os.path.exists(spec):
        return SizeDistribution.from_file(spec)
    return SizeDistribution.parse(spec)
