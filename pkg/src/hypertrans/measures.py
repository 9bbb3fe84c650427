"""HyperTrans, the nine baseline measures, and their hypergraph-level aggregates.

Per-wedge functions take a :class:`WedgeParts` and a candidate collection of
node sets. Graph-level functions enumerate all hyperwedges and build each
wedge's candidate set from the incidence index.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .core import (
    Hypergraph,
    Hyperwedge,
    WedgeParts,
    _mix64,
    enumerate_hyperwedges,
    overlapping_candidates,
    sample_threshold,
    touching_candidates,
)
from .errors import EmptyCandidateSetError
from .interaction import PENALIZED, ScoreFunction, score_function

__all__ = [
    "MeasureKind",
    "WedgeScore",
    "WedgeScores",
    "GraphResult",
    "LevelSummary",
    "hypertrans_naive",
    "hypertrans_fast",
    "baseline",
    "evaluate",
    "graph_transitivity",
    "node_transitivity",
    "hyperedge_transitivity",
    "level_summary",
    "count_hyperwedges",
    "candidate_rule",
]


class MeasureKind(str, enum.Enum):
    HYPERTRANS = "HyperTrans"
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    B4 = "B4"
    B5 = "B5"
    B6 = "B6"
    B7 = "B7"
    B8 = "B8"
    B9 = "B9"

    @classmethod
    def parse(cls, value: "str | MeasureKind") -> "MeasureKind":
        if isinstance(value, cls):
            return value
        for k in cls:
            if k.value.lower() == str(value).lower():
                return k
        raise ValueError(f"unknown measure {value!r}")

    @property
    def bounded(self) -> bool:
        return self is not MeasureKind.B9


def _sets(C: Iterable[Iterable[int]]) -> list[frozenset[int]]:
    out = [e if isinstance(e, frozenset) else frozenset(e) for e in C]
    if not out:
        raise EmptyCandidateSetError("candidate set must be non-empty")
    return out


def hypertrans_naive(parts: WedgeParts, C: Iterable[Iterable[int]], f: ScoreFunction = PENALIZED) -> float:
    """HyperTrans by direct evaluation: for each wing pair, scan all of C."""
    C = _sets(C)
    best_per_pair = []
    for l, r in parts.pairs():
        best = None
        for e in C:
            val = f(parts, e) * (1.0 if (l in e and r in e) else 0.0)
            if best is None or val > best:
                best = val
        best_per_pair.append(best)
    return math.fsum(best_per_pair) / parts.pair_count


def _best_pair_scores(parts: WedgeParts, C: Sequence[frozenset[int]], f: ScoreFunction) -> dict:
    """Best score per covered wing pair; pairs never covered are absent."""
    best: dict[tuple[int, int], float] = {}
    L, R = parts.left, parts.right
    for e in C:
        le = L & e
        if not le:
            continue
        re_ = R & e
        if not re_:
            continue
        s = f(parts, e)
        for l in le:
            for r in re_:
                key = (l, r)
                if s > best.get(key, 0.0):
                    best[key] = s
    return best


def hypertrans_fast(parts: WedgeParts, C: Iterable[Iterable[int]], f: ScoreFunction = PENALIZED) -> float:
    """HyperTrans by a single pass over C, updating only the pairs each edge covers.

    Scores are assumed non-negative, as every good score function is.
    """
    C = _sets(C)
    best = _best_pair_scores(parts, C, f)
    return math.fsum(best.values()) / parts.pair_count


_INDICATOR = ScoreFunction("custom", lambda parts, e: 1.0, "indicator")


def _touching(V: frozenset[int], C: Sequence[frozenset[int]]) -> list[frozenset[int]]:
    return [e for e in C if not V.isdisjoint(e)]


def _wing_pair_fraction(parts: WedgeParts, C: Sequence[frozenset[int]]) -> float:
    wings = parts.wings
    covered = set()
    for e in C:
        w = sorted(wings & e)
        for i in range(len(w)):
            for j in range(i + 1, len(w)):
                covered.add((w[i], w[j]))
    k = len(wings)
    return len(covered) / (k * (k - 1) // 2)


def baseline(
    kind: MeasureKind | str,
    parts: WedgeParts,
    C: Iterable[Iterable[int]],
    f: ScoreFunction = PENALIZED,
) -> float:
    """Evaluate baseline B1..B9 on one hyperwedge and candidate set."""
    kind = MeasureKind.parse(kind)
    C = _sets(C)
    L, R, B = parts.left, parts.right, parts.body
    if kind is MeasureKind.B1:
        union = frozenset().union(*C)
        wings = parts.wings
        return len(union & wings) / len(union | wings)
    if kind is MeasureKind.B2:
        # same pair table as the fast path, with indicator scores
        covered = _best_pair_scores(parts, C, _INDICATOR)
        return len(covered) / parts.pair_count
    if kind is MeasureKind.B3:
        ml = set(_touching(L, C))
        mr = set(_touching(R, C))
        union = ml | mr
        if not union:
            return 0.0
        return len(ml & mr) / len(union)
    if kind is MeasureKind.B4:
        nl = frozenset().union(*_touching(L, C))
        nr = frozenset().union(*_touching(R, C))
        return (len(L & nr) + len(R & nl)) / (len(L) + len(R))
    if kind is MeasureKind.B5:
        return _wing_pair_fraction(parts, [e for e in C if B.isdisjoint(e)])
    if kind is MeasureKind.B6:
        return _wing_pair_fraction(parts, [e for e in C if not B.isdisjoint(e)])
    if kind is MeasureKind.B7:
        n = len(C)
        per_pair = []
        for l, r in parts.pairs():
            per_pair.append(math.fsum(f(parts, e) for e in C if l in e and r in e) / n)
        return math.fsum(per_pair) / parts.pair_count
    if kind is MeasureKind.B8:
        return max(f(parts, e) for e in C)
    if kind is MeasureKind.B9:
        return math.fsum(_best_pair_scores(parts, C, f).values())
    raise ValueError(f"{kind.value} is not a baseline")


def evaluate(
    kind: MeasureKind | str,
    parts: WedgeParts,
    C: Iterable[Iterable[int]],
    f: ScoreFunction = PENALIZED,
) -> float:
    """Dispatch to HyperTrans (fast path) or a baseline."""
    kind = MeasureKind.parse(kind)
    if kind is MeasureKind.HYPERTRANS:
        return hypertrans_fast(parts, C, f)
    return baseline(kind, parts, C, f)


def candidate_rule(kind: MeasureKind | str) -> str:
    """Which hyperedges form a wedge's candidate set at hypergraph level.

    ``"touching"`` (any edge meeting a wing) for B4, ``"overlapping"`` (edges
    meeting both wings) for everything else.
    """
    return "touching" if MeasureKind.parse(kind) is MeasureKind.B4 else "overlapping"


# hypergraph level


class WedgeScore(NamedTuple):
    wedge: Hyperwedge
    value: float
    body_size: int


@dataclass
class WedgeScores:
    """Per-wedge results stored column-wise."""

    edge_a: np.ndarray
    edge_b: np.ndarray
    body_size: np.ndarray
    score: np.ndarray

    def __len__(self) -> int:
        return int(self.score.shape[0])

    def __iter__(self) -> Iterator[WedgeScore]:
        for a, b, s, v in zip(self.edge_a.tolist(), self.edge_b.tolist(), self.body_size.tolist(), self.score.tolist()):
            yield WedgeScore(Hyperwedge(a, b), v, s)

    def write_csv(self, target: Any) -> None:
        """Columns ``wedge_a,wedge_b,body_size,score``."""
        close = False
        if isinstance(target, (str, os.PathLike)):
            target = open(os.fspath(target), "w", newline="", encoding="utf-8")
            close = True
        try:
            w = csv.writer(target, lineterminator="\n")
            w.writerow(["wedge_a", "wedge_b", "body_size", "score"])
            for a, b, s, v in zip(self.edge_a.tolist(), self.edge_b.tolist(), self.body_size.tolist(), self.score.tolist()):
                w.writerow([a, b, s, repr(v)])
        finally:
            if close:
                target.close()

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


@dataclass
class GraphResult:
    """Hypergraph-level transitivity plus everything needed for node/edge levels."""

    value: float
    wedges: WedgeScores
    kind: MeasureKind
    score: str
    engine: str
    sample_rate: float = 1.0
    seed: int = 0
    empty: bool = False
    guarantees_void: bool = False
    node_sum: np.ndarray = field(default=None, repr=False)
    node_count: np.ndarray = field(default=None, repr=False)
    edge_sum: np.ndarray = field(default=None, repr=False)
    edge_count: np.ndarray = field(default=None, repr=False)

    @property
    def wedge_count(self) -> int:
        return len(self.wedges)

    def metadata(self) -> dict:
        return {
            "measure": self.kind.value,
            "score": self.score,
            "engine": self.engine,
            "wedges": self.wedge_count,
            "sample_rate": self.sample_rate,
            "sample_seed": self.seed,
            "no_wedges": self.empty,
            "guarantees_void": self.guarantees_void,
        }


_CHUNKS = 64


def _use_kernel(kind: MeasureKind, f: ScoreFunction, engine: str) -> bool:
    if engine == "python":
        return False
    ok = kind is MeasureKind.HYPERTRANS and f.builtin
    if engine == "kernel" and not ok:
        raise ValueError("the compiled engine supports HyperTrans with built-in score functions only")
    return ok


def _run_kernel(H: Hypergraph, kind_code: int, sample_rate: float, seed: int, threads: int):
    from . import _kernels

    csr = H.csr()
    m = len(H)
    sampled = sample_rate < 1.0
    threshold = np.uint64(sample_threshold(sample_rate)) if sampled else np.uint64(0)
    seed_mix = np.uint64(_mix64(seed & ((1 << 64) - 1)))
    # fixed chunking keeps results bit-identical for any thread count
    bounds = np.linspace(0, m, min(_CHUNKS, max(m, 1)) + 1).astype(np.int64)
    spans = [(int(bounds[i]), int(bounds[i + 1])) for i in range(len(bounds) - 1) if bounds[i] < bounds[i + 1]]

    def job(span):
        return _kernels.wedge_scores(
            csr.edge_ptr, csr.edge_nodes, csr.node_ptr, csr.node_edges, H.node_count,
            span[0], span[1], kind_code, sampled, threshold, seed_mix,
        )

    if threads > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(job, spans))
    else:
        parts = [job(s) for s in spans]
    if not parts:
        z = np.zeros(0, dtype=np.int64)
        return z, z, z, np.zeros(0), np.zeros(H.node_count), np.zeros(H.node_count, dtype=np.int64), np.zeros(m), np.zeros(m, dtype=np.int64)
    cols = [np.concatenate([p[i] for p in parts]) for i in range(4)]
    sums = [parts[0][i].copy() for i in range(4, 8)]
    for p in parts[1:]:
        for i in range(4):
            sums[i] += p[4 + i]
    return (*cols, *sums)


def default_threads() -> int:
    env = os.environ.get("HT_THREADS")
    if env:
        return max(1, int(env))
    return max(1, os.cpu_count() or 1)


def count_hyperwedges(H: Hypergraph, sample_rate: float = 1.0, seed: int = 0) -> int:
    """Number of hyperwedges (compiled enumeration, no scoring)."""
    from . import _kernels

    if len(H) == 0:
        return 0
    cols = _run_kernel(H, _kernels.COUNT_ONLY, sample_rate, seed, 1)
    return int(cols[0].shape[0])


def graph_transitivity(
    H: Hypergraph,
    f: ScoreFunction | str = PENALIZED,
    kind: MeasureKind | str = MeasureKind.HYPERTRANS,
    *,
    sample_rate: float = 1.0,
    seed: int = 0,
    engine: str = "auto",
    threads: int | None = None,
) -> GraphResult:
    """Mean transitivity over all hyperwedges of ``H``.

    Each wedge is scored with the candidate set given by :func:`candidate_rule`.
    An empty candidate set scores 0. A hypergraph without hyperwedges yields
    0 with ``empty=True`` and a warning.

    Args:
        engine: ``"auto"`` (compiled when possible), ``"kernel"`` or ``"python"``.
        sample_rate: keep each wedge independently with this probability.
        threads: worker threads for the compiled engine (default: ``HT_THREADS``
            or the CPU count).
    """
    f = score_function(f)
    kind = MeasureKind.parse(kind)
    if threads is None:
        threads = default_threads()
    void = f.good is False
    m = len(H)
    n = H.node_count
    if _use_kernel(kind, f, engine):
        from . import _kernels

        code = _kernels.SCORE_COVERAGE if f.kind == "coverage" else _kernels.SCORE_PENALIZED
        ea, eb, body, score, ns, nc, es, ec = _run_kernel(H, code, sample_rate, seed, threads)
        used = "kernel"
    else:
        ea_l, eb_l, body_l, score_l = [], [], [], []
        ns = np.zeros(n)
        nc = np.zeros(n, dtype=np.int64)
        es = np.zeros(m)
        ec = np.zeros(m, dtype=np.int64)
        rule = candidate_rule(kind)
        sets = H.edge_sets
        for w in enumerate_hyperwedges(H, sample_rate, seed):
            pa = WedgeParts.from_edges(sets[w.edge_a], sets[w.edge_b])
            if rule == "touching":
                idx = touching_candidates(H, pa)
            else:
                idx = overlapping_candidates(H, pa)
            v = evaluate(kind, pa, [sets[i] for i in sorted(idx)], f) if idx else 0.0
            ea_l.append(w.edge_a)
            eb_l.append(w.edge_b)
            body_l.append(len(pa.body))
            score_l.append(v)
            for u in pa.body:
                ns[u] += v
                nc[u] += 1
            es[w.edge_a] += v
            es[w.edge_b] += v
            ec[w.edge_a] += 1
            ec[w.edge_b] += 1
        ea = np.asarray(ea_l, dtype=np.int64)
        eb = np.asarray(eb_l, dtype=np.int64)
        body = np.asarray(body_l, dtype=np.int64)
        score = np.asarray(score_l, dtype=np.float64)
        used = "python"
    wedges = WedgeScores(ea, eb, body, score)
    empty = len(wedges) == 0
    if empty:
        warnings.warn("hypergraph has no hyperwedges; transitivity reported as 0", stacklevel=2)
        value = 0.0
    else:
        value = math.fsum(score.tolist()) / len(wedges)
    return GraphResult(
        value=value,
        wedges=wedges,
        kind=kind,
        score=f.label,
        engine=used,
        sample_rate=sample_rate,
        seed=seed,
        empty=empty,
        guarantees_void=void,
        node_sum=ns,
        node_count=nc,
        edge_sum=es,
        edge_count=ec,
    )


def _result(H, f, result, **kw) -> GraphResult:
    if result is not None:
        return result
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return graph_transitivity(H, f, **kw)


def node_transitivity(
    H: Hypergraph, f: ScoreFunction | str = PENALIZED, *, result: GraphResult | None = None, **kw
) -> dict[int, float]:
    """Mean wedge score over wedges whose body contains the node; nodes with none are omitted."""
    r = _result(H, f, result, **kw)
    idx = np.flatnonzero(r.node_count)
    vals = r.node_sum[idx] / r.node_count[idx]
    return dict(zip(idx.tolist(), vals.tolist()))


def hyperedge_transitivity(
    H: Hypergraph, f: ScoreFunction | str = PENALIZED, *, result: GraphResult | None = None, **kw
) -> tuple[dict[int, float], float | None]:
    """Mean wedge score per hyperedge over the wedges it belongs to, plus the range (None if empty)."""
    r = _result(H, f, result, **kw)
    idx = np.flatnonzero(r.edge_count)
    vals = r.edge_sum[idx] / r.edge_count[idx]
    per_edge = dict(zip(idx.tolist(), vals.tolist()))
    rng = float(vals.max() - vals.min()) if len(vals) else None
    return per_edge, rng


@dataclass
class LevelSummary:
    graph_T: float
    node_T: dict[int, float]
    edge_T: dict[int, float]
    edge_T_range: float | None
    wedge_count: int
    metadata: dict = field(default_factory=dict)

    def to_dict(self, H: Hypergraph | None = None) -> dict:
        label = (lambda v: H.label(v)) if H is not None else (lambda v: v)
        return {
            "schema": "hypertrans.levels/1",
            "graph_T": self.graph_T,
            "wedge_count": self.wedge_count,
            "edge_T_range": self.edge_T_range,
            "node_T": {str(label(v)): t for v, t in self.node_T.items()},
            "edge_T": {str(e): t for e, t in self.edge_T.items()},
            "metadata": self.metadata,
        }

    def to_json(self, H: Hypergraph | None = None, **kw) -> str:
        return json.dumps(self.to_dict(H), **kw)


def level_summary(
    H: Hypergraph, f: ScoreFunction | str = PENALIZED, *, result: GraphResult | None = None, **kw
) -> LevelSummary:
    r = _result(H, f, result, **kw)
    node_T = node_transitivity(H, f, result=r)
    edge_T, rng = hyperedge_transitivity(H, f, result=r)
    return LevelSummary(r.value, node_T, edge_T, rng, r.wedge_count, r.metadata())
