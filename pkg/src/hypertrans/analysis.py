"""Statistics and the observation report comparing a hypergraph with HyperCL null models."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.stats import rankdata

from .core import Hypergraph
from .generators import hypercl_counterpart
from .interaction import PENALIZED, ScoreFunction, score_function
from .measures import GraphResult, graph_transitivity, hyperedge_transitivity, node_transitivity

__all__ = [
    "spearman",
    "ks_dstat",
    "z_test",
    "ZTest",
    "Bin",
    "BinnedSeries",
    "degree_transitivity_profile",
    "bin_by_degree",
    "ObservationReport",
    "observation_report",
]


def spearman(xs: Sequence[float], ys: Sequence[float]) -> float | None:
    """Spearman's rho with average ranks for ties; None when either series is constant."""
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("series must be one-dimensional and of equal length")
    if x.size < 2:
        raise ValueError("need at least two observations")
    rx = rankdata(x) - (x.size + 1) / 2.0
    ry = rankdata(y) - (y.size + 1) / 2.0
    den = math.sqrt(float(np.dot(rx, rx)) * float(np.dot(ry, ry)))
    if den == 0.0:
        return None
    rho = float(np.dot(rx, ry)) / den
    return max(-1.0, min(1.0, rho))


def ks_dstat(a: Sequence[float], b: Sequence[float]) -> float:
    """Largest gap between the two empirical CDFs, evaluated at every sample point."""
    a = np.sort(np.asarray(a, dtype=np.float64))
    b = np.sort(np.asarray(b, dtype=np.float64))
    if a.size == 0 or b.size == 0:
        raise ValueError("both samples must be non-empty")
    pts = np.concatenate([a, b])
    fa = np.searchsorted(a, pts, side="right") / a.size
    fb = np.searchsorted(b, pts, side="right") / b.size
    return float(np.max(np.abs(fa - fb)))


@dataclass(frozen=True)
class ZTest:
    z: float | None
    p: float | None
    null_mean: float
    null_sd: float
    n: int

    def to_dict(self) -> dict:
        return {"z": self.z, "p": self.p, "null_mean": self.null_mean, "null_sd": self.null_sd, "n": self.n}


def z_test(real_value: float, null_values: Sequence[float]) -> ZTest:
    """Z = (real - mean) / (sd / sqrt(n)) with sample sd; two-sided normal p-value.

    ``z`` and ``p`` are None when the null values have zero spread.
    """
    vals = np.asarray(null_values, dtype=np.float64)
    n = vals.size
    if n < 2:
        raise ValueError("need at least two null values")
    mean = float(vals.mean())
    sd = float(vals.std(ddof=1))
    if sd == 0.0:
        return ZTest(None, None, mean, sd, n)
    z = (real_value - mean) / (sd / math.sqrt(n))
    p = math.erfc(abs(z) / math.sqrt(2.0))
    return ZTest(z, p, mean, sd, n)


@dataclass(frozen=True)
class Bin:
    lo: int
    hi: int
    mean: float
    count: int


@dataclass(frozen=True)
class BinnedSeries:
    bins: tuple[Bin, ...]

    def means(self) -> list[float]:
        return [b.mean for b in self.bins]

    def to_rows(self) -> list[dict]:
        return [{"degree_lo": b.lo, "degree_hi": b.hi, "mean_T": b.mean, "nodes": b.count} for b in self.bins]


def bin_by_degree(degrees: Sequence[int], values: Sequence[float]) -> BinnedSeries:
    """Group (degree, value) points into [2^k, 2^(k+1)) bins and average each bin."""
    groups: dict[int, list[float]] = {}
    for d, v in zip(degrees, values):
        if d < 1:
            raise ValueError("degrees must be positive")
        groups.setdefault(int(d).bit_length() - 1, []).append(v)
    bins = tuple(
        Bin(1 << k, 1 << (k + 1), math.fsum(vs) / len(vs), len(vs)) for k, vs in sorted(groups.items())
    )
    return BinnedSeries(bins)


def degree_transitivity_profile(
    H: Hypergraph, f: ScoreFunction | str = PENALIZED, *, result: GraphResult | None = None
) -> BinnedSeries:
    """Node transitivity averaged over logarithmic (base 2) degree bins."""
    nt = node_transitivity(H, f, result=result)
    deg = H.degrees()
    ds = [int(deg[v]) for v in nt]
    # a node in a wedge body belongs to both of its hyperedges
    assert all(d >= 2 for d in ds)
    return bin_by_degree(ds, list(nt.values()))


def _quiet(H, f, **kw) -> GraphResult:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return graph_transitivity(H, f, **kw)


def _mean(vals):
    vals = [v for v in vals if v is not None]
    return math.fsum(vals) / len(vals) if vals else None


@dataclass
class ObservationReport:
    obs1: dict
    obs2: dict
    obs3: dict
    obs4: dict
    ks: dict
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "schema": "hypertrans.report/1",
            "obs1": self.obs1,
            "obs2": self.obs2,
            "obs3": self.obs3,
            "obs4": self.obs4,
            "ks": self.ks,
            "metadata": self.metadata,
        }


def _body_rho(r: GraphResult) -> float | None:
    if len(r.wedges) < 2:
        return None
    return spearman(r.wedges.body_size, r.wedges.score)


def observation_report(
    H: Hypergraph,
    f: ScoreFunction | str = PENALIZED,
    null_runs: int = 10,
    seed: int = 0,
    generated: Hypergraph | None = None,
    *,
    threads: int | None = None,
    result: GraphResult | None = None,
) -> ObservationReport:
    """Compare ``H`` against ``null_runs`` HyperCL counterparts (and optionally a generated one).

    Null draws use seeds ``seed, seed+1, ...`` and are deduplicated before
    measuring, like real inputs. Statistics that are undefined (constant
    series, zero null spread) are reported as None.
    """
    if null_runs < 1:
        raise ValueError("null_runs must be at least 1")
    f = score_function(f)
    real = result if result is not None else _quiet(H, f, threads=threads)
    nulls_H = [hypercl_counterpart(H, seed + i).deduplicated() for i in range(null_runs)]
    nulls = [_quiet(N, f, threads=threads) for N in nulls_H]
    gen = None
    if generated is not None:
        generated = generated.deduplicated()
        gen = _quiet(generated, f, threads=threads)

    null_T = [r.value for r in nulls]
    zt = z_test(real.value, null_T) if null_runs >= 2 else None
    obs1 = {
        "real_T": real.value,
        "null_T": null_T,
        "null_mean": _mean(null_T),
        "null_sd": float(np.std(null_T, ddof=1)) if null_runs >= 2 else None,
        "z": None if zt is None else zt.z,
        "p": None if zt is None else zt.p,
        "generated_T": None if gen is None else gen.value,
        "wedges": real.wedge_count,
    }
    obs2 = {
        "real_rho": _body_rho(real),
        "null_rho": _mean(_body_rho(r) for r in nulls),
        "generated_rho": None if gen is None else _body_rho(gen),
    }

    def profile(pairs):
        degs, vals = [], []
        for G, r in pairs:
            nt = node_transitivity(G, f, result=r)
            d = G.degrees()
            degs.extend(int(d[v]) for v in nt)
            vals.extend(nt.values())
        return bin_by_degree(degs, vals).to_rows() if degs else []

    obs3 = {
        "real": profile([(H, real)]),
        "null": profile(zip(nulls_H, nulls)),
        "generated": None if gen is None else profile([(generated, gen)]),
    }

    def edge_range(G, r):
        return hyperedge_transitivity(G, f, result=r)[1]

    obs4 = {
        "real_range": edge_range(H, real),
        "null_range": _mean(edge_range(G, r) for G, r in zip(nulls_H, nulls)),
        "generated_range": None if gen is None else edge_range(generated, gen),
    }
    pooled = np.concatenate([r.wedges.score for r in nulls]) if nulls else np.zeros(0)
    ks = {
        "real_vs_null": ks_dstat(real.wedges.score, pooled) if len(real.wedges) and pooled.size else None,
        "real_vs_generated": ks_dstat(real.wedges.score, gen.wedges.score)
        if gen is not None and len(real.wedges) and len(gen.wedges)
        else None,
    }
    meta = {
        "score": f.label,
        "null_model": "hypercl",
        "null_runs": null_runs,
        "seed": seed,
        "sd": "sample (n-1)",
        "p_value": "two-sided normal",
        "binning": "log2 degree, bins [2^k, 2^(k+1))",
        "sample_rate": real.sample_rate,
    }
    return ObservationReport(obs1, obs2, obs3, obs4, ks, meta)
