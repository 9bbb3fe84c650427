"""Executable axiom conformance: hypothesis validation, verdicts, fixtures and randomized search.

Hyperwedge-level axioms (A1-A5) are evaluated on raw node sets: an instance
carries the two hyperedges of the wedge and the candidate collections.
Hypergraph-level axioms (A6, A7) carry a whole :class:`Hypergraph`.
"""

from __future__ import annotations

import enum
import random
import warnings
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .core import Hypergraph, WedgeParts
from .errors import InvalidInstanceError, InvalidWedgeError
from .interaction import PENALIZED, ScoreFunction, score_function
from .measures import MeasureKind, evaluate, graph_transitivity

__all__ = [
    "AxiomId",
    "AxiomInstance",
    "Verdict",
    "FixtureVerdict",
    "EXPECTED_VIOLATIONS",
    "FIXTURE_EDGES",
    "FIXTURE_WEDGE",
    "validate_instance",
    "check_axiom",
    "generate_instance",
    "search",
    "search_counterexample",
    "shrink",
    "fixtures",
    "fixture_suite",
    "violated_axioms",
    "conformance_table",
    "triangle_transitivity",
]

TOL = 1e-12
MARGIN = 1e-12


class AxiomId(str, enum.Enum):
    A1 = "A1"
    A2_1 = "A2.1"
    A2_2 = "A2.2"
    A2_3 = "A2.3"
    A3_1 = "A3.1"
    A3_2 = "A3.2"
    A4 = "A4"
    A5 = "A5"
    A6 = "A6"
    A7 = "A7"

    @property
    def top(self) -> int:
        """Axiom number without the case suffix."""
        return int(self.value[1])

    @property
    def graph_level(self) -> bool:
        return self in (AxiomId.A6, AxiomId.A7)

    @classmethod
    def parse(cls, value: "str | AxiomId") -> "AxiomId":
        if isinstance(value, cls):
            return value
        for a in cls:
            if a.value.lower() == str(value).lower():
                return a
        raise ValueError(f"unknown axiom {value!r}")


# Axioms each measure is expected to violate (whole-axiom granularity)
EXPECTED_VIOLATIONS: dict[MeasureKind, frozenset[int]] = {
    MeasureKind.HYPERTRANS: frozenset(),
    MeasureKind.B1: frozenset({1, 2, 3, 4}),
    MeasureKind.B2: frozenset({3, 4}),
    MeasureKind.B3: frozenset({2, 3, 4}),
    MeasureKind.B4: frozenset({3, 4}),
    MeasureKind.B5: frozenset({1, 2, 3, 4}),
    MeasureKind.B6: frozenset({1, 2, 3, 4, 6}),
    MeasureKind.B7: frozenset({2}),
    MeasureKind.B8: frozenset({2}),
    MeasureKind.B9: frozenset({5, 7}),
}

@dataclass(frozen=True)
class AxiomInstance:
    """Input for one axiom check.

    For A1-A5: ``edge_a``/``edge_b`` form the wedge, ``candidates`` is C.
    A2 adds ``candidates_prime`` (C'). A3 gives ``bijection`` as (e, g(e))
    pairs; C and C' are read from it. A6/A7 use ``hypergraph`` only.
    """

    edge_a: frozenset[int] = frozenset()
    edge_b: frozenset[int] = frozenset()
    candidates: tuple[frozenset[int], ...] = ()
    candidates_prime: tuple[frozenset[int], ...] | None = None
    bijection: tuple[tuple[frozenset[int], frozenset[int]], ...] | None = None
    hypergraph: Hypergraph | None = field(default=None, compare=False)
    label: str = ""

    @classmethod
    def from_hypergraph(
        cls,
        H: Hypergraph,
        wedge: tuple[int, int],
        C: Iterable[int],
        C_prime: Iterable[int] | None = None,
        bijection: dict[int, int] | None = None,
        label: str = "",
    ) -> "AxiomInstance":
        """Build an instance from hyperedge indices of ``H``."""
        s = H.edge_sets
        bij = None
        if bijection is not None:
            bij = tuple((s[a], s[b]) for a, b in sorted(bijection.items()))
        return cls(
            edge_a=s[wedge[0]],
            edge_b=s[wedge[1]],
            candidates=tuple(s[i] for i in sorted(C)) if bij is None else tuple(p[0] for p in bij),
            candidates_prime=None if C_prime is None else tuple(s[i] for i in sorted(C_prime)),
            bijection=bij,
            hypergraph=H,
            label=label,
        )

    @property
    def parts(self) -> WedgeParts:
        return WedgeParts.from_edges(self.edge_a, self.edge_b)

    @property
    def C(self) -> tuple[frozenset[int], ...]:
        if self.bijection is not None:
            return tuple(p[0] for p in self.bijection)
        return self.candidates

    @property
    def C_prime(self) -> tuple[frozenset[int], ...] | None:
        if self.bijection is not None:
            return tuple(p[1] for p in self.bijection)
        return self.candidates_prime

    def describe(self) -> dict:
        if self.hypergraph is not None and not self.edge_a:
            return {"label": self.label, "hyperedges": [list(e) for e in self.hypergraph.edges]}
        out = {
            "label": self.label,
            "wedge": [sorted(self.edge_a), sorted(self.edge_b)],
            "C": [sorted(e) for e in self.C],
        }
        if self.C_prime is not None:
            out["C_prime"] = [sorted(e) for e in self.C_prime]
        return out


@dataclass(frozen=True)
class Verdict:
    axiom: AxiomId
    satisfied: bool
    trials: int = 1
    witness: AxiomInstance | None = None
    values: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "satisfied" if self.satisfied else "violated"

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom.value,
            "status": self.status,
            "trials": self.trials,
            "values": self.values,
            "witness": None if self.witness is None else self.witness.describe(),
        }


# validation


def _distinct(C: Sequence[frozenset[int]]) -> bool:
    return len(set(C)) == len(C)


def _pairs_of(e: frozenset[int], parts: WedgeParts) -> set[tuple[int, int]]:
    return {(l, r) for l in parts.left & e for r in parts.right & e}


def validate_instance(axiom: AxiomId | str, inst: AxiomInstance) -> None:
    """Raise :class:`InvalidInstanceError` unless ``inst`` meets the axiom's hypothesis."""
    axiom = AxiomId.parse(axiom)
    if axiom.graph_level:
        H = inst.hypergraph
        if H is None or len(H) == 0:
            raise InvalidInstanceError("graph-level axioms need a non-empty hypergraph")
        if len(set(H.edges)) != len(H.edges) or any(len(e) < 2 for e in H.edges):
            raise InvalidInstanceError("hypergraph must be deduplicated without singletons")
        if axiom is AxiomId.A6:
            if not H.is_pairwise():
                raise InvalidInstanceError("A6 needs a pairwise graph")
            if _open_triples(H) == 0:
                raise InvalidInstanceError("A6 needs at least one wedge")
        return
    try:
        parts = inst.parts
    except InvalidWedgeError as exc:
        raise InvalidInstanceError(f"not a hyperwedge: {exc}") from None
    C = inst.C
    if not C:
        raise InvalidInstanceError("candidate set must be non-empty")
    if any(not e for e in C) or not _distinct(C):
        raise InvalidInstanceError("candidates must be distinct non-empty sets")
    Cp = inst.C_prime
    if axiom in (AxiomId.A2_1, AxiomId.A2_2, AxiomId.A2_3):
        if Cp is None or not _distinct(Cp) or any(not e for e in Cp):
            raise InvalidInstanceError("A2 needs a candidate set C' of distinct non-empty sets")
        if not set(C) <= set(Cp):
            raise InvalidInstanceError("A2 needs C to be a subset of C'")
        added = set(Cp) - set(C)
        if axiom is AxiomId.A2_2 and any(parts.is_overlapping(e) for e in added):
            raise InvalidInstanceError("A2.2 allows only non-overlapping additions")
        if axiom is AxiomId.A2_3:
            covered = set().union(*(_pairs_of(e, parts) for e in C))
            if not any(_pairs_of(e, parts) - covered for e in Cp):
                raise InvalidInstanceError("A2.3 needs an added edge covering a new wing pair")
    elif axiom in (AxiomId.A3_1, AxiomId.A3_2):
        if inst.bijection is None:
            raise InvalidInstanceError("A3 needs a bijection")
        if not _distinct(Cp):
            raise InvalidInstanceError("enlarged candidates collide; not a bijection")
        wings = parts.wings
        for e, g in inst.bijection:
            if not (e <= g and (g - e) <= wings):
                raise InvalidInstanceError("each image must add wing nodes only")
            if axiom is AxiomId.A3_2:
                if g == e:
                    raise InvalidInstanceError("A3.2 needs every candidate strictly enlarged")
                if not (_pairs_of(g, parts) - _pairs_of(e, parts)):
                    raise InvalidInstanceError("A3.2 needs every enlargement to cover a new wing pair")
    elif Cp is not None:
        raise InvalidInstanceError(f"{axiom.value} takes a single candidate set")


# evaluation


def _open_triples(H: Hypergraph) -> int:
    return sum(d * (d - 1) // 2 for d in H.degrees().tolist())


def triangle_transitivity(H: Hypergraph) -> float:
    """3 × triangles / connected triples of a pairwise graph (brute force over node triples)."""
    adj = [set() for _ in range(H.node_count)]
    for u, v in H.edges:
        adj[u].add(v)
        adj[v].add(u)
    nodes = [v for v in range(H.node_count) if adj[v]]
    tri = 0
    for a, b, c in combinations(nodes, 3):
        if b in adj[a] and c in adj[a] and c in adj[b]:
            tri += 1
    triples = _open_triples(H)
    return 3 * tri / triples if triples else 0.0


def _graph_value(measure: MeasureKind, f: ScoreFunction, H: Hypergraph) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return graph_transitivity(H, f, measure, threads=1).value


def check_axiom(
    measure: MeasureKind | str,
    f: ScoreFunction | str,
    axiom: AxiomId | str,
    instance: AxiomInstance,
) -> Verdict:
    """Evaluate ``measure`` on ``instance`` and test the axiom's conclusion.

    Raises:
        InvalidInstanceError: the instance does not meet the axiom's hypothesis.
    """
    measure = MeasureKind.parse(measure)
    f = score_function(f)
    axiom = AxiomId.parse(axiom)
    validate_instance(axiom, instance)
    if axiom.graph_level:
        T = _graph_value(measure, f, instance.hypergraph)
        if axiom is AxiomId.A6:
            ref = triangle_transitivity(instance.hypergraph)
            ok = abs(T - ref) <= 1e-9
            values = {"T": T, "graph_transitivity": ref}
        else:
            ok = -TOL <= T <= 1 + TOL
            values = {"T": T}
        return Verdict(axiom, ok, 1, None if ok else instance, values)

    parts = instance.parts
    C = instance.C
    T = evaluate(measure, parts, C, f)
    values = {"T": T}
    if axiom is AxiomId.A1:
        disjoint = not any(parts.is_overlapping(e) for e in C)
        ok = (abs(T) <= TOL) == disjoint
        values["no_overlapping_candidate"] = disjoint
    elif axiom is AxiomId.A4:
        # "globally maximized": 1 for normalized measures, |P(w)| for the unnormalized sum
        top = float(parts.pair_count) if measure is MeasureKind.B9 else 1.0
        has_cover = any(parts.wings <= e for e in C)
        ok = not (abs(T - top) <= TOL) or has_cover
        values["maximum"] = top
        values["covering_candidate"] = has_cover
    elif axiom is AxiomId.A5:
        ok = -TOL <= T <= 1 + TOL
    else:
        T2 = evaluate(measure, parts, instance.C_prime, f)
        values["T_prime"] = T2
        if axiom in (AxiomId.A2_1, AxiomId.A3_1):
            ok = T <= T2 + TOL
        elif axiom is AxiomId.A2_2:
            ok = abs(T - T2) <= TOL
        else:
            ok = T2 - T > MARGIN
    return Verdict(axiom, ok, 1, None if ok else instance, values)


# random instance generation


def _random_wedge(rng: random.Random) -> tuple[frozenset[int], frozenset[int], list[int]]:
    nb = rng.randint(1, 3)
    nl = rng.randint(1, 4)
    nr = rng.randint(1, 4)
    nx = rng.randint(0, 12 - nb - nl - nr)
    nodes = list(range(nb + nl + nr + nx))
    rng.shuffle(nodes)
    body = nodes[:nb]
    left = nodes[nb : nb + nl]
    right = nodes[nb + nl : nb + nl + nr]
    return frozenset(body + left), frozenset(body + right), nodes


def _random_edge(rng: random.Random, parts: WedgeParts, universe: list[int]) -> frozenset[int]:
    mode = rng.randrange(6)
    wings = sorted(parts.wings)
    if mode == 0:
        e = set(wings)
    elif mode == 1:
        e = set(wings) | {v for v in universe if rng.random() < 0.2}
    elif mode == 2:
        e = {rng.choice(sorted(parts.left)), rng.choice(sorted(parts.right))}
    elif mode == 3:
        e = {v for v in wings if rng.random() < 0.5}
    else:
        p = rng.random()
        e = {v for v in universe if rng.random() < p}
    while len(e) < 2:
        e.add(rng.choice(universe))
    return frozenset(e)


def _non_overlapping_edge(rng: random.Random, parts: WedgeParts, universe: list[int]) -> frozenset[int]:
    avoid = parts.left if rng.random() < 0.5 else parts.right
    pool = [v for v in universe if v not in avoid]
    p = rng.random()
    e = {v for v in pool if rng.random() < p}
    while len(e) < 2:
        e.add(rng.choice(pool))
    return frozenset(e)


def _distinct_edges(rng, k, make, taken=()) -> list[frozenset[int]]:
    out: list[frozenset[int]] = []
    seen = set(taken)
    for _ in range(8 * k):
        if len(out) >= k:
            break
        e = make()
        if e not in seen:
            seen.add(e)
            out.append(e)
    return out


def _random_pairwise_graph(rng: random.Random) -> Hypergraph:
    """Erdos-Renyi graph with at least one wedge (redrawn until one exists)."""
    while True:
        n = rng.randint(3, 12)
        p = rng.uniform(0.1, 0.9)
        edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
        H = Hypergraph(edges, n) if edges else None
        if H is not None and _open_triples(H) > 0:
            return H


def _random_hypergraph(rng: random.Random) -> Hypergraph:
    n = rng.randint(3, 12)
    m = rng.randint(2, 12)
    edges = []
    for _ in range(m):
        s = rng.randint(2, min(n, 6))
        edges.append(rng.sample(range(n), s))
    return Hypergraph(edges, n).deduplicated()


def generate_instance(axiom: AxiomId | str, rng: random.Random) -> AxiomInstance | None:
    """Draw one random instance meeting the axiom's hypothesis (None if a draw failed)."""
    axiom = AxiomId.parse(axiom)
    if axiom is AxiomId.A6:
        return AxiomInstance(hypergraph=_random_pairwise_graph(rng))
    if axiom is AxiomId.A7:
        return AxiomInstance(hypergraph=_random_hypergraph(rng))
    ea, eb, universe = _random_wedge(rng)
    parts = WedgeParts.from_edges(ea, eb)
    rand = lambda: _random_edge(rng, parts, universe)
    quiet = lambda: _non_overlapping_edge(rng, parts, universe)
    k = rng.randint(1, 5)
    if axiom is AxiomId.A1:
        C = _distinct_edges(rng, k, quiet if rng.random() < 0.5 else rand)
        return AxiomInstance(ea, eb, tuple(C))
    if axiom in (AxiomId.A4, AxiomId.A5):
        return AxiomInstance(ea, eb, tuple(_distinct_edges(rng, k, rand)))
    if axiom in (AxiomId.A2_1, AxiomId.A2_2, AxiomId.A2_3):
        C = _distinct_edges(rng, rng.randint(1, 4), rand)
        j = rng.randint(1, 4)
        if axiom is AxiomId.A2_1:
            extra = _distinct_edges(rng, j, rand, C)
        elif axiom is AxiomId.A2_2:
            extra = _distinct_edges(rng, j, quiet, C)
        else:
            covered = set().union(*(_pairs_of(e, parts) for e in C))
            open_pairs = [p for p in parts.pairs() if p not in covered]
            if not open_pairs:
                return None
            l, r = rng.choice(open_pairs)
            e = {l, r} | {v for v in universe if rng.random() < rng.random()}
            first = frozenset(e)
            if first in C:
                return None
            extra = [first] + _distinct_edges(rng, j - 1, rand, C + [first])
        return AxiomInstance(ea, eb, tuple(C), tuple(C + extra))
    # A3
    C = _distinct_edges(rng, rng.randint(1, 4), rand)
    wings = sorted(parts.wings)
    pairs = []
    for e in C:
        missing = [v for v in wings if v not in e]
        if axiom is AxiomId.A3_1:
            g = e | {v for v in missing if rng.random() < 0.5}
        else:
            opts = [(l, r) for l, r in parts.pairs() if not (l in e and r in e)]
            if not opts:
                return None
            l, r = rng.choice(opts)
            g = e | {l, r} | {v for v in missing if rng.random() < 0.3}
        pairs.append((e, frozenset(g)))
    if len({g for _, g in pairs}) != len(pairs):
        return None
    return AxiomInstance(ea, eb, tuple(C), bijection=tuple(pairs))


def _safe_check(measure, f, axiom, inst) -> Verdict | None:
    try:
        return check_axiom(measure, f, axiom, inst)
    except (InvalidInstanceError, InvalidWedgeError):
        return None


def _shrink_steps(axiom: AxiomId, inst: AxiomInstance) -> Iterator[AxiomInstance]:
    if axiom.graph_level:
        H = inst.hypergraph
        edges = list(H.edges)
        for i in range(len(edges)):
            yield replace(inst, hypergraph=Hypergraph(edges[:i] + edges[i + 1 :], H.node_count))
        for v in sorted(set().union(*map(set, edges))):
            if axiom is AxiomId.A6:
                kept = [e for e in edges if v not in e]
            else:
                kept = [tuple(x for x in e if x != v) for e in edges]
            if kept:
                yield replace(inst, hypergraph=Hypergraph(kept, H.node_count).deduplicated())
        return
    if inst.bijection is not None:
        bij = list(inst.bijection)
        for i in range(len(bij)):
            yield replace(inst, bijection=tuple(bij[:i] + bij[i + 1 :]), candidates=())
    else:
        C = list(inst.candidates)
        Cp = None if inst.candidates_prime is None else list(inst.candidates_prime)
        for i, e in enumerate(C):
            newp = None if Cp is None else tuple(x for x in Cp if x != e)
            yield replace(inst, candidates=tuple(C[:i] + C[i + 1 :]), candidates_prime=newp)
        if Cp is not None:
            for e in Cp:
                if e not in C:
                    yield replace(inst, candidates_prime=tuple(x for x in Cp if x != e))
    nodes = set(inst.edge_a) | set(inst.edge_b)
    for e in inst.C + (inst.C_prime or ()):
        nodes |= e
    for v in sorted(nodes):
        drop = lambda s: frozenset(s - {v})
        bij = None
        if inst.bijection is not None:
            bij = tuple((drop(a), drop(b)) for a, b in inst.bijection)
        yield replace(
            inst,
            edge_a=drop(inst.edge_a),
            edge_b=drop(inst.edge_b),
            candidates=tuple(drop(e) for e in inst.candidates),
            candidates_prime=None
            if inst.candidates_prime is None
            else tuple(drop(e) for e in inst.candidates_prime),
            bijection=bij,
        )


def shrink(
    measure: MeasureKind | str, f: ScoreFunction | str, axiom: AxiomId | str, inst: AxiomInstance
) -> AxiomInstance:
    """Greedily drop candidates, hyperedges and nodes while the violation persists."""
    measure = MeasureKind.parse(measure)
    f = score_function(f)
    axiom = AxiomId.parse(axiom)
    progress = True
    while progress:
        progress = False
        for cand in _shrink_steps(axiom, inst):
            v = _safe_check(measure, f, axiom, cand)
            if v is not None and not v.satisfied:
                inst = cand
                progress = True
                break
    return inst


def _iter_instances(axiom: AxiomId, trials: int, seed: int) -> Iterator[AxiomInstance]:
    rng = random.Random(f"{seed}:{axiom.value}")
    if axiom is AxiomId.A6:
        yield AxiomInstance(hypergraph=Hypergraph([(0, 1), (0, 2), (1, 2)]), label="K3")
        trials -= 1
    produced = 0
    attempts = 0
    while produced < trials and attempts < 50 * trials:
        attempts += 1
        inst = generate_instance(axiom, rng)
        if inst is None:
            continue
        try:
            validate_instance(axiom, inst)
        except InvalidInstanceError:
            continue
        produced += 1
        yield inst


def search_counterexample(
    measure: MeasureKind | str,
    f: ScoreFunction | str,
    axiom: AxiomId | str,
    trials: int = 1000,
    seed: int = 0,
    shrink_witness: bool = True,
) -> AxiomInstance | None:
    """Return a (shrunk) violating instance found within ``trials`` draws, or None."""
    v = search(measure, f, axiom, trials, seed, shrink_witness)
    return v.witness


def search(
    measure: MeasureKind | str,
    f: ScoreFunction | str,
    axiom: AxiomId | str,
    trials: int = 1000,
    seed: int = 0,
    shrink_witness: bool = True,
) -> Verdict:
    """Randomized conformance run; returns a Verdict with the number of trials used."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    measure = MeasureKind.parse(measure)
    f = score_function(f)
    axiom = AxiomId.parse(axiom)
    n = 0
    for inst in _iter_instances(axiom, trials, seed):
        n += 1
        v = check_axiom(measure, f, axiom, inst)
        if not v.satisfied:
            if shrink_witness:
                inst = shrink(measure, f, axiom, inst)
                v = check_axiom(measure, f, axiom, inst)
            return Verdict(axiom, False, n, inst, v.values)
    return Verdict(axiom, True, n)


# fixtures: the hyperwedge {1,2,3},{3,4,5} and fifteen named hyperedges

FIXTURE_WEDGE = (frozenset({1, 2, 3}), frozenset({3, 4, 5}))
FIXTURE_EDGES: dict[str, frozenset[int]] = {
    "e1": frozenset({1, 2}),
    "e2": frozenset({1, 3}),
    "e3": frozenset({1, 4}),
    "e4": frozenset({1, 5}),
    "e5": frozenset({2, 4}),
    "e6": frozenset({2, 5}),
    "e7": frozenset({1, 3, 4}),
    "e8": frozenset({1, 2, 4}),
    "e9": frozenset({1, 2, 5}),
    "e10": frozenset({1, 4, 5}),
    "e11": frozenset({2, 4, 5}),
    "e12": frozenset({1, 2, 3, 4}),
    "e13": frozenset({1, 2, 3, 5}),
    "e14": frozenset({1, 3, 4, 5}),
    "e15": frozenset({2, 3, 4, 5}),
}


def _E(*names: "str | frozenset[int]") -> tuple[frozenset[int], ...]:
    return tuple(FIXTURE_EDGES[n] if isinstance(n, str) else n for n in names)


def _fx(axiom, C=(), Cp=None, bij=None, label="", graph=None, targets=()):
    if graph is not None:
        inst = AxiomInstance(hypergraph=graph, label=label)
    else:
        bijection = None
        if bij is not None:
            bijection = tuple((FIXTURE_EDGES[a], FIXTURE_EDGES[b]) for a, b in bij)
        inst = AxiomInstance(
            FIXTURE_WEDGE[0],
            FIXTURE_WEDGE[1],
            _E(*C) if bijection is None else tuple(p[0] for p in bijection),
            None if Cp is None else _E(*Cp),
            bijection,
            label=label,
        )
    return (AxiomId.parse(axiom), inst, frozenset(MeasureKind.parse(t) for t in targets))


def fixtures() -> list[tuple[AxiomId, AxiomInstance, frozenset[MeasureKind]]]:
    """All hand-built counterexamples as (axiom, instance, measures they target)."""
    B = MeasureKind
    return [
        _fx("A1", ["e1"], label="A1 {e1}", targets=[B.B1]),
        _fx("A1", ["e7"], label="A1 {e7}", targets=[B.B5]),
        _fx("A1", ["e3"], label="A1 {e3}", targets=[B.B6]),
        _fx("A2.2", ["e3"], ["e1", "e3"], label="A2.2 {e3} -> {e1,e3}", targets=[B.B1, B.B3, B.B7]),
        _fx("A2.1", ["e3"], ["e1", "e3"], label="A2.1 {e3} -> {e1,e3}", targets=[B.B3, B.B7]),
        _fx("A2.3", ["e4"], ["e4", "e7"], label="A2.3 {e4} -> {e4,e7}", targets=[B.B5]),
        _fx("A2.3", ["e7"], ["e4", "e7"], label="A2.3 {e7} -> {e4,e7}", targets=[B.B6]),
        _fx("A2.3", ["e8"], ["e4", "e8"], label="A2.3 {e8} -> {e4,e8}", targets=[B.B8]),
        _fx("A2.3", ["e3", "e6"], ["e3", "e4", "e6"], label="A2.3 {e3,e6} -> {e3,e4,e6}", targets=[B.B4]),
        _fx("A3.2", bij=[("e3", "e10"), ("e6", "e9")], label="A3.2 {e3,e6} -> {e10,e9}", targets=[B.B1, B.B4]),
        _fx(
            "A3.2",
            bij=[("e3", "e10"), ("e4", "e9"), ("e5", "e8"), ("e6", "e11")],
            label="A3.2 {e3..e6} -> {e8..e11}",
            targets=[B.B2],
        ),
        _fx("A3.2", bij=[("e3", "e8")], label="A3.2 {e3} -> {e8}", targets=[B.B3, B.B6]),
        _fx("A3.2", bij=[("e2", "e7")], label="A3.2 {e2} -> {e7}", targets=[B.B5]),
        _fx("A4", ["e3", "e6"], label="A4 {e3,e6}", targets=[B.B1, B.B4]),
        _fx("A4", ["e3", "e4", "e5", "e6"], label="A4 {e3..e6}", targets=[B.B2]),
        _fx("A4", ["e3"], label="A4 {e3}", targets=[B.B3]),
        _fx("A4", ["e8", "e9", "e10", "e11"], label="A4 {e8..e11}", targets=[B.B5]),
        _fx("A4", ["e12", "e13", "e14", "e15"], label="A4 {e12..e15}", targets=[B.B6]),
        _fx("A5", [frozenset({1, 2, 4, 5})], label="A5 {1,2,4,5}", targets=[B.B9]),
        _fx("A6", label="A6 triangle", graph=Hypergraph([(1, 2), (1, 3), (2, 3)]), targets=[B.B6]),
        _fx(
            "A7",
            label="A7 {1,2,3},{3,4,5},{1,2,4,5}",
            graph=Hypergraph([(1, 2, 3), (3, 4, 5), (1, 2, 4, 5)]),
            targets=[B.B9],
        ),
    ]


@dataclass(frozen=True)
class FixtureVerdict:
    label: str
    targeted: bool
    verdict: Verdict


def fixture_suite(measure: MeasureKind | str, f: ScoreFunction | str = PENALIZED) -> list[FixtureVerdict]:
    """Replay every fixture against ``measure``."""
    measure = MeasureKind.parse(measure)
    f = score_function(f)
    out = []
    for axiom, inst, targets in fixtures():
        out.append(FixtureVerdict(inst.label, measure in targets, check_axiom(measure, f, axiom, inst)))
    return out


def violated_axioms(verdicts: Iterable[Verdict | FixtureVerdict]) -> frozenset[int]:
    """Axiom numbers with at least one violated verdict."""
    out = set()
    for v in verdicts:
        v = v.verdict if isinstance(v, FixtureVerdict) else v
        if not v.satisfied:
            out.add(v.axiom.top)
    return frozenset(out)


def conformance_table(
    measure: MeasureKind | str,
    f: ScoreFunction | str = PENALIZED,
    trials: int = 1000,
    seed: int = 0,
) -> dict:
    """Fixture replay plus randomized search for every axiom case, shaped like one row of the conformance table."""
    measure = MeasureKind.parse(measure)
    f = score_function(f)
    fx = fixture_suite(measure, f)
    cases = {}
    for axiom in AxiomId:
        fixture_hits = [x for x in fx if x.verdict.axiom is axiom and not x.verdict.satisfied]
        searched = search(measure, f, axiom, trials, seed)
        cases[axiom.value] = {
            "fixtures_violated": [x.label for x in fixture_hits],
            "search": searched.to_dict(),
            "violated": bool(fixture_hits) or not searched.satisfied,
        }
    row = {}
    for top in range(1, 8):
        row[str(top)] = "fail" if any(
            c["violated"] for k, c in cases.items() if AxiomId.parse(k).top == top
        ) else "pass"
    expected = EXPECTED_VIOLATIONS[measure]
    observed = frozenset(int(k) for k, v in row.items() if v == "fail")
    return {
        "schema": "hypertrans.axioms/1",
        "measure": measure.value,
        "score": f.label,
        "trials": trials,
        "seed": seed,
        "row": row,
        "expected_violations": sorted(expected),
        "observed_violations": sorted(observed),
        "missing_expected": sorted(expected - observed),
        "unexpected": sorted(observed - expected),
        "cases": cases,
    }
