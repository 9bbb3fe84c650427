"""Group-interaction score functions and a randomized checker for the six goodness properties.

A score function maps a hyperwedge (given by its :class:`WedgeParts`) and a
hyperedge to a number that says how strongly the hyperedge connects the two
wings.  Two built-in functions are provided:

* ``coverage``: fraction of wing pairs the hyperedge covers.
* ``penalized``: the same numerator, but every node of the hyperedge that lies
  outside the wings enlarges both denominators.  This is the default.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass, field
from typing import AbstractSet, Callable, Iterable

from .core import WedgeParts

__all__ = [
    "ScoreFunction",
    "GoodnessReport",
    "PropertyVerdict",
    "GoodnessCounterexample",
    "COVERAGE",
    "PENALIZED",
    "f_coverage",
    "f_penalized",
    "score_function",
    "custom_score",
    "check_goodness",
    "PROPERTY_NAMES",
]

TOL = 1e-12


def _as_set(e: Iterable[int]) -> AbstractSet[int]:
    return e if isinstance(e, (set, frozenset)) else frozenset(e)


def f_coverage(parts: WedgeParts, e: Iterable[int]) -> float:
    """|L∩e|·|R∩e| / (|L|·|R|)."""
    e = _as_set(e)
    nl = len(parts.left & e)
    nr = len(parts.right & e)
    if not nl or not nr:
        return 0.0
    return (nl * nr) / (len(parts.left) * len(parts.right))


def f_penalized(parts: WedgeParts, e: Iterable[int]) -> float:
    """|L∩e|·|R∩e| / (|L ∪ (e∖R)|·|R ∪ (e∖L)|)."""
    e = _as_set(e)
    nl = len(parts.left & e)
    nr = len(parts.right & e)
    if not nl or not nr:
        return 0.0
    # nodes of e outside both wings enlarge both denominators
    outside = len(e) - nl - nr
    return (nl * nr) / ((len(parts.left) + outside) * (len(parts.right) + outside))


@dataclass(frozen=True)
class ScoreFunction:
    """A named score function.

    ``kind`` is ``"coverage"``, ``"penalized"`` or ``"custom"``. The compiled
    graph-level kernels only understand the two built-in kinds; custom
    functions always run on the pure-Python path. ``good`` records the outcome
    of the goodness gate (None if it was never run).
    """

    kind: str
    evaluator: Callable[[WedgeParts, AbstractSet[int]], float] = field(compare=False)
    name: str = ""
    good: bool | None = None

    def __call__(self, parts: WedgeParts, e: Iterable[int]) -> float:
        return self.evaluator(parts, _as_set(e))

    @property
    def builtin(self) -> bool:
        return self.kind in ("coverage", "penalized")

    @property
    def label(self) -> str:
        return self.name or self.kind


COVERAGE = ScoreFunction("coverage", f_coverage, "coverage", good=True)
PENALIZED = ScoreFunction("penalized", f_penalized, "penalized", good=True)


def score_function(name: str | ScoreFunction) -> ScoreFunction:
    """Look up a built-in score function by name."""
    if isinstance(name, ScoreFunction):
        return name
    key = name.lower()
    if key == "coverage":
        return COVERAGE
    if key == "penalized":
        return PENALIZED
    raise ValueError(f"unknown score function {name!r} (expected coverage or penalized)")


def custom_score(
    fn: Callable[[WedgeParts, AbstractSet[int]], float],
    name: str = "custom",
    trials: int = 2000,
    seed: int = 0,
) -> ScoreFunction:
    """Wrap a user function and run it through the goodness gate.

    A function that fails any property is still returned, but with
    ``good=False`` and a warning; measures computed with it are flagged.
    """
    candidate = ScoreFunction("custom", fn, name)
    report = check_goodness(candidate, trials=trials, seed=seed)
    if not report.all_pass:
        failed = ", ".join(str(p) for p in report.failed)
        warnings.warn(
            f"score function {name!r} fails goodness properties {failed}; "
            "transitivity guarantees do not apply",
            stacklevel=2,
        )
    return ScoreFunction("custom", fn, name, good=report.all_pass)


# goodness checking

PROPERTY_NAMES = {
    1: "range within [0, 1]",
    2: "overlapping edge scores above zero",
    3: "score one implies both wings inside the edge",
    4: "edge equal to both wings scores one",
    5: "adding wing nodes never lowers the score",
    6: "adding wing nodes to an overlapping result strictly raises the score",
}


@dataclass(frozen=True)
class GoodnessCounterexample:
    """A concrete input on which a property fails."""

    prop: int
    parts: WedgeParts
    e: frozenset[int]
    e_prime: frozenset[int] | None
    values: tuple[float, ...]

    def replay(self, f: ScoreFunction) -> bool:
        """True if ``f`` still violates the property on this input."""
        return _violates(self.prop, f, self.parts, self.e, self.e_prime) is not None


@dataclass(frozen=True)
class PropertyVerdict:
    prop: int
    holds: bool
    checked: int
    counterexample: GoodnessCounterexample | None = None


@dataclass(frozen=True)
class GoodnessReport:
    function: str
    trials: int
    seed: int
    verdicts: dict[int, PropertyVerdict]

    @property
    def all_pass(self) -> bool:
        return all(v.holds for v in self.verdicts.values())

    @property
    def failed(self) -> list[int]:
        return [p for p, v in sorted(self.verdicts.items()) if not v.holds]

    def to_dict(self) -> dict:
        return {
            "function": self.function,
            "trials": self.trials,
            "seed": self.seed,
            "properties": {
                str(p): {
                    "description": PROPERTY_NAMES[p],
                    "holds": v.holds,
                    "counterexample": None
                    if v.counterexample is None
                    else {
                        "left": sorted(v.counterexample.parts.left),
                        "right": sorted(v.counterexample.parts.right),
                        "body": sorted(v.counterexample.parts.body),
                        "e": sorted(v.counterexample.e),
                        "e_prime": None
                        if v.counterexample.e_prime is None
                        else sorted(v.counterexample.e_prime),
                        "values": list(v.counterexample.values),
                    },
                }
                for p, v in sorted(self.verdicts.items())
            },
        }


def _violates(prop, f, parts, e, e_prime):
    """Return the observed values if the property's conclusion fails, else None."""
    wings = parts.wings
    v = f(parts, e)
    if prop == 1:
        return None if (math.isfinite(v) and 0.0 <= v <= 1.0) else (v,)
    if prop == 2:
        if parts.is_overlapping(e) and not v > 0.0:
            return (v,)
        return None
    if prop == 3:
        if abs(v - 1.0) <= TOL and not wings <= e:
            return (v,)
        return None
    if prop == 4:
        if e == wings and not abs(v - 1.0) <= TOL:
            return (v,)
        return None
    v2 = f(parts, e_prime)
    if prop == 5:
        return None if v <= v2 + TOL else (v, v2)
    if prop == 6:
        return None if v2 - v > TOL else (v, v2)
    raise ValueError(f"unknown property {prop}")


def _random_parts(rng: random.Random) -> tuple[WedgeParts, list[int]]:
    nl = rng.randint(1, 6)
    nr = rng.randint(1, 6)
    nb = rng.randint(1, 3)
    nx = rng.randint(0, 20 - nl - nr - nb)
    nodes = list(range(nl + nr + nb + nx))
    rng.shuffle(nodes)
    left = frozenset(nodes[:nl])
    right = frozenset(nodes[nl : nl + nr])
    body = frozenset(nodes[nl + nr : nl + nr + nb])
    return WedgeParts(left, right, body), nodes


def _coin_edge(rng: random.Random, universe: list[int]) -> set[int]:
    density = rng.random()
    e = {v for v in universe if rng.random() < density}
    if not e:
        e.add(rng.choice(universe))
    return e


def _sample(prop, rng, parts, universe):
    """Draw (e, e') honoring the hypothesis of ``prop``; e' is None for 1-4."""
    wings = sorted(parts.wings)
    if prop == 1:
        return frozenset(_coin_edge(rng, universe)), None
    if prop == 2:
        e = _coin_edge(rng, universe)
        e.add(rng.choice(sorted(parts.left)))
        e.add(rng.choice(sorted(parts.right)))
        return frozenset(e), None
    if prop == 3:
        mode = rng.randrange(3)
        e = _coin_edge(rng, universe)
        if mode == 0:
            e |= parts.wings
        elif mode == 1:
            e = set(parts.wings)
            e.discard(rng.choice(wings))
            if not e:
                e.add(rng.choice(universe))
        return frozenset(e), None
    if prop == 4:
        return parts.wings, None
    e = _coin_edge(rng, universe)
    missing = [v for v in wings if v not in e]
    if prop == 5:
        extra = {v for v in missing if rng.random() < 0.5}
        return frozenset(e), frozenset(e | extra)
    # prop 6: e' strictly larger, the added nodes are wing nodes and e' overlaps both wings
    if not missing:
        e.discard(rng.choice(wings))
        if not e:
            e.add(rng.choice([v for v in universe if v not in parts.wings] or wings))
        missing = [v for v in wings if v not in e]
    extra = {v for v in missing if rng.random() < 0.5}
    if not extra:
        extra.add(rng.choice(missing))
    e2 = e | extra
    if parts.left.isdisjoint(e2):
        e2.add(rng.choice(sorted(parts.left)))
    if parts.right.isdisjoint(e2):
        e2.add(rng.choice(sorted(parts.right)))
    return frozenset(e), frozenset(e2)


def check_goodness(f: ScoreFunction | Callable, trials: int = 10_000, seed: int = 0) -> GoodnessReport:
    """Test Properties 1-6 on ``trials`` random instances each.

    Instances use at most 20 nodes, wings of 1-6 nodes and a body of 1-3
    nodes. Each property gets its own hypothesis-honoring sampler. The first
    failing instance is kept as a replayable counterexample.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if not isinstance(f, ScoreFunction):
        f = ScoreFunction("custom", f, getattr(f, "__name__", "custom"))
    verdicts = {}
    for prop in range(1, 7):
        rng = random.Random(f"{seed}:{prop}")
        found = None
        done = 0
        for _ in range(trials):
            parts, universe = _random_parts(rng)
            e, e2 = _sample(prop, rng, parts, universe)
            done += 1
            bad = _violates(prop, f, parts, e, e2)
            if bad is not None:
                found = GoodnessCounterexample(prop, parts, e, e2, bad)
                break
        verdicts[prop] = PropertyVerdict(prop, found is None, done, found)
    return GoodnessReport(f.label, trials, seed, verdicts)
