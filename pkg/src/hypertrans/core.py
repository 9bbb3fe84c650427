"""Hypergraph container, input parsing, hyperwedge enumeration and candidate lookup.

Hyperedges are stored as sorted tuples of dense non-negative node ids.  The
node-to-hyperedge incidence index and the CSR arrays used by the compiled
kernels are built lazily on first use, so generators can return very large
hypergraphs cheaply.
"""

from __future__ import annotations

import io
import os
import re
from dataclasses import dataclass
from itertools import chain
from typing import IO, Any, Iterable, Iterator, NamedTuple, Sequence, Union

import numpy as np

from .errors import EmptyHypergraphError, InvalidWedgeError, ParseError

__all__ = [
    "Hypergraph",
    "Hyperwedge",
    "WedgeParts",
    "CSRArrays",
    "load_hypergraph",
    "parse_edge_list",
    "write_edge_list",
    "enumerate_hyperwedges",
    "wedge_parts",
    "overlapping_candidates",
    "touching_candidates",
    "wedge_selected",
]

Source = Union[str, "os.PathLike[str]", IO[str], IO[bytes]]

_TOKEN_SPLIT = re.compile(r"[\s,]+")
_MASK64 = (1 << 64) - 1


class CSRArrays(NamedTuple):
    """Compressed edge->node and node->edge adjacency used by compiled kernels."""

    edge_ptr: np.ndarray
    edge_nodes: np.ndarray
    node_ptr: np.ndarray
    node_edges: np.ndarray


class Hypergraph:
    """Immutable hypergraph over nodes ``0 .. node_count - 1``.

    Args:
        edges: Iterable of node-id collections. Each is stored as a sorted tuple
            of distinct ids. Duplicates and small edges are kept as given; use
            :meth:`deduplicated` for the cleaned form used in analysis.
        node_count: Size of the declared node universe. Defaults to one more
            than the largest id that occurs.
        labels: Optional original label for every dense node id.
        metadata: Free-form information carried alongside (generator settings,
            levels, clamp counters, ...).
    """

    __slots__ = ("_edges", "_node_count", "_labels", "metadata", "_sets", "_incidence", "_csr")

    def __init__(
        self,
        edges: Iterable[Iterable[int]],
        node_count: int | None = None,
        *,
        labels: Sequence[Any] | None = None,
        metadata: dict[str, Any] | None = None,
    ):
        stored = []
        max_id = -1
        for e in edges:
            t = tuple(sorted(set(e)))
            if not t:
                raise ValueError("hyperedges must be non-empty")
            if t[0] < 0:
                raise ValueError(f"negative node id {t[0]}")
            if t[-1] > max_id:
                max_id = t[-1]
            stored.append(t)
        self._init(tuple(stored), max_id, node_count, labels, metadata)

    def _init(self, edges, max_id, node_count, labels, metadata):
        if node_count is None:
            node_count = max_id + 1
        elif node_count < max_id + 1:
            raise ValueError(f"node_count={node_count} but node id {max_id} occurs")
        if labels is not None and len(labels) != node_count:
            raise ValueError("labels must have one entry per node")
        self._edges = edges
        self._node_count = int(node_count)
        self._labels = tuple(labels) if labels is not None else None
        self.metadata = dict(metadata) if metadata else {}
        self._sets = None
        self._incidence = None
        self._csr = None

    @classmethod
    def from_sorted(
        cls,
        edges: Sequence[tuple[int, ...]],
        node_count: int,
        *,
        metadata: dict[str, Any] | None = None,
    ) -> "Hypergraph":
        """Wrap edges that are already sorted tuples of distinct ids (no copying or checks)."""
        obj = cls.__new__(cls)
        obj._init(tuple(edges), node_count - 1, node_count, None, metadata)
        return obj

    # basic accessors

    @property
    def node_count(self) -> int:
        """Declared size of the node universe (isolated ids included)."""
        return self._node_count

    @property
    def used_node_count(self) -> int:
        """Number of nodes that belong to at least one hyperedge."""
        return int(np.count_nonzero(self.degrees()))

    @property
    def edges(self) -> tuple[tuple[int, ...], ...]:
        return self._edges

    @property
    def labels(self) -> tuple[Any, ...] | None:
        return self._labels

    def label(self, v: int) -> Any:
        return self._labels[v] if self._labels is not None else v

    def __len__(self) -> int:
        return len(self._edges)

    def __repr__(self) -> str:
        return f"Hypergraph(node_count={self._node_count}, edges={len(self._edges)})"

    def edge(self, i: int) -> frozenset[int]:
        return self.edge_sets[i]

    @property
    def edge_sets(self) -> list[frozenset[int]]:
        if self._sets is None:
            self._sets = [frozenset(e) for e in self._edges]
        return self._sets

    @property
    def incidence(self) -> list[list[int]]:
        """incidence[v] is the ascending list of hyperedge indices containing v."""
        if self._incidence is None:
            inc: list[list[int]] = [[] for _ in range(self._node_count)]
            for i, e in enumerate(self._edges):
                for v in e:
                    inc[v].append(i)
            self._incidence = inc
        return self._incidence

    def degrees(self) -> np.ndarray:
        csr = self.csr()
        return np.diff(csr.node_ptr)

    def sizes(self) -> np.ndarray:
        return np.fromiter((len(e) for e in self._edges), dtype=np.int64, count=len(self._edges))

    def csr(self) -> CSRArrays:
        if self._csr is None:
            sizes = self.sizes()
            edge_ptr = np.zeros(len(sizes) + 1, dtype=np.int64)
            np.cumsum(sizes, out=edge_ptr[1:])
            total = int(edge_ptr[-1])
            edge_nodes = np.fromiter(chain.from_iterable(self._edges), dtype=np.int64, count=total)
            owner = np.repeat(np.arange(len(sizes), dtype=np.int64), sizes)
            order = np.argsort(edge_nodes, kind="stable")
            node_edges = owner[order]
            counts = np.bincount(edge_nodes, minlength=self._node_count)
            node_ptr = np.zeros(self._node_count + 1, dtype=np.int64)
            np.cumsum(counts, out=node_ptr[1:])
            self._csr = CSRArrays(edge_ptr, edge_nodes, node_ptr, node_edges)
        return self._csr

    def is_pairwise(self) -> bool:
        return all(len(e) == 2 for e in self._edges)

    # derived hypergraphs

    def deduplicated(self) -> "Hypergraph":
        """Drop hyperedges of size < 2 and repeated hyperedges (first occurrence kept)."""
        seen: set[tuple[int, ...]] = set()
        kept = []
        for e in self._edges:
            if len(e) < 2 or e in seen:
                continue
            seen.add(e)
            kept.append(e)
        return Hypergraph.from_sorted(kept, self._node_count, metadata=self.metadata)._with_labels(self._labels)

    def compacted(self) -> "Hypergraph":
        """Relabel used nodes to ``0 .. k-1`` in id order; originals go to ``labels``."""
        used = sorted(set(chain.from_iterable(self._edges)))
        remap = {v: i for i, v in enumerate(used)}
        edges = [tuple(remap[v] for v in e) for e in self._edges]
        labels = [self.label(v) for v in used]
        out = Hypergraph.from_sorted(edges, len(used), metadata=self.metadata)
        return out._with_labels(labels)

    def _with_labels(self, labels):
        self._labels = tuple(labels) if labels is not None else None
        return self

    def counts(self) -> dict[str, int]:
        return {
            "declared_nodes": self.node_count,
            "used_nodes": self.used_node_count,
            "hyperedges": len(self),
        }


class Hyperwedge(NamedTuple):
    """Unordered pair of hyperedge indices, stored with ``edge_a < edge_b``."""

    edge_a: int
    edge_b: int


@dataclass(frozen=True)
class WedgeParts:
    """Left wing, right wing and body of a hyperwedge."""

    left: frozenset[int]
    right: frozenset[int]
    body: frozenset[int]

    @classmethod
    def from_edges(cls, edge_a: Iterable[int], edge_b: Iterable[int]) -> "WedgeParts":
        a = frozenset(edge_a)
        b = frozenset(edge_b)
        body = a & b
        if not body:
            raise InvalidWedgeError("hyperedges do not intersect")
        left = a - b
        right = b - a
        if not left or not right:
            raise InvalidWedgeError("one hyperedge contains the other")
        return cls(left, right, body)

    @property
    def pair_count(self) -> int:
        return len(self.left) * len(self.right)

    @property
    def wings(self) -> frozenset[int]:
        return self.left | self.right

    def pairs(self) -> Iterator[tuple[int, int]]:
        """Every (left node, right node) pair, in ascending order."""
        right = sorted(self.right)
        for l in sorted(self.left):
            for r in right:
                yield (l, r)

    def swapped(self) -> "WedgeParts":
        return WedgeParts(self.right, self.left, self.body)

    def is_overlapping(self, e: Iterable[int]) -> bool:
        e = e if isinstance(e, (set, frozenset)) else frozenset(e)
        return not self.left.isdisjoint(e) and not self.right.isdisjoint(e)


def _mix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def sample_threshold(rate: float) -> int:
    """64-bit threshold below which a hashed wedge key is kept."""
    if not 0.0 < rate <= 1.0:
        raise ValueError("sample rate must be in (0, 1]")
    return min(_MASK64, int(rate * 2.0**64))


def wedge_selected(a: int, b: int, threshold: int, seed: int) -> bool:
    """Seeded, order-free sampling decision for the wedge (a, b).

    The decision is a pure function of (seed, a, b), so every engine and every
    partition of the enumeration samples the same wedges.
    """
    x = _mix64(seed & _MASK64)
    x = _mix64(x ^ a)
    x = _mix64(x ^ b)
    return x < threshold


def enumerate_hyperwedges(
    H: Hypergraph, sample_rate: float = 1.0, seed: int = 0
) -> Iterator[Hyperwedge]:
    """Yield every hyperwedge of ``H`` once, as ``Hyperwedge(a, b)`` with ``a < b``.

    Only hyperedge pairs that share a node are examined, found through the
    incidence index. With ``sample_rate < 1`` each wedge is kept independently
    with that probability (see :func:`wedge_selected`).
    """
    sets = H.edge_sets
    inc = H.incidence
    threshold = sample_threshold(sample_rate) if sample_rate < 1.0 else None
    for a, ea in enumerate(sets):
        na = len(ea)
        seen: set[int] = set()
        for v in H.edges[a]:
            for b in inc[v]:
                if b <= a or b in seen:
                    continue
                seen.add(b)
                eb = sets[b]
                k = len(ea & eb)
                if k < na and k < len(eb):
                    if threshold is None or wedge_selected(a, b, threshold, seed):
                        yield Hyperwedge(a, b)


def wedge_parts(H: Hypergraph, w: tuple[int, int]) -> WedgeParts:
    """Wings and body of the wedge formed by hyperedges ``w[0]`` and ``w[1]``."""
    a, b = w
    if a == b:
        raise InvalidWedgeError("a hyperwedge needs two distinct hyperedges")
    if a > b:
        a, b = b, a
    return WedgeParts.from_edges(H.edge_sets[a], H.edge_sets[b])


def _edges_touching(H: Hypergraph, nodes: Iterable[int]) -> set[int]:
    inc = H.incidence
    out: set[int] = set()
    for v in nodes:
        out.update(inc[v])
    return out


def overlapping_candidates(
    H: Hypergraph, parts: WedgeParts, exclude: Iterable[int] = ()
) -> frozenset[int]:
    """Indices of hyperedges that touch both wings, minus ``exclude``."""
    small, large = (parts.left, parts.right)
    if len(small) > len(large):
        small, large = large, small
    found = _edges_touching(H, small)
    if not found:
        return frozenset()
    inc = H.incidence
    hits: set[int] = set()
    for v in large:
        for e in inc[v]:
            if e in found:
                hits.add(e)
    return frozenset(hits.difference(exclude))


def touching_candidates(
    H: Hypergraph, parts: WedgeParts, exclude: Iterable[int] = ()
) -> frozenset[int]:
    """Indices of hyperedges that touch at least one wing, minus ``exclude``."""
    return frozenset(_edges_touching(H, parts.wings).difference(exclude))


# input / output


def _open_text(source: Source) -> tuple[IO[str], str | None, bool]:
    if isinstance(source, (str, os.PathLike)):
        path = os.fspath(source)
        return open(path, "r", encoding="utf-8"), path, True
    if isinstance(source, io.TextIOBase):
        return source, getattr(source, "name", None), False
    if hasattr(source, "read"):
        data = source.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        return io.StringIO(data), getattr(source, "name", None), False
    raise TypeError(f"unsupported source type {type(source).__name__}")


def _parse_ints(line: str, lineno: int, path: str | None) -> list[int]:
    out = []
    for tok in _TOKEN_SPLIT.split(line.strip()):
        if not tok:
            continue
        try:
            v = int(tok)
        except ValueError:
            raise ParseError(f"not an integer node id: {tok!r}", lineno, path) from None
        if v < 0:
            raise ParseError(f"negative node id: {v}", lineno, path)
        out.append(v)
    return out


def parse_edge_list(lines: Iterable[str], path: str | None = None) -> list[list[int]]:
    """Parse edge-list text: one hyperedge per line, ids split by whitespace or commas."""
    edges = []
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        edges.append(_parse_ints(stripped, lineno, path))
    return edges


def _nverts_paths(source: Any) -> tuple[Any, Any]:
    if isinstance(source, (tuple, list)) and len(source) == 2:
        return source[0], source[1]
    path = os.fspath(source)
    for suffix in ("-nverts.txt", "-simplices.txt"):
        if path.endswith(suffix):
            path = path[: -len(suffix)]
            break
    return path + "-nverts.txt", path + "-simplices.txt"


def _parse_nverts(nverts_src: Any, simplices_src: Any) -> list[list[int]]:
    fh, npath, close_n = _open_text(nverts_src)
    try:
        sizes = []
        for lineno, line in enumerate(fh, start=1):
            vals = _parse_ints(line, lineno, npath) if line.strip() else []
            if not vals:
                continue
            if len(vals) != 1:
                raise ParseError("expected one size per line", lineno, npath)
            sizes.append((vals[0], lineno))
    finally:
        if close_n:
            fh.close()
    sh, spath, close_s = _open_text(simplices_src)
    try:
        stream: list[tuple[int, int]] = []
        for lineno, line in enumerate(sh, start=1):
            if line.strip().startswith("#"):
                continue
            stream.extend((v, lineno) for v in _parse_ints(line, lineno, spath))
    finally:
        if close_s:
            sh.close()
    edges = []
    pos = 0
    for size, lineno in sizes:
        if pos + size > len(stream):
            raise ParseError(
                f"simplices stream ends before hyperedge of size {size}", lineno, npath
            )
        edges.append([v for v, _ in stream[pos : pos + size]])
        pos += size
    if pos != len(stream):
        raise ParseError("simplices stream has vertices left over", stream[pos][1], spath)
    return edges


def load_hypergraph(
    source: Any,
    format: str = "edge-list",
    dedupe: bool = True,
    compact: bool = False,
) -> Hypergraph:
    """Load a hypergraph from disk or a stream.

    Args:
        source: Path or open stream. For ``nverts-simplices`` pass the common
            prefix (or either file name), or a pair of streams/paths.
        format: ``"edge-list"`` or ``"nverts-simplices"``.
        dedupe: Drop singleton and repeated hyperedges.
        compact: Relabel used node ids densely; originals kept in ``labels``.

    Raises:
        ParseError: a line does not parse (carries the line number).
        EmptyHypergraphError: nothing usable remains.
    """
    where = str(source) if isinstance(source, (str, os.PathLike)) else "<stream>"
    if format == "edge-list":
        fh, path, close = _open_text(source)
        try:
            raw = parse_edge_list(fh, path)
        finally:
            if close:
                fh.close()
    elif format in ("nverts-simplices", "nverts"):
        raw = _parse_nverts(*_nverts_paths(source))
    else:
        raise ValueError(f"unknown format {format!r}")
    raw = [e for e in raw if e]
    if not raw:
        raise EmptyHypergraphError(f"{where}: input contains no hyperedges")
    H = Hypergraph(raw)
    if dedupe:
        H = H.deduplicated()
        if len(H) == 0:
            raise EmptyHypergraphError(f"{where}: no hyperedge with two or more nodes")
    if compact:
        H = H.compacted()
    return H


def write_edge_list(H: Hypergraph, target: Any, use_labels: bool = True) -> None:
    """Write one hyperedge per line, ids separated by single spaces."""
    close = False
    if isinstance(target, (str, os.PathLike)):
        target = open(os.fspath(target), "w", encoding="utf-8")
        close = True
    try:
        if use_labels and H.labels is not None:
            for e in H.edges:
                target.write(" ".join(str(H.label(v)) for v in e) + "\n")
        else:
            target.writelines(" ".join(map(str, e)) + "\n" for e in H.edges)
    finally:
        if close:
            target.close()
