import io
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from hypertrans.core import (
    Hypergraph,
    Hyperwedge,
    enumerate_hyperwedges,
    load_hypergraph,
    overlapping_candidates,
    parse_edge_list,
    sample_threshold,
    touching_candidates,
    wedge_parts,
    wedge_selected,
    write_edge_list,
)
from hypertrans.errors import EmptyHypergraphError, InvalidWedgeError, ParseError

edge_lists = st.lists(
    st.sets(st.integers(0, 11), min_size=1, max_size=6).map(sorted), min_size=0, max_size=25
)


# loading


def test_load_two_edges():
    H = load_hypergraph(io.StringIO("1 2 3\n3 4 5\n"))
    assert len(H) == 2
    assert H.used_node_count == 5
    assert H.node_count == 6


def test_load_dedupes_and_drops_singletons():
    H = load_hypergraph(io.StringIO("1 2\n2 1\n7\n"))
    assert H.edges == ((1, 2),)


def test_load_keeps_duplicates_when_asked():
    H = load_hypergraph(io.StringIO("1 2\n2 1\n7\n"), dedupe=False)
    assert H.edges == ((1, 2), (1, 2), (7,))


def test_load_fixture_file(E):
    text = "".join(" ".join(map(str, sorted(e))) + "\n" for e in E.values())
    H = load_hypergraph(io.StringIO(text))
    assert len(H) == 15
    assert set().union(*H.edge_sets) == {1, 2, 3, 4, 5}


def test_comments_commas_and_blank_lines():
    assert parse_edge_list(["# header", "", "1,2, 3", "4\t5"]) == [[1, 2, 3], [4, 5]]


def test_parse_error_carries_line_number():
    with pytest.raises(ParseError) as exc:
        load_hypergraph(io.StringIO("1 2\n3 x\n"))
    assert exc.value.line == 2


def test_negative_ids_rejected():
    with pytest.raises(ParseError):
        load_hypergraph(io.StringIO("1 -2\n"))


def test_empty_input():
    with pytest.raises(EmptyHypergraphError):
        load_hypergraph(io.StringIO("# nothing\n"))
    with pytest.raises(EmptyHypergraphError):
        load_hypergraph(io.StringIO("1\n2\n"))


def test_nverts_simplices(tmp_path):
    (tmp_path / "toy-nverts.txt").write_text("3\n2\n3\n")
    (tmp_path / "toy-simplices.txt").write_text("1\n2\n3\n3\n4\n1\n2\n3\n")
    H = load_hypergraph(tmp_path / "toy", format="nverts-simplices")
    assert H.edges == ((1, 2, 3), (3, 4))
    H2 = load_hypergraph(tmp_path / "toy-simplices.txt", format="nverts-simplices", dedupe=False)
    assert len(H2) == 3


def test_nverts_length_mismatch(tmp_path):
    (tmp_path / "bad-nverts.txt").write_text("3\n3\n")
    (tmp_path / "bad-simplices.txt").write_text("1\n2\n3\n4\n")
    with pytest.raises(ParseError):
        load_hypergraph(tmp_path / "bad", format="nverts-simplices")


def test_compaction_keeps_labels():
    H = load_hypergraph(io.StringIO("10 20\n20 30\n"), compact=True)
    assert H.node_count == 3
    assert H.edges == ((0, 1), (1, 2))
    assert [H.label(v) for v in range(3)] == [10, 20, 30]
    buf = io.StringIO()
    write_edge_list(H, buf)
    assert buf.getvalue() == "10 20\n20 30\n"


def test_write_roundtrip(tmp_path):
    H = Hypergraph([(1, 2, 3), (3, 4)])
    write_edge_list(H, tmp_path / "g.txt")
    assert load_hypergraph(tmp_path / "g.txt").edges == H.edges


@given(edge_lists)
def test_incidence_matches_edges(edges):
    H = Hypergraph(edges) if edges else Hypergraph([], node_count=0)
    inc = H.incidence
    assert sum(len(x) for x in inc) == sum(len(e) for e in H.edges)
    for v, lst in enumerate(inc):
        assert lst == sorted(i for i, e in enumerate(H.edges) if v in e)
    csr = H.csr()
    assert csr.edge_ptr[-1] == sum(len(e) for e in H.edges)
    assert list(H.degrees()) == [len(x) for x in inc]


# hyperwedges


def test_triangle_has_three_wedges():
    H = Hypergraph([(1, 2), (1, 3), (2, 3)])
    assert list(enumerate_hyperwedges(H)) == [Hyperwedge(0, 1), Hyperwedge(0, 2), Hyperwedge(1, 2)]


def test_subset_pair_is_not_a_wedge():
    assert list(enumerate_hyperwedges(Hypergraph([(1, 2), (1, 2, 3)]))) == []


@given(edge_lists)
def test_enumeration_matches_brute_force(edges):
    edges = [e for e in edges]
    H = Hypergraph(edges) if edges else Hypergraph([], node_count=0)
    got = [tuple(w) for w in enumerate_hyperwedges(H)]
    assert sorted(got) == oracles.wedges(edges)
    assert len(got) == len(set(got))
    for w in got:
        p = wedge_parts(H, w)
        assert p.left and p.right and p.body
        assert not (p.left & p.right or p.left & p.body or p.right & p.body)


def test_wedge_parts_examples():
    H = Hypergraph([(1, 2, 3), (3, 4, 5), (1, 2), (2, 3), (1, 2, 3, 4)])
    p = wedge_parts(H, (0, 1))
    assert (p.left, p.right, p.body) == ({1, 2}, {4, 5}, {3})
    p = wedge_parts(H, (2, 3))
    assert (p.left, p.right, p.body) == ({1}, {3}, {2})
    p = wedge_parts(H, (4, 1))  # canonical order: the lower index is the left edge
    assert (p.left, p.right, p.body) == ({5}, {1, 2}, {3, 4})
    assert p.pair_count == 2


def test_invalid_wedges():
    H = Hypergraph([(1, 2), (3, 4), (1, 2, 3)])
    with pytest.raises(InvalidWedgeError):
        wedge_parts(H, (0, 1))  # disjoint
    with pytest.raises(InvalidWedgeError):
        wedge_parts(H, (0, 2))  # subset
    with pytest.raises(InvalidWedgeError):
        wedge_parts(H, (1, 1))


def test_pairs_and_swap(fixture_parts):
    assert list(fixture_parts.pairs()) == [(1, 4), (1, 5), (2, 4), (2, 5)]
    s = fixture_parts.swapped()
    assert s.left == fixture_parts.right and s.right == fixture_parts.left


# candidates


def test_fixture_omega(E, fixture_parts):
    names = list(E)
    H = Hypergraph([E[k] for k in names])
    om = {names[i] for i in overlapping_candidates(H, fixture_parts)}
    assert "e1" not in om and "e2" not in om and "e3" in om
    assert om == {k for k, e in E.items() if e & {1, 2} and e & {4, 5}}
    i3 = names.index("e3")
    assert overlapping_candidates(H, fixture_parts, exclude={i3}) == frozenset(
        i for i in overlapping_candidates(H, fixture_parts) if i != i3
    )


def test_isolated_wedge_has_no_candidates():
    H = Hypergraph([(1, 2, 3), (3, 4, 5), (7, 8)])
    assert overlapping_candidates(H, wedge_parts(H, (0, 1))) == frozenset()


@given(edge_lists)
def test_omega_and_touching_match_brute_force(edges):
    if not edges:
        return
    H = Hypergraph(edges)
    for a, b in oracles.wedges(edges):
        p = wedge_parts(H, (a, b))
        assert overlapping_candidates(H, p) == oracles.omega(edges, p.left, p.right)
        assert touching_candidates(H, p) == {i for i, e in enumerate(edges) if set(e) & p.wings}


def test_pairwise_graphs_have_at_most_one_overlapping_edge():
    r = random.Random(3)
    for _ in range(50):
        n = r.randint(3, 15)
        pairs = {tuple(sorted(r.sample(range(n), 2))) for _ in range(r.randint(2, 40))}
        H = Hypergraph(sorted(pairs))
        for w in enumerate_hyperwedges(H):
            assert len(overlapping_candidates(H, wedge_parts(H, w))) <= 1


# sampling


def test_sampling_is_deterministic_and_roughly_proportional():
    r = random.Random(0)
    edges = [tuple(sorted(r.sample(range(60), 3))) for _ in range(400)]
    H = Hypergraph(edges).deduplicated()
    full = list(enumerate_hyperwedges(H))
    half = list(enumerate_hyperwedges(H, 0.5, seed=9))
    assert half == list(enumerate_hyperwedges(H, 0.5, seed=9))
    assert set(half) <= set(full)
    assert 0.4 < len(half) / len(full) < 0.6
    assert half != list(enumerate_hyperwedges(H, 0.5, seed=10))


def test_sample_threshold_bounds():
    assert wedge_selected(1, 2, sample_threshold(1.0), 0)
    for bad in (0.0, -0.1, 1.5):
        with pytest.raises(ValueError):
            sample_threshold(bad)
