
import networkx as nx
from hypothesis import given, settings, strategies as st

from macbelt import corpus
from macbelt.canon import canonical_form, complex_certificate, graph_certificate, isomorphic

from conftest import relabeled


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 8), st.data())
def test_canonical_form_matches_networkx(n, data):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    e1 = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    e2 = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    G1, G2 = nx.Graph(), nx.Graph()
    G1.add_nodes_from(range(n))
    G2.add_nodes_from(range(n))
    G1.add_edges_from(e1)
    G2.add_edges_from(e2)
    same = canonical_form(n, e1)[0] == canonical_form(n, e2)[0]
    assert same == nx.is_isomorphic(G1, G2)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 9), st.data())
def test_certificate_invariant_under_permutation(n, data):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True))
    perm = data.draw(st.permutations(range(n)))
    moved = [(perm[a], perm[b]) for a, b in edges]
    assert canonical_form(n, edges)[0] == canonical_form(n, moved)[0]


def test_colours_matter():
    assert canonical_form(2, [], [0, 1])[0] != canonical_form(2, [], [0, 0])[0]


def test_complex_isomorphism(ico):
    assert isomorphic(ico, relabeled(ico, 4))
    a, b = corpus.load_sphere("c40_a"), corpus.load_sphere("c40_b")
    assert not isomorphic(a, b)
    assert graph_certificate(a) != graph_certificate(b)
    # same graph, different complexes: boundary of a tetrahedron vs the filled one
    assert not isomorphic(corpus.load("tetrahedron_boundary"), corpus.load_sphere("tetrahedron").full_subcomplex(0b111))
    assert complex_certificate(corpus.load("square")) == complex_certificate(relabeled(corpus.load("square"), 2))
