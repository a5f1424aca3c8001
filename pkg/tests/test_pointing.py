import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amalgams.amalgam import amalgams_isomorphic_oracle, verify_amalgam_isomorphism
from amalgams.crosscheck import all_pointings, oracle_partition, same_partition
from amalgams.errors import GraphMismatch, ShapeMismatch
from amalgams.graph import spanning_tree
from amalgams.pointing import (
    Pointing,
    amalgam_from_pointing,
    amalgam_witness,
    anchor_darts,
    classify,
    classify_pointings,
    decide,
    identity_pointing,
    normalize_on_tree,
    normalized_pointings,
    pointing_from_amalgam,
    pointings_isomorphic,
    reference_graph,
    residual_darts,
    spanning_forest,
    verify_pointing_witness,
)

from conftest import corpus_type

SMALL = ["double_loop_v4_d8_d8", "double_loop_v4_d8_d8_twisted", "double_loop_z3_s3_s3",
         "triangle_z3_in_s3", "triangle_z3_in_z3z3", "edge_z3_z2_in_s3", "loop_v4_in_d8",
         "path_z4_v4_v4_in_d8"]


def test_reference_graph_orders():
    c = reference_graph(corpus_type("double_loop_v4_d8_d8"))
    assert [A.order for A in c.vertex_groups] == [6]
    assert [A.order for A in c.edge_groups] == [4, 4]
    # α_e is the restriction to V4, with image of order 2
    assert len(set(c.edge_maps[0].images)) == 2


@pytest.mark.parametrize("name", SMALL)
def test_pointing_amalgam_round_trip(name):
    t = corpus_type(name)
    for p in all_pointings(t)[:300]:
        a = amalgam_from_pointing(t, p)
        assert pointing_from_amalgam(t, a) == p
    a0 = t.reference
    assert pointing_from_amalgam(t, a0) == identity_pointing(reference_graph(t))


@pytest.mark.parametrize("name", ["double_loop_v4_d8_d8", "triangle_z3_in_s3", "edge_z3_z2_in_s3",
                                  "path_z4_v4_v4_in_d8"])
def test_decider_agrees_with_oracle_on_all_pairs(name):
    t = corpus_type(name)
    c = reference_graph(t)
    ps = all_pointings(t)
    if len(ps) > 80:
        ps = ps[::len(ps) // 60]
    amalgams = [amalgam_from_pointing(t, p) for p in ps]
    for i, j in itertools.combinations(range(len(ps)), 2):
        w = pointings_isomorphic(c, ps[i], ps[j])
        o = amalgams_isomorphic_oracle(amalgams[i], amalgams[j])
        assert (w is None) == (o is None)
        if w is not None:
            assert verify_pointing_witness(c, ps[i], ps[j], w)
            # a pointing witness p_i -> p_j is an amalgam isomorphism a_j -> a_i
            assert verify_amalgam_isomorphism(amalgams[j], amalgams[i], amalgam_witness(t, w))
            assert verify_amalgam_isomorphism(amalgams[i], amalgams[j], o)


@pytest.mark.parametrize("name", ["double_loop_v4_d8_d8", "triangle_z3_in_s3", "triangle_v4_in_d8",
                                  "path_v4_d8_same"])
def test_vertex_mode_matches_edge_mode(name):
    t = corpus_type(name)
    assert classify(t).classes == classify(t, mode="vertex").classes


@pytest.mark.parametrize("name", SMALL)
def test_normalization_is_complete(name):
    """Classes over every pointing match classes over normalized ones."""
    t = corpus_type(name)
    c = reference_graph(t)
    ps = all_pointings(t)
    full = classify_pointings(c, ps)
    assert full.count == classify(t).count
    if len(ps) <= 200:
        assert same_partition(full.class_of(), oracle_partition(t, ps))


@pytest.mark.parametrize("name", SMALL)
def test_normalize_on_tree(name):
    t = corpus_type(name)
    c = reference_graph(t)
    g = c.graph
    trees = spanning_forest(g)
    anchors = anchor_darts(g, trees)
    normal = set(normalized_pointings(c))
    for p in all_pointings(t)[:200]:
        q, w = normalize_on_tree(c, p, trees)
        assert verify_pointing_witness(c, p, q, w)
        assert all(q.delta[e] == 0 for e in anchors.values())
        assert normalize_on_tree(c, q, trees)[0] == q
        assert q in normal


def test_anchor_choice_on_path():
    t = corpus_type("path_v4_d8_same")
    g = t.graph
    anchors = anchor_darts(g, [spanning_tree(g, 0)])
    # each vertex anchors one dart leaving it; vertices 1 and 2 point back toward 0
    assert anchors == {0: 0, 1: 1, 2: 3}
    assert residual_darts(g, anchors) == [2]


def test_single_edge_always_one_class():
    for name in ["edge_trivial", "edge_z3_z2_in_s3", "edge_z3_z3_in_s3", "edge_z4_z4_in_q8",
                 "edge_v4_v4_in_d8"]:
        assert classify(corpus_type(name)).count == 1


def test_loop_pointings_must_be_tied():
    c = reference_graph(corpus_type("loop_v4_in_d8"))
    with pytest.raises(ShapeMismatch):
        Pointing(c, (0, 1))
    with pytest.raises(ShapeMismatch):
        Pointing(c, (0,))


def test_pointing_from_foreign_amalgam():
    t1 = corpus_type("double_loop_v4_d8_d8")
    t2 = corpus_type("triangle_z3_in_s3")
    with pytest.raises(GraphMismatch):
        pointing_from_amalgam(t1, t2.reference)


def test_parallel_matches_serial():
    t = corpus_type("triangle_v4_in_d8")
    a, b = classify(t), classify(t, workers=4)
    assert a.classes == b.classes and a.nodes == b.nodes
    assert a.to_json(t) == b.to_json(t)


def test_report_witnesses_verify():
    t = corpus_type("triangle_s3_in_s3z2")
    rep = classify(t)
    c = rep.base
    for cls in rep.classes:
        for i in cls[1:]:
            assert verify_pointing_witness(c, rep.pointings[cls[0]], rep.pointings[i], rep.witnesses[i])


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_witness_composes(data):
    """Isomorphism of pointings is transitive, with witnesses multiplying."""
    t = corpus_type("double_loop_v4_d8_d8")
    c = reference_graph(t)
    ps = all_pointings(t)
    p, q = data.draw(st.sampled_from(ps)), data.draw(st.sampled_from(ps))
    w1, _ = decide(c, p, q)
    w2, _ = decide(c, q, p)
    assert (w1 is None) == (w2 is None)
