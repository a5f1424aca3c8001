import pytest

from amalgams.crosscheck import oracle_partition
from amalgams.errors import NotRigid
from amalgams.graph import build_graph
from amalgams.groups import hom_from_gen_images, kernel
from amalgams.named import cyclic
from amalgams.pointing import (
    GraphOfGroups,
    classify,
    classify_pointings,
    normalized_pointings,
    reference_graph,
)
from amalgams.rigid import check_rigidity, classify_rigid, is_rigid

from conftest import corpus, corpus_type


def test_injective_alpha_keeps_edge_groups():
    c = reference_graph(corpus_type("triangle_s3_in_s3z2"))
    r = is_rigid(c)
    assert r is not None
    assert [len(T) for T in r.tilde] == [A.order for A in c.edge_groups]


def test_kernel_a3_has_transposition_complement():
    c = reference_graph(corpus_type("edge_z3_z3_in_s3"))
    assert c.edge_groups[0].order == 6
    assert kernel(c.edge_maps[0]).order == 3
    r = is_rigid(c)
    assert len(r.tilde[0]) == 2
    assert not (r.tilde[0].members & kernel(c.edge_maps[0]).members) - {0}


def test_z4_with_involution_kernel_is_not_rigid():
    Z4, Z2 = cyclic(4), cyclic(2)
    f = hom_from_gen_images(Z4, Z2, [(1, 0)])
    c = GraphOfGroups(build_graph(2, [(0, 1)]), [Z2, Z2], [Z4], [f, f])
    rig = check_rigidity(c)
    assert not rig and rig.dart == 0 and "complement" in rig.reason


@pytest.mark.parametrize("name", sorted(corpus()))
def test_rigidity_matches_frozen_value(name):
    inst = corpus()[name]
    c = reference_graph(inst.amalgam_type())
    assert bool(check_rigidity(c)) == inst.expected["rigid"]


@pytest.mark.parametrize("name", [n for n in sorted(corpus()) if corpus()[n].expected["rigid"]])
def test_reduced_classification_matches(name):
    t = corpus_type(name)
    full, reduced = classify(t), classify_rigid(t)
    assert reduced.classes == full.classes
    assert reduced.nodes <= full.nodes


def test_nontrivial_kernel_shrinks_search():
    t = corpus_type("double_loop_v4_d8_d8")
    assert classify_rigid(t).nodes < classify(t).nodes


def test_non_rigid_raises():
    with pytest.raises(NotRigid) as info:
        classify_rigid(corpus_type("triangle_z3_in_z3z3"))
    assert info.value.dart == 0


def test_common_complement_is_not_enough():
    """Z3 vertices in Z3×Z3 edges along the two axes.

    Each A_e is Z2×Z2 and α_e, α_ē are its two coordinate projections, so the
    diagonal is a complement of both kernels.  Searching only the diagonal
    splits the single amalgam class in two; the rigidity test must reject it.
    """
    t = corpus_type("triangle_z3_in_z3z3")
    c = reference_graph(t)
    A_e = c.edge_groups[0]
    assert A_e.order == 4
    k0, k1 = kernel(c.edge_maps[0]), kernel(c.edge_maps[1])
    assert k0.order == k1.order == 2 and k0 != k1
    diagonal = tuple(x for x in range(4) if (c.alpha(0, x) == 0) == (c.alpha(1, x) == 0))
    assert len(diagonal) == 2
    ps = normalized_pointings(c)
    restricted = classify_pointings(c, ps, edge_elements=(diagonal,) * 3)
    assert restricted.count == 2
    assert classify(t).count == 1 == len(set(oracle_partition(t, ps)))
    assert not check_rigidity(c)
