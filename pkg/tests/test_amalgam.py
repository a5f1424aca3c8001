import pytest

from amalgams.amalgam import (
    AmalgamType,
    CompletionCandidate,
    amalgams_isomorphic_oracle,
    check_completion,
    check_D1,
    check_D2,
    compute_D,
    emit_presentation,
    make_amalgam,
    same_type,
    verify_amalgam_isomorphism,
)
from amalgams.errors import GraphMismatch, NotAHomomorphism, NotInjective, ShapeMismatch
from amalgams.graph import build_graph
from amalgams.groups import GroupMap, conjugation, hom_from_gen_images, identity_map, trivial_map
from amalgams.named import cyclic, dihedral, element, klein_four, power, symmetric
from amalgams.pointing import Pointing, amalgam_from_pointing, reference_graph

R, S = (1, 2, 3, 0), (0, 3, 2, 1)


def d8_double_loop():
    V4, D8 = klein_four(), dihedral(4)
    g = build_graph(1, [(0, 0), (0, 0)])
    inc = [S, power(R, 2)]
    return AmalgamType(make_amalgam(g, [V4], [D8, D8], [inc, inc, inc, inc]))


def test_make_amalgam_validation():
    Z2, Z4, S3 = cyclic(2), cyclic(4), symmetric(3)
    g = build_graph(2, [(0, 1)])
    with pytest.raises(ShapeMismatch):
        make_amalgam(g, [Z2], [Z4], [[(2, 3, 0, 1)], [(2, 3, 0, 1)]])
    with pytest.raises(NotInjective):
        make_amalgam(g, [Z4, Z4], [Z2], [[(1, 0)], [(1, 0)]])
    with pytest.raises(NotAHomomorphism):
        make_amalgam(g, [Z2, Z2], [S3], [[(1, 2, 0)], [(1, 0, 2)]])
    loop = build_graph(1, [(0, 0)])
    V4, D8 = klein_four(), dihedral(4)
    with pytest.raises(ShapeMismatch):
        make_amalgam(loop, [V4], [D8], [[S, power(R, 2)], [power(R, 2), S]])


def test_oracle_finds_identity_and_verifies():
    t = d8_double_loop()
    a = t.reference
    w = amalgams_isomorphic_oracle(a, a)
    assert w is not None and verify_amalgam_isomorphism(a, a, w)


def test_oracle_separates_the_two_d8_classes():
    t = d8_double_loop()
    c = reference_graph(t)
    # δ = 1 and a δ outside the double coset of the identity
    a1 = amalgam_from_pointing(t, Pointing(c, (0, 0, 0, 0)))
    sizes = {}
    for d in range(c.vertex_groups[0].order):
        a2 = amalgam_from_pointing(t, Pointing(c, (0, 0, d, d)))
        sizes[d] = amalgams_isomorphic_oracle(a1, a2) is not None
    assert sorted(sizes.values()) == [False] * 4 + [True] * 2


def test_oracle_needs_same_groups():
    t1, t2 = d8_double_loop(), d8_double_loop()
    with pytest.raises(GraphMismatch):
        amalgams_isomorphic_oracle(t1.reference, t2.reference)
    with pytest.raises(GraphMismatch):
        same_type(t1.reference, t2)


def test_verify_rejects_bad_witness():
    t = d8_double_loop()
    a = t.reference
    w = amalgams_isomorphic_oracle(a, a)
    bad = type(w)(w.vertex_maps, (tuple(range(8)), tuple(reversed(range(8)))))
    assert not verify_amalgam_isomorphism(a, a, bad)
    # conjugation by r moves s inside V, so it does not fit identity vertex maps
    D8 = a.edge_groups[0]
    conj_r = conjugation(element(D8, R), D8).images
    assert w.vertex_maps == (tuple(range(4)),)
    assert not verify_amalgam_isomorphism(a, a, type(w)(w.vertex_maps, (conj_r, w.edge_maps[1])))
    conj_s = conjugation(element(D8, S), D8).images
    assert verify_amalgam_isomorphism(a, a, type(w)(w.vertex_maps, (conj_s, conj_s)))


def test_completions():
    S3, Z3, Z2 = symmetric(3), cyclic(3), cyclic(2)
    g = build_graph(2, [(0, 1)])
    a = make_amalgam(g, [Z3, Z2], [S3], [[(1, 2, 0)], [(1, 0, 2)]])
    good = CompletionCandidate(S3, (a.inclusions[0], a.inclusions[1]), (identity_map(S3),))
    res = check_completion(a, good)
    assert res.is_completion and res.nontrivial
    triv = CompletionCandidate(Z2, (trivial_map(Z3, Z2), trivial_map(Z2, Z2)), (trivial_map(S3, Z2),))
    res = check_completion(a, triv)
    assert res.is_completion and not res.nontrivial
    sign = hom_from_gen_images(S3, Z2, [(1, 0), (0, 1)])
    wrong = CompletionCandidate(Z2, (trivial_map(Z3, Z2), trivial_map(Z2, Z2)), (sign,))
    assert not check_completion(a, wrong)


def test_presentation_format():
    Z2 = cyclic(2)
    g = build_graph(2, [(0, 1)])
    a = make_amalgam(g, [Z2, Z2], [Z2], [[(1, 0)], [(1, 0)]])
    text = emit_presentation(a)
    assert "g[v0][1] = g[e0][1]" in text
    assert "g[v1][1] = g[e0][1]" in text
    assert "g[e0][1] * g[e0][1] = g[e0][0]" in text


def test_D_subgroups_and_predicates():
    t = d8_double_loop()
    a = t.reference
    Dbar, D = compute_D(a, 0)
    assert Dbar.order == 4 and D.order == 4  # V is normal in D8
    assert check_D1(a)
    assert check_D2(a, t)
    S3, Z3, Z2 = symmetric(3), cyclic(3), cyclic(2)
    g = build_graph(2, [(0, 1)])
    b = make_amalgam(g, [Z3, Z2], [S3], [[(1, 2, 0)], [(1, 0, 2)]])
    Dbar, D = compute_D(b, 0)  # N(<(01)>) ∩ A3 = 1
    assert Dbar.order == 1
    Dbar, D = compute_D(b, 1)  # N(A3) ∩ <(01)> = <(01)>
    assert D.order == 2
    assert isinstance(b.inclusions[0], GroupMap)
