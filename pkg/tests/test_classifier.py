import random

import pytest

from emb2.catalog import (
    catalog,
    closed_surface,
    klein8_vert,
    klein_meridian_cycle,
)
from emb2.classify import (
    HomotopyTypeDescriptor,
    Tag,
    classify_embedding_space,
    closed_manifold_case,
    descriptor_fundamental_group,
    replay_trace,
    ut_bundle_abelianization,
)
from emb2.errors import NotClosed, SubcomplexMeetsBoundary
from emb2.subcomplex import embed_subcomplex
from emb2.surface import SurfaceType, barycentric_subdivision, classify_surface, require_surface


def entry_pair(name):
    e = catalog()[name]
    s = require_surface(e["triangles"], e["vertex_count"])
    x = embed_subcomplex(s, e["sub_vertices"], e["sub_edges"], e["sub_triangles"])
    return s, x, e


def test_point_case(surfaces):
    t = surfaces["torus7"]
    x = embed_subcomplex(t, [4])
    d, trace = classify_embedding_space(t, x)
    assert d.tag == Tag.SURFACE_ITSELF
    assert d.surface.is_torus


def test_closed_case_lookup_table():
    expectations = {
        "sphere": Tag.SO3,
        "projective_plane": Tag.SO3,
        "torus": Tag.TORUS,
        "klein_bottle": Tag.CIRCLE,
        "genus2": Tag.POINT,
        "genus3": Tag.POINT,
        "nonorientable_genus3": Tag.POINT,
    }
    for kind, tag in expectations.items():
        surface = closed_surface(kind)
        st = classify_surface(surface)
        assert closed_manifold_case(st).tag == tag
        # and through the full classifier with X = M
        x = embed_subcomplex(surface, range(surface.vertex_count), surface.edges, surface.triangles)
        d, trace = classify_embedding_space(surface, x)
        assert d.tag == tag
        assert trace.case.startswith("Prop 2.2")


def test_closed_case_rejects_boundary(surfaces):
    with pytest.raises(NotClosed):
        closed_manifold_case(classify_surface(surfaces["annulus"]))


def test_boundary_touching_subcomplex_rejected(surfaces):
    ann = surfaces["annulus"]
    v = min(ann.boundary_vertices)
    x = embed_subcomplex(ann, [v])
    with pytest.raises(SubcomplexMeetsBoundary):
        classify_embedding_space(ann, x)


def test_k2_wedge_consistency_assertion(surfaces):
    # for the meridian wedge, every essential spine loop must be o.p. and
    # nonseparating (the classifier asserts this internally)
    name = "klein_meridian_wedge_trivial"
    s, x, e = entry_pair(name)
    d, trace = classify_embedding_space(s, x)
    assert d.tag == Tag.TORUS
    spine_steps = [st for st in trace.steps if st.decision == "spine"]
    loops = spine_steps[0].evidence["loops"]
    essential = [l for l in loops if l["essential"]]
    assert essential and all(
        l["orientation_preserving"] and not l["separating"] for l in essential
    )
    inessential = [l for l in loops if not l["essential"]]
    assert inessential  # the face-boundary circle contributes a dropped loop


def test_p2_cases(surfaces):
    rp2 = surfaces["rp2"]
    # wedge of two essential circles in P^2: image is all of Z/2, still
    # cyclic, but X is not an o.r. circle -> SO(3)
    c1, c2 = [1, 2, 3], [1, 4, 5]
    edges = [(1, 2), (2, 3), (1, 3), (1, 4), (4, 5), (1, 5)]
    x = embed_subcomplex(rp2, [1, 2, 3, 4, 5], edges)
    d, trace = classify_embedding_space(rp2, x)
    assert d.tag == Tag.SO3
    assert trace.case == "Thm 1.2 (4)(ii)"


def test_arc_in_nonorientable_host(surfaces):
    # arc with trivial image in the Klein bottle: Thm 1.3 (1) applies to
    # arcs even on nonorientable hosts
    k = surfaces["klein8"]
    a, b = klein8_vert(0, 0), klein8_vert(0, 1)
    x = embed_subcomplex(k, [a, b], [(a, b)])
    d, trace = classify_embedding_space(k, x)
    assert d.tag == Tag.UNIT_TANGENT_BUNDLE
    assert d.surface.is_klein_bottle
    assert trace.case == "Thm 1.3 (1)"


def test_tree_in_klein_goes_to_cover(surfaces):
    # a triad (branch vertex of degree three) is not an arc, so the
    # nonorientable host routes to the cover
    k = surfaces["klein8"]
    a, b, c, d0 = (klein8_vert(0, 0), klein8_vert(1, 0), klein8_vert(0, 1), klein8_vert(1, 1))
    x = embed_subcomplex(k, [a, b, c, d0], [(a, b), (a, c), (a, d0)])
    assert not x.is_arc
    d, trace = classify_embedding_space(k, x)
    assert d.tag == Tag.UNIT_TANGENT_BUNDLE_OF_COVER
    assert d.surface.is_torus
    assert trace.case == "Thm 1.3 (2)"


def test_traces_have_single_case():
    for name in ("torus_meridian", "klein_or_longitude", "disk_arc"):
        s, x, e = entry_pair(name)
        _, trace = classify_embedding_space(s, x)
        case_steps = [st for st in trace.steps if st.decision == "case"]
        assert len(case_steps) == 1


def test_replay_traces():
    for name in catalog():
        s, x, e = entry_pair(name)
        _, trace = classify_embedding_space(s, x)
        assert replay_trace(s, x, trace)


def test_k2_annulus_test_directly(surfaces):
    from emb2.classify import k2_nonseparating_annulus_test
    from emb2.subcomplex import regular_neighborhood, spine_with_loops

    k = surfaces["klein8"]

    def spine_of(cycle_or_entry):
        x = embed_subcomplex(k, cycle_or_entry[0], cycle_or_entry[1])
        return spine_with_loops(regular_neighborhood(k, x))

    mer = klein_meridian_cycle()
    mer_edges = [(mer[i], mer[(i + 1) % len(mer)]) for i in range(len(mer))]
    assert k2_nonseparating_annulus_test(spine_of((mer, mer_edges)))

    from emb2.catalog import klein_or_longitude_cycle

    orl = klein_or_longitude_cycle()
    orl_edges = [(orl[i], orl[(i + 1) % len(orl)]) for i in range(len(orl))]
    assert not k2_nonseparating_annulus_test(spine_of((orl, orl_edges)))

    e = catalog()["klein_meridian_wedge_trivial"]
    assert k2_nonseparating_annulus_test(
        spine_of((e["sub_vertices"], e["sub_edges"]))
    )


# -- pi1 of the answers --------------------------------------------------------


def test_descriptor_groups_fixed_cases():
    assert descriptor_fundamental_group(HomotopyTypeDescriptor(Tag.POINT)).kind == "trivial"
    assert descriptor_fundamental_group(HomotopyTypeDescriptor(Tag.CIRCLE)).kind == "Z"
    assert descriptor_fundamental_group(HomotopyTypeDescriptor(Tag.TORUS)).kind == "ZxZ"
    assert descriptor_fundamental_group(HomotopyTypeDescriptor(Tag.SO3)).kind == "Z2"
    assert descriptor_fundamental_group(HomotopyTypeDescriptor(Tag.SO3_MOD_Z2)).kind == "Z4"


def test_ut_bundle_group_over_sphere():
    sphere = SurfaceType(True, 0, 0, 2)
    g = descriptor_fundamental_group(
        HomotopyTypeDescriptor(Tag.UNIT_TANGENT_BUNDLE, sphere)
    )
    # <z | z^2>: abelianization Z/2, matching pi1(SO(3))
    assert g.kind == "presentation"
    torsion, free = ut_bundle_abelianization(g, sphere)
    assert torsion == [2] and free == 0


def test_ut_bundle_group_over_open_disk():
    disk = SurfaceType(True, 0, 1, 1)
    g = descriptor_fundamental_group(
        HomotopyTypeDescriptor(Tag.UNIT_TANGENT_BUNDLE, disk)
    )
    assert g.kind == "Z"


def test_ut_bundle_group_over_torus():
    torus = SurfaceType(True, 1, 0, 0)
    g = descriptor_fundamental_group(
        HomotopyTypeDescriptor(Tag.UNIT_TANGENT_BUNDLE, torus)
    )
    torsion, free = ut_bundle_abelianization(g, torus)
    assert torsion == [] and free == 2


def test_ut_bundle_group_over_annulus():
    ann = SurfaceType(True, 0, 2, 0)
    g = descriptor_fundamental_group(
        HomotopyTypeDescriptor(Tag.UNIT_TANGENT_BUNDLE, ann)
    )
    assert g.kind == "presentation"
    assert "F1 x Z" in g.display


# -- invariance (samples; the full sweep lives in the acceptance suite) --------


@pytest.mark.parametrize("name", ["torus_meridian", "rp2_tree", "mobius_core"])
def test_subdivision_invariance_sample(name):
    from emb2.subcomplex import carry

    s, x, e = entry_pair(name)
    d0, t0 = classify_embedding_space(s, x)
    s1, m1 = barycentric_subdivision(s)
    x1 = carry(m1, s, s1, x)
    d1, t1 = classify_embedding_space(s1, x1)
    assert d1 == d0
    assert t1.case == t0.case


@pytest.mark.parametrize("name", ["klein_or_longitude", "sphere_arc"])
def test_relabeling_invariance_sample(name):
    s, x, e = entry_pair(name)
    d0, t0 = classify_embedding_space(s, x)
    rng = random.Random(5)
    perm = list(range(s.vertex_count))
    rng.shuffle(perm)
    tris = [tuple(perm[v] for v in t) for t in s.triangles]
    s2 = require_surface(tris, s.vertex_count)
    x2 = embed_subcomplex(
        s2,
        [perm[v] for v in x.vertices],
        [(perm[u], perm[v]) for u, v in x.edges],
        [tuple(perm[v] for v in t) for t in x.triangles],
    )
    d1, t1 = classify_embedding_space(s2, x2)
    assert d1 == d0
    assert t1.case == t0.case
