import random

import pytest

from emb2.catalog import (
    RP2_CORE,
    TORUS_LONGITUDE,
    TORUS_MERIDIAN,
    klein_meridian_cycle,
    klein_op_longitude_cycle,
    klein_or_longitude_cycle,
    subdivided_disk,
)
from emb2.errors import (
    EmptySubcomplex,
    NotAClosedPath,
    NotClosedUnderFaces,
    NotConnected,
    NotEmbeddedCircle,
    UnknownSimplex,
    XIsWholeSurface,
)
from emb2.subcomplex import (
    carry,
    chord_cycle,
    cut_along,
    disk_hull,
    embed_subcomplex,
    is_orientation_preserving,
    is_separating,
    regular_neighborhood,
    spine_graph,
    spine_with_loops,
    _tree_paths,
)
from emb2.surface import (
    barycentric_subdivision,
    classify_surface,
    euler_characteristic,
    require_surface,
)

from oracles import cycle_is_z2_boundary


def cycle_edges(cycle):
    return [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def circle_subcomplex(surface, cycle):
    return embed_subcomplex(surface, cycle, cycle_edges(cycle))


# -- embedding and flags -----------------------------------------------------


def test_flags(surfaces):
    tetra = surfaces["tetra"]
    edge = embed_subcomplex(tetra, [0, 1], [(0, 1)])
    assert edge.is_arc and not edge.is_circle and not edge.is_point

    point = embed_subcomplex(tetra, [2])
    assert point.is_point

    whole = embed_subcomplex(
        tetra, range(4), tetra.edges, tetra.triangles
    )
    assert whole.is_closed_surface and whole.is_whole_host()

    torus = surfaces["torus7"]
    meridian = circle_subcomplex(torus, TORUS_MERIDIAN)
    assert meridian.is_circle
    assert meridian.circle_cycle() == [0, 1, 2]
    assert meridian.basepoint == 0


def test_embed_errors(surfaces):
    tetra = surfaces["tetra"]
    with pytest.raises(EmptySubcomplex):
        embed_subcomplex(tetra, [])
    with pytest.raises(NotConnected):
        embed_subcomplex(tetra, [0, 1])
    with pytest.raises(NotClosedUnderFaces):
        embed_subcomplex(tetra, [0], [(0, 1)])
    with pytest.raises(UnknownSimplex):
        # (0, 1, 2) is a 3-cycle of edges in torus7 but not a face
        embed_subcomplex(surfaces["torus7"], [0, 1, 2], [(0, 1), (1, 2), (0, 2)], [(0, 1, 2)])


# -- orientation transport ---------------------------------------------------


def test_orientation_klein_curves(surfaces):
    k = surfaces["klein8"]
    assert is_orientation_preserving(k, klein_meridian_cycle())
    assert is_orientation_preserving(k, klein_op_longitude_cycle())
    assert not is_orientation_preserving(k, klein_or_longitude_cycle())


def test_orientation_orientable_host(surfaces):
    t = surfaces["torus7"]
    rng = random.Random(3)
    for _ in range(20):
        # random closed walk via tree paths
        start = rng.randrange(7)
        walk = [start]
        for _ in range(rng.randint(2, 8)):
            nbrs = sorted(
                w for e in t.edges if walk[-1] in e for w in e if w != walk[-1]
            )
            walk.append(rng.choice(nbrs))
        if not t.has_edge(walk[-1], walk[0]):
            continue
        assert is_orientation_preserving(t, walk)


def test_orientation_additivity(surfaces):
    k = surfaces["klein8"]
    orl = klein_or_longitude_cycle()
    mer = klein_meridian_cycle(column=0)
    # both pass through vertex v(0,0) = 0; rotate to that basepoint
    assert orl[0] == 0 and mer[0] == 0
    concat_loop = orl + mer
    v1 = is_orientation_preserving(k, orl)
    v2 = is_orientation_preserving(k, mer)
    v12 = is_orientation_preserving(k, concat_loop)
    assert v12 == (v1 == v2)
    double = orl + orl
    assert is_orientation_preserving(k, double)


def test_orientation_rejects_nonpath(surfaces):
    k = surfaces["klein8"]
    assert not k.has_edge(0, 9)
    with pytest.raises(NotAClosedPath):
        is_orientation_preserving(k, [0, 9, 1])


def test_rp2_core_reversing(surfaces):
    assert not is_orientation_preserving(surfaces["rp2"], RP2_CORE)


# -- cutting and separation --------------------------------------------------


def test_sphere_equator_separates():
    s = require_surface([(0, 1, 2), (0, 3, 1), (1, 3, 2), (2, 3, 0)], 4)
    s1, m1 = barycentric_subdivision(s)
    # hexagon around vertex 0: midpoints and barycenters alternate
    e = m1.edge_mid
    z = m1.tri_center
    cycle = [e[(0, 1)], z[0], e[(0, 2)], z[3], e[(0, 3)], z[1]]
    assert is_separating(s1, cycle)
    pieces = cut_along(s1, cycle)
    assert sorted(classify_surface(p).describe() for p in pieces) == ["Disk", "Disk"]


def test_torus_cut(surfaces):
    t = surfaces["torus7"]
    assert not is_separating(t, TORUS_MERIDIAN)
    (piece,) = cut_along(t, TORUS_MERIDIAN)
    assert classify_surface(piece).is_annulus


def test_klein_cuts(surfaces):
    k = surfaces["klein8"]
    assert not is_separating(k, klein_meridian_cycle())
    assert is_separating(k, klein_op_longitude_cycle())
    pieces = cut_along(k, klein_op_longitude_cycle())
    assert [classify_surface(p).describe() for p in pieces] == [
        "MobiusBand",
        "MobiusBand",
    ]
    (piece,) = cut_along(k, klein_or_longitude_cycle())
    assert classify_surface(piece).is_mobius_band


def test_cut_chi_additive(surfaces):
    cases = [
        (surfaces["torus7"], TORUS_MERIDIAN),
        (surfaces["torus7"], TORUS_LONGITUDE),
        (surfaces["klein8"], klein_meridian_cycle()),
        (surfaces["klein8"], klein_op_longitude_cycle()),
        (surfaces["klein8"], klein_or_longitude_cycle()),
        (surfaces["rp2"], RP2_CORE),
    ]
    for surface, cycle in cases:
        pieces = cut_along(surface, cycle)
        assert len(pieces) in (1, 2)
        assert sum(euler_characteristic(p) for p in pieces) == euler_characteristic(
            surface
        )


def test_separating_matches_z2_homology_on_closed(surfaces):
    cases = [
        (surfaces["torus7"], TORUS_MERIDIAN),
        (surfaces["torus7"], TORUS_LONGITUDE),
        (surfaces["klein8"], klein_meridian_cycle()),
        (surfaces["klein8"], klein_op_longitude_cycle()),
        (surfaces["rp2"], RP2_CORE),
    ]
    for surface, cycle in cases:
        assert is_separating(surface, cycle) == cycle_is_z2_boundary(surface, cycle)


def test_cut_rejects_bad_circles(surfaces):
    with pytest.raises(NotEmbeddedCircle):
        cut_along(surfaces["torus7"], [0, 1, 2, 1])
    with pytest.raises(NotEmbeddedCircle):
        cut_along(surfaces["annulus"], [0, 3, 6])  # boundary vertices


def test_curve_verdicts_survive_subdivision(surfaces):
    k = surfaces["klein8"]
    for cycle in (
        klein_meridian_cycle(),
        klein_op_longitude_cycle(),
        klein_or_longitude_cycle(),
    ):
        op = is_orientation_preserving(k, cycle)
        sep = is_separating(k, cycle)
        k1, m1 = barycentric_subdivision(k)
        carried = m1.carry_loop(cycle)
        assert is_orientation_preserving(k1, carried) == op
        assert is_separating(k1, carried) == sep


# -- regular neighborhoods and spines ----------------------------------------


def test_arc_neighborhood_is_disk(surfaces):
    tetra = surfaces["tetra"]
    x = embed_subcomplex(tetra, [0, 1], [(0, 1)])
    d = regular_neighborhood(tetra, x)
    assert d.neighborhood_type.is_disk
    assert d.component_labels() == ("Disk",)
    verts, edges, root, _ = spine_graph(d)
    assert len(edges) - (len(verts) - 1) == 0


def test_meridian_neighborhood_is_annulus(surfaces):
    t = surfaces["torus7"]
    x = circle_subcomplex(t, TORUS_MERIDIAN)
    d = regular_neighborhood(t, x)
    assert d.neighborhood_type.is_annulus
    assert d.component_labels() == ("Annulus",)


def test_or_longitude_neighborhood_is_mobius(surfaces):
    k = surfaces["klein8"]
    cycle = klein_or_longitude_cycle()
    x = circle_subcomplex(k, cycle)
    d = regular_neighborhood(k, x)
    assert d.neighborhood_type.is_mobius_band


def test_wedge_spine_has_two_chords(surfaces):
    t = surfaces["torus7"]
    verts = sorted(set(TORUS_MERIDIAN + TORUS_LONGITUDE))
    edges = cycle_edges(TORUS_MERIDIAN) + cycle_edges(TORUS_LONGITUDE)
    x = embed_subcomplex(t, verts, edges)
    d = regular_neighborhood(t, x)
    assert 1 - d.neighborhood_type.euler_characteristic == 2
    spine = spine_with_loops(d)
    assert spine.chord_count() == 2
    assert all(loop.essential for loop in spine.loops)
    for loop in spine.loops:
        assert len(set(loop.cycle)) == len(loop.cycle)  # embedded


def test_neighborhood_coverage(surfaces):
    t = surfaces["torus7"]
    x = circle_subcomplex(t, TORUS_MERIDIAN)
    d = regular_neighborhood(t, x)
    covered = set(d.neighborhood.triangles)
    for comp, _, _ in d.components:
        covered |= comp.triangles
    assert len(covered) == len(d.host2.triangles)


def test_whole_surface_rejected(surfaces):
    tetra = surfaces["tetra"]
    whole = embed_subcomplex(tetra, range(4), tetra.edges, tetra.triangles)
    with pytest.raises(XIsWholeSurface):
        regular_neighborhood(tetra, whole)


def test_spine_loop_count_matches_chi(surfaces):
    k = surfaces["klein8"]
    x = circle_subcomplex(k, klein_meridian_cycle())
    d = regular_neighborhood(k, x)
    spine = spine_with_loops(d)
    assert spine.chord_count() == 1 - d.neighborhood_type.euler_characteristic


def test_chord_cycle_shape():
    parent = {0: None, 1: 0, 2: 1, 3: 1}
    cycle = chord_cycle(parent, (2, 3))
    assert cycle == [1, 2, 3]


# -- disk hull (null-homotopic subcomplexes) ---------------------------------


def test_disk_hull_succeeds_on_null_homotopic(surfaces):
    tetra = surfaces["tetra"]
    arc = embed_subcomplex(tetra, [0, 1], [(0, 1)])
    disk_hull(regular_neighborhood(tetra, arc))

    rp2 = surfaces["rp2"]
    tree = embed_subcomplex(rp2, [0, 1, 2, 3], [(0, 1), (0, 2), (0, 3)])
    disk_hull(regular_neighborhood(rp2, tree))

    disk, arc_verts = subdivided_disk()
    arc_edges = [(arc_verts[0], arc_verts[1]), (arc_verts[1], arc_verts[2])]
    x = embed_subcomplex(disk, arc_verts, arc_edges)
    disk_hull(regular_neighborhood(disk, x))


def test_disk_hull_absorbs_for_trivial_circle(surfaces):
    # a face boundary in the torus is null homotopic; its annular
    # neighborhood plus the inner disk component is a disk
    t = surfaces["torus7"]
    cycle = list(t.triangles[0])
    x = circle_subcomplex(t, cycle)
    d = regular_neighborhood(t, x)
    absorbed = disk_hull(d)
    assert len(absorbed) == 1


def test_carry_preserves_subcomplex_shape(surfaces):
    t = surfaces["torus7"]
    x = circle_subcomplex(t, TORUS_MERIDIAN)
    t1, m1 = barycentric_subdivision(t)
    x1 = carry(m1, t, t1, x)
    assert x1.is_circle
    assert len(x1.vertices) == 2 * len(x.vertices)
    assert x1.basepoint == x.basepoint
