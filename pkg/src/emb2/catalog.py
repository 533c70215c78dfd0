"""Built-in example surfaces and subcomplexes.

Surfaces come from explicit gluing tables (grids of quads with identified
sides, and a ring-triangulated polygon with schema identifications), not from
minimal triangulations, so the interesting curves exist as honest simplicial
cycles.  Every catalog entry is deterministic, passes validation and has a
pinned expected classifier verdict used by the selftest and the acceptance
suite.
"""

from __future__ import annotations

from .errors import UnknownExample
from .surface import (
    SimplicialSurface,
    UnionFind,
    barycentric_subdivision,
    classify_surface,
    edge_key,
    require_surface,
)


def tetrahedron():
    return [(0, 1, 2), (0, 3, 1), (1, 3, 2), (2, 3, 0)], 4


def torus7():
    """The 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7."""
    tris = []
    for i in range(7):
        tris.append((i, (i + 1) % 7, (i + 3) % 7))
        tris.append((i, (i + 2) % 7, (i + 3) % 7))
    return tris, 7


def rp2_6():
    """The 6-vertex projective plane (icosahedron antipodal quotient)."""
    tris = [
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
        (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3),
    ]
    return tris, 6


def _grid_surface(width, height, flip: bool, close_top: bool):
    """Quad grid on [0..width] x [0..height], triangulated by the (i,j) ->
    (i+1,j+1) diagonal.  The i-direction always wraps; `flip` reverses the
    vertical coordinate on wrap-around (Klein bottle / Mobius gluing).
    `close_top` also wraps j (torus/Klein); otherwise rows 0 and `height`
    are boundary."""
    rows = height if close_top else height + 1

    def vert(i, j):
        if i >= width:
            i -= width
            if flip:
                j = height - j
        if close_top:
            j %= height
        return i * rows + j

    tris = []
    for i in range(width):
        for j in range(height):
            p00 = vert(i, j)
            p10 = vert(i + 1, j)
            p01 = vert(i, j + 1)
            p11 = vert(i + 1, j + 1)
            tris.append((p00, p10, p11))
            tris.append((p00, p11, p01))
    return tris, width * rows, vert


KLEIN_W, KLEIN_H = 8, 4


def klein8():
    """Klein bottle from an 8-column subdivided square with reversed gluing."""
    tris, nv, _ = _grid_surface(KLEIN_W, KLEIN_H, flip=True, close_top=True)
    return tris, nv


def klein8_vert(i, j):
    _, _, vert = _grid_surface(KLEIN_W, KLEIN_H, flip=True, close_top=True)
    return vert(i, j)


def klein_meridian_cycle(column=2):
    return [klein8_vert(column, j) for j in range(KLEIN_H)]


def klein_or_longitude_cycle():
    # fixed row of the flip: closes up after one trip and is one-sided
    return [klein8_vert(i, 0) for i in range(KLEIN_W)]


def klein_op_longitude_cycle():
    # rows 1 and H-1 swap on wrap-around, so the circle covers the
    # horizontal direction twice; it is two-sided and separating
    return [klein8_vert(i, 1) for i in range(KLEIN_W)] + [
        klein8_vert(i, KLEIN_H - 1) for i in range(KLEIN_W)
    ]


def annulus_grid(width=6, height=2):
    tris, nv, vert = _grid_surface(width, height, flip=False, close_top=False)
    core = [vert(i, 1) for i in range(width)]
    return tris, nv, core


def mobius_grid(width=6, height=2):
    tris, nv, vert = _grid_surface(width, height, flip=True, close_top=False)
    core = [vert(i, 1) for i in range(width)]
    return tris, nv, core


def polygon_schema_surface(word):
    """Closed surface glued from a polygon with `word` as its boundary schema.

    `word` is a sequence of signed letters (1-based); each letter must occur
    exactly twice.  The polygon is a ring triangulation with 3 boundary
    segments per side, which is fine enough for the side identifications to
    stay simplicial.  Returns (surface, side_paths) where side_paths[k] is
    the glued vertex path of side k (its image is a closed curve for
    canonical schemas, which identify all corners).
    """
    sides = len(word)
    n = 3 * sides
    # vertex ids before gluing: boundary ring 0..n-1, inner ring n..2n-1,
    # center 2n
    inner = lambda p: n + (p % n)
    center = 2 * n
    tris = []
    for p in range(n):
        q = (p + 1) % n
        tris.append((p, q, inner(q)))
        tris.append((p, inner(q), inner(p)))
        tris.append((inner(p), inner(q), center))

    occurrences: dict[int, list[tuple[int, int]]] = {}
    for k, letter in enumerate(word):
        occurrences.setdefault(abs(letter), []).append((k, 1 if letter > 0 else -1))
    uf = UnionFind(range(2 * n + 1))
    for letter, occ in sorted(occurrences.items()):
        if len(occ) != 2:
            raise ValueError(f"letter {letter} occurs {len(occ)} times in schema")
        (k1, e1), (k2, e2) = occ
        for t in range(4):
            a = (3 * k1 + t) % n
            b = (3 * k2 + t) % n if e1 == e2 else (3 * k2 + (3 - t)) % n
            uf.union(a, b)

    labels: dict[int, int] = {}

    def lab(v):
        r = uf.find(v)
        if r not in labels:
            labels[r] = len(labels)
        return labels[r]

    glued = [tuple(lab(v) for v in t) for t in tris]
    surface = require_surface(glued, len(labels))
    side_paths = [
        [lab((3 * k + t) % n) for t in range(4)] for k in range(sides)
    ]
    return surface, side_paths


GENUS2_WORD = (1, 2, -1, -2, 3, 4, -3, -4)
GENUS3_WORD = (1, 2, -1, -2, 3, 4, -3, -4, 5, 6, -5, -6)
NONOR3_WORD = (1, 1, 2, 2, 3, 3)


def genus2_surface():
    surface, sides = polygon_schema_surface(GENUS2_WORD)
    return surface, sides


def closed_surface(kind: str) -> SimplicialSurface:
    """Closed surfaces for the homeomorphism-group lookup checks."""
    if kind == "sphere":
        return require_surface(*tetrahedron())
    if kind == "projective_plane":
        return require_surface(*rp2_6())
    if kind == "torus":
        return require_surface(*torus7())
    if kind == "klein_bottle":
        return require_surface(*klein8())
    if kind == "genus2":
        return genus2_surface()[0]
    if kind == "genus3":
        return polygon_schema_surface(GENUS3_WORD)[0]
    if kind == "nonorientable_genus3":
        return polygon_schema_surface(NONOR3_WORD)[0]
    raise UnknownExample(kind)


def _cycle_edges(cycle):
    return [edge_key(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def _path_edges(path):
    return [edge_key(path[i], path[i + 1]) for i in range(len(path) - 1)]


def subdivided_disk():
    """A single triangle subdivided twice, with a deterministic interior
    2-edge arc."""
    base = require_surface([(0, 1, 2)], 3)
    s1, _ = barycentric_subdivision(base)
    s2, _ = barycentric_subdivision(s1)
    interior = [
        v for v in range(s2.vertex_count) if v not in s2.boundary_vertices
    ]
    iset = set(interior)
    for u in interior:
        nbrs = sorted(
            w
            for e in s2.edges
            if u in e
            for w in e
            if w != u and w in iset
        )
        if len(nbrs) >= 2:
            return s2, [nbrs[0], u, nbrs[1]]
    raise AssertionError("no interior arc found in subdivided disk")


def _entry(surface_data, sub_vertices, sub_edges, sub_triangles, expected_tag, expected_case):
    tris, nv = surface_data
    return {
        "triangles": [list(t) for t in tris],
        "vertex_count": nv,
        "sub_vertices": sorted(set(sub_vertices)),
        "sub_edges": sorted(set(sub_edges)),
        "sub_triangles": sorted(set(sub_triangles)),
        "expected_tag": expected_tag,
        "expected_case": expected_case,
    }


def _circle_entry(surface_data, cycle, expected_tag, expected_case):
    return _entry(surface_data, cycle, _cycle_edges(cycle), [], expected_tag, expected_case)


TORUS_MERIDIAN = [0, 1, 2]
TORUS_LONGITUDE = [0, 3, 6]
RP2_CORE = [1, 2, 3]
RP2_TREE_EDGES = [(0, 1), (0, 2), (0, 3)]
GENUS2_CIRCLE_SIDE = 0       # side "a" of the octagon schema
GENUS2_WEDGE_SIDES = (0, 1)  # sides "a" and "b": one handle's two circles


def _build_catalog():
    entries = {}

    entries["sphere_arc"] = _entry(
        tetrahedron(), [0, 1], [(0, 1)], [], "UnitTangentBundle(Sphere)", "Thm 1.3 (1)"
    )

    t7 = torus7()
    entries["torus_meridian"] = _circle_entry(
        t7, TORUS_MERIDIAN, "Torus", "Thm 1.2 (2)"
    )
    wedge_edges = _cycle_edges(TORUS_MERIDIAN) + _cycle_edges(TORUS_LONGITUDE)
    entries["torus_wedge"] = _entry(
        t7,
        TORUS_MERIDIAN + TORUS_LONGITUDE,
        wedge_edges,
        [],
        "Torus",
        "Thm 1.1 (2)",
    )

    g2, sides = genus2_surface()
    g2_data = ([list(t) for t in g2.triangles], g2.vertex_count)
    a_cycle = sides[GENUS2_WEDGE_SIDES[0]][:3]
    b_cycle = sides[GENUS2_WEDGE_SIDES[1]][:3]
    entries["genus2_wedge"] = _entry(
        g2_data,
        a_cycle + b_cycle,
        _cycle_edges(a_cycle) + _cycle_edges(b_cycle),
        [],
        "Point",
        "Thm 1.1 (1)",
    )
    entries["genus2_circle"] = _circle_entry(
        g2_data, sides[GENUS2_CIRCLE_SIDE][:3], "Circle", "Thm 5.1 (1)"
    )

    rp2 = rp2_6()
    entries["rp2_core_circle"] = _circle_entry(
        rp2, RP2_CORE, "SO3ModZ2", "Thm 1.2 (4)(i)"
    )
    entries["rp2_tree"] = _entry(
        rp2,
        [0, 1, 2, 3],
        RP2_TREE_EDGES,
        [],
        "UnitTangentBundleOfCover(Sphere)",
        "Thm 1.3 (2)",
    )

    k8 = klein8()
    entries["klein_meridian"] = _circle_entry(
        k8, klein_meridian_cycle(), "Torus", "Thm 5.1 (3)(i)"
    )
    entries["klein_op_longitude"] = _circle_entry(
        k8, klein_op_longitude_cycle(), "Circle", "Thm 5.1 (3)(ii)"
    )
    entries["klein_or_longitude"] = _circle_entry(
        k8, klein_or_longitude_cycle(), "Circle", "Thm 5.1 (3)(iii)"
    )
    meridian = klein_meridian_cycle(column=2)
    # a face boundary sharing exactly one vertex with the meridian
    trivial_cycle = [klein8_vert(2, 1), klein8_vert(3, 1), klein8_vert(3, 2)]
    entries["klein_meridian_wedge_trivial"] = _entry(
        k8,
        meridian + trivial_cycle,
        _cycle_edges(meridian) + _cycle_edges(trivial_cycle),
        [],
        "Torus",
        "Thm 1.2 (3)(i)",
    )

    ann_tris, ann_nv, ann_core = annulus_grid()
    entries["annulus_core"] = _circle_entry(
        (ann_tris, ann_nv), ann_core, "Circle", "Thm 1.2 (1)"
    )

    mob_tris, mob_nv, mob_core = mobius_grid()
    entries["mobius_core"] = _circle_entry(
        (mob_tris, mob_nv), mob_core, "Circle", "Thm 1.2 (1)"
    )

    disk, arc = subdivided_disk()
    entries["disk_arc"] = _entry(
        ([list(t) for t in disk.triangles], disk.vertex_count),
        arc,
        _path_edges(arc),
        [],
        "UnitTangentBundle(interior of Disk)",
        "Thm 1.3 (1)",
    )

    return entries


_CATALOG_CACHE = None


def catalog() -> dict[str, dict]:
    global _CATALOG_CACHE
    if _CATALOG_CACHE is None:
        _CATALOG_CACHE = _build_catalog()
    return _CATALOG_CACHE


CATALOG_NAMES = (
    "sphere_arc",
    "torus_meridian",
    "torus_wedge",
    "genus2_wedge",
    "genus2_circle",
    "rp2_core_circle",
    "rp2_tree",
    "klein_meridian",
    "klein_op_longitude",
    "klein_or_longitude",
    "klein_meridian_wedge_trivial",
    "annulus_core",
    "disk_arc",
    "mobius_core",
)


def catalog_entry(name: str) -> dict:
    try:
        return catalog()[name]
    except KeyError:
        raise UnknownExample(f"unknown example {name!r}") from None
