"""Combinatorial triangulated surfaces.

A surface is a plain triangle list over integer vertices.  Validation checks
the three manifold conditions (edge degrees, vertex links, dual connectivity);
classification derives orientability by coherent-orientation BFS over the dual
graph, counts boundary cycles, and solves the genus from the Euler
characteristic.  Everything is index-based; no geometry is stored.  All
objects are immutable after construction and every operation is a pure
function, so distinct inputs may be processed in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidSurface, OrientableInput

Triangle = tuple[int, int, int]
Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def tri_key(t) -> Triangle:
    return tuple(sorted(t))


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    failures: tuple[tuple[str, object], ...]


@dataclass(frozen=True)
class SurfaceType:
    orientable: bool
    genus: int
    boundary_components: int
    euler_characteristic: int

    @property
    def closed(self) -> bool:
        return self.boundary_components == 0

    @property
    def is_sphere(self) -> bool:
        return self.orientable and self.genus == 0 and self.closed

    @property
    def is_disk(self) -> bool:
        return self.orientable and self.genus == 0 and self.boundary_components == 1

    @property
    def is_annulus(self) -> bool:
        return self.orientable and self.genus == 0 and self.boundary_components == 2

    @property
    def is_mobius_band(self) -> bool:
        return (not self.orientable) and self.genus == 1 and self.boundary_components == 1

    @property
    def is_torus(self) -> bool:
        return self.orientable and self.genus == 1 and self.closed

    @property
    def is_klein_bottle(self) -> bool:
        return (not self.orientable) and self.genus == 2 and self.closed

    @property
    def is_projective_plane(self) -> bool:
        return (not self.orientable) and self.genus == 1 and self.closed

    def describe(self) -> str:
        named = {
            (True, 0, 0): "Sphere",
            (True, 0, 1): "Disk",
            (True, 0, 2): "Annulus",
            (True, 1, 0): "Torus",
            (False, 1, 1): "MobiusBand",
            (False, 1, 0): "ProjectivePlane",
            (False, 2, 0): "KleinBottle",
        }
        key = (self.orientable, self.genus, self.boundary_components)
        if key in named:
            return named[key]
        side = "orientable" if self.orientable else "nonorientable"
        s = f"{side} genus {self.genus}"
        if self.boundary_components:
            s += f" with {self.boundary_components} boundary circles"
        return s

    def interior_name(self) -> str:
        """Display name treating boundary as deleted (open surface)."""
        name = self.describe()
        return f"interior of {name}" if self.boundary_components else name


class SimplicialSurface:
    """A validated triangulated compact surface, possibly with boundary.

    Construct through :func:`build_and_validate`.  Derived adjacency tables
    (edge table, edge->triangle incidence, per-vertex triangle stars) are
    computed once and never mutated.
    """

    def __init__(self, vertex_count: int, triangles):
        self.vertex_count = vertex_count
        self.triangles: tuple[Triangle, ...] = tuple(tuple(t) for t in triangles)
        self.edge_triangles: dict[Edge, tuple[int, ...]] = {}
        et: dict[Edge, list[int]] = {}
        vt: dict[int, list[int]] = {v: [] for v in range(vertex_count)}
        for i, (a, b, c) in enumerate(self.triangles):
            for e in ((a, b), (b, c), (a, c)):
                et.setdefault(edge_key(*e), []).append(i)
            for v in (a, b, c):
                vt[v].append(i)
        self.edge_triangles = {e: tuple(ts) for e, ts in sorted(et.items())}
        self.edges: tuple[Edge, ...] = tuple(self.edge_triangles)
        self.vertex_triangles: dict[int, tuple[int, ...]] = {
            v: tuple(ts) for v, ts in vt.items()
        }
        self.boundary_edges: tuple[Edge, ...] = tuple(
            e for e, ts in self.edge_triangles.items() if len(ts) == 1
        )
        self.boundary_vertices: frozenset[int] = frozenset(
            v for e in self.boundary_edges for v in e
        )

    def __repr__(self):
        return (
            f"SimplicialSurface(V={self.vertex_count}, E={len(self.edges)}, "
            f"F={len(self.triangles)})"
        )

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.edge_triangles

    def has_triangle(self, t) -> bool:
        return tri_key(t) in self._triangle_set

    @property
    def _triangle_set(self) -> frozenset[Triangle]:
        ts = getattr(self, "_tri_set_cache", None)
        if ts is None:
            ts = frozenset(tri_key(t) for t in self.triangles)
            self._tri_set_cache = ts
        return ts

    def vertex_link(self, v: int):
        """Link of v as a list of (neighbour, neighbour) pairs, one per
        incident triangle."""
        return [
            tuple(w for w in self.triangles[i] if w != v)
            for i in self.vertex_triangles[v]
        ]


def _link_condition(surface_triangles, vertex_count):
    """Yield (vertex, reason) for every vertex whose link is not a single
    path or cycle."""
    incident: dict[int, list[tuple[int, int]]] = {v: [] for v in range(vertex_count)}
    for a, b, c in surface_triangles:
        incident[a].append((b, c))
        incident[b].append((a, c))
        incident[c].append((a, b))
    for v in range(vertex_count):
        pairs = incident[v]
        if not pairs:
            yield v, "isolated vertex"
            continue
        degree: dict[int, int] = {}
        adj: dict[int, list[int]] = {}
        for x, y in pairs:
            degree[x] = degree.get(x, 0) + 1
            degree[y] = degree.get(y, 0) + 1
            adj.setdefault(x, []).append(y)
            adj.setdefault(y, []).append(x)
        if any(d > 2 for d in degree.values()):
            yield v, "link vertex of degree > 2"
            continue
        ends = [x for x, d in degree.items() if d == 1]
        if len(ends) not in (0, 2):
            yield v, "link is not a single path"
            continue
        start = min(ends) if ends else min(degree)
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(degree):
            yield v, "link disconnected"


def build_and_validate(triangles, vertex_count: int):
    """Build a SimplicialSurface, or return a ValidationReport listing every
    violated manifold condition.

    Conditions: DegenerateTriangle (repeated vertex), DuplicateTriangle,
    NonManifoldEdge (edge in 3+ triangles), NonManifoldVertexLink,
    Disconnected (dual triangle-adjacency graph).
    """
    failures: list[tuple[str, object]] = []
    tris = [tuple(t) for t in triangles]
    for t in tris:
        if len(t) != 3 or any(not (0 <= v < vertex_count) for v in t):
            raise ValueError(f"triangle {t} indexes outside 0..{vertex_count - 1}")
    for t in tris:
        if len(set(t)) != 3:
            failures.append(("DegenerateTriangle", t))
    seen: dict[Triangle, int] = {}
    for t in tris:
        k = tri_key(t)
        if k in seen:
            failures.append(("DuplicateTriangle", t))
        seen[k] = 1
    if failures:
        return ValidationReport(False, tuple(failures))

    et: dict[Edge, list[int]] = {}
    for i, (a, b, c) in enumerate(tris):
        for e in ((a, b), (b, c), (a, c)):
            et.setdefault(edge_key(*e), []).append(i)
    for e, ts in sorted(et.items()):
        if len(ts) > 2:
            failures.append(("NonManifoldEdge", e))
    for v, _reason in _link_condition(tris, vertex_count):
        failures.append(("NonManifoldVertexLink", v))

    if not tris:
        failures.append(("Disconnected", None))
    else:
        seen_t = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            a, b, c = tris[i]
            for e in ((a, b), (b, c), (a, c)):
                for j in et[edge_key(*e)]:
                    if j not in seen_t:
                        seen_t.add(j)
                        stack.append(j)
        if len(seen_t) != len(tris):
            failures.append(("Disconnected", len(tris) - len(seen_t)))

    if failures:
        return ValidationReport(False, tuple(failures))
    return SimplicialSurface(vertex_count, tris)


def require_surface(triangles, vertex_count: int) -> SimplicialSurface:
    result = build_and_validate(triangles, vertex_count)
    if isinstance(result, ValidationReport):
        raise InvalidSurface(result)
    return result


def euler_characteristic(surface: SimplicialSurface) -> int:
    return surface.vertex_count - len(surface.edges) + len(surface.triangles)


def oriented_boundary_directions(t: Triangle):
    a, b, c = t
    return ((a, b), (b, c), (c, a))


def edges_coherent(t1: Triangle, t2: Triangle, shared: Edge) -> bool:
    """True iff the listed orientations of two triangles sharing `shared`
    induce opposite directions on it (i.e. are compatible)."""
    u, v = shared

    def direction(t):
        for x, y in oriented_boundary_directions(t):
            if (x, y) == (u, v):
                return 1
            if (x, y) == (v, u):
                return -1
        raise AssertionError(f"edge {shared} not in triangle {t}")

    return direction(t1) != direction(t2)


def _orientation_signs(surface: SimplicialSurface):
    """BFS-assign a coherent orientation sign to every triangle.

    Returns (orientable, signs).  signs[i] = +-1 relative to the listed
    vertex order of triangle i; when the surface is nonorientable the signs
    are still returned (they are BFS-consistent but somewhere incoherent).
    """
    n = len(surface.triangles)
    signs = [0] * n
    orientable = True
    for start in range(n):
        if signs[start]:
            continue
        signs[start] = 1
        queue = [start]
        while queue:
            i = queue.pop(0)
            t1 = surface.triangles[i]
            for e in (
                edge_key(t1[0], t1[1]),
                edge_key(t1[1], t1[2]),
                edge_key(t1[0], t1[2]),
            ):
                for j in surface.edge_triangles[e]:
                    if j == i:
                        continue
                    flip = 1 if edges_coherent(t1, surface.triangles[j], e) else -1
                    expected = signs[i] * flip
                    if signs[j] == 0:
                        signs[j] = expected
                        queue.append(j)
                    elif signs[j] != expected:
                        orientable = False
    return orientable, signs


def _boundary_cycle_count(surface: SimplicialSurface) -> int:
    adj: dict[int, list[int]] = {}
    for u, v in surface.boundary_edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen: set[int] = set()
    cycles = 0
    for v in sorted(adj):
        if v in seen:
            continue
        cycles += 1
        stack = [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return cycles


def classify_surface(surface: SimplicialSurface) -> SurfaceType:
    """Orientability, boundary count and genus of a valid surface."""
    orientable, _ = _orientation_signs(surface)
    b = _boundary_cycle_count(surface)
    chi = euler_characteristic(surface)
    if orientable:
        genus2 = 2 - chi - b
        if genus2 % 2:
            raise AssertionError("parity violation in orientable genus")
        genus = genus2 // 2
    else:
        genus = 2 - chi - b
        if genus < 1:
            raise AssertionError("nonorientable surface with genus < 1")
    return SurfaceType(orientable, genus, b, chi)


@dataclass(frozen=True)
class SubdivisionMap:
    """Carry data for one barycentric subdivision.

    Original vertices keep their indices.  Edge midpoints and triangle
    barycenters are appended, so subcomplexes and edge loops can be
    transported verbatim.
    """

    edge_mid: dict[Edge, int]
    tri_center: dict[int, int]
    tri_children: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def carry_loop(self, loop):
        out = []
        for i, v in enumerate(loop):
            w = loop[(i + 1) % len(loop)]
            out.append(v)
            out.append(self.edge_mid[edge_key(v, w)])
        return out


def barycentric_subdivision(surface: SimplicialSurface):
    """Standard barycentric subdivision; returns (surface', SubdivisionMap).

    Each triangle becomes 6, with child orientations matching the parent so
    (non)orientability is preserved on the nose.
    """
    nv = surface.vertex_count
    edge_mid: dict[Edge, int] = {}
    for e in surface.edges:
        edge_mid[e] = nv
        nv += 1
    tri_center: dict[int, int] = {}
    for i in range(len(surface.triangles)):
        tri_center[i] = nv
        nv += 1
    new_tris: list[Triangle] = []
    children: dict[int, tuple[int, ...]] = {}
    for i, (a, b, c) in enumerate(surface.triangles):
        z = tri_center[i]
        mab = edge_mid[edge_key(a, b)]
        mbc = edge_mid[edge_key(b, c)]
        mca = edge_mid[edge_key(c, a)]
        ch = []
        for t in (
            (a, mab, z),
            (mab, b, z),
            (b, mbc, z),
            (mbc, c, z),
            (c, mca, z),
            (mca, a, z),
        ):
            ch.append(len(new_tris))
            new_tris.append(t)
        children[i] = tuple(ch)
    out = SimplicialSurface(nv, new_tris)
    return out, SubdivisionMap(edge_mid, tri_center, children)


@dataclass(frozen=True)
class CoveringMap:
    """Orientation double cover of a nonorientable surface.

    sheet_map sends each triangle of the total space to (base triangle index,
    sheet tag), where tag +1 lifts the listed orientation and -1 the reversed
    one.  deck is the fixed-point-free involution on total-space vertices.
    """

    total: SimplicialSurface
    base: SimplicialSurface
    sheet_map: tuple[tuple[int, int], ...]
    deck: tuple[int, ...]


def orientation_double_cover(surface: SimplicialSurface) -> CoveringMap:
    """Build the connected orientation double cover of a nonorientable
    surface.  Raises OrientableInput for orientable input (there the total
    space is just two disjoint copies)."""
    if classify_surface(surface).orientable:
        raise OrientableInput(
            "surface is orientable; its orientation double cover is two disjoint copies"
        )
    slots = [
        (i, s, v)
        for i, t in enumerate(surface.triangles)
        for s in (1, -1)
        for v in t
    ]
    uf = UnionFind(slots)
    for e, ts in surface.edge_triangles.items():
        if len(ts) != 2:
            continue
        i, j = ts
        flip = 1 if edges_coherent(surface.triangles[i], surface.triangles[j], e) else -1
        for s in (1, -1):
            for v in e:
                uf.union((i, s, v), (j, s * flip, v))
    classes: dict[tuple[int, int, int], int] = {}
    reps: list[tuple[int, int, int]] = []
    for slot in slots:
        r = uf.find(slot)
        if r not in classes:
            classes[r] = len(reps)
            reps.append(r)
    def cls(slot):
        return classes[uf.find(slot)]

    new_tris: list[Triangle] = []
    sheet: list[tuple[int, int]] = []
    for i, (a, b, c) in enumerate(surface.triangles):
        for s in (1, -1):
            order = (a, b, c) if s == 1 else (a, c, b)
            new_tris.append(tuple(cls((i, s, v)) for v in order))
            sheet.append((i, s))
    total = require_surface(new_tris, len(reps))
    deck = [0] * len(reps)
    for slot in slots:
        i, s, v = slot
        deck[cls(slot)] = cls((i, -s, v))
    return CoveringMap(total, surface, tuple(sheet), tuple(deck))
