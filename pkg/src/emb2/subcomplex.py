"""Embedded subcomplexes, regular neighborhoods, spines and curve invariants.

The regular neighborhood of X is the closed star of its image in the second
barycentric subdivision of the host; that is a compact subsurface which
collapses onto X, and the collapse sequence is recorded as a certificate.
Spines arise from collapsing the neighborhood to a graph; the chord loops of
a spanning tree of that graph are embedded circles generating the image of
the fundamental group.

Curve invariants are computed combinatorially: orientation transport along a
closed edge path decides orientation-preserving vs reversing (this evaluates
the first Stiefel-Whitney class on the loop), and separation is decided by
cutting along the circle and counting components, which is also correct for
surfaces with boundary and for one-sided circles.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import (
    CollapseFailed,
    EmptySubcomplex,
    NotAClosedPath,
    NotConnected,
    NotEmbeddedCircle,
    NotClosedUnderFaces,
    UnknownSimplex,
    XIsWholeSurface,
)
from .surface import (
    Edge,
    SimplicialSurface,
    SubdivisionMap,
    SurfaceType,
    Triangle,
    barycentric_subdivision,
    classify_surface,
    edge_key,
    edges_coherent,
    require_surface,
    tri_key,
)


class Subcomplex:
    """A compact connected subcomplex of a SimplicialSurface, closed under
    faces.  The basepoint is its least-index vertex."""

    def __init__(self, host: SimplicialSurface, vertices, edges, triangles):
        self.host = host
        self.vertices: frozenset[int] = frozenset(vertices)
        self.edges: frozenset[Edge] = frozenset(edge_key(*e) for e in edges)
        self.triangles: frozenset[Triangle] = frozenset(tri_key(t) for t in triangles)
        self._validate()
        self.basepoint: int = min(self.vertices)
        self._degrees = {v: 0 for v in self.vertices}
        for u, v in self.edges:
            self._degrees[u] += 1
            self._degrees[v] += 1

    def _validate(self):
        if not self.vertices:
            raise EmptySubcomplex("subcomplex has no vertices")
        for v in self.vertices:
            if not (0 <= v < self.host.vertex_count):
                raise UnknownSimplex(f"vertex {v} not in host surface")
        for e in self.edges:
            if e not in self.host.edge_triangles:
                raise UnknownSimplex(f"edge {e} not in host surface")
            if not set(e) <= self.vertices:
                raise NotClosedUnderFaces(f"edge {e} has unlisted endpoint")
        for t in self.triangles:
            if not self.host.has_triangle(t):
                raise UnknownSimplex(f"triangle {t} not in host surface")
            a, b, c = t
            for e in (edge_key(a, b), edge_key(b, c), edge_key(a, c)):
                if e not in self.edges:
                    raise NotClosedUnderFaces(f"triangle {t} has unlisted edge {e}")
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        start = min(self.vertices)
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != len(self.vertices):
            raise NotConnected("subcomplex is not connected")

    @property
    def is_point(self) -> bool:
        return len(self.vertices) == 1 and not self.edges

    @property
    def is_arc(self) -> bool:
        if self.triangles or not self.edges:
            return False
        degs = sorted(self._degrees.values())
        return degs.count(1) == 2 and all(d <= 2 for d in degs)

    @property
    def is_circle(self) -> bool:
        if self.triangles or not self.edges:
            return False
        return all(d == 2 for d in self._degrees.values())

    @property
    def is_closed_surface(self) -> bool:
        if not self.triangles:
            return False
        cover_e: dict[Edge, int] = {}
        cover_v: set[int] = set()
        for t in self.triangles:
            a, b, c = t
            cover_v.update(t)
            for e in (edge_key(a, b), edge_key(b, c), edge_key(a, c)):
                cover_e[e] = cover_e.get(e, 0) + 1
        if cover_v != self.vertices or set(cover_e) != self.edges:
            return False
        return all(n == 2 for n in cover_e.values())

    def is_whole_host(self) -> bool:
        return len(self.triangles) == len(self.host.triangles)

    def circle_cycle(self) -> list[int]:
        """Vertex cycle of a circle subcomplex, starting at the basepoint in
        the direction of its smaller neighbour."""
        if not self.is_circle:
            raise NotEmbeddedCircle("subcomplex is not a circle")
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        start = self.basepoint
        cycle = [start]
        prev, cur = None, start
        nxt = min(adj[start])
        while nxt != start:
            cycle.append(nxt)
            prev, cur = cur, nxt
            a, b = adj[cur]
            nxt = b if a == prev else a
        return cycle

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.triangles)


def embed_subcomplex(surface: SimplicialSurface, vertices, edges=(), triangles=()) -> Subcomplex:
    """Validate (vertices, edges, triangles) as a subcomplex of `surface`."""
    return Subcomplex(surface, vertices, edges, triangles)


def carry(sub_map: SubdivisionMap, old_host: SimplicialSurface, new_host: SimplicialSurface, x: Subcomplex) -> Subcomplex:
    """Transport a subcomplex through one barycentric subdivision."""
    verts = set(x.vertices)
    edges: set[Edge] = set()
    tris: set[Triangle] = set()
    for e in x.edges:
        m = sub_map.edge_mid[e]
        verts.add(m)
        u, v = e
        edges.add(edge_key(u, m))
        edges.add(edge_key(m, v))
    old_index = {tri_key(t): i for i, t in enumerate(old_host.triangles)}
    for t in x.triangles:
        i = old_index[tri_key(t)]
        for child in sub_map.tri_children[i]:
            ct = new_host.triangles[child]
            tris.add(tri_key(ct))
            a, b, c = ct
            verts.update(ct)
            edges.update((edge_key(a, b), edge_key(b, c), edge_key(a, c)))
    return Subcomplex(new_host, verts, edges, tris)


# ---------------------------------------------------------------------------
# collapsing


def collapse(vertices, edges, triangles, keep_vertices=(), keep_edges=(), keep_triangles=()):
    """Greedy elementary collapse of a 2-complex.

    Free faces are consumed in (dimension descending, lexicographic) order:
    all free (edge, triangle) pairs before any free (vertex, edge) pair.
    Returns (vertices, edges, triangles, steps); simplices listed in `keep_*`
    are never removed.
    """
    verts = set(vertices)
    edges = set(edges)
    tris = set(triangles)
    keep_v = set(keep_vertices)
    keep_e = set(edge_key(*e) for e in keep_edges)
    keep_t = set(tri_key(t) for t in keep_triangles)

    edge_cofaces: dict[Edge, set[Triangle]] = {e: set() for e in edges}
    vert_cofaces_e: dict[int, set[Edge]] = {v: set() for v in verts}
    vert_cofaces_t: dict[int, set[Triangle]] = {v: set() for v in verts}
    for t in tris:
        a, b, c = t
        for e in (edge_key(a, b), edge_key(b, c), edge_key(a, c)):
            edge_cofaces[e].add(t)
        for v in t:
            vert_cofaces_t[v].add(t)
    for e in edges:
        for v in e:
            vert_cofaces_e[v].add(e)

    heap: list[tuple[int, object]] = []

    def push_edge(e):
        if e not in keep_e and len(edge_cofaces.get(e, ())) == 1:
            heapq.heappush(heap, (0, e))

    def push_vertex(v):
        if (
            v not in keep_v
            and not vert_cofaces_t.get(v)
            and len(vert_cofaces_e.get(v, ())) == 1
        ):
            heapq.heappush(heap, (1, v))

    for e in sorted(edges):
        push_edge(e)
    for v in sorted(verts):
        push_vertex(v)

    steps = []
    while heap:
        dim, face = heapq.heappop(heap)
        if dim == 0:
            e = face
            if e not in edges or e in keep_e or len(edge_cofaces[e]) != 1:
                continue
            (t,) = edge_cofaces[e]
            if t in keep_t:
                continue
            steps.append((e, t))
            tris.discard(t)
            edges.discard(e)
            a, b, c = t
            for e2 in (edge_key(a, b), edge_key(b, c), edge_key(a, c)):
                edge_cofaces[e2].discard(t)
                if e2 != e:
                    push_edge(e2)
            for v in t:
                vert_cofaces_t[v].discard(t)
            for v in e:
                vert_cofaces_e[v].discard(e)
            for v in t:
                push_vertex(v)
        else:
            v = face
            if v not in verts or v in keep_v:
                continue
            if vert_cofaces_t[v] or len(vert_cofaces_e[v]) != 1:
                continue
            (e,) = vert_cofaces_e[v]
            if e in keep_e:
                continue
            steps.append((v, e))
            verts.discard(v)
            edges.discard(e)
            for w in e:
                vert_cofaces_e[w].discard(e)
                if w != v:
                    push_vertex(w)
    return verts, edges, tris, steps


# ---------------------------------------------------------------------------
# regular neighborhood


@dataclass(frozen=True)
class NeighborhoodDecomposition:
    """Closed-star neighborhood of X in the twice-subdivided host, the
    complement components, and the collapse certificate N -> X."""

    host2: SimplicialSurface
    x2: Subcomplex
    neighborhood: Subcomplex
    neighborhood_type: SurfaceType
    components: tuple[tuple[Subcomplex, SurfaceType, str], ...]
    collapse_steps: tuple

    def component_labels(self):
        return tuple(label for _, _, label in self.components)


def _component_label(st: SurfaceType) -> str:
    if st.is_disk:
        return "Disk"
    if st.is_annulus:
        return "Annulus"
    if st.is_mobius_band:
        return "MobiusBand"
    return "Other"


def subcomplex_from_triangles(host: SimplicialSurface, tris) -> Subcomplex:
    verts: set[int] = set()
    edges: set[Edge] = set()
    tset: set[Triangle] = set()
    for t in tris:
        a, b, c = tri_key(t)
        tset.add((a, b, c))
        verts.update((a, b, c))
        edges.update((edge_key(a, b), edge_key(b, c), edge_key(a, c)))
    return Subcomplex(host, verts, edges, tset)


def as_standalone_surface(host: SimplicialSurface, tris):
    """Reindex a triangle set as its own surface (for classification)."""
    verts = sorted({v for t in tris for v in t})
    index = {v: i for i, v in enumerate(verts)}
    return require_surface([tuple(index[v] for v in t) for t in sorted(tris)], len(verts))


def regular_neighborhood(surface: SimplicialSurface, x: Subcomplex) -> NeighborhoodDecomposition:
    """Closed star of X in the second barycentric subdivision, plus the
    classified complement components and a collapse certificate."""
    if x.is_whole_host():
        raise XIsWholeSurface("X equals the whole surface")
    s1, m1 = barycentric_subdivision(surface)
    x1 = carry(m1, surface, s1, x)
    s2, m2 = barycentric_subdivision(s1)
    x2 = carry(m2, s1, s2, x1)

    star = [t for t in s2.triangles if x2.vertices.intersection(t)]
    n = subcomplex_from_triangles(s2, star)
    n_type = classify_surface(as_standalone_surface(s2, star))

    star_set = {tri_key(t) for t in star}
    rest = [t for t in s2.triangles if tri_key(t) not in star_set]
    components = []
    for comp in _triangle_components(s2, rest):
        comp_sub = subcomplex_from_triangles(s2, comp)
        st = classify_surface(as_standalone_surface(s2, comp))
        components.append((comp_sub, st, _component_label(st)))
    components.sort(key=lambda c: min(c[0].triangles))

    verts, edges, tris, steps = collapse(
        n.vertices,
        n.edges,
        n.triangles,
        keep_vertices=x2.vertices,
        keep_edges=x2.edges,
        keep_triangles=x2.triangles,
    )
    if (verts, edges, tris) != (set(x2.vertices), set(x2.edges), set(x2.triangles)):
        raise CollapseFailed("regular neighborhood does not collapse onto X")
    return NeighborhoodDecomposition(
        s2, x2, n, n_type, tuple(components), tuple(steps)
    )


def _triangle_components(surface: SimplicialSurface, tris):
    tset = {tri_key(t): t for t in tris}
    remaining = set(tset)
    comps = []
    while remaining:
        start = min(remaining)
        comp = [start]
        remaining.discard(start)
        stack = [start]
        while stack:
            t = stack.pop()
            a, b, c = t
            for e in (edge_key(a, b), edge_key(b, c), edge_key(a, c)):
                for j in surface.edge_triangles[e]:
                    k = tri_key(surface.triangles[j])
                    if k in remaining:
                        remaining.discard(k)
                        comp.append(k)
                        stack.append(k)
        comps.append(comp)
    return comps


# ---------------------------------------------------------------------------
# spine


@dataclass(frozen=True)
class SpineLoop:
    cycle: tuple[int, ...]
    word: tuple[int, ...]
    essential: bool
    orientation_preserving: bool
    separating: bool


@dataclass(frozen=True)
class Spine:
    """Graph onto which the neighborhood collapses, with a spanning tree
    rooted at the carried basepoint and one embedded chord loop per
    non-tree edge."""

    vertices: frozenset[int]
    edges: frozenset[Edge]
    root: int
    tree_parent: dict
    chords: tuple[Edge, ...]
    loops: tuple[SpineLoop, ...]

    def chord_count(self) -> int:
        return len(self.chords)


def spine_graph(decomp: NeighborhoodDecomposition):
    """Collapse the neighborhood to a graph (no kept subcomplex except the
    basepoint vertex)."""
    n = decomp.neighborhood
    root = decomp.x2.basepoint
    verts, edges, tris, steps = collapse(
        n.vertices, n.edges, n.triangles, keep_vertices={root}
    )
    if tris:
        raise CollapseFailed("neighborhood did not collapse to a graph")
    return verts, edges, root, steps


def _tree_paths(verts, edges, root):
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for u, v in sorted(edges):
        adj[u].append(v)
        adj[v].append(u)
    parent = {root: None}
    order = [root]
    queue = [root]
    while queue:
        x = queue.pop(0)
        for y in sorted(adj[x]):
            if y not in parent:
                parent[y] = x
                order.append(y)
                queue.append(y)
    if len(parent) != len(verts):
        raise CollapseFailed("spine graph is disconnected")
    return parent


def _path_to_root(parent, v):
    path = [v]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    return path  # root ... v


def chord_cycle(parent, chord: Edge) -> list[int]:
    """Embedded cycle of a non-tree edge: tree path between its endpoints
    plus the chord, with the shared root path cancelled."""
    u, v = chord
    pu = _path_to_root(parent, u)
    pv = _path_to_root(parent, v)
    i = 0
    while i < min(len(pu), len(pv)) and pu[i] == pv[i]:
        i += 1
    # junction at index i-1; cycle: junction ..> u -chord- v ..> junction
    return pu[i - 1 :] + pv[: i - 1 : -1]


# ---------------------------------------------------------------------------
# curve invariants


def _check_closed_path(surface: SimplicialSurface, loop):
    if len(loop) < 2:
        raise NotAClosedPath("loop needs at least two vertices")
    for i, v in enumerate(loop):
        w = loop[(i + 1) % len(loop)]
        if not surface.has_edge(v, w):
            raise NotAClosedPath(f"({v}, {w}) is not an edge")


def _fan_path_sign(surface: SimplicialSurface, v: int, t_from: int, e_to: Edge):
    """Pivot around vertex v from triangle t_from to some triangle containing
    e_to, multiplying orientation-coherence signs.  Returns (sign, triangle)."""
    fan = surface.vertex_triangles[v]
    target = set(surface.edge_triangles[e_to])
    best = {t_from: 1}
    queue = [t_from]
    while queue:
        t = queue.pop(0)
        if t in target:
            return best[t], t
        tri = surface.triangles[t]
        others = [w for w in tri if w != v]
        for w in others:
            e = edge_key(v, w)
            for j in surface.edge_triangles[e]:
                if j != t and j not in best and j in fan:
                    s = 1 if edges_coherent(tri, surface.triangles[j], e) else -1
                    best[j] = best[t] * s
                    queue.append(j)
    raise NotAClosedPath(f"cannot pivot around vertex {v}")


def is_orientation_preserving(surface: SimplicialSurface, loop) -> bool:
    """Transport a local orientation along a closed edge path; True iff it
    returns unflipped."""
    _check_closed_path(surface, loop)
    k = len(loop)
    e0 = edge_key(loop[0], loop[1])
    t_cur = min(surface.edge_triangles[e0])
    sign = 1
    for i in range(1, k + 1):
        v = loop[i % k]
        e_next = edge_key(v, loop[(i + 1) % k])
        s, t_cur = _fan_path_sign(surface, v, t_cur, e_next)
        sign *= s
    # close up: t_cur contains e0; cross back to the starting triangle if needed
    t0 = min(surface.edge_triangles[e0])
    if t_cur != t0:
        sign *= (
            1
            if edges_coherent(surface.triangles[t_cur], surface.triangles[t0], e0)
            else -1
        )
    return sign == 1


def _check_embedded_circle(surface: SimplicialSurface, cycle):
    if len(cycle) < 3:
        raise NotEmbeddedCircle("circle needs at least three vertices")
    if len(set(cycle)) != len(cycle):
        raise NotEmbeddedCircle("repeated vertex")
    for i, v in enumerate(cycle):
        w = cycle[(i + 1) % len(cycle)]
        if not surface.has_edge(v, w):
            raise NotEmbeddedCircle(f"({v}, {w}) is not an edge")
    for v in cycle:
        if v in surface.boundary_vertices:
            raise NotEmbeddedCircle(f"vertex {v} lies on the boundary")


def cut_along(surface: SimplicialSurface, cycle):
    """Cut the surface along an embedded circle (two-sided or one-sided) and
    return the resulting pieces as standalone surfaces.

    Each circle vertex splits into one copy per fan arc of its star between
    the two incident circle edges; triangles are rewritten accordingly and
    the connected components of the result are reassembled.
    """
    _check_embedded_circle(surface, cycle)
    k = len(cycle)
    on_cycle = {v: i for i, v in enumerate(cycle)}
    cycle_edges = {edge_key(cycle[i], cycle[(i + 1) % k]) for i in range(k)}

    next_vertex = surface.vertex_count
    # (vertex, triangle index) -> replacement vertex id
    corner_copy: dict[tuple[int, int], int] = {}
    for v in cycle:
        i = on_cycle[v]
        e_prev = edge_key(cycle[(i - 1) % k], v)
        e_next = edge_key(v, cycle[(i + 1) % k])
        fan = set(surface.vertex_triangles[v])
        groups = []
        remaining = set(fan)
        while remaining:
            start = min(remaining)
            remaining.discard(start)
            comp = [start]
            stack = [start]
            while stack:
                t = stack.pop()
                tri = surface.triangles[t]
                for w in tri:
                    if w == v:
                        continue
                    e = edge_key(v, w)
                    if e in (e_prev, e_next) or e in cycle_edges:
                        continue
                    for j in surface.edge_triangles[e]:
                        if j in remaining:
                            remaining.discard(j)
                            comp.append(j)
                            stack.append(j)
            groups.append(comp)
        if len(groups) != 2:
            raise NotEmbeddedCircle(
                f"star of vertex {v} does not split into two sides"
            )
        for comp in groups:
            for t in comp:
                corner_copy[(v, t)] = next_vertex
            next_vertex += 1

    new_tris = []
    for t, tri in enumerate(surface.triangles):
        new_tris.append(
            tuple(corner_copy.get((v, t), v) for v in tri)
        )

    # connected components of the cut complex
    et: dict[Edge, list[int]] = {}
    for i, (a, b, c) in enumerate(new_tris):
        for e in ((a, b), (b, c), (a, c)):
            et.setdefault(edge_key(*e), []).append(i)
    seen: set[int] = set()
    pieces = []
    for start in range(len(new_tris)):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            i = stack.pop()
            a, b, c = new_tris[i]
            for e in ((a, b), (b, c), (a, c)):
                for j in et[edge_key(*e)]:
                    if j not in seen:
                        seen.add(j)
                        comp.append(j)
                        stack.append(j)
        verts = sorted({v for i in comp for v in new_tris[i]})
        index = {v: i for i, v in enumerate(verts)}
        piece = require_surface(
            [tuple(index[v] for v in new_tris[i]) for i in sorted(comp)], len(verts)
        )
        pieces.append(piece)
    return pieces


def is_separating(surface: SimplicialSurface, cycle) -> bool:
    """True iff cutting along the embedded circle disconnects the surface."""
    return len(cut_along(surface, cycle)) == 2


def spine_with_loops(decomp: NeighborhoodDecomposition, presentation=None) -> Spine:
    """Spine of the neighborhood with its chord loops and their cached
    curve/essentiality properties.

    The presentation argument (built lazily when omitted) supplies the word
    problem used for the essentiality flags.
    """
    from . import pi1  # deferred: pi1 imports this module

    verts, edges, root, _steps = spine_graph(decomp)
    parent = _tree_paths(verts, edges, root)
    tree_edges = {
        edge_key(v, p) for v, p in parent.items() if p is not None
    }
    chords = tuple(sorted(e for e in edges if e not in tree_edges))

    host = decomp.host2
    if presentation is None:
        presentation = pi1.presentation(host, decomp.x2.basepoint)
    loops = []
    for chord in chords:
        cycle = tuple(chord_cycle(parent, chord))
        word = pi1.loop_word(host, presentation, cycle)
        essential = not pi1.is_trivial_word(presentation, word)
        op = is_orientation_preserving(host, cycle)
        sep = is_separating(host, cycle)
        loops.append(SpineLoop(cycle, word, essential, op, sep))
    return Spine(frozenset(verts), frozenset(edges), root, parent, chords, tuple(loops))


# ---------------------------------------------------------------------------
# disk neighborhoods for null-homotopic subcomplexes


def disk_hull(decomp: NeighborhoodDecomposition):
    """Grow the neighborhood by absorbing disk complement components until it
    is itself a disk.  Returns the list of absorbed component indices; raises
    CollapseFailed when no disk neighborhood is reachable this way (which
    cannot happen when X is null-homotopic in the host)."""
    tris = set(decomp.neighborhood.triangles)
    current = classify_surface(as_standalone_surface(decomp.host2, tris))
    absorbed = []
    remaining = list(range(len(decomp.components)))
    while not current.is_disk:
        disk_idx = None
        for i in remaining:
            if decomp.components[i][2] == "Disk":
                disk_idx = i
                break
        if disk_idx is None:
            raise CollapseFailed("no disk component left to absorb")
        tris |= set(decomp.components[disk_idx][0].triangles)
        remaining.remove(disk_idx)
        absorbed.append(disk_idx)
        current = classify_surface(as_standalone_surface(decomp.host2, tris))
    return absorbed
