"""Fundamental group presentations and the per-surface word problem.

The presentation is the edge-path group on a spanning tree: one generator per
non-tree edge, one relator per triangle.  Triviality of words is decided by a
strategy keyed to the surface class:

* TrivialGroup (sphere), OrderTwo (projective plane), ZxZ (torus),
  KleinGroup (Klein bottle), HyperbolicClosed (closed, chi < 0): raw words
  are rewritten into the canonical schema generators and decided there
  (exponent vectors, Klein normal forms, or Dehn's algorithm; every verdict
  is screened by the abelianization first).
* FreeGroup (nonempty boundary): the surface is collapsed to a graph and
  words are rewritten into the free basis of its chords.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import (
    CollapseFailed,
    InternalError,
    NotAClosedPath,
    TrivialGeneratorPresent,
    UnknownGenerator,
)
from .schema import PolygonalSchema
from .subcomplex import Spine, collapse
from .surface import SimplicialSurface, SurfaceType, classify_surface, edge_key
from .words import (
    KleinElement,
    Word,
    concat,
    exponent_vector,
    free_reduce,
    inv,
    klein_commutes,
    klein_coords,
    klein_normal_form,
    cokernel_invariants,
)

__all__ = [
    "GroupPresentation",
    "SubgroupClass",
    "presentation",
    "canonicalize",
    "loop_word",
    "is_trivial_word",
    "commutes",
    "induced_subgroup",
    "classify_subgroup",
    "klein_normal_form",
    "KleinElement",
    "presentation_h1",
    "abelianized_vector",
]


@dataclass
class GroupPresentation:
    surface: SimplicialSurface
    surface_type: SurfaceType
    basepoint: int
    strategy: str
    generators: tuple[tuple[int, int], ...]
    gen_index: dict
    relators: tuple[Word, ...]
    tree_parent: dict
    _schema: PolygonalSchema | None = field(default=None, repr=False)
    _gen_canonical: dict = field(default_factory=dict, repr=False)
    _free: object | None = field(default=None, repr=False)

    def generator_count(self) -> int:
        return len(self.generators)


def _strategy_for(st: SurfaceType) -> str:
    if st.boundary_components:
        return "FreeGroup"
    if st.is_sphere:
        return "TrivialGroup"
    if st.is_torus:
        return "ZxZ"
    if st.is_projective_plane:
        return "OrderTwo"
    if st.is_klein_bottle:
        return "KleinGroup"
    return "HyperbolicClosed"


def _bfs_tree(surface: SimplicialSurface, root: int):
    adj: dict[int, list[int]] = {v: [] for v in range(surface.vertex_count)}
    for u, v in surface.edges:
        adj[u].append(v)
        adj[v].append(u)
    parent = {root: None}
    queue = [root]
    while queue:
        x = queue.pop(0)
        for y in sorted(adj[x]):
            if y not in parent:
                parent[y] = x
                queue.append(y)
    if len(parent) != surface.vertex_count:
        raise InternalError("surface 1-skeleton is disconnected")
    return parent


def presentation(surface: SimplicialSurface, basepoint: int = 0) -> GroupPresentation:
    """Edge-path presentation on a BFS spanning tree rooted at `basepoint`."""
    st = classify_surface(surface)
    parent = _bfs_tree(surface, basepoint)
    tree_edges = {
        edge_key(v, p) for v, p in parent.items() if p is not None
    }
    gens = tuple(sorted(e for e in surface.edges if e not in tree_edges))
    gen_index = {e: i + 1 for i, e in enumerate(gens)}

    def edge_letter(u, v):
        e = edge_key(u, v)
        g = gen_index.get(e)
        if g is None:
            return 0
        return g if (u, v) == e else -g

    relators = []
    for a, b, c in surface.triangles:
        word = [edge_letter(*p) for p in ((a, b), (b, c), (c, a))]
        relators.append(free_reduce([x for x in word if x]))
    return GroupPresentation(
        surface=surface,
        surface_type=st,
        basepoint=basepoint,
        strategy=_strategy_for(st),
        generators=gens,
        gen_index=gen_index,
        relators=tuple(relators),
        tree_parent=parent,
    )


def loop_word(surface: SimplicialSurface, pres: GroupPresentation, loop) -> Word:
    """Word of a closed edge path in the presentation's generators.  Paths
    away from the basepoint are implicitly conjugated back along the tree,
    which contributes no letters."""
    if len(loop) < 2:
        raise NotAClosedPath("loop needs at least two vertices")
    out = []
    for i, u in enumerate(loop):
        v = loop[(i + 1) % len(loop)]
        e = edge_key(u, v)
        if e not in surface.edge_triangles:
            raise NotAClosedPath(f"({u}, {v}) is not an edge")
        g = pres.gen_index.get(e)
        if g is not None:
            out.append(g if (u, v) == e else -g)
    return free_reduce(out)


def canonicalize(surface: SimplicialSurface, pres: GroupPresentation) -> PolygonalSchema:
    """Canonical polygon schema of a closed surface, with runtime checks
    that the recorded substitutions define a homomorphism onto the canonical
    group."""
    schema = PolygonalSchema(surface)
    if not schema.relator_images_trivial():
        raise InternalError("schema substitution map does not kill a relator")
    return schema


def _schema_of(pres: GroupPresentation) -> PolygonalSchema:
    if pres._schema is None:
        pres._schema = canonicalize(pres.surface, pres)
    return pres._schema


def _tree_path(pres: GroupPresentation, v: int):
    path = [v]
    while pres.tree_parent[path[-1]] is not None:
        path.append(pres.tree_parent[path[-1]])
    path.reverse()
    return path  # basepoint ... v


def _gen_canonical(pres: GroupPresentation, g: int) -> Word:
    cached = pres._gen_canonical.get(g)
    if cached is not None:
        return cached
    schema = _schema_of(pres)
    u, v = pres.generators[g - 1]
    path = _tree_path(pres, u) + list(reversed(_tree_path(pres, v)))
    word = schema.path_word(path)
    pres._gen_canonical[g] = word
    return word


def to_canonical(pres: GroupPresentation, word) -> Word:
    """Rewrite a raw word in the canonical schema generators."""
    out: list[int] = []
    for x in word:
        w = _gen_canonical(pres, abs(x))
        out.extend(w if x > 0 else inv(w))
    return free_reduce(out)


class _FreeBasis:
    """Free-group coordinates for a surface with boundary: collapse the
    surface to a graph and read words off the chords of its spanning tree."""

    def __init__(self, surface: SimplicialSurface, basepoint: int):
        verts, edges, tris, steps = collapse(
            range(surface.vertex_count),
            surface.edges,
            surface.triangles,
            keep_vertices={basepoint},
        )
        if tris:
            raise CollapseFailed("bounded surface did not collapse to a graph")
        adj: dict[int, list[int]] = {v: [] for v in verts}
        for u, v in sorted(edges):
            adj[u].append(v)
            adj[v].append(u)
        parent = {basepoint: None}
        queue = [basepoint]
        while queue:
            x = queue.pop(0)
            for y in sorted(adj[x]):
                if y not in parent:
                    parent[y] = x
                    queue.append(y)
        if len(parent) != len(verts):
            raise CollapseFailed("collapsed graph is disconnected")
        tree = {edge_key(v, p) for v, p in parent.items() if p is not None}
        chords = sorted(e for e in edges if e not in tree)
        self.rank = len(chords)
        table: dict = {}
        for e in tree:
            table[e] = ()
        for i, e in enumerate(chords):
            table[e] = (i + 1,)
        for face, coface in reversed(steps):
            if isinstance(face, tuple):  # edge collapsed through a triangle
                u, v = face
                (w,) = [x for x in coface if x not in face]
                table[face] = free_reduce(
                    self._word_from(table, u, w) + self._word_from(table, w, v)
                )
            else:  # leaf vertex: dangling edge contributes nothing
                table[coface] = ()
        self.table = table

    @staticmethod
    def _word_from(table, a, b):
        e = edge_key(a, b)
        base = table[e]
        return base if (a, b) == e else inv(base)

    def edge_word(self, u, v) -> Word:
        return self._word_from(self.table, u, v)

    def path_word(self, path) -> Word:
        out: list[int] = []
        for a, b in zip(path, path[1:]):
            out.extend(self.edge_word(a, b))
        return free_reduce(out)


def _free_of(pres: GroupPresentation) -> _FreeBasis:
    if pres._free is None:
        pres._free = _FreeBasis(pres.surface, pres.basepoint)
    return pres._free


def to_free(pres: GroupPresentation, word) -> Word:
    free = _free_of(pres)
    out: list[int] = []
    for x in word:
        u, v = pres.generators[abs(x) - 1]
        path = _tree_path(pres, u) + list(reversed(_tree_path(pres, v)))
        w = free.path_word(path)
        out.extend(w if x > 0 else inv(w))
    return free_reduce(out)


def _check_word(pres: GroupPresentation, word):
    for x in word:
        if x == 0 or abs(x) > len(pres.generators):
            raise UnknownGenerator(f"no generator {x}")


def is_trivial_word(pres: GroupPresentation, word) -> bool:
    """Dispatch the word problem per strategy."""
    _check_word(pres, word)
    word = free_reduce(word)
    if not word:
        return True
    strategy = pres.strategy
    if strategy == "TrivialGroup":
        return True
    if strategy == "FreeGroup":
        return to_free(pres, word) == ()
    canonical = to_canonical(pres, word)
    return _schema_of(pres).group.is_trivial(canonical)


def commutes(pres: GroupPresentation, w1, w2) -> bool:
    return is_trivial_word(pres, concat(w1, w2, inv(w1), inv(w2)))


def abelianized_vector(pres: GroupPresentation, word) -> tuple[int, ...]:
    """Exponent vector of a word in the canonical generators (closed
    surfaces only)."""
    canonical = to_canonical(pres, word)
    return exponent_vector(canonical, _schema_of(pres).rank)


def presentation_h1(pres: GroupPresentation):
    """Abelianization invariants (torsion, free rank) straight from the raw
    relator matrix via Smith normal form; independent of the schema."""
    g = len(pres.generators)
    cols = [exponent_vector(r, g) for r in pres.relators if r]
    if not cols:
        return [], g
    matrix = [[c[i] for c in cols] for i in range(g)]
    return cokernel_invariants(matrix, g)


def induced_subgroup(surface: SimplicialSurface, pres: GroupPresentation, spine: Spine):
    """Words of the essential spine chord loops: generators of the image of
    the subcomplex's fundamental group."""
    return tuple(loop.word for loop in spine.loops if loop.essential)


@dataclass(frozen=True)
class SubgroupClass:
    verdict: str  # Trivial | NontrivialCyclic | NonCyclic
    witness_kind: str | None = None
    witness: tuple = ()
    detail: tuple = ()


def _klein_nf(pres: GroupPresentation, word) -> KleinElement:
    return klein_normal_form(klein_coords(to_canonical(pres, word)))


def _classify_klein(pres: GroupPresentation, gens) -> SubgroupClass:
    nfs = [_klein_nf(pres, g) for g in gens]
    if all(nf.n % 2 == 0 for nf in nfs):
        vectors = [(nf.m, nf.n // 2) for nf in nfs]
        for i in range(len(vectors)):
            for j in range(i + 1, len(vectors)):
                (m1, k1), (m2, k2) = vectors[i], vectors[j]
                if m1 * k2 - m2 * k1 != 0:
                    return SubgroupClass(
                        "NonCyclic",
                        "nonparallel",
                        (gens[i], gens[j]),
                        (vectors[i], vectors[j]),
                    )
        return SubgroupClass("NontrivialCyclic", "generator", (gens[0],))
    # some generator has odd b-exponent: search for a root h = (m, d) with d
    # odd dividing every exponent; powers of h are (0, 2dk) and (m, d(2k+1))
    min_odd = min(abs(nf.n) for nf in nfs if nf.n % 2)
    all_gcd = 0
    for nf in nfs:
        all_gcd = gcd(all_gcd, nf.n)
    for d in range(1, min_odd + 1):
        if min_odd % d or d % 2 == 0 or (all_gcd % d):
            continue
        ms = {nf.m for nf in nfs if (nf.n // d) % 2}
        zeros_ok = all(nf.m == 0 for nf in nfs if (nf.n // d) % 2 == 0)
        if len(ms) == 1 and zeros_ok:
            root = KleinElement(ms.pop(), d)
            for nf in nfs:  # sanity: every generator is an explicit power
                if root.power(nf.n // d) != nf:
                    raise InternalError("klein root verification failed")
            return SubgroupClass(
                "NontrivialCyclic", "generator", (gens[0],), (root.m, root.n)
            )
    for i in range(len(nfs)):
        for j in range(i + 1, len(nfs)):
            if not klein_commutes(nfs[i], nfs[j]):
                return SubgroupClass(
                    "NonCyclic", "noncommuting", (gens[i], gens[j])
                )
    raise InternalError("klein subgroup neither cyclic nor witnessed")


def classify_subgroup(pres: GroupPresentation, gens) -> SubgroupClass:
    """Trivial / NontrivialCyclic / NonCyclic for the subgroup generated by
    the given (already nontrivial) words."""
    gens = tuple(tuple(g) for g in gens)
    for g in gens:
        if is_trivial_word(pres, g):
            raise TrivialGeneratorPresent(f"trivial generator {g}")
    if not gens:
        return SubgroupClass("Trivial")
    strategy = pres.strategy
    if strategy == "OrderTwo":
        return SubgroupClass("NontrivialCyclic", "generator", (gens[0],))
    if strategy == "ZxZ":
        vectors = [abelianized_vector(pres, g) for g in gens]
        for i in range(len(vectors)):
            for j in range(i + 1, len(vectors)):
                (a1, b1), (a2, b2) = vectors[i], vectors[j]
                if a1 * b2 - a2 * b1 != 0:
                    return SubgroupClass(
                        "NonCyclic",
                        "nonparallel",
                        (gens[i], gens[j]),
                        (vectors[i], vectors[j]),
                    )
        return SubgroupClass("NontrivialCyclic", "generator", (gens[0],))
    if strategy == "KleinGroup":
        return _classify_klein(pres, gens)
    if strategy in ("FreeGroup", "HyperbolicClosed"):
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if not commutes(pres, gens[i], gens[j]):
                    return SubgroupClass(
                        "NonCyclic", "noncommuting", (gens[i], gens[j])
                    )
        # torsion-free and pairwise commuting: all powers of a common root
        return SubgroupClass("NontrivialCyclic", "generator", (gens[0],))
    raise InternalError(f"subgroup over strategy {strategy} with generators")
