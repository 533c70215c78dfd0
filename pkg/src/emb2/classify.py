"""The classification cascade for embedding-space components.

Given a surface M (boundary interpreted as deleted) and a compact connected
subcomplex X, the homotopy type of the component of the inclusion in the
space of embeddings of X into M is decided by:

  0. X a point: the space is M itself.  X a closed surface: X = M and the
     answer is the identity component of the homeomorphism group (a finite
     lookup over closed surface types).
  1. Otherwise compute the image G of pi1(X) in pi1(M) from the spine of a
     regular neighborhood and classify it.
  2. G not cyclic: contractible, unless M is the torus (answer T^2) or the
     Klein bottle (answer S^1).
  3. G nontrivial cyclic: S^1 generically; on the torus T^2; on the Klein
     bottle T^2 or S^1 according to whether X sits in a nonseparating
     annulus; on the projective plane SO(3)/Z2 for an o.r. circle and SO(3)
     otherwise.
  4. G trivial: the unit tangent circle bundle of M when X is an arc or M
     is orientable, and of the orientation double cover otherwise.

Each decision is recorded in a trace whose evidence can be replayed against
the underlying operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from . import pi1
from .errors import InternalError, NotClosed, SubcomplexMeetsBoundary
from .subcomplex import (
    NeighborhoodDecomposition,
    Spine,
    Subcomplex,
    disk_hull,
    is_orientation_preserving,
    is_separating,
    regular_neighborhood,
    spine_with_loops,
)
from .surface import (
    SimplicialSurface,
    SurfaceType,
    classify_surface,
    orientation_double_cover,
)


class Tag(str, Enum):
    POINT = "Point"
    CIRCLE = "Circle"
    TORUS = "Torus"
    SO3 = "SO3"
    SO3_MOD_Z2 = "SO3ModZ2"
    UNIT_TANGENT_BUNDLE = "UnitTangentBundle"
    UNIT_TANGENT_BUNDLE_OF_COVER = "UnitTangentBundleOfCover"
    SURFACE_ITSELF = "SurfaceItself"


@dataclass(frozen=True)
class HomotopyTypeDescriptor:
    tag: Tag
    surface: SurfaceType | None = None

    def display(self) -> str:
        if self.tag in (
            Tag.UNIT_TANGENT_BUNDLE,
            Tag.UNIT_TANGENT_BUNDLE_OF_COVER,
            Tag.SURFACE_ITSELF,
        ):
            return f"{self.tag.value}({self.surface.interior_name()})"
        return self.tag.value


@dataclass(frozen=True)
class TraceStep:
    decision: str
    evidence: dict


@dataclass
class ClassificationTrace:
    steps: list[TraceStep] = field(default_factory=list)
    case: str | None = None

    def add(self, decision: str, **evidence):
        self.steps.append(TraceStep(decision, evidence))

    def set_case(self, label: str):
        if self.case is not None:
            raise InternalError("two theorem cases fired")
        self.case = label
        self.add("case", label=label)


def closed_manifold_case(surface_type: SurfaceType) -> HomotopyTypeDescriptor:
    """Homotopy type of the identity component of the homeomorphism group of
    a closed surface (the X = M case)."""
    if not surface_type.closed:
        raise NotClosed("closed-case lookup needs a closed surface")
    if surface_type.is_sphere or surface_type.is_projective_plane:
        return HomotopyTypeDescriptor(Tag.SO3)
    if surface_type.is_torus:
        return HomotopyTypeDescriptor(Tag.TORUS)
    if surface_type.is_klein_bottle:
        return HomotopyTypeDescriptor(Tag.CIRCLE)
    return HomotopyTypeDescriptor(Tag.POINT)


def _closed_case_label(surface_type: SurfaceType) -> str:
    if surface_type.is_sphere or surface_type.is_projective_plane:
        return "Prop 2.2 (1)(i)"
    if surface_type.is_torus:
        return "Prop 2.2 (1)(ii)"
    if surface_type.is_klein_bottle:
        return "Prop 2.2 (1)(iii)"
    return "Prop 2.2 (1)(iv)"


def k2_nonseparating_annulus_test(spine: Spine) -> bool:
    """On the Klein bottle: is X contained in a nonseparating annulus?

    Equivalently, some essential spine loop is orientation-preserving and
    nonseparating; the decision is independent of which essential loop is
    picked, which is asserted here."""
    essential = [l for l in spine.loops if l.essential]
    verdicts = {
        (l.orientation_preserving and not l.separating) for l in essential
    }
    if len(verdicts) > 1:
        raise InternalError(
            "essential spine loops disagree on the nonseparating-annulus test"
        )
    return verdicts.pop() if verdicts else False


def p2_or_circle_test(surface: SimplicialSurface, x: Subcomplex) -> bool:
    """On the projective plane: is X an orientation-reversing circle?"""
    if not x.is_circle:
        return False
    return not is_orientation_preserving(surface, x.circle_cycle())


def classify_embedding_space(surface: SimplicialSurface, x: Subcomplex):
    """Full decision cascade; returns (descriptor, trace)."""
    trace = ClassificationTrace()
    mtype = classify_surface(surface)
    trace.add(
        "surface",
        type=mtype.describe(),
        orientable=mtype.orientable,
        genus=mtype.genus,
        boundary=mtype.boundary_components,
        euler_characteristic=mtype.euler_characteristic,
    )
    if x.vertices & surface.boundary_vertices:
        raise SubcomplexMeetsBoundary(
            "X meets the boundary of the host surface, which is interpreted "
            "as deleted"
        )
    trace.add(
        "subcomplex",
        is_point=x.is_point,
        is_arc=x.is_arc,
        is_circle=x.is_circle,
        is_closed_surface=x.is_closed_surface,
        basepoint=x.basepoint,
    )

    if x.is_point:
        trace.set_case("point case: E(X, M) = M")
        return HomotopyTypeDescriptor(Tag.SURFACE_ITSELF, mtype), trace
    if x.is_closed_surface:
        if not x.is_whole_host():
            raise InternalError("closed-surface subcomplex is not the whole host")
        descriptor = closed_manifold_case(mtype)
        trace.set_case(_closed_case_label(mtype))
        return descriptor, trace

    decomp = regular_neighborhood(surface, x)
    trace.add(
        "regular_neighborhood",
        neighborhood=decomp.neighborhood_type.describe(),
        components=list(decomp.component_labels()),
    )
    pres = pi1.presentation(decomp.host2, decomp.x2.basepoint)
    spine = spine_with_loops(decomp, pres)
    trace.add(
        "spine",
        chords=spine.chord_count(),
        loops=[
            {
                "word": list(l.word),
                "essential": l.essential,
                "orientation_preserving": l.orientation_preserving,
                "separating": l.separating,
            }
            for l in spine.loops
        ],
    )
    gens = pi1.induced_subgroup(decomp.host2, pres, spine)
    subgroup = pi1.classify_subgroup(pres, gens) if gens else pi1.SubgroupClass("Trivial")
    trace.add(
        "subgroup",
        verdict=subgroup.verdict,
        witness_kind=subgroup.witness_kind,
        witness=[list(w) for w in subgroup.witness],
    )

    if subgroup.verdict == "NonCyclic":
        if mtype.is_torus:
            trace.set_case("Thm 1.1 (2)")
            return HomotopyTypeDescriptor(Tag.TORUS), trace
        if mtype.is_klein_bottle:
            trace.set_case("Thm 1.1 (3)")
            return HomotopyTypeDescriptor(Tag.CIRCLE), trace
        trace.set_case("Thm 1.1 (1)")
        return HomotopyTypeDescriptor(Tag.POINT), trace

    if subgroup.verdict == "NontrivialCyclic":
        return _cyclic_case(surface, x, mtype, decomp, spine, trace)

    # trivial image: the unit tangent bundle cases, with the disk
    # neighborhood cross-check
    absorbed = disk_hull(decomp)
    trace.add("disk_neighborhood", absorbed_components=absorbed)
    if x.is_arc or mtype.orientable:
        trace.set_case("Thm 1.3 (1)")
        return HomotopyTypeDescriptor(Tag.UNIT_TANGENT_BUNDLE, mtype), trace
    cover = orientation_double_cover(surface)
    cover_type = classify_surface(cover.total)
    trace.add("orientation_double_cover", type=cover_type.describe())
    trace.set_case("Thm 1.3 (2)")
    return HomotopyTypeDescriptor(Tag.UNIT_TANGENT_BUNDLE_OF_COVER, cover_type), trace


def _cyclic_case(surface, x, mtype, decomp, spine, trace):
    if mtype.is_torus:
        trace.set_case("Thm 1.2 (2)")
        return HomotopyTypeDescriptor(Tag.TORUS), trace
    if mtype.is_klein_bottle:
        if x.is_circle:
            cycle = x.circle_cycle()
            op = is_orientation_preserving(surface, cycle)
            sep = is_separating(surface, cycle)
            trace.add("circle_invariants", orientation_preserving=op, separating=sep)
            if op and not sep:
                trace.set_case("Thm 5.1 (3)(i)")
                return HomotopyTypeDescriptor(Tag.TORUS), trace
            if op:
                trace.set_case("Thm 5.1 (3)(ii)")
                return HomotopyTypeDescriptor(Tag.CIRCLE), trace
            trace.set_case("Thm 5.1 (3)(iii)")
            return HomotopyTypeDescriptor(Tag.CIRCLE), trace
        in_annulus = k2_nonseparating_annulus_test(spine)
        trace.add("k2_nonseparating_annulus_test", result=in_annulus)
        if in_annulus:
            trace.set_case("Thm 1.2 (3)(i)")
            return HomotopyTypeDescriptor(Tag.TORUS), trace
        trace.set_case("Thm 1.2 (3)(ii)")
        return HomotopyTypeDescriptor(Tag.CIRCLE), trace
    if mtype.is_projective_plane:
        or_circle = p2_or_circle_test(surface, x)
        trace.add("p2_or_circle_test", result=or_circle)
        if or_circle:
            trace.set_case("Thm 1.2 (4)(i)")
            return HomotopyTypeDescriptor(Tag.SO3_MOD_Z2), trace
        trace.set_case("Thm 1.2 (4)(ii)")
        return HomotopyTypeDescriptor(Tag.SO3), trace
    if x.is_circle and mtype.closed:
        trace.set_case("Thm 5.1 (1)")
    else:
        trace.set_case("Thm 1.2 (1)")
    return HomotopyTypeDescriptor(Tag.CIRCLE), trace


# ---------------------------------------------------------------------------
# fundamental groups of the answers


@dataclass(frozen=True)
class GroupDescription:
    kind: str  # trivial | Z | ZxZ | Z2 | Z4 | presentation
    display: str
    generators: tuple[str, ...] = ()
    relators: tuple[str, ...] = ()


def _unit_tangent_group(surface_type: SurfaceType, of_cover: bool) -> GroupDescription:
    where = "covering surface" if of_cover else "base surface"
    if surface_type.boundary_components:
        # open surface: the bundle is trivial, pi1 = free x Z
        rank = 1 - surface_type.euler_characteristic
        gens = tuple(f"x{i + 1}" for i in range(rank)) + ("z",)
        rels = tuple(f"[x{i + 1}, z]" for i in range(rank))
        if rank == 0:
            return GroupDescription("Z", "Z", ("z",), ())
        return GroupDescription(
            "presentation",
            f"F{rank} x Z (unit tangent bundle over an open {where})",
            gens,
            rels,
        )
    chi = surface_type.euler_characteristic
    if surface_type.orientable:
        g = surface_type.genus
        gens = tuple(
            name for i in range(g) for name in (f"a{i + 1}", f"b{i + 1}")
        ) + ("z",)
        rels = tuple(f"[{name}, z]" for name in gens[:-1])
        product = "".join(
            f"[a{i + 1}, b{i + 1}]" for i in range(g)
        ) or "1"
        rels = rels + (f"{product} = z^{chi}",)
        display = f"central extension: <{', '.join(gens)} | z central, {product} = z^{chi}>"
        return GroupDescription("presentation", display, gens, rels)
    n = surface_type.genus
    gens = tuple(f"a{i + 1}" for i in range(n)) + ("z",)
    rels = tuple(f"a{i + 1} z a{i + 1}^-1 = z^-1" for i in range(n))
    product = " ".join(f"a{i + 1}^2" for i in range(n))
    rels = rels + (f"{product} = z^{chi}",)
    display = f"twisted extension: <{', '.join(gens)} | a_i z a_i^-1 = z^-1, {product} = z^{chi}>"
    return GroupDescription("presentation", display, gens, rels)


def descriptor_fundamental_group(descriptor: HomotopyTypeDescriptor) -> GroupDescription:
    tag = descriptor.tag
    if tag == Tag.POINT:
        return GroupDescription("trivial", "trivial")
    if tag == Tag.CIRCLE:
        return GroupDescription("Z", "Z")
    if tag == Tag.TORUS:
        return GroupDescription("ZxZ", "Z x Z")
    if tag == Tag.SO3:
        return GroupDescription("Z2", "Z/2")
    if tag == Tag.SO3_MOD_Z2:
        return GroupDescription("Z4", "Z/4")
    if tag == Tag.UNIT_TANGENT_BUNDLE:
        return _unit_tangent_group(descriptor.surface, of_cover=False)
    if tag == Tag.UNIT_TANGENT_BUNDLE_OF_COVER:
        return _unit_tangent_group(descriptor.surface, of_cover=True)
    if tag == Tag.SURFACE_ITSELF:
        st = descriptor.surface
        if st.is_sphere:
            return GroupDescription("trivial", "trivial")
        if st.is_torus:
            return GroupDescription("ZxZ", "Z x Z")
        if st.is_projective_plane:
            return GroupDescription("Z2", "Z/2")
        return GroupDescription(
            "presentation",
            f"fundamental group of {st.interior_name()}",
        )
    raise InternalError(f"unknown descriptor {descriptor}")


def ut_bundle_abelianization(group: GroupDescription, surface_type: SurfaceType):
    """Abelianization invariants of the unit-tangent-bundle presentation of a
    closed orientable base: relations a_i, b_i free and (2 - 2g) z = 0."""
    if not surface_type.closed or not surface_type.orientable:
        raise NotClosed("abelianization helper covers closed orientable bases")
    g = surface_type.genus
    chi = surface_type.euler_characteristic
    torsion = [] if chi == 0 else [abs(chi)]
    return torsion, 2 * g


# ---------------------------------------------------------------------------
# trace replay


def replay_trace(surface: SimplicialSurface, x: Subcomplex, trace: ClassificationTrace) -> bool:
    """Re-run the operations named in the trace and confirm each recorded
    decision; used by tests and the report validator."""
    descriptor2, trace2 = classify_embedding_space(surface, x)
    if trace2.case != trace.case:
        return False
    recorded = {s.decision: s.evidence for s in trace.steps}
    fresh = {s.decision: s.evidence for s in trace2.steps}
    for key in ("surface", "subcomplex", "subgroup"):
        if key in recorded and recorded[key] != fresh.get(key):
            return False
    if "subgroup" in recorded:
        pres_info = recorded["subgroup"]
        witness = [tuple(w) for w in pres_info.get("witness", ())]
        if pres_info["verdict"] == "NonCyclic" and pres_info["witness_kind"] == "noncommuting":
            decomp = regular_neighborhood(surface, x)
            pres = pi1.presentation(decomp.host2, decomp.x2.basepoint)
            if pi1.commutes(pres, witness[0], witness[1]):
                return False
        if pres_info["verdict"] == "NontrivialCyclic" and witness:
            decomp = regular_neighborhood(surface, x)
            pres = pi1.presentation(decomp.host2, decomp.x2.basepoint)
            if pi1.is_trivial_word(pres, witness[0]):
                return False
    return True
