"""emb2: homotopy types of embedding spaces of subcomplexes in surfaces."""

from .classify import (
    ClassificationTrace,
    GroupDescription,
    HomotopyTypeDescriptor,
    Tag,
    classify_embedding_space,
    closed_manifold_case,
    descriptor_fundamental_group,
    k2_nonseparating_annulus_test,
    p2_or_circle_test,
    replay_trace,
)
from .documents import (
    InputDocument,
    Report,
    build_report,
    generate_example,
    parse_input,
    serialize_document,
)
from .pi1 import (
    GroupPresentation,
    KleinElement,
    SubgroupClass,
    canonicalize,
    classify_subgroup,
    commutes,
    induced_subgroup,
    is_trivial_word,
    klein_normal_form,
    loop_word,
    presentation,
)
from .subcomplex import (
    NeighborhoodDecomposition,
    Spine,
    Subcomplex,
    cut_along,
    disk_hull,
    embed_subcomplex,
    is_orientation_preserving,
    is_separating,
    regular_neighborhood,
    spine_with_loops,
)
from .surface import (
    CoveringMap,
    SimplicialSurface,
    SurfaceType,
    ValidationReport,
    barycentric_subdivision,
    build_and_validate,
    classify_surface,
    euler_characteristic,
    orientation_double_cover,
)

__version__ = "0.1.0"
