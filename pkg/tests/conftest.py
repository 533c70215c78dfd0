import pytest

from emb2.catalog import (
    annulus_grid,
    genus2_surface,
    klein8,
    mobius_grid,
    rp2_6,
    tetrahedron,
    torus7,
)
from emb2.surface import require_surface
from emb2 import pi1


@pytest.fixture(scope="session")
def surfaces():
    ann_tris, ann_nv, ann_core = annulus_grid()
    mob_tris, mob_nv, mob_core = mobius_grid()
    g2, g2_sides = genus2_surface()
    return {
        "tetra": require_surface(*tetrahedron()),
        "torus7": require_surface(*torus7()),
        "rp2": require_surface(*rp2_6()),
        "klein8": require_surface(*klein8()),
        "annulus": require_surface(ann_tris, ann_nv),
        "annulus_core": ann_core,
        "mobius": require_surface(mob_tris, mob_nv),
        "mobius_core": mob_core,
        "genus2": g2,
        "genus2_sides": g2_sides,
    }


@pytest.fixture(scope="session")
def presentations(surfaces):
    return {
        name: pi1.presentation(surfaces[name], 0)
        for name in ("tetra", "torus7", "rp2", "klein8", "annulus", "genus2")
    }
