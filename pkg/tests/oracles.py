"""Independent test oracles: GF(2) homology for curves, and brute-force
cyclic-subgroup enumeration in the Klein bottle group."""

from emb2.surface import edge_key
from emb2.words import KleinElement


def gf2_solve(columns, target):
    """Is `target` in the GF(2) span of `columns`?  Vectors are bitmasks."""
    basis = []
    for col in columns:
        for b in basis:
            col = min(col, col ^ b)
        if col:
            basis.append(col)
            basis.sort(reverse=True)
    v = target
    for b in basis:
        v = min(v, v ^ b)
    return v == 0


def cycle_is_z2_boundary(surface, cycle):
    """ZZ/2 homology oracle: the cycle's edge vector lies in the image of the
    triangle boundary map.  On a closed surface this decides `separating`."""
    edge_bit = {e: 1 << i for i, e in enumerate(surface.edges)}
    columns = []
    for a, b, c in surface.triangles:
        columns.append(
            edge_bit[edge_key(a, b)] ^ edge_bit[edge_key(b, c)] ^ edge_bit[edge_key(a, c)]
        )
    target = 0
    for i, v in enumerate(cycle):
        target ^= edge_bit[edge_key(v, cycle[(i + 1) % len(cycle)])]
    return gf2_solve(columns, target)


def klein_power_sets(root_bound=25, power_bound=50):
    """All cyclic subgroups <h> with |h.m|, |h.n| <= root_bound, as frozen
    sets of the powers h^k, |k| <= power_bound.  Built once by honest
    enumeration."""
    out = []
    for m in range(-root_bound, root_bound + 1):
        for n in range(-root_bound, root_bound + 1):
            h = KleinElement(m, n)
            if h.is_identity:
                continue
            powers = {KleinElement(0, 0)}
            p = KleinElement(0, 0)
            q = KleinElement(0, 0)
            for _ in range(power_bound):
                p = p * h
                q = q * h.inverse()
                powers.add(p)
                powers.add(q)
            out.append(frozenset(powers))
    return out


def klein_cyclic_oracle(elements, power_sets):
    els = set(elements)
    return any(els <= powers for powers in power_sets)
