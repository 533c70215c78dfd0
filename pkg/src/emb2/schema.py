"""Fundamental polygon assembly and reduction to canonical form.

A closed surface is cut open along the edges not crossed by a dual spanning
tree; gluing the triangles along the tree yields one polygon whose boundary
word spells each remaining edge twice.  Contracting a spanning tree of that
cut graph leaves a one-vertex polygon over 2 - chi "chord" letters, and the
classical moves finish the reduction:

* cross-cap collection  x A x B  ->  y y B A^-1   (y = A x);
* handle collection for an interlocked pair, in two cut-and-paste steps;
* the trade of one handle block against an adjacent cross-cap for three
  cross-caps, when both kinds survive.

Every move is realized as a Tietze substitution x := w(others) followed by
free cyclic reduction, so the recorded eliminations compose to a genuine
isomorphism onto the canonical one-relator group.  The resulting map assigns
every oriented edge of the surface a word in the canonical generators such
that closed edge paths map to their classes in the fundamental group; that is
what the word-problem strategies consume.
"""

from __future__ import annotations

from .errors import InternalError, NotClosed
from .surface import SimplicialSurface, UnionFind, classify_surface, edge_key
from .words import (
    CanonicalGroup,
    Word,
    canonical_relator,
    concat,
    free_reduce,
    inv,
)


class _Instance:
    """One copy of a primal edge on (or formerly on) the polygon boundary.
    Replaced instances carry the two child instances that detour around the
    attached triangle."""

    __slots__ = ("tail", "head", "children")

    def __init__(self, tail, head):
        self.tail = tail
        self.head = head
        self.children = None


def _assemble_polygon(surface: SimplicialSurface):
    """Glue all triangles along a BFS dual spanning tree.  Returns
    (boundary instances in cyclic order, replaced-instance map for dual tree
    edges, creation-ordered instance list)."""
    tris = surface.triangles
    order = []  # (child triangle, shared edge)
    seen = {0}
    queue = [0]
    while queue:
        t = queue.pop(0)
        a, b, c = tris[t]
        for e in sorted((edge_key(a, b), edge_key(b, c), edge_key(a, c))):
            for j in surface.edge_triangles[e]:
                if j not in seen:
                    seen.add(j)
                    order.append((j, e))
                    queue.append(j)
    if len(seen) != len(tris):
        raise InternalError("dual graph disconnected in polygon assembly")

    created: list[_Instance] = []

    def make(tail, head):
        inst = _Instance(tail, head)
        created.append(inst)
        return inst

    a, b, c = tris[0]
    roots = [make(a, b), make(b, c), make(c, a)]
    live: dict = {}
    for inst in roots:
        live.setdefault(edge_key(inst.tail, inst.head), []).append(inst)

    tree_edges = {}
    for child, e in order:
        cands = live.get(e, [])
        if len(cands) != 1:
            raise InternalError(f"expected one live instance of {e}")
        inst = cands.pop()
        (w,) = [v for v in tris[child] if v not in e]
        c1, c2 = make(inst.tail, w), make(w, inst.head)
        inst.children = (c1, c2)
        for ch in (c1, c2):
            live.setdefault(edge_key(ch.tail, ch.head), []).append(ch)
        tree_edges[e] = inst

    boundary: list[_Instance] = []
    stack = list(reversed(roots))
    while stack:
        inst = stack.pop()
        if inst.children is None:
            boundary.append(inst)
        else:
            stack.extend(reversed(inst.children))
    return boundary, tree_edges, created


def _substitute(poly, letter, replacement):
    out = []
    replacement = tuple(replacement)
    neg = inv(replacement)
    for d in poly:
        if d == letter:
            out.extend(replacement)
        elif d == -letter:
            out.extend(neg)
        else:
            out.append(d)
    w = list(free_reduce(out))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


def _letter_positions(poly, letter):
    return [i for i, d in enumerate(poly) if abs(d) == letter]


class SchemaReducer:
    def __init__(self, poly, next_letter):
        self.poly = list(poly)
        self.elim: dict[int, Word] = {}
        self.next_letter = next_letter

    def fresh(self):
        self.next_letter += 1
        return self.next_letter

    def eliminate(self, letter, signed_dart, expression):
        """Record dart == expression (as group elements) and substitute the
        letter away.  `signed_dart` is +-letter, telling which orientation
        the expression describes."""
        word = tuple(expression) if signed_dart > 0 else inv(expression)
        if letter in self.elim:
            raise InternalError(f"letter {letter} eliminated twice")
        self.elim[letter] = word
        self.poly = _substitute(self.poly, letter, word)
        counts: dict[int, int] = {}
        for d in self.poly:
            counts[abs(d)] = counts.get(abs(d), 0) + 1
        if any(c != 2 for c in counts.values()):
            raise InternalError("substitution broke the letters-twice invariant")

    def rotate_to(self, i):
        self.poly = self.poly[i:] + self.poly[:i]

    # -- moves ------------------------------------------------------------

    def cc_move(self, letter):
        """Collect the same-signed pair of `letter` into an adjacent fresh
        cross-cap pair:  X A X B  ->  y y B A^-1  with X = A^-1 y."""
        i, j = _letter_positions(self.poly, letter)
        x = self.poly[i]
        if self.poly[j] != x:
            raise InternalError("cc_move on an opposite-signed pair")
        self.rotate_to(i)
        j -= i
        a = self.poly[1:j]
        y = self.fresh()
        self.eliminate(letter, x, inv(a) + (y,))
        return y

    def hm_moves(self, x_letter, y_letter):
        """Collect an interlocked opposite-signed pair into a commutator
        block, in the two classical cut-and-paste steps."""
        poly = self.poly
        xi, xj = _letter_positions(poly, x_letter)
        self.rotate_to(xi)
        poly = self.poly
        xj = _letter_positions(poly, x_letter)[1]
        x = poly[0]
        if poly[xj] != -x:
            raise InternalError("hm_moves on a same-signed pair")
        ya, yc = _letter_positions(poly, y_letter)
        if not (0 < ya < xj < yc):
            raise InternalError("hm_moves pair is not interlocked")
        yd = poly[ya]
        a = poly[1:ya]
        b = poly[ya + 1 : xj]
        z = self.fresh()
        # Y = A^-1 X^-1 z X B^-1
        expr = inv(a) + (-x, z, x) + inv(b)
        self.eliminate(y_letter, yd, expr)

        # now the polygon contains the contiguous run  X^-1 z^-1 X  (up to
        # the sign of X); find it and finish with the second cut
        poly = self.poly
        n = len(poly)
        spot = None
        for i in range(n):
            if (
                poly[i] == -x
                and poly[(i + 1) % n] == -z
                and poly[(i + 2) % n] == x
            ):
                spot = i
                break
        if spot is None:
            raise InternalError("handle pattern missing after first cut")
        self.rotate_to(spot)
        poly = self.poly
        p, q = poly[0], poly[1]
        qinv_pos = [i for i in range(3, len(poly)) if poly[i] == -q]
        if len(qinv_pos) != 1:
            raise InternalError("handle pattern missing inverse dart")
        e = poly[3 : qinv_pos[0]]
        w = self.fresh()
        # P = E Q^-1 w^-1 Q
        expr = tuple(e) + (-q, -w, q)
        self.eliminate(x_letter, p, expr)
        return abs(z), abs(w)

    def dyck_moves(self, t_pos, block_pos):
        """Trade the cross-cap pair at t_pos plus the handle block at
        block_pos for three cross-caps."""
        self.rotate_to(t_pos)
        poly = self.poly
        t = poly[0]
        if poly[1] != t:
            raise InternalError("dyck: no cross-cap pair at position 0")
        block_pos = (block_pos - t_pos) % len(poly)
        if block_pos < 2:
            raise InternalError("dyck: overlapping blocks")
        s = poly[2:block_pos]
        if s:
            t2 = self.fresh()
            # conjugate the cross-cap past the separating segment: T = S t2 S^-1
            self.eliminate(abs(t), t, tuple(s) + (t2,) + inv(s))
            poly = self.poly
            i, j = _letter_positions(poly, t2)
            if (i + 1) % len(poly) != j % len(poly):
                raise InternalError("dyck: conjugated pair not adjacent")
            self.rotate_to(i)
            t = self.poly[0]
        poly = self.poly
        p, q = poly[2], poly[3]
        if poly[4] != -p or poly[5] != -q:
            raise InternalError("dyck: handle block not adjacent after conjugation")
        u = self.fresh()
        # T = u P^-1
        self.eliminate(abs(t), t, (u, -p))
        for letter in (abs(p), abs(q), u):
            self.cc_move(letter)


def _same_sign_nonadjacent(poly):
    n = len(poly)
    letters = sorted({abs(d) for d in poly})
    for letter in letters:
        i, j = _letter_positions(poly, letter)
        if poly[i] == poly[j] and (j - i) % n != 1 and (i - j) % n != 1:
            return letter
    return None


def _block_runs(poly):
    """All positions starting a cross-cap run or a commutator run."""
    n = len(poly)
    cc, comm = [], []
    for i in range(n):
        if poly[i] == poly[(i + 1) % n]:
            cc.append(i)
        if n >= 4:
            p, q, r, s = (poly[(i + k) % n] for k in range(4))
            if abs(p) != abs(q) and r == -p and s == -q:
                comm.append(i)
    return cc, comm


def _blocked_letters(poly):
    cc, comm = _block_runs(poly)
    out = set()
    for i in cc:
        out.add(abs(poly[i]))
    for i in comm:
        out.add(abs(poly[i]))
        out.add(abs(poly[(i + 1) % len(poly)]))
    return out


def _tile_blocks(poly):
    """Try to decompose the cyclic word into contiguous commutator and
    cross-cap blocks.  Returns a list of ('handle', P, Q) / ('crosscap', T)
    in cyclic order, or None."""
    n = len(poly)
    if n == 0:
        return []
    for rot in range(n):
        w = poly[rot:] + poly[:rot]
        blocks = []
        i = 0
        ok = True
        while i < n:
            if (
                i + 3 < n
                and abs(w[i]) != abs(w[i + 1])
                and w[i + 2] == -w[i]
                and w[i + 3] == -w[i + 1]
            ):
                blocks.append(("handle", w[i], w[i + 1]))
                i += 4
            elif i + 1 < n and w[i] == w[i + 1]:
                blocks.append(("crosscap", w[i]))
                i += 2
            else:
                ok = False
                break
        if ok:
            return blocks
    return None


class PolygonalSchema:
    """Canonical polygon schema of a closed surface together with the
    substitution map from raw edge-path generators into the canonical
    generators.

    `canonical_word` is the boundary word of the reduced fundamental polygon
    over generators 1..rank; `edge_word(u, v)` is the canonical image of the
    oriented edge (u, v), and `group` solves the word problem there.
    """

    def __init__(self, surface: SimplicialSurface):
        st = classify_surface(surface)
        if not st.closed:
            raise NotClosed("canonical schema requires a closed surface")
        self.surface = surface
        self.surface_type = st

        boundary, tree_instances, created = _assemble_polygon(surface)
        letter_of_edge: dict = {}
        for inst in boundary:
            e = edge_key(inst.tail, inst.head)
            letter_of_edge.setdefault(e, len(letter_of_edge) + 1)
        self._letter_of_edge = letter_of_edge
        self._tree_instances = tree_instances

        def dart(inst):
            lid = letter_of_edge[edge_key(inst.tail, inst.head)]
            return lid if inst.tail < inst.head else -lid

        poly0 = [dart(inst) for inst in boundary]

        # instance expansions to boundary letters, in reverse creation order
        self._inst_word: dict[int, Word] = {}
        for inst in reversed(created):
            if inst.children is None:
                self._inst_word[id(inst)] = (dart(inst),)
            else:
                c1, c2 = inst.children
                self._inst_word[id(inst)] = (
                    self._inst_word[id(c1)] + self._inst_word[id(c2)]
                )

        reducer = SchemaReducer(poly0, len(letter_of_edge))
        self._contract_cut_tree(reducer, letter_of_edge)
        chi = st.euler_characteristic
        if len(reducer.poly) != 2 * (2 - chi):
            raise InternalError("contracted polygon has the wrong length")
        self._check_single_corner_class(reducer.poly)
        blocks = self._reduce(reducer)
        self._finalize(reducer, blocks)
        self.group = CanonicalGroup(self.kind, self.genus)
        self._edge_cache: dict = {}

    # -- construction helpers ---------------------------------------------

    def _contract_cut_tree(self, reducer, letter_of_edge):
        edges_of_letter = {lid: e for e, lid in letter_of_edge.items()}
        verts = sorted({v for e in edges_of_letter.values() for v in e})
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in verts}
        for lid, (u, v) in sorted(edges_of_letter.items()):
            adj[u].append((v, lid))
            adj[v].append((u, lid))
        root = verts[0]
        seen = {root}
        tree_letters = set()
        queue = [root]
        while queue:
            x = queue.pop(0)
            for y, lid in sorted(adj[x]):
                if y not in seen:
                    seen.add(y)
                    tree_letters.add(lid)
                    queue.append(y)
        if len(seen) != len(verts):
            raise InternalError("cut graph disconnected")
        for lid in sorted(tree_letters):
            reducer.elim[lid] = ()
        reducer.poly = [d for d in reducer.poly if abs(d) not in tree_letters]

    def _check_single_corner_class(self, poly):
        n = len(poly)
        if n == 0:
            return
        uf = UnionFind(range(n))
        pos: dict[int, list[int]] = {}
        for i, d in enumerate(poly):
            pos.setdefault(abs(d), []).append(i)
        for letter, (i, j) in pos.items():
            def ends(p):
                d = poly[p]
                tail, head = (p - 1) % n, p
                return (tail, head) if d > 0 else (head, tail)

            ti, hi = ends(i)
            tj, hj = ends(j)
            uf.union(ti, tj)
            uf.union(hi, hj)
        classes = {uf.find(i) for i in range(n)}
        if len(classes) != 1:
            raise InternalError("contracted polygon has several vertex classes")

    def _reduce(self, reducer):
        guard = 0
        while True:
            guard += 1
            if guard > 10000:
                raise InternalError("schema reduction did not terminate")
            poly = reducer.poly
            if not poly:
                return []
            letter = _same_sign_nonadjacent(poly)
            if letter is not None:
                reducer.cc_move(letter)
                continue
            blocked = _blocked_letters(poly)
            open_letters = sorted(
                {abs(d) for d in poly if abs(d) not in blocked}
            )
            if open_letters:
                x = open_letters[0]
                i, j = _letter_positions(poly, x)
                n = len(poly)
                inside = {}
                for k in range(i + 1, j):
                    inside[abs(poly[k])] = inside.get(abs(poly[k]), 0) + 1
                partner = None
                for k in range(i + 1, j):
                    l = abs(poly[k])
                    if l != x and inside[l] == 1:
                        partner = l
                        break
                if partner is None:
                    raise InternalError("opposite pair with no interlocking partner")
                reducer.hm_moves(x, partner)
                continue
            blocks = _tile_blocks(poly)
            if blocks is None:
                raise InternalError("polygon does not tile into blocks")
            kinds = {kind for kind, *_ in blocks}
            if kinds == {"handle", "crosscap"}:
                cc, comm = _block_runs(reducer.poly)
                # pick a cross-cap pair and a handle run that do not overlap
                done = False
                for t_pos in cc:
                    for b_pos in comm:
                        offset = (b_pos - t_pos) % len(reducer.poly)
                        if offset >= 2 and offset + 4 <= len(reducer.poly):
                            reducer.dyck_moves(t_pos, b_pos)
                            done = True
                            break
                    if done:
                        break
                if not done:
                    raise InternalError("no usable cross-cap/handle pair for Dyck move")
                continue
            return blocks

    def _finalize(self, reducer, blocks):
        chi = self.surface_type.euler_characteristic
        if not blocks:
            self.kind = "sphere"
            self.genus = 0
            self.rank = 0
            self.canonical_word = ()
            if chi != 2:
                raise InternalError("empty schema for a non-sphere surface")
            self._resolve_all(reducer, finals=[])
            return
        kinds = {kind for kind, *_ in blocks}
        if kinds == {"handle"}:
            self.kind = "orientable"
            self.genus = len(blocks)
        elif kinds == {"crosscap"}:
            self.kind = "nonorientable"
            self.genus = len(blocks)
        else:
            raise InternalError("mixed blocks after reduction")
        if (self.kind == "orientable") != self.surface_type.orientable or (
            self.genus != self.surface_type.genus
        ):
            raise InternalError(
                "canonical schema disagrees with surface classification"
            )
        # eliminate the block letters into fresh final generators (fresh ids
        # so they cannot collide with original letter ids), then relabel the
        # finals as 1..rank
        finals: list[int] = []
        for block in blocks:
            if block[0] == "handle":
                _, p, q = block
                for d in (p, q):
                    f = reducer.fresh()
                    finals.append(f)
                    reducer.eliminate(abs(d), d, (f,))
            else:
                _, t = block
                f = reducer.fresh()
                finals.append(f)
                reducer.eliminate(abs(t), t, (f,))
        self.rank = len(finals)
        self.canonical_word = canonical_relator(
            "orientable" if self.kind == "orientable" else "nonorientable",
            self.genus,
        )
        self._resolve_all(reducer, finals)

    def _resolve_all(self, reducer, finals):
        """Expand every eliminated letter to a word over the final canonical
        generators (relabelled 1..rank), in reverse elimination order."""
        relabel = {f: i + 1 for i, f in enumerate(finals)}
        final_set = set(finals)
        resolved: dict[int, Word] = {f: (relabel[f],) for f in finals}
        items = list(reducer.elim.items())
        for letter, word in reversed(items):
            if letter in final_set:
                continue
            out: list[int] = []
            for d in word:
                part = resolved.get(abs(d))
                if part is None:
                    raise InternalError(f"letter {abs(d)} used before resolution")
                out.extend(part if d > 0 else inv(part))
            resolved[letter] = free_reduce(out)
        self._resolved = resolved

    # -- public surface ----------------------------------------------------

    def letter_word(self, letter_id) -> Word:
        return self._resolved[letter_id]

    def edge_word(self, u, v) -> Word:
        """Canonical image of the oriented edge (u, v)."""
        key = (u, v)
        cached = self._edge_cache.get(key)
        if cached is not None:
            return cached
        e = edge_key(u, v)
        lid = self._letter_of_edge.get(e)
        if lid is not None:
            base = self._resolved[lid]
        else:
            inst = self._tree_instances[e]
            raw = self._inst_word[id(inst)]
            out: list[int] = []
            for d in raw:
                part = self._resolved[abs(d)]
                out.extend(part if d > 0 else inv(part))
            base = free_reduce(out)
            if (inst.tail, inst.head) != e:
                base = inv(base)
        # `base` is the word for min(u,v) -> max(u,v)
        word = base if (u, v) == e else inv(base)
        self._edge_cache[(e[0], e[1])] = base
        self._edge_cache[(e[1], e[0])] = inv(base)
        return word

    def path_word(self, path) -> Word:
        out: list[int] = []
        for a, b in zip(path, path[1:]):
            out.extend(self.edge_word(a, b))
        return free_reduce(out)

    def loop_word(self, loop) -> Word:
        return self.path_word(list(loop) + [loop[0]])

    def relator_images_trivial(self, sample_limit=3000) -> bool:
        """Check that triangle boundary words map to trivial canonical
        elements (a runtime certificate that the substitution map is a
        homomorphism).  Checks everything up to `sample_limit` triangles,
        else a deterministic sample."""
        tris = self.surface.triangles
        if len(tris) > sample_limit:
            step = len(tris) // sample_limit + 1
            tris = tris[::step]
        for a, b, c in tris:
            w = concat(
                self.edge_word(a, b), self.edge_word(b, c), self.edge_word(c, a)
            )
            if not self.group.is_trivial(w):
                return False
        return True
