"""SVG drawings of genus 0 and genus 1 dessins.

Genus 0 uses a Tutte layout with a largest face as the outer face.  Genus 1
uses a periodic harmonic layout: every edge gets an integer lattice offset
(zero on a spanning tree, fixed on two homology generators, and forced on the
remaining edges by the face relations), then vertex positions solve the
Laplacian system in lattice coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import numpy as np

from .belyi import UnsupportedGenus
from .dessin import Dessin, genus_of
from .dessin import perm as P

__all__ = ["RenderLayout", "layout", "render_svg", "UnsupportedGenus"]


@dataclass
class RenderLayout:
    # vertex ("b", i) or ("w", j) -> (x, y)
    positions: dict
    # one polyline per edge (dart), from its black to its white end
    edges: list
    genus: int
    lattice: tuple | None = None
    shape: str | None = None
    warnings: list = field(default_factory=list)
    # per edge: (black vertex, white vertex, integer lattice offset of the white end)
    incidence: list = field(default_factory=list)

    @property
    def black(self) -> list:
        return [v for v in self.positions if v[0] == "b"]

    @property
    def white(self) -> list:
        return [v for v in self.positions if v[0] == "w"]


def _vertex_maps(d: Dessin):
    return P.cycle_of(d.sigma0), P.cycle_of(d.sigma1)


def _face_walk(d: Dessin, face) -> list:
    """Vertices met along a face: black(d), white(d) for each dart."""
    bl, wh = _vertex_maps(d)
    out = []
    for x in face:
        out += [("b", bl[x]), ("w", wh[x])]
    return out


# --------------------------------------------------------------------------
# genus 0


def _tutte(d: Dessin) -> RenderLayout:
    bl, wh = _vertex_maps(d)
    n = d.n
    faces = P.cycles(P.compose(d.sigma0, d.sigma1))
    outer = max(faces, key=len)
    verts = [("b", i) for i in range(max(bl) + 1)] + [("w", j) for j in range(max(wh) + 1)]

    # subdivide repeated edges so the barycentric system sees them separately
    mult: dict = {}
    for x in range(n):
        mult.setdefault((bl[x], wh[x]), []).append(x)
    nodes = list(verts)
    nbrs: dict = {v: [] for v in verts}
    mid_of = {}
    for (b, w), darts in mult.items():
        if len(darts) == 1:
            nbrs[("b", b)].append(("w", w))
            nbrs[("w", w)].append(("b", b))
            continue
        for x in darts:
            m = ("m", x)
            mid_of[x] = m
            nodes.append(m)
            nbrs[m] = [("b", b), ("w", w)]
            nbrs[("b", b)].append(m)
            nbrs[("w", w)].append(m)

    ring = []
    for v in _face_walk(d, outer):
        if v not in ring:
            ring.append(v)
    fixed = {}
    for k, v in enumerate(ring):
        a = 2 * math.pi * k / len(ring)
        fixed[v] = (math.cos(a), math.sin(a))

    free = [v for v in nodes if v not in fixed]
    idx = {v: i for i, v in enumerate(free)}
    pos = dict(fixed)
    if free:
        A = np.zeros((len(free), len(free)))
        rhs = np.zeros((len(free), 2))
        for v in free:
            i = idx[v]
            A[i, i] = len(nbrs[v])
            for u in nbrs[v]:
                if u in idx:
                    A[i, idx[u]] -= 1
                else:
                    rhs[i] += fixed[u]
        sol = np.linalg.lstsq(A, rhs, rcond=None)[0]
        for v in free:
            pos[v] = tuple(sol[idx[v]])

    edges, inc = [], []
    for x in range(n):
        b, w = ("b", bl[x]), ("w", wh[x])
        pts = [pos[b]]
        if x in mid_of:
            pts.append(pos[mid_of[x]])
        pts.append(pos[w])
        edges.append(pts)
        inc.append((b, w, (0, 0)))
    positions = {v: pos[v] for v in verts}
    lay = RenderLayout(positions, edges, 0, incidence=inc)
    lay.warnings += _crossing_warnings(edges)
    return lay


# --------------------------------------------------------------------------
# genus 1


def _lattice_offsets(d: Dessin) -> list:
    """Integer offsets omega(e) with zero sum around every face."""
    bl, wh = _vertex_maps(d)
    n = d.n
    nb = max(bl) + 1
    # spanning tree of the primal graph (black vertices 0..nb-1, whites after)
    parent = list(range(nb + max(wh) + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    tree = set()
    for x in range(n):
        ra, rb = find(bl[x]), find(nb + wh[x])
        if ra != rb:
            parent[ra] = rb
            tree.add(x)
    # dual spanning tree on faces through non-tree edges
    faces = P.cycles(P.compose(d.sigma0, d.sigma1))
    face_of = [0] * n
    for i, f in enumerate(faces):
        for x in f:
            face_of[x] = i
    # edge x separates the face through x and the face through sigma1^-1(x)
    inv1 = P.inverse(d.sigma1)
    sides = [(face_of[x], face_of[inv1[x]]) for x in range(n)]
    fparent = list(range(len(faces)))

    def ffind(a):
        while fparent[a] != a:
            fparent[a] = fparent[fparent[a]]
            a = fparent[a]
        return a

    cotree = set()
    for x in range(n):
        if x in tree:
            continue
        ra, rb = ffind(sides[x][0]), ffind(sides[x][1])
        if ra != rb:
            fparent[ra] = rb
            cotree.add(x)
    gens = [x for x in range(n) if x not in tree and x not in cotree]
    assert len(gens) == 2, "torus needs exactly two homology generators"
    omega: list = [None] * n
    for x in tree:
        omega[x] = (0, 0)
    omega[gens[0]] = (1, 0)
    omega[gens[1]] = (0, 1)
    # peel the dual tree: a face with one unknown edge determines it
    # face sum: sum over darts y of the face of omega(y) - omega(sigma1 y)
    pending = set(cotree)
    while pending:
        progress = False
        for f in faces:
            coef: dict = {}
            for y in f:
                coef[y] = coef.get(y, 0) + 1
                z = d.sigma1[y]
                coef[z] = coef.get(z, 0) - 1
            unknown = [e for e, c in coef.items() if c and omega[e] is None]
            if len(unknown) != 1:
                continue
            e = unknown[0]
            sx = sum(c * omega[y][0] for y, c in coef.items() if c and y != e)
            sy = sum(c * omega[y][1] for y, c in coef.items() if c and y != e)
            c = coef[e]
            omega[e] = (-sx // c, -sy // c)
            pending.discard(e)
            progress = True
        if not progress:
            raise RuntimeError("face relations did not determine the lattice offsets")
    return omega


def _harmonic(d: Dessin, rhombus: bool) -> RenderLayout:
    bl, wh = _vertex_maps(d)
    n = d.n
    nb, nw = max(bl) + 1, max(wh) + 1
    omega = _lattice_offsets(d)
    N = nb + nw
    # Laplacian in lattice coordinates; edge vector = y_w + omega - y_b
    L = np.zeros((N, N))
    rhs = np.zeros((N, 2))
    for x in range(n):
        b, w = bl[x], nb + wh[x]
        o = np.array(omega[x], dtype=float)
        L[b, b] += 1
        L[w, w] += 1
        L[b, w] -= 1
        L[w, b] -= 1
        rhs[b] += o
        rhs[w] -= o
    # pin vertex 0 at the origin
    L[0, :] = 0
    L[0, 0] = 1
    rhs[0] = 0
    Y = np.linalg.lstsq(L, rhs, rcond=None)[0]
    if rhombus:
        basis = np.array([[1.0, 0.0], [0.5, math.sqrt(3) / 2]])
    else:
        basis = np.array([[1.0, 0.0], [0.0, 1.0]])
    # shift so that the drawing sits inside the fundamental domain
    shift = np.floor(Y)
    Y = Y - shift
    X = Y @ basis
    positions = {}
    for i in range(nb):
        positions[("b", i)] = tuple(X[i])
    for j in range(nw):
        positions[("w", j)] = tuple(X[nb + j])
    edges, inc = [], []
    for x in range(n):
        b, w = bl[x], nb + wh[x]
        off = np.array(omega[x]) + shift[w] - shift[b]
        off = (int(round(off[0])), int(round(off[1])))
        end = (Y[w] + off) @ basis
        edges.append([tuple(X[b]), tuple(end)])
        inc.append((("b", b), ("w", wh[x]), off))
    lattice = (tuple(basis[0]), tuple(basis[1]))
    lay = RenderLayout(positions, edges, 1, lattice, "rhombus" if rhombus else "rectangle",
                       incidence=inc)
    lay.warnings += _crossing_warnings(edges)
    return lay


# --------------------------------------------------------------------------


def _segments_cross(p, q, r, s) -> bool:
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    eps = 1e-9
    for a in (p, q):
        for b in (r, s):
            if abs(a[0] - b[0]) < eps and abs(a[1] - b[1]) < eps:
                return False
    d1, d2 = orient(r, s, p), orient(r, s, q)
    d3, d4 = orient(p, q, r), orient(p, q, s)
    return d1 * d2 < -eps and d3 * d4 < -eps


def _crossing_warnings(edges) -> list:
    segs = [(e, a, b) for e, pl in enumerate(edges) for a, b in zip(pl, pl[1:])]
    count = 0
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            if segs[i][0] != segs[j][0] and _segments_cross(segs[i][1], segs[i][2],
                                                             segs[j][1], segs[j][2]):
                count += 1
    return [f"{count} edge crossings in a degenerate layout"] if count else []


def layout(d: Dessin, *, rhombus: bool = False) -> RenderLayout:
    g = genus_of(d)
    if g == 0:
        return _tutte(d)
    if g == 1:
        return _harmonic(d, rhombus)
    raise UnsupportedGenus(f"cannot draw a genus {g} dessin")


def render_svg(d: Dessin, *, rhombus: bool = False, size: int = 480, title: str | None = None) -> str:
    """SVG 1.1 text; black vertices filled, white vertices hollow."""
    lay = layout(d, rhombus=rhombus)
    pts = [p for pl in lay.edges for p in pl] + list(lay.positions.values())
    if lay.lattice:
        (ax, ay), (bx, by) = lay.lattice
        pts += [(0, 0), (ax, ay), (bx, by), (ax + bx, ay + by)]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    pad = 0.08 * span
    scale = size / (span + 2 * pad)

    def tx(p):
        return ((p[0] - min(xs) + pad) * scale, (max(ys) - p[1] + pad) * scale)

    r = max(3.0, 0.02 * size)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" xmlns:xlink="http://www.w3.org/1999/xlink" '
        f'version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    if lay.lattice:
        (ax, ay), (bx, by) = lay.lattice
        corners = [tx(p) for p in [(0, 0), (ax, ay), (ax + bx, ay + by), (bx, by)]]
        poly = " ".join(f"{x:.3f},{y:.3f}" for x, y in corners)
        out.append(f'<polygon class="domain" data-shape="{lay.shape}" points="{poly}" '
                   'fill="none" stroke="#888" stroke-dasharray="4 3"/>')
    out.append('<g id="tile">')
    for e, pl in enumerate(lay.edges):
        dpath = " ".join(("M" if k == 0 else "L") + f"{x:.3f},{y:.3f}"
                         for k, (x, y) in enumerate(tx(p) for p in pl))
        out.append(f'<path class="edge" data-edge="{e + 1}" d="{dpath}" fill="none" '
                   'stroke="#222" stroke-width="1.5"/>')
    for v, p in lay.positions.items():
        x, y = tx(p)
        fill = "#000" if v[0] == "b" else "#fff"
        cls = "black" if v[0] == "b" else "white"
        out.append(f'<circle class="{cls}" data-vertex="{v[0]}{v[1] + 1}" cx="{x:.3f}" '
                   f'cy="{y:.3f}" r="{r:.2f}" fill="{fill}" stroke="#000"/>')
    out.append("</g>")
    if lay.lattice:
        (ax, ay), (bx, by) = lay.lattice
        for i in (-1, 0, 1):
            for j in (-1, 0, 1):
                if i == j == 0:
                    continue
                dx, dy = (i * ax + j * bx) * scale, -(i * ay + j * by) * scale
                out.append(f'<use class="copy" xlink:href="#tile" '
                           f'transform="translate({dx:.3f},{dy:.3f})" opacity="0.25"/>')
    for w in lay.warnings:
        out.append(f"<!-- warning: {escape(w)} -->")
    out.append("</svg>")
    return "\n".join(out) + "\n"
