"""Geometric realization of mosaics and tree mosaics in exact arithmetic.

Coordinates are kept as integers over one common denominator per
realization; the public Segment type carries Fractions.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import NamedTuple

from .grid import Mosaic, Tile, conn_points
from .moves import MOSAIC_LEVEL_FAMILIES, search_reduce
from .transforms import IDENTITY, D4Element, EmbedSpec, d4_act, embed, map_index
from .tree import TreeMosaic, walk

Point = tuple[Fraction, Fraction, Fraction]
IPoint = tuple[int, int, int]

# tile-local coordinates in units of 1/8
_C = {"N": (4, 8, 4), "S": (4, 0, 4), "E": (8, 4, 4), "W": (0, 4, 4)}
_MID = (4, 4, 4)


def _crossing(over_vertical: bool):
    def strand(vertical: bool, z: int, layer: str):
        if vertical:
            pts = [_C["S"], (4, 3, z), (4, 5, z), _C["N"]]
        else:
            pts = [_C["W"], (3, 4, z), (5, 4, z), _C["E"]]
        return [(pts[0], pts[1], layer), (pts[1], pts[2], layer + "-apex"), (pts[2], pts[3], layer)]

    return strand(over_vertical, 6, "over") + strand(not over_vertical, 2, "under")


def _local_segments(t: Tile, full: bool):
    if t == Tile.T0:
        return []
    if t.is_crossing:
        return _crossing(t.over == "NS")
    if t.is_inf:
        if not full:
            return []
        return [(_C[s], _MID, "rv") for s in sorted(conn_points(t))]
    return [(_C[a], _C[b], "arc") for a, b in t.arcs]


_LOCAL = {(t, full): _local_segments(t, full) for t in Tile for full in (False, True)}


def tile_arcs(t: Tile) -> list[list[Point]]:
    """Arcs of a tile in the unit cube as polylines (full mode for T-inf)."""
    t = Tile(t)
    eighth = lambda p: tuple(Fraction(c, 8) for c in p)
    if t.is_crossing:
        segs = _LOCAL[(t, True)]
        return [[eighth(segs[k][0]) for k in range(i, i + 3)] + [eighth(segs[i + 2][1])] for i in (0, 3)]
    if t.is_inf:
        sides = sorted(conn_points(t))
        lines = [("N", "S"), ("E", "W")]
        return [[eighth(_C[a]), eighth(_MID), eighth(_C[b])] for a, b in lines if a in sides]
    return [[eighth(_C[a]), eighth(_C[b])] for a, b in t.arcs]


class Segment(NamedTuple):
    p: Point
    q: Point
    vertex: str
    tile: tuple[int, int]
    layer: str


class Region(NamedTuple):
    vertex: str
    depth: int
    lo: Point
    hi: Point

    def contains(self, x: Point) -> bool:
        return all(self.lo[k] <= x[k] <= self.hi[k] for k in range(3))


@dataclass(frozen=True)
class Realization:
    den: int
    raw: tuple[tuple[IPoint, IPoint, str, tuple[int, int], str], ...]
    limit_points: dict[str, Point] = field(default_factory=dict)
    depth: int | None = None
    regions: tuple[Region, ...] = ()

    @property
    def segments(self) -> list[Segment]:
        f = lambda p: tuple(Fraction(c, self.den) for c in p)
        return [Segment(f(p), f(q), v, t, l) for p, q, v, t, l in self.raw]

    def canonical(self) -> tuple:
        out = []
        for s in self.segments:
            p, q = sorted((s.p, s.q))
            out.append((p, q, s.vertex, s.tile, s.layer))
        return tuple(sorted(out))

    def geometry(self) -> frozenset:
        """Segment set without tags, endpoints unordered."""
        return frozenset(frozenset((s.p, s.q)) for s in self.segments)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Realization):
            return NotImplemented
        return self.canonical() == other.canonical() and self.limit_points == other.limit_points and self.depth == other.depth

    def __hash__(self):
        return hash(self.canonical())

    def __len__(self) -> int:
        return len(self.raw)


def _norm(p, q):
    return (p, q) if p <= q else (q, p)


def _emit(out, M: Mosaic, vid: str, scale: int, origin: IPoint, full: bool):
    # scale = integer length of one tile edge; local units are 1/8 of a tile
    n = M.dim
    unit = scale // 8
    ox, oy, oz = origin
    for i, row in enumerate(M.tiles, 1):
        y0 = oy + (n - i) * scale
        for j, t in enumerate(row, 1):
            if not t:
                continue
            x0 = ox + (j - 1) * scale
            for a, b, layer in _LOCAL[(t, full)]:
                p = (x0 + a[0] * unit, y0 + a[1] * unit, oz + a[2] * unit)
                q = (x0 + b[0] * unit, y0 + b[1] * unit, oz + b[2] * unit)
                out.append((*_norm(p, q), vid, (i, j), layer))


def realize_mosaic(M: Mosaic, mode: str = "tame", vertex: str = "root") -> Realization:
    if mode not in ("tame", "full"):
        raise ValueError(f"mode must be tame or full, got {mode!r}")
    out: list = []
    _emit(out, M, vertex, 8, (0, 0, 0), mode == "full")
    return Realization(1 * 8, tuple(out))


class Placed(NamedTuple):
    vid: str
    parent: str | None
    depth: int
    mosaic: Mosaic  # oriented as realized
    scale: int  # sigma(v) = 1 / scale
    rho: tuple[Fraction, Fraction, Fraction]
    tau: D4Element
    spec: EmbedSpec | None
    ray: str | None


def place(tm: TreeMosaic, depth: int | None = None, ray_steps: int | None = None) -> list[Placed]:
    """Scale, position and accumulated orientation of every included vertex."""
    placed: dict[str, Placed] = {}
    out = []
    for info in walk(tm, depth, ray_steps):
        if info.parent is None:
            P = Placed(info.vid, None, 0, info.mosaic, 1, (Fraction(0),) * 3, IDENTITY, None, None)
        else:
            u = placed[info.parent]
            a, b = map_index(u.tau, u.mosaic.dim, info.spec.pos)
            n_u = u.mosaic.dim
            off = (Fraction(b - 1, u.scale), Fraction(n_u - a, u.scale), Fraction(0))
            rho = tuple(u.rho[k] + off[k] for k in range(3))
            tau = u.tau * info.spec.sigma
            P = Placed(info.vid, u.vid, info.depth, d4_act(tau, info.mosaic), u.scale * info.mosaic.dim, rho, tau, info.spec, info.ray)
        placed[info.vid] = P
        out.append(P)
    return out


def _face_point(side: str, x0, y0, size) -> tuple:
    h = size / 2
    return {"N": (x0 + h, y0 + size), "S": (x0 + h, y0), "E": (x0 + size, y0 + h), "W": (x0, y0 + h)}[side]


def links(u: Placed, v: Placed) -> list[tuple[Point, Point, str]]:
    """Connecting segments between a parent's T-inf cell and a child's boundary."""
    a, b = map_index(u.tau, u.mosaic.dim, v.spec.pos)
    cell = u.mosaic[a, b]
    su, sv = Fraction(1, u.scale), Fraction(1, v.scale)
    x0, y0 = u.rho[0] + (b - 1) * su, u.rho[1] + (u.mosaic.dim - a) * su
    m = v.mosaic.dim
    out = []
    for side in sorted(conn_points(cell)):
        px, py = _face_point(side, x0, y0, su)
        cx, cy = _face_point(side, v.rho[0], v.rho[1], m * sv)
        out.append(((px, py, su / 2), (cx, cy, sv / 2), side))
    return out


def realize_tree(tm: TreeMosaic, depth: int | None = None, ray_steps: int | None = None) -> Realization:
    if depth is None and ray_steps is None and tm.rays:
        raise ValueError("an infinite tree needs a depth")
    vs = place(tm, depth, ray_steps)
    L = 1
    for P in vs:
        L = lcm(L, P.scale)
    den = 8 * L
    out: list = []
    by_id = {P.vid: P for P in vs}
    for P in vs:
        origin = tuple(int(c * den) for c in P.rho)
        _emit(out, P.mosaic, P.vid, den // P.scale, origin, False)
        if P.parent is not None:
            for p, q, _ in links(by_id[P.parent], P):
                pi = tuple(int(c * den) for c in p)
                qi = tuple(int(c * den) for c in q)
                a, b = map_index(by_id[P.parent].tau, by_id[P.parent].mosaic.dim, P.spec.pos)
                out.append((*_norm(pi, qi), P.vid, (a, b), "link"))
    limits = {r.name: limit_point(tm, r.name) for r in tm.rays}
    regions = tuple(region(P) for P in vs)
    return Realization(den, tuple(out), limits, depth, regions)


def region(P: Placed) -> Region:
    s = Fraction(1, P.scale)
    size = P.mosaic.dim * s
    lo = P.rho
    hi = (lo[0] + size, lo[1] + size, lo[2] + s)
    return Region(P.vid, P.depth, lo, hi)


def cube_isometry(sigma: D4Element, n):
    """The isometry of [0,n]^2 x [0,1] that realizes sigma on a mosaic.

    r turns the square a quarter clockwise as drawn; the flip mirrors in
    the NW-SE diagonal and also turns z upside down, which is what keeps
    crossing types fixed under f.
    """

    def apply(p):
        x, y, z = p
        if sigma.flip:
            x, y, z = n - y, n - x, 1 - z
        for _ in range(sigma.rot):
            x, y = y, n - x
        return x, y, z

    return apply


def isometric_image(R: Realization, sigma: D4Element, n: int) -> frozenset:
    g = cube_isometry(sigma, Fraction(n))
    return frozenset(frozenset((g(s.p), g(s.q))) for s in R.segments)


# -- limit points ---------------------------------------------------------


def _order(g: D4Element) -> int:
    k, x = 1, g
    while x != IDENTITY:
        x = x * g
        k += 1
    return k


def _attach_state(tm: TreeMosaic, name: str):
    r = tm.ray(name)
    path = tm.path_to(r.attach)
    sub = [p for p in place(tm, depth=len(path) - 1, ray_steps=0) if p.vid in path]
    return r, sub[-1]


def limit_point(tm: TreeMosaic, ray: str) -> Point:
    """Exact limit of rho along a periodic ray, summed in closed form."""
    r, u = _attach_state(tm, ray)
    p = len(r.period)
    g = IDENTITY
    for _, spec in r.period:
        g = g * spec.sigma
    P = p * _order(g)

    def step(u_mosaic, u_scale, u_rho, u_tau, M, spec):
        a, b = map_index(u_tau, u_mosaic.dim, spec.pos)
        off = (Fraction(b - 1, u_scale), Fraction(u_mosaic.dim - a, u_scale), Fraction(0))
        tau = u_tau * spec.sigma
        return d4_act(tau, M), u_scale * M.dim, tuple(u_rho[k] + off[k] for k in range(3)), tau

    state = (u.mosaic, u.scale, u.rho, u.tau)
    M1, s1 = r.element(1)
    state = step(*state, M1, s1)
    rho1, scale1 = state[2], state[1]
    for k in range(2, P + 2):
        M, spec = r.element(k)
        state = step(*state, M, spec)
    lam = Fraction(scale1, state[1])
    SP = tuple(state[2][k] - rho1[k] for k in range(3))
    return tuple(rho1[k] + SP[k] / (1 - lam) for k in range(3))


def ray_path(tm: TreeMosaic, ray: str, steps: int) -> list[Placed]:
    """Root-to-ray vertices, the ray unrolled by steps vertices."""
    r = tm.ray(ray)
    keep = set(tm.path_to(r.attach)) | {r.vertex_id(k) for k in range(1, steps + 1)}
    return [P for P in place(tm, ray_steps=steps) if P.vid in keep]


# -- p-index and tameness ------------------------------------------------


def p_index_bound(tm: TreeMosaic, ray: str) -> int:
    r = tm.ray(ray)
    M, _ = r.period[-1]
    arity = len(conn_points(M[M.inf_positions[0]]))
    if arity > 4:
        raise AssertionError("T-inf arity above 4")
    return arity


def period_tangle(tm: TreeMosaic, ray: str) -> Mosaic:
    """One period of a ray composed into a single tangle with one T-inf tile."""
    r = tm.ray(ray)
    W = r.period[0][0]
    acc = IDENTITY
    for M, spec in r.period[1:]:
        # the T-inf tile of W is the previous element's, seen through acc
        acc = acc * spec.sigma
        a, b = W.inf_positions[0]
        W = embed(M, W, EmbedSpec(a, b, acc))
    return W


def ray_tameness_hint(tm: TreeMosaic, ray: str, max_steps: int = 3, max_states: int = 50_000) -> str:
    """'tame-candidate' if one period reduces to a crossing-free tangle, else 'unknown'."""
    T = period_tangle(tm, ray)
    if T.crossing_count() == 0:
        return "tame-candidate"
    res = search_reduce(
        T, lambda M: M.crossing_count() == 0, max_steps=max_steps,
        families=MOSAIC_LEVEL_FAMILIES, max_states=max_states,
    )
    return "tame-candidate" if res.found else "unknown"


# -- component tracing ---------------------------------------------------


class Chain(NamedTuple):
    closed: bool
    events: tuple[tuple[tuple[str, tuple[int, int]], str], ...]  # (crossing key, 'o'/'u')
    segments: int


def chains(R: Realization) -> list[Chain]:
    """Chain segments into components by shared endpoints.

    A point where four segments meet (a full-mode T-inf centre) is passed
    straight through.
    """
    at = defaultdict(list)
    for k, (p, q, *_rest) in enumerate(R.raw):
        at[p].append(k)
        at[q].append(k)
    used = [False] * len(R.raw)

    def other(k, pt):
        p, q = R.raw[k][0], R.raw[k][1]
        return q if pt == p else p

    def next_seg(k, pt):
        cands = [s for s in at[pt] if s != k]
        if len(cands) == 1:
            return cands[0]
        if len(cands) == 3:
            a = other(k, pt)
            d = tuple(pt[i] - a[i] for i in range(3))
            for s in cands:
                b = other(s, pt)
                e = tuple(b[i] - pt[i] for i in range(3))
                if _parallel(d, e):
                    return s
        return None

    def event(k):
        p, q, v, t, layer = R.raw[k]
        if layer == "over-apex":
            return ((v, t), "o")
        if layer == "under-apex":
            return ((v, t), "u")
        return None

    def run(k, pt):
        # walk from segment k away from point pt
        evs, count = [], 0
        while True:
            used[k] = True
            count += 1
            ev = event(k)
            if ev:
                evs.append(ev)
            pt = other(k, pt)
            nk = next_seg(k, pt)
            if nk is None:
                return False, evs, count, pt
            if used[nk]:
                return True, evs, count, pt
            k = nk

    out = []
    ends = [k for k in range(len(R.raw)) if len(at[R.raw[k][0]]) == 1 or len(at[R.raw[k][1]]) == 1]
    for k in ends:
        if used[k]:
            continue
        p, q = R.raw[k][0], R.raw[k][1]
        start = p if len(at[p]) == 1 else q
        _, evs, count, _ = run(k, start)
        out.append(Chain(False, tuple(evs), count))
    for k in range(len(R.raw)):
        if not used[k]:
            closed, evs, count, _ = run(k, R.raw[k][0])
            out.append(Chain(closed, tuple(evs), count))
    return out


def _parallel(d, e) -> bool:
    cross = (d[1] * e[2] - d[2] * e[1], d[2] * e[0] - d[0] * e[2], d[0] * e[1] - d[1] * e[0])
    dot = sum(d[i] * e[i] for i in range(3))
    return cross == (0, 0, 0) and dot > 0


def _canonical_sequence(seq: list[tuple[str, str]], closed: bool) -> tuple:
    def relabel(s):
        names: dict = {}
        out = []
        for key, ou in s:
            if key != "*":
                names.setdefault(key, len(names))
                out.append((names[key], ou))
            else:
                out.append((-1, ou))
        return tuple(out)

    cands = []
    for s in (seq, seq[::-1]):
        if closed and s:
            for r in range(len(s)):
                cands.append(relabel(s[r:] + s[:r]))
        else:
            cands.append(relabel(s))
    return min(cands) if cands else ()


def crossing_signature(R: Realization) -> tuple:
    """Component count plus per-component crossing sequences, up to relabelling.

    Crossings between two different components are marked shared.
    """
    cs = chains(R)
    owner = defaultdict(set)
    for idx, c in enumerate(cs):
        for key, _ in c.events:
            owner[key].add(idx)
    sigs = []
    for idx, c in enumerate(cs):
        seq = [("*" if len(owner[key]) > 1 else key, ou) for key, ou in c.events]
        sigs.append((c.closed, _canonical_sequence(seq, c.closed)))
    return len(cs), tuple(sorted(sigs))


# -- bounds and regions --------------------------------------------------


class Check(NamedTuple):
    name: str
    ok: bool
    detail: str = ""


def _dist2(p, q):
    return sum((p[k] - q[k]) ** 2 for k in range(3))


def regions_and_shells(tm: TreeMosaic, depth: int):
    """Regions to the given depth, shell descriptions, and the four checks."""
    vs = place(tm, depth)
    regs = {P.vid: region(P) for P in vs}
    parent = {P.vid: P.parent for P in vs}
    kids = defaultdict(list)
    for P in vs:
        if P.parent is not None:
            kids[P.parent].append(P.vid)
    shells = [(regs[v], tuple(regs[c] for c in kids[v])) for v in regs]
    problems = []

    def ancestors(v):
        out = set()
        while parent[v] is not None:
            v = parent[v]
            out.add(v)
        return out

    anc = {v: ancestors(v) for v in regs}
    byd = {P.vid: P for P in vs}
    for v, R in regs.items():
        p = parent[v]
        if p is not None:
            Rp = regs[p]
            if not all(Rp.lo[k] <= R.lo[k] and R.hi[k] <= Rp.hi[k] for k in range(3)):
                problems.append(Check("nesting", False, f"{v} not inside {p}"))
            s = Fraction(1, byd[p].scale)
            gaps = [R.lo[0] - Rp.lo[0], Rp.hi[0] - R.hi[0], R.lo[1] - Rp.lo[1], Rp.hi[1] - R.hi[1]]
            if min(gaps) < s:
                problems.append(Check("clearance", False, f"{v} is closer than sigma({p}) to the lateral boundary"))
            d = R.depth
            diam2 = _dist2(R.lo, R.hi)
            if diam2 > 3 * Fraction(1, 9 ** (d - 1)):
                problems.append(Check("diameter", False, f"{v} diameter too large at depth {d}"))
    names = list(regs)
    for i, v in enumerate(names):
        for w in names[i + 1 :]:
            if v in anc[w] or w in anc[v]:
                continue
            A, B = regs[v], regs[w]
            overlap = [min(A.hi[k], B.hi[k]) - max(A.lo[k], B.lo[k]) for k in range(3)]
            if all(o > 0 for o in overlap):
                problems.append(Check("disjointness", False, f"{v} and {w} overlap"))
            if parent[v] == parent[w] and overlap[0] >= 0 and overlap[1] >= 0 and (overlap[0] > 0 or overlap[1] > 0):
                problems.append(Check("siblings", False, f"{v} and {w} share a face"))
    return list(regs.values()), shells, problems


def check_bounds(tm: TreeMosaic, depth: int, cauchy_depth: int = 12) -> list[Check]:
    """Every quantitative check: sigma decay, link lengths, Cauchy bound,
    limit-point containment, the region checks and the p-index bound."""
    checks = []
    vs = place(tm, depth)
    by_id = {P.vid: P for P in vs}
    bad = [P.vid for P in vs if Fraction(1, P.scale) > Fraction(1, 3**P.depth)]
    checks.append(Check("sigma-decay", not bad, ", ".join(bad)))
    long = []
    for P in vs:
        if P.parent is None:
            continue
        u = by_id[P.parent]
        for p, q, side in links(u, P):
            if _dist2(p, q) > 3 * Fraction(1, u.scale) ** 2:
                long.append(f"{u.vid}->{P.vid}:{side}")
    checks.append(Check("link-length", not long, ", ".join(long)))
    root_hi = Fraction(tm.mosaics[tm.root].dim)
    R = realize_tree(tm, depth)
    outside = [s for s in R.segments if not all(0 <= c <= root_hi for c in s.p[:2] + s.q[:2]) or not all(0 <= c <= 1 for c in (s.p[2], s.q[2]))]
    checks.append(Check("bounded", not outside, f"{len(outside)} segments outside the root box"))
    for r in tm.rays:
        path = ray_path(tm, r.name, cauchy_depth)
        path = [P for P in path if P.depth <= cauchy_depth]
        viol = []
        for n_i, Pn in enumerate(path):
            for Pm in path[n_i + 1 :]:
                n = Pn.depth
                if n >= 1 and _dist2(Pm.rho, Pn.rho) >= Fraction(81, 2) / 9**n:
                    viol.append(f"({Pm.depth},{n})")
        checks.append(Check(f"cauchy[{r.name}]", not viol, ", ".join(viol[:5])))
        lim = limit_point(tm, r.name)
        outside = [P.vid for P in path if P.depth <= depth and not region(P).contains(lim)]
        checks.append(Check(f"limit-in-regions[{r.name}]", not outside, ", ".join(outside)))
        pi = p_index_bound(tm, r.name)
        checks.append(Check(f"p-index[{r.name}]", pi <= 4, str(pi)))
    _, _, problems = regions_and_shells(tm, depth)
    for name in ("nesting", "disjointness", "siblings", "clearance", "diameter"):
        mine = [p.detail for p in problems if p.name == name]
        checks.append(Check(f"regions-{name}", not mine, "; ".join(mine[:5])))
    return checks


# -- export --------------------------------------------------------------


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _dec(x: Fraction, places: int = 12) -> str:
    v = round(x * 10**places)
    sign = "-" if v < 0 else ""
    v = abs(v)
    return f"{sign}{v // 10**places}.{v % 10**places:0{places}d}"


def export(R: Realization, fmt: str, size: int | None = None) -> bytes:
    if fmt == "seg":
        return export_seg(R).encode()
    if fmt == "svg":
        return export_svg(R, size).encode()
    raise ValueError(f"unknown export format {fmt!r}")


def export_seg(R: Realization) -> str:
    lines = ["# wildmosaic seg 1"]
    if R.depth is not None:
        lines.append(f"depth {R.depth}")
    for name in sorted(R.limit_points):
        lines.append("limit " + name + " " + " ".join(_q(c) for c in R.limit_points[name]))
    segs = []
    for s in R.segments:
        p, q = sorted((s.p, s.q))
        segs.append("seg " + " ".join(_q(c) for c in p + q) + f" {s.vertex} {s.tile[0]},{s.tile[1]} {s.layer}")
    lines.extend(sorted(segs))
    return "\n".join(lines) + "\n"


def parse_seg(text: str) -> Realization:
    depth = None
    limits = {}
    segs = []
    for raw in text.splitlines():
        parts = raw.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "depth":
            depth = int(parts[1])
        elif parts[0] == "limit":
            limits[parts[1]] = tuple(Fraction(c) for c in parts[2:5])
        elif parts[0] == "seg":
            nums = [Fraction(c) for c in parts[1:7]]
            i, j = parts[8].split(",")
            segs.append((tuple(nums[:3]), tuple(nums[3:]), parts[7], (int(i), int(j)), parts[9]))
        else:
            raise ValueError(f"bad seg line {raw!r}")
    den = 1
    for p, q, *_ in segs:
        for c in p + q:
            den = lcm(den, c.denominator)
    raw = tuple((tuple(int(c * den) for c in p), tuple(int(c * den) for c in q), v, t, l) for p, q, v, t, l in segs)
    return Realization(den, raw, limits, depth)


def export_svg(R: Realization, size: int | None = None) -> str:
    """Top-down projection; under strands break at crossings, links vanish."""
    segs = R.segments
    if size is None:
        hi = [max(s.p[k], s.q[k]) for s in segs for k in (0, 1)]
        size = int(max(hi)) + (0 if not hi or max(hi) == int(max(hi)) else 1) if hi else 1
    H = Fraction(size)
    body = []
    for s in segs:
        if s.layer in ("link", "under-apex"):
            continue
        x1, y1, x2, y2 = s.p[0], H - s.p[1], s.q[0], H - s.q[1]
        if (x1, y1) == (x2, y2):
            continue
        cls = s.layer.replace("-apex", "")
        body.append(f'<line class="{cls}" x1="{_dec(x1)}" y1="{_dec(y1)}" x2="{_dec(x2)}" y2="{_dec(y2)}"/>')
    body.sort()
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}" width="{100 * size}" height="{100 * size}">\n'
        '<style>line{stroke:black;stroke-width:0.04;stroke-linecap:round}</style>\n'
    )
    return head + "".join(b + "\n" for b in body) + "</svg>\n"
