"""Tree mosaics: finite cores with eventually periodic rays."""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, NamedTuple

from .grid import Kind, Mosaic, conn_points, format_mosaic, parse_mosaic, violations as mosaic_violations
from .moves import (
    MOSAIC_LEVEL_FAMILIES,
    MoveCertificate,
    NotApplicable,
    apply as apply_rule,
    catalog,
    get_rule,
    search_equiv,
    applicable,
)
from .transforms import (
    D4Element,
    EmbedSpec,
    d4_act,
    embed,
    embedded_position,
    profile_mismatch,
    zoom_position,
)


@dataclass(frozen=True)
class RaySpec:
    """An infinite unary path hanging off a core vertex.

    entry embeds the first period element into the attaching vertex;
    period[k][1] embeds element k into element k-1 (cyclically).
    """

    name: str
    attach: str
    entry: EmbedSpec
    period: tuple[tuple[Mosaic, EmbedSpec], ...]
    refs: tuple[str, ...] = ()
    offset: int = 0  # period elements already unrolled into the core

    def element(self, k: int) -> tuple[Mosaic, EmbedSpec]:
        """Mosaic and incoming spec of the k-th ray vertex, k >= 1."""
        M, spec = self.period[(k - 1) % len(self.period)]
        return M, (self.entry if k == 1 else spec)

    def vertex_id(self, k: int) -> str:
        return f"{self.name}.{self.offset + k}"


@dataclass(frozen=True)
class TreeMosaic:
    name: str
    root: str
    mosaics: dict[str, Mosaic]
    parent: dict[str, str] = field(default_factory=dict)
    edges: dict[str, EmbedSpec] = field(default_factory=dict)  # keyed by child
    rays: tuple[RaySpec, ...] = ()
    order: tuple[str, ...] = ()  # declaration order of vertices
    refs: dict[str, str] = field(default_factory=dict)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.order or tuple(self.mosaics)

    def children(self, v: str) -> list[str]:
        kids = [c for c in self.vertices if self.parent.get(c) == v]
        return sorted(kids, key=lambda c: self.edges[c].pos)

    def rays_at(self, v: str) -> list[RaySpec]:
        return [r for r in self.rays if r.attach == v]

    def ray(self, name: str) -> RaySpec:
        for r in self.rays:
            if r.name == name:
                return r
        raise KeyError(f"no ray named {name!r}")

    def depth(self, v: str) -> int:
        d = 0
        while v != self.root:
            v = self.parent[v]
            d += 1
        return d

    def path_to(self, v: str) -> list[str]:
        out = [v]
        while v != self.root:
            v = self.parent[v]
            out.append(v)
        return out[::-1]

    def descendants(self, v: str) -> list[str]:
        out, stack = [], [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(self.children(u)))
        return out


class Violation(NamedTuple):
    where: str
    message: str

    def __str__(self) -> str:
        return f"{self.where}: {self.message}"


def single_vertex(M: Mosaic, name: str = "tree", vid: str = "root") -> TreeMosaic:
    return TreeMosaic(name, vid, {vid: M}, order=(vid,))


# -- validation ----------------------------------------------------------


def _check_child(M: Mosaic, where: str, leaf_ok: bool = True) -> list[Violation]:
    out = []
    if M.dim < 3 or M.dim % 2 == 0:
        out.append(Violation(where, f"dimension {M.dim} is not odd and at least 3"))
    kind = Kind.RVTANGLE if M.inf_positions else Kind.TANGLE
    out.extend(Violation(where, m) for m in mosaic_violations(M, kind))
    return out


def validate(tm: TreeMosaic) -> list[Violation]:
    out: list[Violation] = []
    if tm.root not in tm.mosaics:
        return [Violation(tm.root, "root has no mosaic")]
    if tm.root in tm.parent:
        out.append(Violation(tm.root, "root has a parent"))
    for c, p in tm.parent.items():
        if c not in tm.mosaics or p not in tm.mosaics:
            out.append(Violation(f"{p}->{c}", "edge refers to an unknown vertex"))
        if c not in tm.edges:
            out.append(Violation(f"{p}->{c}", "edge has no embedding"))
    for v in tm.mosaics:
        seen, u = set(), v
        while u != tm.root:
            if u in seen or u not in tm.parent:
                out.append(Violation(v, "not connected to the root"))
                break
            seen.add(u)
            u = tm.parent[u]
    if out:
        return out
    root = tm.mosaics[tm.root]
    kind = Kind.RVKNOT if root.inf_positions else Kind.KNOT
    out.extend(Violation(tm.root, m) for m in mosaic_violations(root, kind))
    for v in tm.vertices:
        M = tm.mosaics[v]
        if v != tm.root:
            out.extend(_check_child(M, v))
        slots = [(tm.edges[c].pos, f"{v}->{c}") for c in tm.children(v)]
        slots += [(r.entry.pos, f"ray {r.name}") for r in tm.rays_at(v)]
        positions = [p for p, _ in slots]
        if len(set(positions)) != len(positions):
            out.append(Violation(v, "two children target the same tile"))
        if sorted(positions) != sorted(M.inf_positions):
            out.append(Violation(v, f"T-inf tiles {list(M.inf_positions)} do not match child targets {sorted(positions)}"))
        declared = [c for c in tm.vertices if tm.parent.get(c) == v]
        if [tm.edges[c].pos for c in declared] != sorted(tm.edges[c].pos for c in declared):
            out.append(Violation(v, "declared child order is not the row-major T-inf order"))
        for c in tm.children(v):
            out.extend(_edge_violations(M, tm.mosaics[c], tm.edges[c], f"{v}->{c}"))
    for r in tm.rays:
        if r.attach not in tm.mosaics:
            out.append(Violation(f"ray {r.name}", f"unknown attachment vertex {r.attach}"))
            continue
        prev = tm.mosaics[r.attach]
        for k, (M, spec) in enumerate(r.period):
            where = f"ray {r.name}[{k}]"
            out.extend(_check_child(M, where))
            if len(M.inf_positions) != 1:
                out.append(Violation(where, "period mosaic must hold exactly one T-inf tile"))
            incoming = r.entry if k == 0 else spec
            out.extend(_edge_violations(prev, M, incoming, where))
            prev = M
        if len(r.period[-1][0].inf_positions) == 1:
            M0, spec0 = r.period[0]
            out.extend(_edge_violations(r.period[-1][0], M0, spec0, f"ray {r.name} (wrap)"))
    return out


def _edge_violations(parent: Mosaic, child: Mosaic, spec: EmbedSpec, where: str) -> list[Violation]:
    a, b = spec.pos
    if not (1 <= a <= parent.dim and 1 <= b <= parent.dim) or not parent[a, b].is_inf:
        return [Violation(where, f"target ({a},{b}) is not a T-inf tile")]
    bad = profile_mismatch(d4_act(spec.sigma, child), conn_points(parent[a, b]))
    if bad:
        return [Violation(where, f"profile mismatch on side {bad[0]}: {bad[1]}")]
    return []


def wild_points(tm: TreeMosaic) -> list[str]:
    return [r.name for r in tm.rays]


# -- contraction ---------------------------------------------------------


class ContractionError(ValueError):
    pass


def _compose(tm: TreeMosaic, v: str, S: set[str]):
    """Bottom-up composite of the S-subtree under v.

    Returns the mosaic and, for every edge leaving the subtree, its target
    position and orientation in that mosaic.
    """
    W = tm.mosaics[v]
    slots: dict[tuple[str, str], tuple[tuple[int, int], D4Element]] = {}
    inner = []
    for c in tm.children(v):
        spec = tm.edges[c]
        if c in S:
            inner.append(c)
            slots[("in", c)] = (spec.pos, spec.sigma)
        else:
            slots[("core", c)] = (spec.pos, spec.sigma)
    for r in tm.rays_at(v):
        slots[("ray", r.name)] = (r.entry.pos, r.entry.sigma)
    for c in inner:
        child, sub = _compose(tm, c, S)
        pos, sigma = slots.pop(("in", c))
        spec = EmbedSpec(pos[0], pos[1], sigma)
        W = embed(child, W, spec)
        m = child.dim
        slots = {k: (zoom_position(m, p), s) for k, (p, s) in slots.items()}
        for k, (p, s) in sub.items():
            slots[k] = (embedded_position(m, spec, p), sigma * s)
    return W, slots


def contract(tm: TreeMosaic, S: Iterable[str]) -> TreeMosaic:
    S = set(S)
    if not S:
        raise ContractionError("empty vertex set")
    for v in S:
        if v not in tm.mosaics:
            raise ContractionError(f"{v} is not a core vertex")
    tops = [v for v in S if v == tm.root or tm.parent[v] not in S]
    if len(tops) != 1:
        raise ContractionError(f"vertex set is not connected (tops {sorted(tops)})")
    top = tops[0]
    W, slots = _compose(tm, top, S)
    mosaics = {v: M for v, M in tm.mosaics.items() if v not in S or v == top}
    mosaics[top] = W
    parent = {c: p for c, p in tm.parent.items() if c not in S or c == top}
    edges = {c: e for c, e in tm.edges.items() if c in parent}
    rays = []
    for (kind, key), (pos, sigma) in slots.items():
        if kind == "core":
            parent[key] = top
            edges[key] = EmbedSpec(pos[0], pos[1], sigma)
    for r in tm.rays:
        if r.attach in S:
            pos, sigma = slots[("ray", r.name)]
            r = replace(r, attach=top, entry=EmbedSpec(pos[0], pos[1], sigma))
        rays.append(r)
    refs = {v: f for v, f in tm.refs.items() if v in mosaics and v not in S}
    out = TreeMosaic(tm.name, tm.root, mosaics, parent, edges, tuple(rays), (), refs)
    return _reorder(out)


def _reorder(tm: TreeMosaic) -> TreeMosaic:
    # breadth-first with children in row-major target order
    order, queue = [], [tm.root]
    while queue:
        v = queue.pop(0)
        order.append(v)
        kids = sorted((c for c in tm.mosaics if tm.parent.get(c) == v), key=lambda c: tm.edges[c].pos)
        queue.extend(kids)
    rays = tuple(sorted(tm.rays, key=lambda r: (order.index(r.attach), r.entry.pos)))
    return replace(tm, order=tuple(order), rays=rays)


def contract_all(tm: TreeMosaic) -> TreeMosaic:
    return contract(tm, tm.vertices)


def unroll(tm: TreeMosaic, ray: str, k: int) -> TreeMosaic:
    """Move the first k vertices of a ray into the core."""
    r = tm.ray(ray)
    if k <= 0:
        return tm
    mosaics, parent, edges = dict(tm.mosaics), dict(tm.parent), dict(tm.edges)
    refs = dict(tm.refs)
    prev = r.attach
    for j in range(1, k + 1):
        M, spec = r.element(j)
        vid = r.vertex_id(j)
        if vid in mosaics:
            raise ValueError(f"vertex id {vid} already used")
        mosaics[vid], parent[vid], edges[vid] = M, prev, spec
        if r.refs:
            refs[vid] = r.refs[(j - 1) % len(r.period)]
        prev = vid
    p = len(r.period)
    shift = k % p
    period = r.period[shift:] + r.period[:shift]
    prefs = r.refs[shift:] + r.refs[:shift] if r.refs else ()
    entry = period[0][1]
    new_ray = replace(r, attach=prev, entry=entry, period=period, refs=prefs, offset=r.offset + k)
    rays = tuple(new_ray if x.name == ray else x for x in tm.rays)
    return _reorder(replace(tm, mosaics=mosaics, parent=parent, edges=edges, rays=rays, refs=refs))


class StarResult(NamedTuple):
    tree: TreeMosaic
    divergence_depth: int
    stage1: TreeMosaic


def ray_spine(tm: TreeMosaic) -> set[str]:
    spine = set()
    for r in tm.rays:
        spine.update(tm.path_to(r.attach))
    return spine


def divergence_depth(tm: TreeMosaic) -> int:
    """Deepest core vertex where the paths to two wild points split."""
    spine = ray_spine(tm)
    best = 0
    for v in spine:
        ways = sum(1 for c in tm.children(v) if c in spine) + len(tm.rays_at(v))
        if ways >= 2:
            best = max(best, tm.depth(v))
    return best


def is_star_like(tm: TreeMosaic) -> bool:
    return all(len(tm.children(v)) + len(tm.rays_at(v)) == 1 for v in tm.vertices if v != tm.root)


def star_reduce(tm: TreeMosaic) -> StarResult:
    """Two contraction stages: off-spine finite subtrees, then the whole core."""
    D = divergence_depth(tm)
    if is_star_like(tm):
        return StarResult(tm, D, tm)
    spine = ray_spine(tm) | {tm.root}
    cur = tm
    for s in [v for v in tm.vertices if v in spine]:
        group = {s}
        for c in cur.children(s):
            if c not in spine:
                group.update(cur.descendants(c))
        if len(group) > 1:
            cur = contract(cur, group)
    stage1 = cur
    if len(cur.vertices) > 1:
        cur = contract(cur, cur.vertices)
    return StarResult(cur, D, stage1)


# -- tree moves ----------------------------------------------------------


class TreeMoveError(ValueError):
    pass


def tree_move_vstar(tm: TreeMosaic, child: str, sigma: D4Element) -> TreeMosaic:
    """Re-embed a child with its orientation composed with sigma."""
    if child not in tm.parent:
        raise TreeMoveError(f"{child} is not a non-root core vertex")
    old = tm.edges[child]
    new = EmbedSpec(old.a, old.b, old.sigma * sigma)
    u = tm.parent[child]
    bad = _edge_violations(tm.mosaics[u], tm.mosaics[child], new, f"{u}->{child}")
    if bad:
        raise TreeMoveError(str(bad[0]))
    edges = dict(tm.edges)
    edges[child] = new
    return replace(tm, edges=edges)


def viii_sites(tm: TreeMosaic, v: str, variant: str | None = None) -> list[tuple[str, tuple[int, int], str]]:
    M = tm.mosaics[v]
    out = []
    for rule in catalog():
        if rule.family != "VIII" or (variant and rule.base != f"VIII.{variant}"):
            continue
        k = rule.size
        for i in range(1, M.dim - k + 2):
            for j in range(1, M.dim - k + 2):
                for d in ("LR", "RL"):
                    if applicable(M, rule, (i, j), d):
                        out.append((rule.name, (i, j), d))
    return out


def tree_move_viii(
    tm: TreeMosaic,
    v: str,
    site: tuple[int, int],
    variant: str = "a",
    rule: str | None = None,
    direction: str | None = None,
) -> TreeMosaic:
    if v not in tm.mosaics:
        raise TreeMoveError(f"{v} is not a core vertex")
    M = tm.mosaics[v]
    choices = [s for s in viii_sites(tm, v, variant) if s[1] == tuple(site)]
    if rule is not None:
        choices = [s for s in choices if s[0] == rule]
    if direction is not None:
        choices = [s for s in choices if s[2] == direction]
    if not choices:
        raise NotApplicable(f"no VIII.{variant} pattern at {site} in {v}")
    name, pos, d = choices[0]
    mosaics = dict(tm.mosaics)
    mosaics[v] = apply_rule(M, get_rule(name), pos, d)
    return replace(tm, mosaics=mosaics)


# -- mosaic-level equivalence --------------------------------------------


class StructuralMismatch(ValueError):
    pass


class EquivResult(NamedTuple):
    status: str  # found | not-found
    certificates: dict[str, MoveCertificate]
    failed: str | None = None


def _same_frame(A: Mosaic, B: Mosaic, where: str):
    if A.dim != B.dim:
        raise StructuralMismatch(f"{where}: dimensions {A.dim} and {B.dim} differ")
    ia = {p: A[p] for p in A.inf_positions}
    ib = {p: B[p] for p in B.inf_positions}
    if ia != ib:
        raise StructuralMismatch(f"{where}: T-inf tiles are not in the same positions with the same connections")


def structural_check(t1: TreeMosaic, t2: TreeMosaic) -> list[tuple[str, Mosaic, Mosaic]]:
    if t1.root != t2.root or set(t1.mosaics) != set(t2.mosaics) or t1.parent != t2.parent:
        raise StructuralMismatch("core trees differ")
    if t1.edges != t2.edges:
        raise StructuralMismatch("edge embeddings differ")
    pairs = []
    for v in t1.vertices:
        _same_frame(t1.mosaics[v], t2.mosaics[v], v)
        pairs.append((v, t1.mosaics[v], t2.mosaics[v]))
    r1 = {r.name: r for r in t1.rays}
    r2 = {r.name: r for r in t2.rays}
    if set(r1) != set(r2):
        raise StructuralMismatch("rays differ")
    for name, a in r1.items():
        b = r2[name]
        if a.attach != b.attach or a.entry != b.entry or len(a.period) != len(b.period):
            raise StructuralMismatch(f"ray {name} differs")
        for k, ((Ma, sa), (Mb, sb)) in enumerate(zip(a.period, b.period)):
            if sa != sb:
                raise StructuralMismatch(f"ray {name}[{k}] embedding differs")
            _same_frame(Ma, Mb, f"ray {name}[{k}]")
            pairs.append((f"{name}[{k}]", Ma, Mb))
    return pairs


def mosaic_level_equiv(t1: TreeMosaic, t2: TreeMosaic, max_steps: int = 4, max_states: int = 200_000) -> EquivResult:
    pairs = structural_check(t1, t2)
    certs = {}
    for where, A, B in pairs:
        res = search_equiv(
            A, B, max_dim=A.dim, max_steps=max_steps, families=MOSAIC_LEVEL_FAMILIES,
            injections=False, max_states=max_states,
        )
        if not res.found:
            return EquivResult("not-found", certs, where)
        certs[where] = res.certificate
    return EquivResult("found", certs)


def tree_equiv(t1: TreeMosaic, t2: TreeMosaic, S1: Iterable[str] | None = None, S2: Iterable[str] | None = None, **limits) -> EquivResult:
    """Contract each side (by default its whole core), then compare vertex by vertex."""
    p1 = contract(t1, S1) if S1 else t1
    p2 = contract(t2, S2) if S2 else t2
    return mosaic_level_equiv(p1, p2, **limits)


# -- file format ---------------------------------------------------------

_EDGE_RE = re.compile(r"^edge\s+(\S+)\s+(\S+)\s+@\((\d+),(\d+)\)\s+(\S+)$")
_RAY_RE = re.compile(r"^ray\s+(\S+)(?:\s+@\((\d+),(\d+)\)\s+(\S+))?\s+period:\s*(.*)$")
_COMMENT_RE = re.compile(r"(^|\s)#.*$")
_ITEM_RE = re.compile(r"\(\s*(\S+)\s+@\((\d+),(\d+)\)\s+(\S+)\s*\)")


class TreeFormatError(ValueError):
    pass


def parse_tree(text: str, base_dir: str = ".", loader=None) -> TreeMosaic:
    cache: dict[str, Mosaic] = {}

    def load(ref: str) -> Mosaic:
        if ref not in cache:
            if loader is not None:
                cache[ref] = loader(ref)
            else:
                with open(os.path.join(base_dir, ref)) as fh:
                    cache[ref] = parse_mosaic(fh.read())[0]
        return cache[ref]

    name = None
    mosaics, refs, parent, edges, order = {}, {}, {}, {}, []
    edge_order = []
    raw_rays = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        # '#' also appears inside ray and vertex names, so only a
        # whitespace-led '#' opens a comment
        line = _COMMENT_RE.sub("", raw).strip()
        if not line:
            continue
        word = line.split()[0]
        if word == "tree":
            name = line.split(maxsplit=1)[1] if len(line.split()) > 1 else ""
        elif word == "vertex":
            parts = line.split()
            if len(parts) != 3:
                raise TreeFormatError(f"line {lineno}: expected 'vertex <id> <mosaic-file>'")
            vid, ref = parts[1], parts[2]
            mosaics[vid], refs[vid] = load(ref), ref
            order.append(vid)
        elif word == "edge":
            m = _EDGE_RE.match(line)
            if not m:
                raise TreeFormatError(f"line {lineno}: expected 'edge <parent> <child> @(a,b) <sigma>'")
            p, c = m.group(1), m.group(2)
            parent[c] = p
            edges[c] = EmbedSpec(int(m.group(3)), int(m.group(4)), D4Element.parse(m.group(5)))
            edge_order.append(c)
        elif word == "ray":
            m = _RAY_RE.match(line)
            if not m:
                raise TreeFormatError(f"line {lineno}: bad ray line")
            items = _ITEM_RE.findall(m.group(5))
            if not items:
                raise TreeFormatError(f"line {lineno}: empty ray period")
            period = tuple((load(f), EmbedSpec(int(a), int(b), D4Element.parse(s))) for f, a, b, s in items)
            entry = period[0][1]
            if m.group(2):
                entry = EmbedSpec(int(m.group(2)), int(m.group(3)), D4Element.parse(m.group(4)))
            raw_rays.append((m.group(1), entry, period, tuple(f for f, *_ in items)))
        else:
            raise TreeFormatError(f"line {lineno}: unknown directive {word!r}")
    if name is None:
        raise TreeFormatError("missing 'tree <name>' header")
    if not order:
        raise TreeFormatError("tree has no vertices")
    roots = [v for v in order if v not in parent]
    if len(roots) != 1:
        raise TreeFormatError(f"expected exactly one root, found {roots}")
    counts: dict[str, int] = {}
    rays = []
    for attach, entry, period, prefs in raw_rays:
        k = counts.get(attach, 0)
        counts[attach] = k + 1
        rays.append(RaySpec(f"{attach}#{k}", attach, entry, period, prefs))
    # vertex order: root first, then children in declared edge order
    vorder = [roots[0]] + [v for v in order if v != roots[0]]
    return TreeMosaic(name, roots[0], mosaics, parent, edges, tuple(rays), tuple(vorder), refs)


def format_tree(tm: TreeMosaic) -> str:
    lines = [f"tree {tm.name}"]
    for v in tm.vertices:
        lines.append(f"vertex {v} {tm.refs.get(v, v + '.mosaic')}")
    for v in tm.vertices:
        for c in tm.children(v):
            e = tm.edges[c]
            lines.append(f"edge {v} {c} @({e.a},{e.b}) {e.sigma}")
    for r in tm.rays:
        refs = r.refs or tuple(f"{r.name.replace('#', '_')}_{k}.mosaic" for k in range(len(r.period)))
        items = " ".join(f"({f} @({s.a},{s.b}) {s.sigma})" for f, (_, s) in zip(refs, r.period))
        head = f"ray {r.attach}"
        if r.entry != r.period[0][1]:
            head += f" @({r.entry.a},{r.entry.b}) {r.entry.sigma}"
        lines.append(f"{head} period: {items}")
    return "\n".join(lines) + "\n"


def read_tree(path: str) -> TreeMosaic:
    with open(path) as fh:
        return parse_tree(fh.read(), os.path.dirname(os.path.abspath(path)))


def write_tree(tm: TreeMosaic, path: str) -> None:
    """Write the tree file plus every mosaic it references, next to it."""
    base = os.path.dirname(os.path.abspath(path))
    files: dict[str, Mosaic] = {}
    for v in tm.vertices:
        files[tm.refs.get(v, v + ".mosaic")] = tm.mosaics[v]
    for r in tm.rays:
        refs = r.refs or tuple(f"{r.name.replace('#', '_')}_{k}.mosaic" for k in range(len(r.period)))
        for f, (M, _) in zip(refs, r.period):
            files[f] = M
    for ref, M in files.items():
        with open(os.path.join(base, ref), "w") as fh:
            fh.write(format_mosaic(M))
    with open(path, "w") as fh:
        fh.write(format_tree(tm))


# -- traversal -----------------------------------------------------------


class VertexInfo(NamedTuple):
    vid: str
    parent: str | None
    mosaic: Mosaic
    spec: EmbedSpec | None
    depth: int
    ray: str | None = None  # ray name for ray vertices


def walk(tm: TreeMosaic, depth: int | None = None, ray_steps: int | None = None) -> Iterator[VertexInfo]:
    """Vertices in breadth-first order, parents before children.

    Core vertices deeper than depth are skipped.  A ray contributes its
    vertices down to depth, or exactly ray_steps of them when given.
    """
    queue = [(tm.root, None, 0)]
    while queue:
        v, p, d = queue.pop(0)
        if depth is not None and d > depth:
            continue
        yield VertexInfo(v, p, tm.mosaics[v], tm.edges.get(v), d)
        for c in tm.children(v):
            queue.append((c, v, d + 1))
        for r in tm.rays_at(v):
            steps = ray_steps if ray_steps is not None else (None if depth is None else depth - d)
            if steps is None:
                raise ValueError("an infinite tree needs a depth or ray_steps bound")
            prev = v
            for k in range(1, steps + 1):
                M, spec = r.element(k)
                vid = r.vertex_id(k)
                yield VertexInfo(vid, prev, M, spec, d + k, r.name)
                prev = vid
