"""Mosaic Reidemeister moves: catalog, scanning, application and search."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable, NamedTuple, Sequence

from .grid import Kind, Mosaic, Tile, boundary_profile, components, deinject, interior_mismatches, tangle_inject, tile_from_token
from .transforms import D4, d4_act

CATALOG_SHA256 = "eab4767cf97cf59803f7e889870a9b0150a90d0bda1921562871a6dc4ec804e9"

FAMILIES = ("P", "R1", "R2", "R3", "IV", "Vstar", "VI", "VIII")
# families that keep every T-inf tile and its strand pairing in place
MOSAIC_LEVEL_FAMILIES = ("P", "R1", "R2", "R3", "IV", "VI")
CROSSING_DELTA = {"R1": {1}, "R2": {2}}

Patch = tuple[tuple[Tile, ...], ...]

_MIRROR = {Tile.T9: Tile.T10, Tile.T10: Tile.T9}


def family_of(name: str) -> str:
    base = name.split(":")[0].split(".")[0]
    return "P" if base.startswith("P") else base


@dataclass(frozen=True)
class RewriteRule:
    name: str
    lhs: Patch
    rhs: Patch
    closure: str = "d4m"
    base: str = ""

    @property
    def family(self) -> str:
        return family_of(self.name)

    @property
    def size(self) -> int:
        return len(self.lhs)

    def side(self, direction: str) -> tuple[Patch, Patch]:
        """(pattern, replacement) for direction 'LR' or 'RL'."""
        if direction == "LR":
            return self.lhs, self.rhs
        if direction == "RL":
            return self.rhs, self.lhs
        raise ValueError(f"direction must be LR or RL, got {direction!r}")


class CatalogError(ValueError):
    pass


def parse_rules(text: str) -> list[RewriteRule]:
    rules = []
    name = closure = None
    lhs: list = []
    rhs: list = []

    def flush():
        if name is None:
            return
        k = len(lhs)
        if not k or any(len(row) != k for row in lhs + rhs):
            raise CatalogError(f"rule {name}: both sides must be square patches of the same size")
        rules.append(RewriteRule(name, tuple(lhs), tuple(rhs), closure, name))

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("rule "):
            flush()
            parts = line.split()
            if len(parts) != 3:
                raise CatalogError(f"line {lineno}: expected 'rule <name> <closure>'")
            name, closure = parts[1], parts[2]
            lhs, rhs = [], []
            continue
        if "=>" not in line or name is None:
            raise CatalogError(f"line {lineno}: expected a patch row")
        left, right = line.split("=>")
        lhs.append(tuple(tile_from_token(t) for t in left.split()))
        rhs.append(tuple(tile_from_token(t) for t in right.split()))
    flush()
    return rules


def _act(g, patch: Patch) -> Patch:
    sigma, mirror = g
    M = d4_act(sigma, Mosaic(patch))
    if mirror:
        return tuple(tuple(_MIRROR.get(t, t) for t in row) for row in M.tiles)
    return M.tiles


def _group():
    return [(s, m) for m in (False, True) for s in D4]


def close_rules(base: Sequence[RewriteRule]) -> list[RewriteRule]:
    """Expand each base rule by its symmetry group, dropping duplicates.

    A move and its reverse are the same move, so (lhs, rhs) and (rhs, lhs)
    count once.
    """
    seen = set()
    out = []
    for rule in base:
        group = _group() if rule.closure == "d4m" else [(s, False) for s in D4] if rule.closure == "d4" else [(D4[0], False)]
        for g in group:
            lhs, rhs = _act(g, rule.lhs), _act(g, rule.rhs)
            key = frozenset([(lhs, rhs), (rhs, lhs)])
            if key in seen:
                continue
            seen.add(key)
            sigma, mirror = g
            suffix = "" if (sigma == D4[0] and not mirror) else ":" + (sigma.name if sigma != D4[0] else "") + ("m" if mirror else "")
            out.append(RewriteRule(rule.name + suffix, lhs, rhs, rule.closure, rule.name))
    return out


def _load_text() -> str:
    return resources.files("wildmosaic").joinpath("data/catalog.rules").read_text()


@lru_cache(maxsize=None)
def base_rules() -> tuple[RewriteRule, ...]:
    text = _load_text()
    digest = hashlib.sha256(text.encode()).hexdigest()
    if digest != CATALOG_SHA256:
        raise CatalogError(f"catalog checksum mismatch: {digest}")
    return tuple(parse_rules(text))


@lru_cache(maxsize=None)
def catalog() -> tuple[RewriteRule, ...]:
    return tuple(close_rules(base_rules()))


@lru_cache(maxsize=None)
def rules_by_name() -> dict[str, RewriteRule]:
    return {r.name: r for r in catalog()}


def get_rule(name: str) -> RewriteRule:
    try:
        return rules_by_name()[name]
    except KeyError:
        raise KeyError(f"no rule named {name!r}") from None


# -- linting -------------------------------------------------------------


def _pairing(patch: Patch) -> tuple[frozenset, int]:
    comps = components(Mosaic(patch))
    pairs = frozenset(frozenset(c.ends) for c in comps if not c.closed)
    loops = sum(1 for c in comps if c.closed)
    return pairs, loops


def lint_rule(rule: RewriteRule) -> list[str]:
    out = []
    n = len(rule.lhs)
    for label, patch in (("lhs", rule.lhs), ("rhs", rule.rhs)):
        if len(patch) != n or any(len(r) != n for r in patch):
            return [f"{rule.name}: {label} is not an {n}x{n} patch"]
        for (i, j), s in interior_mismatches(Mosaic(patch)):
            out.append(f"{rule.name}: {label} tiles ({i},{j}) disagree across {s}")
    if out:
        return out
    L, Rm = Mosaic(rule.lhs), Mosaic(rule.rhs)
    if boundary_profile(L) != boundary_profile(Rm):
        out.append(f"{rule.name}: frame profiles differ")
    linf = {p: L[p] for p in L.inf_positions}
    rinf = {p: Rm[p] for p in Rm.inf_positions}
    if linf != rinf:
        out.append(f"{rule.name}: T-inf tiles differ between sides")
    fam = rule.family
    if fam in MOSAIC_LEVEL_FAMILIES:
        lp, ll = _pairing(rule.lhs)
        rp, rl = _pairing(rule.rhs)
        if lp != rp:
            out.append(f"{rule.name}: frame pairing differs")
        if ll != rl:
            out.append(f"{rule.name}: closed loop counts differ")
    delta = abs(L.crossing_count() - Rm.crossing_count())
    if delta not in CROSSING_DELTA.get(fam, {0}):
        out.append(f"{rule.name}: crossing count changes by {delta}")
    if L.tiles == Rm.tiles:
        out.append(f"{rule.name}: lhs equals rhs")
    return out


def lint_catalog(rules: Iterable[RewriteRule] | None = None) -> list[str]:
    rules = base_rules() if rules is None else rules
    out = []
    for r in rules:
        out.extend(lint_rule(r))
    return out


# -- application ---------------------------------------------------------


class NotApplicable(ValueError):
    pass


def _window(M: Mosaic, pos, k) -> Patch | None:
    i, j = pos
    if i < 1 or j < 1 or i + k - 1 > M.dim or j + k - 1 > M.dim:
        return None
    return M.block(i, j, k, k)


def applicable(M: Mosaic, rule: RewriteRule, pos: tuple[int, int], direction: str = "LR") -> bool:
    # T-inf tiles are identical on both sides of every rule (linted), so the
    # positional prohibitions on them cannot be broken by a rewrite
    pattern, _ = rule.side(direction)
    return _window(M, pos, len(pattern)) == pattern


def _write(M: Mosaic, pos, patch: Patch) -> Mosaic:
    i, j = pos
    k = len(patch)
    rows = list(M.tiles)
    for r in range(k):
        row = rows[i - 1 + r]
        rows[i - 1 + r] = row[: j - 1] + patch[r] + row[j - 1 + k :]
    return Mosaic(tuple(rows))


def apply(M: Mosaic, rule: RewriteRule | str, pos: tuple[int, int], direction: str = "LR") -> Mosaic:
    if isinstance(rule, str):
        rule = get_rule(rule)
    if not applicable(M, rule, pos, direction):
        raise NotApplicable(f"{rule.name} ({direction}) does not match at {pos}")
    return _write(M, pos, rule.side(direction)[1])


class Site(NamedTuple):
    rule: str
    pos: tuple[int, int]
    direction: str


@lru_cache(maxsize=None)
def _index(families: frozenset | None):
    idx: dict[tuple[int, Patch], list[tuple[RewriteRule, str]]] = {}
    for r in catalog():
        if families is not None and r.family not in families:
            continue
        for d in ("LR", "RL"):
            pattern, _ = r.side(d)
            idx.setdefault((len(pattern), pattern), []).append((r, d))
    sizes = sorted({k for k, _ in idx})
    return idx, sizes


def _sites(M: Mosaic, families):
    idx, sizes = _index(frozenset(families) if families is not None else None)
    n = M.dim
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in sizes:
                if i + k - 1 > n or j + k - 1 > n:
                    continue
                hits = idx.get((k, M.block(i, j, k, k)))
                if hits:
                    for rule, d in hits:
                        yield rule, (i, j), d


def scan(M: Mosaic, families: Iterable[str] | None = None) -> list[Site]:
    return [Site(r.name, pos, d) for r, pos, d in _sites(M, families)]


# -- certificates --------------------------------------------------------


class Step(NamedTuple):
    kind: str  # 'move', 'inject' or 'deinject'
    rule: str = ""
    pos: tuple[int, int] = (0, 0)
    direction: str = ""

    def __str__(self) -> str:
        if self.kind == "move":
            return f"{self.direction} {self.rule} @({self.pos[0]},{self.pos[1]})"
        return self.kind

    def inverse(self) -> "Step":
        if self.kind == "move":
            return self._replace(direction="RL" if self.direction == "LR" else "LR")
        return Step("deinject" if self.kind == "inject" else "inject")


class MoveCertificate(NamedTuple):
    steps: tuple[Step, ...] = ()

    def __str__(self) -> str:
        return "".join(f"{s}\n" for s in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    @classmethod
    def parse(cls, text: str) -> "MoveCertificate":
        steps = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line in ("inject", "deinject"):
                steps.append(Step(line))
                continue
            parts = line.split()
            if len(parts) != 3 or not parts[2].startswith("@("):
                raise ValueError(f"bad certificate line {line!r}")
            i, j = parts[2][2:-1].split(",")
            steps.append(Step("move", parts[1], (int(i), int(j)), parts[0]))
        return cls(tuple(steps))


def inject(M: Mosaic) -> Mosaic:
    return tangle_inject(M)


def apply_step(M: Mosaic, step: Step) -> Mosaic:
    if step.kind == "move":
        return apply(M, step.rule, step.pos, step.direction)
    if step.kind == "inject":
        return inject(M)
    if step.kind == "deinject":
        out = deinject(M)
        if out is None:
            raise NotApplicable("mosaic is not an injected image")
        return out
    raise ValueError(f"unknown step kind {step.kind!r}")


def replay(start: Mosaic, cert: MoveCertificate) -> Mosaic:
    M = start
    for step in cert.steps:
        M = apply_step(M, step)
    return M


# -- search --------------------------------------------------------------


class SearchResult(NamedTuple):
    status: str  # found | not-found | exhausted | limit-exceeded
    certificate: MoveCertificate | None
    states: int

    @property
    def found(self) -> bool:
        return self.status == "found"


def _neighbours(M: Mosaic, families, max_dim, injections):
    for rule, pos, d in _sites(M, families):
        yield Step("move", rule.name, pos, d), _write(M, pos, rule.side(d)[1])
    if injections:
        if M.dim < max_dim:
            yield Step("inject"), inject(M)
        down = deinject(M)
        if down is not None:
            yield Step("deinject"), down


def search_equiv(
    A: Mosaic,
    B: Mosaic,
    max_dim: int | None = None,
    max_steps: int = 6,
    families: Iterable[str] | None = None,
    injections: bool = True,
    max_states: int = 200_000,
) -> SearchResult:
    """Bidirectional breadth-first search for a move certificate from A to B.

    A failed search says nothing about inequivalence; 'exhausted' only
    means the component is finite within max_dim.
    """
    if A.kind != B.kind and {A.kind, B.kind} - {Kind.TANGLE, Kind.KNOT}:
        raise ValueError(f"mosaics of different kinds: {A.kind} and {B.kind}")
    if A == B:
        return SearchResult("found", MoveCertificate(), 1)
    max_dim = max(A.dim, B.dim) if max_dim is None else max_dim
    fams = tuple(families) if families is not None else None
    parents = ({A: None}, {B: None})
    frontiers = ([A], [B])
    depth = [0, 0]
    while depth[0] + depth[1] < max_steps:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        if not frontiers[side]:
            return SearchResult("exhausted", None, len(parents[0]) + len(parents[1]))
        mine, other = parents[side], parents[1 - side]
        nxt = []
        meet = None
        for state in frontiers[side]:
            for step, new in _neighbours(state, fams, max_dim, injections):
                if new in mine:
                    continue
                mine[new] = (state, step)
                nxt.append(new)
                if new in other:
                    meet = new
                    break
            if meet is not None:
                break
            if len(parents[0]) + len(parents[1]) > max_states:
                return SearchResult("limit-exceeded", None, len(parents[0]) + len(parents[1]))
        if meet is not None:
            return SearchResult("found", _join(parents, meet), len(parents[0]) + len(parents[1]))
        frontiers = (nxt, frontiers[1]) if side == 0 else (frontiers[0], nxt)
        depth[side] += 1
    if not frontiers[0] or not frontiers[1]:
        return SearchResult("exhausted", None, len(parents[0]) + len(parents[1]))
    return SearchResult("not-found", None, len(parents[0]) + len(parents[1]))


def _chain(parent, node):
    steps = []
    while parent[node] is not None:
        prev, step = parent[node]
        steps.append(step)
        node = prev
    return steps


def _join(parents, meet) -> MoveCertificate:
    forward = list(reversed(_chain(parents[0], meet)))
    backward = [s.inverse() for s in _chain(parents[1], meet)]
    return MoveCertificate(tuple(forward + backward))


def search_reduce(
    A: Mosaic,
    goal,
    max_steps: int = 4,
    families: Iterable[str] | None = None,
    injections: bool = False,
    max_dim: int | None = None,
    max_states: int = 50_000,
) -> SearchResult:
    """Breadth-first search from A for any mosaic satisfying goal."""
    if goal(A):
        return SearchResult("found", MoveCertificate(), 1)
    max_dim = A.dim if max_dim is None else max_dim
    fams = tuple(families) if families is not None else None
    parent = {A: None}
    frontier = [A]
    for _ in range(max_steps):
        nxt = []
        for state in frontier:
            for step, new in _neighbours(state, fams, max_dim, injections):
                if new in parent:
                    continue
                parent[new] = (state, step)
                if goal(new):
                    return SearchResult("found", MoveCertificate(tuple(reversed(_chain(parent, new)))), len(parent))
                nxt.append(new)
            if len(parent) > max_states:
                return SearchResult("limit-exceeded", None, len(parent))
        if not nxt:
            return SearchResult("exhausted", None, len(parent))
        frontier = nxt
    return SearchResult("not-found", None, len(parent))
