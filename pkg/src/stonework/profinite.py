"""Sequential towers of finite sets and relation graphs.

Levels are finite point lists; transitions map level n+1 down to level n.
Algebra towers follow the truncation schedule: level n keeps generators
g0..gn together with anything mentioned by the first n+1 relations, and
quotients by those relations.  Relation graphs carry a reflexive symmetric
relation used as a finite approximation of a compact Hausdorff quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Optional, Sequence

from .boolalg import (
    FinBoolAlg,
    Morphism,
    Presentation,
    hom,
    spectrum,
)
from .errors import RelationNotPreserved, SquareNotCommuting
from .terms import And, Gen, Term, eval_term, generators_of

Vertex = Hashable


@dataclass(frozen=True)
class SeqDiagram:
    """Finite sets with transition maps level n+1 -> level n."""

    levels: tuple[tuple[Vertex, ...], ...]
    transitions: tuple[dict, ...]  # transitions[n]: level n+1 -> level n

    def __post_init__(self):
        assert len(self.transitions) == max(len(self.levels) - 1, 0)
        for n, tr in enumerate(self.transitions):
            upper = set(self.levels[n + 1])
            lower = set(self.levels[n])
            if set(tr) != upper or not set(tr.values()) <= lower:
                raise ValueError(f"transition {n} is not a total map between adjacent levels")

    @property
    def depth(self) -> int:
        return len(self.levels)


@dataclass(frozen=True)
class AlgebraTower:
    """Finite Boolean algebras with connecting morphisms level n -> level n+1."""

    levels: tuple[FinBoolAlg, ...]
    connecting: tuple[Morphism, ...]


@dataclass(frozen=True)
class ClosedTower:
    """A sequential diagram with saturated per-level selected subsets."""

    base: SeqDiagram
    selected: tuple[frozenset, ...]

    def __post_init__(self):
        assert len(self.selected) == self.base.depth
        for n, tr in enumerate(self.base.transitions):
            image = {tr[x] for x in self.selected[n + 1]}
            if not image <= self.selected[n]:
                raise ValueError(f"selected sets not saturated at level {n}")


@dataclass(frozen=True)
class CountablePresentation:
    """Countably indexed generators g0,g1,... with a relation schedule.

    Relations are the explicit list followed by the schematic family (a
    callback producing the relation at each index), if any.
    """

    explicit_rels: tuple[Term, ...] = ()
    family: Optional[Callable[[int], Term]] = None

    def relation(self, i: int) -> Optional[Term]:
        if i < len(self.explicit_rels):
            return self.explicit_rels[i]
        if self.family is not None:
            return self.family(i - len(self.explicit_rels))
        return None


def pairwise_meet_zero_family(i: int) -> Term:
    """Enumeration g0&g1, g0&g2, g1&g2, g0&g3, ... of the at-most-one relations."""
    # pairs (a, b) with a < b ordered by (b, a)
    b = 1
    while i >= b:
        i -= b
        b += 1
    a = i
    return And(Gen(f"g{a}"), Gen(f"g{b}"))


FAMILIES: dict[str, Optional[Callable[[int], Term]]] = {
    "none": None,
    "pairwise-meet-zero": pairwise_meet_zero_family,
}


def _gen_index(name: str) -> int:
    if not name.startswith("g") or not name[1:].isdigit():
        raise ValueError(f"countable presentations use generators g0,g1,...; got {name!r}")
    return int(name[1:])


def truncation_tower(
    p: CountablePresentation, depth: int, cap: Optional[int] = None
) -> AlgebraTower:
    """Finite truncations at levels 0..depth-1 with generator-inclusion maps."""
    levels: list[FinBoolAlg] = []
    presentations: list[Presentation] = []
    for n in range(depth):
        rels = [r for r in (p.relation(i) for i in range(n + 1)) if r is not None]
        indices = set(range(n + 1))
        for r in rels:
            indices.update(_gen_index(g) for g in generators_of(r))
        gens = [f"g{i}" for i in sorted(indices)]
        pres = Presentation.make(gens, rels)
        presentations.append(pres)
        levels.append(spectrum(pres, cap))
    connecting = []
    for n in range(depth - 1):
        images = {g: Gen(g) for g in presentations[n].gens}
        connecting.append(hom(presentations[n], images, presentations[n + 1], cap))
    return AlgebraTower(tuple(levels), tuple(connecting))


def spectrum_tower(t: AlgebraTower, cap: Optional[int] = None) -> SeqDiagram:
    """Dualize: level sets are spectra, transitions precompose the inclusions."""
    levels = tuple(alg.points for alg in t.levels)
    transitions = []
    for n, m in enumerate(t.connecting):
        upper = t.levels[n + 1]
        lower = t.levels[n]
        tr = {}
        for pt in upper.points:
            a = dict(zip(upper.source.gens, pt))
            image = tuple(eval_term(m.images[g], a) for g in lower.source.gens)
            tr[pt] = lower.points[lower.point_index(image)]
        transitions.append(tr)
    return SeqDiagram(levels, tuple(transitions))


def points_at_depth(d: SeqDiagram, depth: int) -> list[tuple]:
    """All transition-compatible chains (x_0, ..., x_depth)."""
    if depth >= d.depth:
        raise ValueError(f"depth {depth} exceeds available levels {d.depth}")
    chains = []
    for top in d.levels[depth]:
        chain = [top]
        for n in range(depth - 1, -1, -1):
            chain.append(d.transitions[n][chain[-1]])
        chains.append(tuple(reversed(chain)))
    return chains


def closed_from_decidables(d: SeqDiagram, subsets: Sequence) -> ClosedTower:
    """Saturate per-level subsets to the projections of full compatible chains.

    A backward pass keeps points extending upward through the given subsets,
    then a forward pass drops points whose transition leaves the result; the
    selected sets are then exactly the level projections of the chains
    through all supplied levels, which satisfies the saturation invariant.
    """
    if len(subsets) != d.depth:
        raise ValueError("one subset per level required")
    selected = [frozenset(s) & frozenset(level) for s, level in zip(subsets, d.levels)]
    for n in range(d.depth - 2, -1, -1):
        image = frozenset(d.transitions[n][x] for x in selected[n + 1])
        selected[n] = selected[n] & image
    for n in range(1, d.depth):
        tr = d.transitions[n - 1]
        selected[n] = frozenset(x for x in selected[n] if tr[x] in selected[n - 1])
    return ClosedTower(d, tuple(selected))


def emptiness_witness(c: ClosedTower) -> Optional[int]:
    """Least level through which no compatible selected chain exists.

    Finite-stage content of the compactness lemma: if the represented
    intersection is empty, a finite witness level exists; within the
    supplied depth the answer is exact, beyond it None is returned.
    """
    return constraint_emptiness_witness(c.base, c.selected)


def constraint_emptiness_witness(d: SeqDiagram, subsets: Sequence) -> Optional[int]:
    """Least k such that no chain (x_0..x_k) stays inside the subsets."""
    reachable: Optional[frozenset] = None
    for n in range(d.depth):
        allowed = frozenset(subsets[n]) & frozenset(d.levels[n])
        if reachable is None:
            reachable = allowed
        else:
            tr = d.transitions[n - 1]
            reachable = frozenset(x for x in allowed if tr[x] in reachable)
        if not reachable:
            return n
    return None


@dataclass(frozen=True)
class LevelwiseFactorization:
    epi: tuple[dict, ...]  # per level: src point -> middle point
    middle: SeqDiagram
    mono: tuple[dict, ...]  # per level: middle point -> dst point (inclusion)


def levelwise_factor(
    src: SeqDiagram, dst: SeqDiagram, maps: Sequence[dict]
) -> LevelwiseFactorization:
    """Per-level image factorization of a levelwise map of diagrams."""
    if len(maps) != src.depth or src.depth != dst.depth:
        raise ValueError("one map per level required")
    for n in range(src.depth - 1):
        for x in src.levels[n + 1]:
            if maps[n][src.transitions[n][x]] != dst.transitions[n][maps[n + 1][x]]:
                raise SquareNotCommuting(n)
    mid_levels = []
    for n in range(src.depth):
        image = {maps[n][x] for x in src.levels[n]}
        mid_levels.append(tuple(y for y in dst.levels[n] if y in image))
    mid_transitions = []
    for n in range(src.depth - 1):
        mid_transitions.append({y: dst.transitions[n][y] for y in mid_levels[n + 1]})
    middle = SeqDiagram(tuple(mid_levels), tuple(mid_transitions))
    epi = tuple(dict(m) for m in maps)
    mono = tuple({y: y for y in level} for level in mid_levels)
    return LevelwiseFactorization(epi, middle, mono)


@dataclass(frozen=True)
class RelGraph:
    """Finite vertex set with a reflexive symmetric relation."""

    vertices: tuple[Vertex, ...]
    related: frozenset  # ordered pairs

    def __post_init__(self):
        vs = set(self.vertices)
        for u, v in self.related:
            if u not in vs or v not in vs:
                raise ValueError(f"related pair ({u!r}, {v!r}) outside vertex set")
            if (v, u) not in self.related:
                raise ValueError("relation not symmetric")
        for v in self.vertices:
            if (v, v) not in self.related:
                raise ValueError("relation not reflexive")

    def neighbors(self, v: Vertex) -> list:
        return [w for w in self.vertices if (v, w) in self.related]


@dataclass(frozen=True)
class RelGraphTower:
    """Relation graphs with relation-preserving transitions level n+1 -> n."""

    levels: tuple[RelGraph, ...]
    transitions: tuple[dict, ...]

    def __post_init__(self):
        assert len(self.transitions) == max(len(self.levels) - 1, 0)
        for n, tr in enumerate(self.transitions):
            upper, lower = self.levels[n + 1], self.levels[n]
            if set(tr) != set(upper.vertices):
                raise ValueError(f"transition {n} not total")
            for u, v in upper.related:
                if (tr[u], tr[v]) not in lower.related:
                    raise RelationNotPreserved(
                        f"transition {n} breaks the pair ({u!r}, {v!r})"
                    )


def equality_graph(vertices: Sequence[Vertex]) -> RelGraph:
    return RelGraph(tuple(vertices), frozenset((v, v) for v in vertices))


def connected_component(g: RelGraph, v: Vertex) -> frozenset:
    """Breadth-first closure of ``v`` under the relation."""
    if v not in g.vertices:
        raise ValueError(f"{v!r} is not a vertex")
    seen = {v}
    frontier = [v]
    while frontier:
        nxt = []
        for u in frontier:
            for w in g.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return frozenset(seen)


def is_totally_disconnected(t: RelGraphTower, depth: int) -> bool:
    """True iff every component at every level <= depth is a singleton."""
    if depth > len(t.levels):
        raise ValueError("depth exceeds available levels")
    for g in t.levels[:depth]:
        for v in g.vertices:
            if connected_component(g, v) != frozenset({v}):
                return False
    return True


def bound_levelwise_nat_map(
    level: Sequence[Vertex], f: Callable[[Vertex], int]
) -> tuple[int, dict]:
    """Factor a map to the naturals through Fin(k) with k = 1 + max value."""
    values = {v: f(v) for v in level}
    k = 1 + max(values.values()) if values else 0
    return k, values
