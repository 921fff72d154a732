"""Generalized CYK recognition and packed parse forests.

Items are pairs of a nonterminal and a span of positions into the target
path; in a free category every factorization of an arrow is a position
split, so spans capture all of them.  The chart is the least family of
items closed under the rule: a node derives a span whenever its fixed
segments and recursively derived gap spans tile the span exactly.  The
fixed point is reached by chaotic iteration over spans of increasing
width, with an inner sweep per span to absorb empty-segment and unit
dependencies; the resulting item set is independent of sweep order.

A packed forest shares subderivations: each item carries its local
alternatives (a node plus child items), and unfolding the forest from the
root item reproduces exactly the closed derivation trees of the word.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import InputError
from .grammar import Grammar
from .species import Apply, DerivationTree, Node, tree_key
from .freecat import Path


@dataclass(frozen=True)
class ParseItem:
    """A nonterminal spanning positions ``start..end`` of the target path."""

    color: str
    start: int
    end: int


@dataclass(frozen=True)
class Alternative:
    """One way to derive an item: a node applied to child items."""

    node: Node
    children: tuple[ParseItem, ...]


@dataclass(frozen=True)
class PackedForest:
    word: Path
    root: ParseItem | None
    alternatives: Mapping[ParseItem, tuple[Alternative, ...]]
    cyclic: bool

    def __post_init__(self) -> None:
        object.__setattr__(self, "alternatives", dict(self.alternatives))

    @property
    def is_empty(self) -> bool:
        return self.root is None


def _objects_along(grammar: Grammar, w: Path) -> list[str]:
    objs = [w.src]
    table = grammar.category.generator_by_name
    for name in w.gens:
        objs.append(table[name].dst)
    return objs


def _segment_matches(w: Path, objs: list[str], seg: Path, pos: int) -> bool:
    end = pos + len(seg.gens)
    if end > len(w.gens):
        return False
    if not seg.gens:
        return objs[pos] == seg.src
    return w.gens[pos:end] == seg.gens


def _placements(
    w: Path, objs: list[str], segments: tuple[Path, ...], i: int, j: int
) -> Iterator[tuple[tuple[int, int], ...]]:
    """All ways to tile positions i..j with the fixed segments, yielding the
    spans left over for the gaps."""
    k = len(segments) - 1
    if not _segment_matches(w, objs, segments[0], i):
        return
    if k == 0:
        if i + len(segments[0].gens) == j:
            yield ()
        return

    def rec(m: int, gap_start: int, spans: tuple[tuple[int, int], ...]) -> Iterator[
        tuple[tuple[int, int], ...]
    ]:
        if m == k:
            q = j - len(segments[k].gens)
            if q >= gap_start and _segment_matches(w, objs, segments[k], q):
                yield spans + ((gap_start, q),)
            return
        seg = segments[m]
        for q in range(gap_start, j - len(seg.gens) + 1):
            if _segment_matches(w, objs, seg, q):
                yield from rec(m + 1, q + len(seg.gens), spans + ((gap_start, q),))

    yield from rec(1, i + len(segments[0].gens), ())


def parse_chart(
    grammar: Grammar, w: Path, reverse_agenda: bool = False
) -> frozenset[tuple[str, int, int]]:
    """The full item set ``(color, start, end)`` for a target path.

    ``reverse_agenda`` flips every iteration order used to reach the fixed
    point; the result is the same least fixed point either way.
    """
    return frozenset(_build_chart(grammar, w, reverse_agenda=reverse_agenda))


def _build_chart(grammar: Grammar, w: Path, reverse_agenda: bool = False) -> set[tuple[str, int, int]]:
    if not grammar.category.contains_path(w):
        raise InputError("target is not a path of the grammar's category")
    n = len(w.gens)
    objs = _objects_along(grammar, w)
    nodes = list(grammar.species.nodes)
    if reverse_agenda:
        nodes.reverse()
    chart: set[tuple[str, int, int]] = set()
    for width in range(n + 1):
        starts = range(n - width + 1)
        if reverse_agenda:
            starts = reversed(starts)  # type: ignore[assignment]
        for i in starts:
            j = i + width
            changed = True
            while changed:
                changed = False
                for node in nodes:
                    key = (node.output, i, j)
                    if key in chart:
                        continue
                    splice = grammar.splice_of(node.name)
                    if splice.outer.left != objs[i] or splice.outer.right != objs[j]:
                        continue
                    if sum(len(s.gens) for s in splice.segments) > width:
                        continue
                    for spans in _placements(w, objs, splice.segments, i, j):
                        if all(
                            (c, a, b) in chart
                            for c, (a, b) in zip(node.inputs, spans)
                        ):
                            chart.add(key)
                            changed = True
                            break
    return chart


def recognize(grammar: Grammar, w: Path, reverse_agenda: bool = False) -> frozenset[str]:
    """Nonterminals deriving the whole path."""
    chart = _build_chart(grammar, w, reverse_agenda=reverse_agenda)
    n = len(w.gens)
    return frozenset(c for (c, i, j) in chart if i == 0 and j == n)


def parse_forest(grammar: Grammar, w: Path) -> PackedForest:
    """The packed forest of all derivations of the path at the start color."""
    chart = _build_chart(grammar, w)
    n = len(w.gens)
    objs = _objects_along(grammar, w)
    root_key = (grammar.start, 0, n)
    if root_key not in chart:
        return PackedForest(word=w, root=None, alternatives={}, cyclic=False)
    root = ParseItem(*root_key)

    def local_alternatives(item: ParseItem) -> tuple[Alternative, ...]:
        alts = []
        for node in grammar.species.nodes:
            if node.output != item.color:
                continue
            splice = grammar.splice_of(node.name)
            for spans in _placements(w, objs, splice.segments, item.start, item.end):
                children = tuple(
                    ParseItem(c, a, b) for c, (a, b) in zip(node.inputs, spans)
                )
                if all((c.color, c.start, c.end) in chart for c in children):
                    alts.append(Alternative(node, children))
        return tuple(alts)

    alternatives: dict[ParseItem, tuple[Alternative, ...]] = {}
    stack = [root]
    while stack:
        item = stack.pop()
        if item in alternatives:
            continue
        alts = local_alternatives(item)
        alternatives[item] = alts
        for alt in alts:
            for child in alt.children:
                if child not in alternatives:
                    stack.append(child)
    return PackedForest(
        word=w,
        root=root,
        alternatives=alternatives,
        cyclic=_has_cycle(root, alternatives),
    )


def _has_cycle(root: ParseItem, alternatives: Mapping[ParseItem, tuple[Alternative, ...]]) -> bool:
    """Detect a derivation cycle (only possible through empty-segment or
    unit chains) by iterative depth-first search from the root."""
    WHITE, GRAY, BLACK = 0, 1, 2
    state: dict[ParseItem, int] = {}
    stack: list[tuple[ParseItem, bool]] = [(root, False)]
    while stack:
        item, leaving = stack.pop()
        if leaving:
            state[item] = BLACK
            continue
        mark = state.get(item, WHITE)
        if mark == GRAY:
            continue
        if mark == BLACK:
            continue
        state[item] = GRAY
        stack.append((item, True))
        for alt in alternatives.get(item, ()):
            for child in alt.children:
                child_mark = state.get(child, WHITE)
                if child_mark == GRAY:
                    return True
                if child_mark == WHITE:
                    stack.append((child, False))
    return False


def count_parses(forest: PackedForest) -> int | float:
    """Exact number of derivations of the root, or ``math.inf`` when the
    forest is cyclic."""
    if forest.root is None:
        return 0
    if forest.cyclic:
        return math.inf
    memo: dict[ParseItem, int] = {}

    def count(item: ParseItem) -> int:
        if item in memo:
            return memo[item]
        total = 0
        for alt in forest.alternatives[item]:
            prod = 1
            for child in alt.children:
                prod *= count(child)
                if prod == 0:
                    break
            total += prod
        memo[item] = total
        return total

    order = _postorder(forest)
    for item in order:
        count(item)
    return count(forest.root)


def _postorder(forest: PackedForest) -> list[ParseItem]:
    """Children-first ordering of the root-reachable items (forest acyclic)."""
    out: list[ParseItem] = []
    seen: set[ParseItem] = set()
    stack: list[tuple[ParseItem, bool]] = [(forest.root, False)]  # type: ignore[list-item]
    while stack:
        item, leaving = stack.pop()
        if leaving:
            out.append(item)
            continue
        if item in seen:
            continue
        seen.add(item)
        stack.append((item, True))
        for alt in forest.alternatives[item]:
            for child in alt.children:
                if child not in seen:
                    stack.append((child, False))
    return out


def enumerate_parses(forest: PackedForest, limit: int) -> tuple[DerivationTree, ...]:
    """The first ``limit`` derivation trees in canonical order (node count,
    then preorder on node names); exact when the forest holds fewer."""
    if limit < 0:
        raise InputError("limit must be nonnegative")
    if forest.root is None or limit == 0:
        return ()
    total = count_parses(forest)
    goal = limit if total is math.inf else min(limit, int(total))
    memo: dict[tuple[ParseItem, int], tuple[Apply, ...]] = {}

    def trees(item: ParseItem, k: int) -> tuple[Apply, ...]:
        key = (item, k)
        if key in memo:
            return memo[key]
        out: list[Apply] = []
        for alt in forest.alternatives[item]:
            m = len(alt.children)
            if m == 0:
                if k == 1:
                    out.append(Apply(alt.node, ()))
                continue
            if k - 1 < m:
                continue
            for split in _compositions(k - 1, m):
                for children in _child_tuples(alt.children, split, trees):
                    out.append(Apply(alt.node, children))
        out.sort(key=tree_key)
        memo[key] = tuple(out)
        return memo[key]

    collected: list[Apply] = []
    k = 1
    while len(collected) < goal:
        level = trees(forest.root, k)
        collected.extend(level)
        k += 1
    return tuple(collected[:goal])


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _child_tuples(children, split, trees) -> Iterator[tuple[Apply, ...]]:
    if not children:
        yield ()
        return
    for head in trees(children[0], split[0]):
        for tail in _child_tuples(children[1:], split[1:], trees):
            yield (head,) + tail
