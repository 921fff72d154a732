"""Colored non-symmetric species and their free operads.

A species is bare generating data: nodes with a list of input colors and one
output color.  The free operad on a species has derivation trees as its
operations; composition is grafting a tree into a free leaf.  Trees keep
explicit ``Leaf`` colors so that open (partially applied) operations exist.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, Union

from .errors import CompositionError, InputError


@dataclass(frozen=True)
class Node:
    """A generating operation: input colors in order, one output color."""

    name: str
    inputs: tuple[str, ...]
    output: str

    @property
    def arity(self) -> int:
        return len(self.inputs)


@dataclass(frozen=True)
class Species:
    colors: tuple[str, ...]
    nodes: tuple[Node, ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.colors)) != len(self.colors):
            raise InputError("duplicate color names in species")
        names = [n.name for n in self.nodes]
        if len(set(names)) != len(names):
            raise InputError("duplicate node names in species")
        declared = set(self.colors)
        for n in self.nodes:
            for c in (n.output, *n.inputs):
                if c not in declared:
                    raise InputError(f"node {n.name!r} references undeclared color {c!r}")

    @cached_property
    def node_by_name(self) -> Mapping[str, Node]:
        return {n.name: n for n in self.nodes}

    @cached_property
    def nodes_into(self) -> Mapping[str, tuple[Node, ...]]:
        """Nodes grouped by output color, in declaration order."""
        table: dict[str, list[Node]] = {c: [] for c in self.colors}
        for n in self.nodes:
            table[n.output].append(n)
        return {c: tuple(ns) for c, ns in table.items()}


@dataclass(frozen=True)
class Leaf:
    """A free input of an open tree; doubles as the identity operation."""

    color: str


@dataclass(frozen=True)
class Apply:
    node: Node
    children: tuple["DerivationTree", ...] = ()

    def __post_init__(self) -> None:
        if len(self.children) != self.node.arity:
            raise CompositionError(
                f"node {self.node.name!r} has arity {self.node.arity}, "
                f"got {len(self.children)} children"
            )
        for expected, child in zip(self.node.inputs, self.children):
            got = root_color(child)
            if got != expected:
                raise CompositionError(
                    f"child of {self.node.name!r} has root color {got!r}, expected {expected!r}"
                )


DerivationTree = Union[Leaf, Apply]


def root_color(tree: DerivationTree) -> str:
    return tree.color if isinstance(tree, Leaf) else tree.node.output


def leaf_colors(tree: DerivationTree) -> tuple[str, ...]:
    """Colors of the free leaves, left to right."""
    if isinstance(tree, Leaf):
        return (tree.color,)
    out: tuple[str, ...] = ()
    for child in tree.children:
        out += leaf_colors(child)
    return out


def is_closed(tree: DerivationTree) -> bool:
    if isinstance(tree, Leaf):
        return False
    return all(is_closed(c) for c in tree.children)


def node_count(tree: DerivationTree) -> int:
    if isinstance(tree, Leaf):
        return 0
    return 1 + sum(node_count(c) for c in tree.children)


def preorder_names(tree: DerivationTree) -> tuple[str, ...]:
    """Node names in preorder; leaves contribute their color tagged apart."""
    if isinstance(tree, Leaf):
        return ("?" + tree.color,)
    out = (tree.node.name,)
    for child in tree.children:
        out += preorder_names(child)
    return out


def tree_key(tree: DerivationTree) -> tuple[int, tuple[str, ...]]:
    """Canonical sort key: node count, then preorder lexicographic."""
    return (node_count(tree), preorder_names(tree))


def tree_substitute(tree: DerivationTree, index: int, sub: DerivationTree) -> DerivationTree:
    """Graft ``sub`` onto the ``index``-th free leaf (left to right, 0-based)."""
    leaves = leaf_colors(tree)
    if index < 0 or index >= len(leaves):
        raise CompositionError(f"leaf index {index} out of range (tree has {len(leaves)} leaves)")
    if leaves[index] != root_color(sub):
        raise CompositionError(
            f"leaf {index} has color {leaves[index]!r}, cannot graft a tree of color "
            f"{root_color(sub)!r}"
        )

    def go(t: DerivationTree, skip: int) -> tuple[DerivationTree, int]:
        if isinstance(t, Leaf):
            if skip == 0:
                return sub, -1
            return t, skip - 1
        new_children = []
        for child in t.children:
            if skip < 0:
                new_children.append(child)
            else:
                child, skip = go(child, skip)
                new_children.append(child)
        return Apply(t.node, tuple(new_children)), skip

    grafted, _ = go(tree, index)
    return grafted


@dataclass(frozen=True)
class SpeciesMap:
    """A map of species: a color renaming and a node renaming that are
    required to commute with the input/output coloring."""

    source: Species
    target: Species
    color_map: Mapping[str, str]
    node_map: Mapping[str, str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "color_map", dict(self.color_map))
        object.__setattr__(self, "node_map", dict(self.node_map))

    def apply_color(self, color: str) -> str:
        return self.color_map[color]

    def apply_node(self, node: str) -> str:
        return self.node_map[node]

    def apply_tree(self, tree: DerivationTree) -> DerivationTree:
        if isinstance(tree, Leaf):
            return Leaf(self.apply_color(tree.color))
        image = self.target.node_by_name[self.apply_node(tree.node.name)]
        return Apply(image, tuple(self.apply_tree(c) for c in tree.children))


def validate_species_map(phi: SpeciesMap) -> list[str]:
    """Check the commuting-square condition; returns one message per defect."""
    problems: list[str] = []
    for c in phi.source.colors:
        if c not in phi.color_map:
            problems.append(f"color {c!r} missing from color map")
        elif phi.color_map[c] not in set(phi.target.colors):
            problems.append(f"color {c!r} mapped to undeclared color {phi.color_map[c]!r}")
    for n in phi.source.nodes:
        if n.name not in phi.node_map:
            problems.append(f"node {n.name!r} missing from node map")
            continue
        image_name = phi.node_map[n.name]
        image = phi.target.node_by_name.get(image_name)
        if image is None:
            problems.append(f"node {n.name!r} mapped to undeclared node {image_name!r}")
            continue
        expected_inputs = tuple(phi.color_map.get(c, "?") for c in n.inputs)
        expected_output = phi.color_map.get(n.output, "?")
        if image.inputs != expected_inputs or image.output != expected_output:
            problems.append(
                f"node {n.name!r}: image {image_name!r} has type "
                f"{image.inputs} -> {image.output!r}, expected "
                f"{expected_inputs} -> {expected_output!r}"
            )
    return problems


def identity_species_map(species: Species) -> SpeciesMap:
    return SpeciesMap(
        source=species,
        target=species,
        color_map={c: c for c in species.colors},
        node_map={n.name: n.name for n in species.nodes},
    )


def enumerate_closed_trees(species: Species, color: str, max_nodes: int) -> tuple[DerivationTree, ...]:
    """All closed trees of the given root color with at most ``max_nodes``
    nodes, in canonical order (node count, then preorder names)."""
    if max_nodes < 1:
        raise InputError("max_nodes must be at least 1")
    if color not in set(species.colors):
        raise InputError(f"unknown color {color!r}")

    memo: dict[tuple[str, int], tuple[Apply, ...]] = {}

    def exact(c: str, k: int) -> tuple[Apply, ...]:
        key = (c, k)
        if key in memo:
            return memo[key]
        out: list[Apply] = []
        for node in species.nodes_into.get(c, ()):
            if node.arity == 0:
                if k == 1:
                    out.append(Apply(node, ()))
                continue
            if k - 1 < node.arity:
                continue
            for split in _compositions(k - 1, node.arity):
                for children in _tuples([exact(ci, ki) for ci, ki in zip(node.inputs, split)]):
                    out.append(Apply(node, children))
        memo[key] = tuple(out)
        return memo[key]

    trees: list[Apply] = []
    for k in range(1, max_nodes + 1):
        trees.extend(exact(color, k))
    trees.sort(key=tree_key)
    return tuple(trees)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ways to write ``total`` as an ordered sum of ``parts`` positive ints."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _tuples(choices: list[tuple[Apply, ...]]) -> Iterator[tuple[Apply, ...]]:
    if not choices:
        yield ()
        return
    for head in choices[0]:
        for tail in _tuples(choices[1:]):
            yield (head,) + tail
