"""Context-free grammars of arrows.

A grammar is a finite species together with a start color and an assignment
sending every color to a gap type and every node to a spliced arrow of the
matching shape.  Closed derivation trees evaluate to constants, i.e. arrows;
the language of the grammar is the set of arrows derived at the start color.

The module also provides the classical import/export over a one-object
category, the property predicates (linearity, normal forms, nullable and
useful nonterminals), the closure constructions (union, spliced
concatenation, functorial image), bilinearization, and a bounded language
equivalence check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .errors import CompositionError, InputError
from .freecat import (
    STAR,
    FiniteGraph,
    FreeFunctor,
    Path,
    apply_functor,
    enumerate_paths,
    identity_path,
    monoid_graph,
)
from .species import (
    DerivationTree,
    Leaf,
    Node,
    Species,
)
from .spliced import (
    GapType,
    SplicedArrow,
    spliced_compose_parallel,
    spliced_identity,
)


@dataclass(frozen=True)
class Grammar:
    category: FiniteGraph
    species: Species
    start: str
    color_gap: Mapping[str, GapType]
    node_splice: Mapping[str, SplicedArrow]

    def __post_init__(self) -> None:
        object.__setattr__(self, "color_gap", dict(self.color_gap))
        object.__setattr__(self, "node_splice", dict(self.node_splice))

    def gap_of(self, color: str) -> GapType:
        return self.color_gap[color]

    def splice_of(self, node_name: str) -> SplicedArrow:
        return self.node_splice[node_name]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Grammar):
            return NotImplemented
        return (
            self.category == other.category
            and self.species == other.species
            and self.start == other.start
            and self.color_gap == other.color_gap
            and self.node_splice == other.node_splice
        )

    __hash__ = None  # type: ignore[assignment]


def grammar_from_rules(
    category: FiniteGraph,
    start: str,
    nonterminals: Mapping[str, tuple[str, str]],
    rules: Iterable[tuple[str, str, Sequence[str], Sequence[Sequence[str]]]],
) -> Grammar:
    """Assemble a grammar from rule data, inferring segment endpoints.

    Each rule is ``(name, output, inputs, segments)`` with segments given as
    generator-name sequences; empty segments become identity paths at the
    position forced by the gap types.
    """
    color_gap = {c: GapType(left, right) for c, (left, right) in nonterminals.items()}
    for c, gap in color_gap.items():
        if not category.has_object(gap.left) or not category.has_object(gap.right):
            raise InputError(f"nonterminal {c!r} typed outside the category")
    nodes = []
    node_splice: dict[str, SplicedArrow] = {}
    for name, output, inputs, segments in rules:
        for c in (output, *inputs):
            if c not in color_gap:
                raise InputError(f"rule {name!r} references undeclared nonterminal {c!r}")
        outer = color_gap[output]
        gaps = tuple(color_gap[c] for c in inputs)
        if len(segments) != len(inputs) + 1:
            raise InputError(
                f"rule {name!r} needs {len(inputs) + 1} segments, got {len(segments)}"
            )
        paths = []
        for i, gens in enumerate(segments):
            src = outer.left if i == 0 else gaps[i - 1].right
            paths.append(category.path(tuple(gens), src=src if not gens else None))
        try:
            splice = SplicedArrow(outer=outer, gaps=gaps, segments=tuple(paths))
        except CompositionError as exc:
            raise InputError(f"rule {name!r}: {exc}") from exc
        nodes.append(Node(name, tuple(inputs), output))
        node_splice[name] = splice
    species = Species(colors=tuple(nonterminals), nodes=tuple(nodes))
    if start not in color_gap:
        raise InputError(f"start symbol {start!r} is not a declared nonterminal")
    return Grammar(category, species, start, color_gap, node_splice)


def validate(grammar: Grammar) -> list[str]:
    """Check that the color/node assignment is a species map into the
    spliced-arrow operad; returns one message per defect."""
    problems: list[str] = []
    cat = grammar.category
    if grammar.start not in set(grammar.species.colors):
        problems.append(f"start symbol {grammar.start!r} is not a declared color")
    for c in grammar.species.colors:
        gap = grammar.color_gap.get(c)
        if gap is None:
            problems.append(f"color {c!r} has no gap type")
        elif not cat.has_object(gap.left) or not cat.has_object(gap.right):
            problems.append(f"color {c!r} has gap type outside the category")
    for node in grammar.species.nodes:
        splice = grammar.node_splice.get(node.name)
        if splice is None:
            problems.append(f"node {node.name!r} has no spliced arrow")
            continue
        expected_outer = grammar.color_gap.get(node.output)
        expected_gaps = tuple(grammar.color_gap.get(c) for c in node.inputs)
        if splice.arity != node.arity:
            problems.append(
                f"node {node.name!r} has arity {node.arity} but its spliced arrow has "
                f"arity {splice.arity}"
            )
            continue
        if expected_outer is not None and splice.outer != expected_outer:
            problems.append(
                f"node {node.name!r}: outer type ({splice.outer.left},{splice.outer.right}) "
                f"differs from gap type ({expected_outer.left},{expected_outer.right}) of "
                f"{node.output!r}"
            )
        for i, (got, want) in enumerate(zip(splice.gaps, expected_gaps)):
            if want is not None and got != want:
                problems.append(
                    f"node {node.name!r}: gap {i} is ({got.left},{got.right}), expected "
                    f"({want.left},{want.right}) for input {node.inputs[i]!r}"
                )
        for i, seg in enumerate(splice.segments):
            if not cat.contains_path(seg):
                problems.append(f"node {node.name!r}: segment {i} is not a path of the category")
    return problems


def eval_tree(grammar: Grammar, tree: DerivationTree) -> SplicedArrow:
    """Evaluate a derivation tree to a spliced arrow, homomorphically.

    Closed trees yield constants; a leaf evaluates to the identity operation
    on its gap type.
    """
    if isinstance(tree, Leaf):
        return spliced_identity(grammar.gap_of(tree.color))
    operands = tuple(eval_tree(grammar, child) for child in tree.children)
    return spliced_compose_parallel(grammar.splice_of(tree.node.name), operands)


# ---------------------------------------------------------------------------
# property predicates


@dataclass(frozen=True)
class GrammarProperties:
    linear: bool
    left_linear: bool
    right_linear: bool
    bilinear: bool
    cnf: bool
    nullable: tuple[str, ...]
    useful: tuple[str, ...]


def nullable_set(grammar: Grammar) -> tuple[str, ...]:
    """Colors deriving an identity arrow, as a least fixed point."""
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for node in grammar.species.nodes:
            if node.output in nullable:
                continue
            splice = grammar.splice_of(node.name)
            if all(seg.is_identity for seg in splice.segments) and all(
                c in nullable for c in node.inputs
            ):
                nullable.add(node.output)
                changed = True
    return tuple(c for c in grammar.species.colors if c in nullable)


def productive_set(grammar: Grammar) -> set[str]:
    productive: set[str] = set()
    changed = True
    while changed:
        changed = False
        for node in grammar.species.nodes:
            if node.output not in productive and all(c in productive for c in node.inputs):
                productive.add(node.output)
                changed = True
    return productive


def useful_set(grammar: Grammar) -> tuple[str, ...]:
    """Colors with a closed tree below them and a one-holed context up to the
    start color.

    The context search walks the node graph from the start; descending
    through a node at input position i requires every sibling position to be
    productive, since the rest of the context must be completable to a closed
    tree.
    """
    productive = productive_set(grammar)
    reachable = {grammar.start}
    changed = True
    while changed:
        changed = False
        for node in grammar.species.nodes:
            if node.output not in reachable:
                continue
            for i, c in enumerate(node.inputs):
                if c in reachable:
                    continue
                if all(d in productive for j, d in enumerate(node.inputs) if j != i):
                    reachable.add(c)
                    changed = True
    keep = productive & reachable
    return tuple(c for c in grammar.species.colors if c in keep)


def properties(grammar: Grammar) -> GrammarProperties:
    nodes = grammar.species.nodes
    linear = all(n.arity <= 1 for n in nodes)
    left_linear = linear and all(
        grammar.splice_of(n.name).segments[0].is_identity for n in nodes if n.arity == 1
    )
    right_linear = linear and all(
        grammar.splice_of(n.name).segments[-1].is_identity for n in nodes if n.arity == 1
    )
    bilinear = all(n.arity <= 2 for n in nodes)
    cnf = _is_cnf(grammar)
    return GrammarProperties(
        linear=linear,
        left_linear=left_linear,
        right_linear=right_linear,
        bilinear=bilinear,
        cnf=cnf,
        nullable=nullable_set(grammar),
        useful=useful_set(grammar),
    )


def _is_cnf(grammar: Grammar) -> bool:
    start = grammar.start
    for node in grammar.species.nodes:
        if start in node.inputs:
            return False
        splice = grammar.splice_of(node.name)
        if node.arity == 2:
            if not all(seg.is_identity for seg in splice.segments):
                return False
        elif node.arity == 0:
            seg = splice.segments[0]
            if len(seg) == 1:
                continue
            if seg.is_identity and node.output == start:
                continue
            return False
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# classical import / export


def import_classical(
    sigma: Iterable[str],
    nonterminals: Iterable[str],
    start: str,
    productions: Iterable[tuple[str, Sequence[str]]],
) -> Grammar:
    """Read a classical context-free grammar as a grammar of arrows over the
    one-object category of the alphabet.

    Each production is ``(lhs, rhs)`` where rhs is a sequence of symbols; a
    symbol matching a nonterminal name is a nonterminal occurrence, anything
    else is a word of terminal letters.
    """
    sigma = tuple(sigma)
    nts = tuple(nonterminals)
    category = monoid_graph(sigma)
    letters = set(sigma)
    nt_set = set(nts)
    rules = []
    for idx, (lhs, rhs) in enumerate(productions):
        if lhs not in nt_set:
            raise InputError(f"production {idx}: unknown nonterminal {lhs!r}")
        segments: list[list[str]] = [[]]
        inputs: list[str] = []
        for symbol in rhs:
            if symbol in nt_set:
                inputs.append(symbol)
                segments.append([])
            else:
                for ch in symbol:
                    if ch not in letters:
                        raise InputError(f"production {idx}: unknown symbol {ch!r}")
                    segments[-1].append(ch)
        rules.append((f"p{idx}", lhs, tuple(inputs), tuple(tuple(s) for s in segments)))
    return grammar_from_rules(
        category,
        start,
        {nt: (STAR, STAR) for nt in nts},
        rules,
    )


def parse_classical_text(text: str) -> tuple[tuple[str, ...], tuple[str, ...], str, list[tuple[str, list[str]]]]:
    """Parse the line format ``R -> w0 R1 w1 ... Rn wn`` with ``_`` for the
    empty word; alternatives may be separated by ``|``.

    Returns (alphabet, nonterminals, start, productions); the start symbol is
    the first left-hand side.
    """
    raw: list[tuple[str, list[str]]] = []
    lhss: list[str] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "->" not in line:
            raise InputError(f"line {lineno}: expected 'R -> ...'")
        lhs, rhs_text = line.split("->", 1)
        lhs = lhs.strip()
        if not lhs:
            raise InputError(f"line {lineno}: missing left-hand side")
        if lhs not in lhss:
            lhss.append(lhs)
        for alt in rhs_text.split("|"):
            tokens = [t for t in alt.split() if t != "_"]
            raw.append((lhs, tokens))
    if not raw:
        raise InputError("no productions found")
    nts = tuple(lhss)
    letters: list[str] = []
    for _, tokens in raw:
        for t in tokens:
            if t in nts:
                continue
            for ch in t:
                if ch not in letters:
                    letters.append(ch)
    return tuple(sorted(letters)), nts, nts[0], raw


def export_classical(grammar: Grammar) -> str:
    """Write a grammar over a one-object category back to the line format."""
    if len(grammar.category.objects) != 1:
        raise InputError("classical export needs a one-object category")
    lines = []
    for node in grammar.species.nodes:
        splice = grammar.splice_of(node.name)
        tokens: list[str] = []
        for i, seg in enumerate(splice.segments):
            if seg.gens:
                tokens.append("".join(seg.gens))
            if i < node.arity:
                tokens.append(node.inputs[i])
        lines.append(f"{node.output} -> {' '.join(tokens) if tokens else '_'}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# closure constructions


def _rename(
    grammar: Grammar,
    color_ren: Callable[[str], str],
    node_ren: Callable[[str], str],
) -> Grammar:
    species = Species(
        colors=tuple(color_ren(c) for c in grammar.species.colors),
        nodes=tuple(
            Node(node_ren(n.name), tuple(color_ren(c) for c in n.inputs), color_ren(n.output))
            for n in grammar.species.nodes
        ),
    )
    return Grammar(
        category=grammar.category,
        species=species,
        start=color_ren(grammar.start),
        color_gap={color_ren(c): g for c, g in grammar.color_gap.items()},
        node_splice={node_ren(n): s for n, s in grammar.node_splice.items()},
    )


def union(g1: Grammar, g2: Grammar) -> Grammar:
    """Union of two languages over the same gap type: disjoint union of the
    species plus a fresh start with two identity injections."""
    if g1.category != g2.category:
        raise CompositionError("union needs grammars over the same category")
    gap = g1.gap_of(g1.start)
    if gap != g2.gap_of(g2.start):
        raise CompositionError("union needs start symbols of the same gap type")
    r1 = _rename(g1, lambda c: c + "#u1", lambda n: n + "#u1")
    r2 = _rename(g2, lambda c: c + "#u2", lambda n: n + "#u2")
    start = "S#u"
    species = Species(
        colors=(start,) + r1.species.colors + r2.species.colors,
        nodes=(
            Node("i1#u", (r1.start,), start),
            Node("i2#u", (r2.start,), start),
        )
        + r1.species.nodes
        + r2.species.nodes,
    )
    color_gap = {start: gap, **r1.color_gap, **r2.color_gap}
    node_splice = {
        "i1#u": spliced_identity(gap),
        "i2#u": spliced_identity(gap),
        **r1.node_splice,
        **r2.node_splice,
    }
    return Grammar(g1.category, species, start, color_gap, node_splice)


def spliced_concat(
    op: SplicedArrow,
    grammars: Sequence[Grammar],
    category: FiniteGraph | None = None,
) -> Grammar:
    """The language ``w0 L1 w1 ... Ln wn``: one fresh n-ary node splicing the
    component languages into the gaps of ``op``.

    The ambient category is taken from the grammars; the nullary case has
    none to take it from, so ``category`` must be passed explicitly there.
    """
    if len(grammars) != op.arity:
        raise CompositionError(f"operation of arity {op.arity} needs {op.arity} grammars")
    if grammars:
        if category is None:
            category = grammars[0].category
        if any(g.category != category for g in grammars):
            raise CompositionError("spliced_concat needs grammars over one category")
    elif category is None:
        raise InputError("spliced_concat with no grammars needs an explicit category")
    for i, g in enumerate(grammars):
        if op.gaps[i] != g.gap_of(g.start):
            raise CompositionError(
                f"gap {i} of the operation does not match the start type of grammar {i}"
            )
    renamed = [
        _rename(g, lambda c, i=i: f"{c}#cat{i + 1}", lambda n, i=i: f"{n}#cat{i + 1}")
        for i, g in enumerate(grammars)
    ]
    start = "S#cat"
    colors = (start,)
    nodes: tuple[Node, ...] = (Node("x#cat", tuple(r.start for r in renamed), start),)
    color_gap: dict[str, GapType] = {start: op.outer}
    node_splice: dict[str, SplicedArrow] = {"x#cat": op}
    for r in renamed:
        colors += r.species.colors
        nodes += r.species.nodes
        color_gap.update(r.color_gap)
        node_splice.update(r.node_splice)
    return Grammar(category, Species(colors, nodes), start, color_gap, node_splice)


def functorial_image(grammar: Grammar, functor: FreeFunctor) -> Grammar:
    """Transport a grammar along a functor of categories: same species and
    start, segments replaced by their images."""
    if functor.domain != grammar.category:
        raise CompositionError("functor domain does not match the grammar's category")

    def map_gap(gap: GapType) -> GapType:
        return GapType(functor.object_map[gap.left], functor.object_map[gap.right])

    node_splice = {}
    for node in grammar.species.nodes:
        splice = grammar.splice_of(node.name)
        node_splice[node.name] = SplicedArrow(
            outer=map_gap(splice.outer),
            gaps=tuple(map_gap(g) for g in splice.gaps),
            segments=tuple(apply_functor(functor, seg) for seg in splice.segments),
        )
    return Grammar(
        category=functor.codomain,
        species=grammar.species,
        start=grammar.start,
        color_gap={c: map_gap(g) for c, g in grammar.color_gap.items()},
        node_splice=node_splice,
    )


def bilinearize(grammar: Grammar) -> Grammar:
    """Rewrite every node of arity three or more as a chain of one nullary
    and n binary nodes over fresh interface colors, preserving derivations
    one-to-one.  Nodes of arity at most two pass through unchanged."""
    colors = list(grammar.species.colors)
    color_gap = dict(grammar.color_gap)
    nodes: list[Node] = []
    node_splice: dict[str, SplicedArrow] = {}
    for node in grammar.species.nodes:
        splice = grammar.splice_of(node.name)
        if node.arity <= 2:
            nodes.append(node)
            node_splice[node.name] = splice
            continue
        n = node.arity
        outer = splice.outer
        a = outer.left
        input_gaps = [grammar.gap_of(c) for c in node.inputs]
        chain_colors = []
        for i in range(n):
            name = f"I({node.name},{i})"
            chain_colors.append(name)
            colors.append(name)
            color_gap[name] = GapType(a, input_gaps[i].left)
        nodes.append(Node(f"{node.name}#b0", (), chain_colors[0]))
        node_splice[f"{node.name}#b0"] = SplicedArrow(
            outer=color_gap[chain_colors[0]],
            gaps=(),
            segments=(splice.segments[0],),
        )
        for i in range(1, n + 1):
            out_color = node.output if i == n else chain_colors[i]
            name = f"{node.name}#b{i}"
            nodes.append(Node(name, (chain_colors[i - 1], node.inputs[i - 1]), out_color))
            left_gap = color_gap[chain_colors[i - 1]]
            in_gap = input_gaps[i - 1]
            node_splice[name] = SplicedArrow(
                outer=color_gap[out_color] if i < n else outer,
                gaps=(left_gap, in_gap),
                segments=(
                    identity_path(a),
                    identity_path(in_gap.left),
                    splice.segments[i],
                ),
            )
    return Grammar(
        category=grammar.category,
        species=Species(tuple(colors), tuple(nodes)),
        start=grammar.start,
        color_gap=color_gap,
        node_splice=node_splice,
    )


def check_equiv_bounded(g1: Grammar, g2: Grammar, max_len: int) -> Path | None:
    """Compare the two languages on all words up to ``max_len``; returns the
    first word (in length-then-lexicographic order) on which they differ, or
    None when they agree.  This is a bounded check, not a decision procedure.
    """
    from .parser import recognize

    if g1.category != g2.category:
        raise CompositionError("bounded equivalence needs grammars over one category")
    gap = g1.gap_of(g1.start)
    if gap != g2.gap_of(g2.start):
        raise CompositionError("start symbols have different gap types")
    for w in enumerate_paths(g1.category, gap.left, gap.right, max_len):
        if (g1.start in recognize(g1, w)) != (g2.start in recognize(g2, w)):
            return w
    return None
