"""Small worked objects used by the test suite, the docs and the CLI examples.

Everything here is immutable, so the module-level values can be shared
freely.
"""

from __future__ import annotations

from .automaton import Automaton, State, Transition
from .freecat import end_marked, monoid_graph
from .grammar import grammar_from_rules
from .species import Apply, Node, Species

GRAPH_A = monoid_graph(("a",))
GRAPH_AB = monoid_graph(("a", "b"))
GRAPH_AB_END = end_marked(GRAPH_AB)

# a^n b^n, n >= 1; linear and unambiguous
G_AB = grammar_from_rules(
    GRAPH_AB,
    "S",
    {"S": ("*", "*")},
    [
        ("r1", "S", ("S",), (("a",), ("b",))),
        ("r0", "S", (), (("a", "b"),)),
    ],
)

# a^n, n >= 1, with Catalan-many parses: an associativity-ambiguous product
G_AMB = grammar_from_rules(
    GRAPH_A,
    "S",
    {"S": ("*", "*")},
    [
        ("c", "S", (), (("a",),)),
        ("m", "S", ("S", "S"), ((), (), ())),
    ],
)

# a^n, n >= 0, via an empty production; nullable start
G_EPS = grammar_from_rules(
    GRAPH_A,
    "S",
    {"S": ("*", "*")},
    [
        ("z", "S", (), ((),)),
        ("w", "S", ("S",), (("a",), ())),
    ],
)

# a^n b^n $ over the end-marked category: the end-of-input rule is an
# ordinary unary node into a nonterminal refining (*, top)
G_END = grammar_from_rules(
    GRAPH_AB_END,
    "S",
    {"E": ("*", "*"), "S": ("*", "⊤")},
    [
        ("fin", "S", ("E",), ((), ("$",))),
        ("r1", "E", ("E",), (("a",), ("b",))),
        ("r0", "E", (), (("a", "b"),)),
    ],
)

# one ternary node, to exercise the bilinearization chain
G_TERN = grammar_from_rules(
    GRAPH_AB,
    "T",
    {"S": ("*", "*"), "T": ("*", "*")},
    [
        ("r0", "S", (), (("a", "b"),)),
        ("t", "T", ("S", "S", "S"), (("a",), (), (), ("b",))),
    ],
)

# a unit production cycle: the single word has infinitely many parses
G_UNIT = grammar_from_rules(
    GRAPH_A,
    "S",
    {"S": ("*", "*")},
    [
        ("c", "S", (), (("a",),)),
        ("u", "S", ("S",), ((), ())),
    ],
)

# parity of the number of a's; b is neutral
M_EVENA = Automaton(
    base=GRAPH_AB,
    states=(State("e", "*"), State("o", "*")),
    transitions=(
        Transition("a_eo", "e", "o", "a"),
        Transition("a_oe", "o", "e", "a"),
        Transition("b_ee", "e", "e", "b"),
        Transition("b_oo", "o", "o", "b"),
    ),
    initial="e",
    final="e",
)

# one color, arities 3/2/1 and four nullary nodes
SPC_FIG3 = Species(
    colors=("1",),
    nodes=(
        Node("a", ("1", "1", "1"), "1"),
        Node("b", (), "1"),
        Node("c", ("1", "1"), "1"),
        Node("d", (), "1"),
        Node("e", (), "1"),
        Node("f", ("1",), "1"),
        Node("g", (), "1"),
    ),
)


def fig3_tree() -> Apply:
    """The worked example tree a(b, c(d, e), f(g))."""
    n = SPC_FIG3.node_by_name
    return Apply(
        n["a"],
        (
            Apply(n["b"], ()),
            Apply(n["c"], (Apply(n["d"], ()), Apply(n["e"], ()))),
            Apply(n["f"], (Apply(n["g"], ()),)),
        ),
    )
