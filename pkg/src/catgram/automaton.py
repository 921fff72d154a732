"""Finite state automata over free categories, and tree automata.

An automaton is a finite graph of states mapped onto the base category,
sending states to objects and transitions to single generators.  This makes
the induced functor of free categories finitary (finite fibers) and gives it
the unique-lifting-of-factorizations property, which is what lets grammars
be pulled back along automata.  A run is a path in the state graph; the
recognized language is the set of images of runs from the initial to the
final state.

Epsilon transitions and transitions over longer paths are deliberately
rejected: collapsing a generator to an identity already breaks unique
lifting, as ``ulf_check_bounded`` will demonstrate on such a functor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import InputError
from .freecat import (
    STAR,
    END_MARKER,
    FiniteGraph,
    FreeFunctor,
    Generator,
    Path,
    apply_functor,
    end_marked,
    enumerate_paths,
    monoid_graph,
)
from .species import Apply, DerivationTree, Leaf, Species
from .spliced import GapType, SplicedArrow


@dataclass(frozen=True)
class State:
    name: str
    over: str


@dataclass(frozen=True)
class Transition:
    name: str
    src: str
    dst: str
    over: str


@dataclass(frozen=True)
class Automaton:
    base: FiniteGraph
    states: tuple[State, ...]
    transitions: tuple[Transition, ...]
    initial: str
    final: str

    def __post_init__(self) -> None:
        names = [s.name for s in self.states]
        if len(set(names)) != len(names):
            raise InputError("duplicate state names")
        tnames = [t.name for t in self.transitions]
        if len(set(tnames)) != len(tnames):
            raise InputError("duplicate transition names")
        over = {s.name: s.over for s in self.states}
        for s in self.states:
            if not self.base.has_object(s.over):
                raise InputError(f"state {s.name!r} lies over unknown object {s.over!r}")
        gen_table = self.base.generator_by_name
        for t in self.transitions:
            g = gen_table.get(t.over)
            if g is None:
                raise InputError(f"transition {t.name!r} lies over unknown generator {t.over!r}")
            if t.src not in over or t.dst not in over:
                raise InputError(f"transition {t.name!r} uses undeclared states")
            if over[t.src] != g.src or over[t.dst] != g.dst:
                raise InputError(
                    f"transition {t.name!r} does not lie over its generator: "
                    f"{over[t.src]}->{over[t.dst]} vs {g.src}->{g.dst}"
                )
        if self.initial not in over or self.final not in over:
            raise InputError("initial or final state undeclared")

    @cached_property
    def state_over(self) -> Mapping[str, str]:
        return {s.name: s.over for s in self.states}

    @cached_property
    def state_graph(self) -> FiniteGraph:
        return FiniteGraph(
            objects=tuple(s.name for s in self.states),
            generators=tuple(Generator(t.name, t.src, t.dst) for t in self.transitions),
        )

    @cached_property
    def functor(self) -> FreeFunctor:
        """The induced functor from the free category of runs to the base."""
        gen_table = self.base.generator_by_name
        return FreeFunctor(
            domain=self.state_graph,
            codomain=self.base,
            object_map=dict(self.state_over),
            generator_map={
                t.name: Path(gen_table[t.over].src, gen_table[t.over].dst, (t.over,))
                for t in self.transitions
            },
        )


def import_classical(
    sigma: Iterable[str],
    states: Iterable[str],
    transitions: Iterable[tuple[str, str, str]],
    initial: str,
    finals: Iterable[str],
) -> Automaton:
    """Convert a classical NFA into an automaton over the end-marked category.

    A single fresh final state is adjoined over the end object, with one
    end-marker transition out of every accepting state; the result accepts
    ``w$`` exactly when the classical automaton accepts ``w``.  This avoids
    the classical single-final-state pitfall for languages containing the
    empty word, because nothing composes after the end marker.

    Epsilon transitions are rejected; eliminate them first.
    """
    base = end_marked(monoid_graph(tuple(sigma)))
    state_names = list(states)
    fresh = "qf"
    while fresh in state_names:
        fresh += "'"
    auto_states = tuple(State(s, STAR) for s in state_names) + (State(fresh, base.objects[1]),)
    trans = []
    for i, (src, letter, dst) in enumerate(transitions):
        if letter == "":
            raise InputError(
                "epsilon transition found; they break unique lifting and must be eliminated first"
            )
        trans.append(Transition(f"t{i}", src, dst, letter))
    for i, q in enumerate(finals):
        trans.append(Transition(f"end{i}", q, fresh, END_MARKER))
    return Automaton(base, auto_states, tuple(trans), initial, fresh)


def runs_by_source(automaton: Automaton, w: Path) -> Mapping[str, tuple[Path, ...]]:
    """All runs over ``w`` grouped by source state, as state-graph paths."""
    by_src_letter: dict[tuple[str, str], list[Transition]] = {}
    for t in automaton.transitions:
        by_src_letter.setdefault((t.src, t.over), []).append(t)
    out: dict[str, tuple[Path, ...]] = {}
    for s in automaton.states:
        if automaton.state_over[s.name] != w.src:
            out[s.name] = ()
            continue
        partial: list[tuple[str, tuple[str, ...]]] = [(s.name, ())]
        for letter in w.gens:
            extended: list[tuple[str, tuple[str, ...]]] = []
            for at, gens in partial:
                for t in by_src_letter.get((at, letter), ()):
                    extended.append((t.dst, gens + (t.name,)))
            partial = extended
        out[s.name] = tuple(Path(s.name, at, gens) for at, gens in partial)
    return out


def enumerate_runs(automaton: Automaton, w: Path, src: str, dst: str) -> tuple[Path, ...]:
    """Every lift of ``w`` to a run ``src -> dst``, in declaration order of
    the transitions taken."""
    if not automaton.base.contains_path(w):
        raise InputError("word is not a path of the base category")
    if src not in automaton.state_over or dst not in automaton.state_over:
        raise InputError("unknown state")
    return tuple(r for r in runs_by_source(automaton, w)[src] if r.dst == dst)


def run_membership(automaton: Automaton, w: Path) -> bool:
    """Whether some run over ``w`` goes from the initial to the final state."""
    if not automaton.base.contains_path(w):
        raise InputError("word is not a path of the base category")
    if automaton.state_over[automaton.initial] != w.src:
        return False
    reachable = {automaton.initial}
    by_letter: dict[str, list[Transition]] = {}
    for t in automaton.transitions:
        by_letter.setdefault(t.over, []).append(t)
    for letter in w.gens:
        reachable = {t.dst for t in by_letter.get(letter, ()) if t.src in reachable}
        if not reachable:
            return False
    return automaton.final in reachable


def interval_automaton(category: FiniteGraph, w: Path) -> Automaton:
    """The automaton of positions of ``w``: its runs are the factorizations,
    and it recognizes exactly the singleton language of ``w``."""
    if not category.contains_path(w):
        raise InputError("arrow is not a path of the category")
    objs = [w.src]
    for g in w.gens:
        objs.append(category.generator_by_name[g].dst)
    states = tuple(State(str(i), objs[i]) for i in range(len(objs)))
    transitions = tuple(
        Transition(f"s{i}", str(i), str(i + 1), w.gens[i]) for i in range(len(w.gens))
    )
    return Automaton(category, states, transitions, "0", str(len(w.gens)))


@dataclass(frozen=True)
class WordsLift:
    """The induced automaton on the spliced-arrow operad of the base.

    States are pairs of word-automaton states; an n-ary transition over a
    spliced arrow is a tuple of runs, one per segment.  The transition family
    over long spliced arrows is materialized lazily, per query.
    """

    automaton: Automaton

    @property
    def accept_pair(self) -> tuple[str, str]:
        return (self.automaton.initial, self.automaton.final)

    def lifts(
        self,
        f: SplicedArrow,
        outer: tuple[str, str],
        gaps: tuple[tuple[str, str], ...] = (),
    ) -> tuple[SplicedArrow, ...]:
        """All lifts of ``f`` to a spliced arrow of runs with the given state
        pairs as outer type and gap types."""
        if len(gaps) != f.arity:
            raise InputError(f"expected {f.arity} state pairs, got {len(gaps)}")
        n = f.arity
        per_segment: list[tuple[Path, ...]] = []
        for i, seg in enumerate(f.segments):
            src = outer[0] if i == 0 else gaps[i - 1][1]
            dst = outer[1] if i == n else gaps[i][0]
            per_segment.append(enumerate_runs(self.automaton, seg, src, dst))
        lifted: list[SplicedArrow] = []

        def build(i: int, acc: tuple[Path, ...]) -> None:
            if i == len(per_segment):
                lifted.append(
                    SplicedArrow(
                        outer=GapType(*outer),
                        gaps=tuple(GapType(*g) for g in gaps),
                        segments=acc,
                    )
                )
                return
            for run in per_segment[i]:
                build(i + 1, acc + (run,))

        build(0, ())
        return tuple(lifted)

    def lift_count(
        self,
        f: SplicedArrow,
        outer: tuple[str, str],
        gaps: tuple[tuple[str, str], ...] = (),
    ) -> int:
        return len(self.lifts(f, outer, gaps))

    def accepts_constant(self, w: Path) -> bool:
        """Acceptance of a constant between the designated state pair; agrees
        with word membership because constants are just arrows."""
        return run_membership(self.automaton, w)


def words_lift(automaton: Automaton) -> WordsLift:
    return WordsLift(automaton)


@dataclass(frozen=True)
class TreeTransition:
    name: str
    node: str
    inputs: tuple[str, ...]
    output: str


@dataclass(frozen=True)
class TreeAutomaton:
    """A bottom-up nondeterministic tree automaton over a finite species."""

    base_species: Species
    states: tuple[str, ...]
    state_over: Mapping[str, str]
    transitions: tuple[TreeTransition, ...]
    accept: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "state_over", dict(self.state_over))


def validate_tree_automaton(ta: TreeAutomaton) -> list[str]:
    """Arity and coloring compatibility, read as a species map."""
    problems = []
    if len(set(ta.states)) != len(ta.states):
        problems.append("duplicate state names")
    colors = set(ta.base_species.colors)
    for s in ta.states:
        c = ta.state_over.get(s)
        if c is None or c not in colors:
            problems.append(f"state {s!r} does not lie over a base color")
    if ta.accept not in set(ta.states):
        problems.append("accept state undeclared")
    for t in ta.transitions:
        base = ta.base_species.node_by_name.get(t.node)
        if base is None:
            problems.append(f"transition {t.name!r} lies over unknown node {t.node!r}")
            continue
        if len(t.inputs) != base.arity:
            problems.append(f"transition {t.name!r} has arity {len(t.inputs)}, node has {base.arity}")
            continue
        if ta.state_over.get(t.output) != base.output or any(
            ta.state_over.get(q) != c for q, c in zip(t.inputs, base.inputs)
        ):
            problems.append(f"transition {t.name!r} does not lie over the coloring of {t.node!r}")
    return problems


def tree_accept(ta: TreeAutomaton, tree: DerivationTree) -> bool:
    """Standard bottom-up nondeterministic evaluation of a closed tree."""
    if isinstance(tree, Leaf):
        raise InputError("tree automata run on closed trees only")

    by_node: dict[str, list[TreeTransition]] = {}
    for t in ta.transitions:
        by_node.setdefault(t.node, []).append(t)

    def states_of(t: Apply) -> frozenset[str]:
        child_states = [states_of(c) for c in t.children]  # type: ignore[arg-type]
        out = set()
        for tr in by_node.get(t.node.name, ()):
            if all(q in child_states[i] for i, q in enumerate(tr.inputs)):
                out.add(tr.output)
        return frozenset(out)

    return ta.accept in states_of(tree)


@dataclass(frozen=True)
class UlfViolation:
    path: Path
    left: Path
    right: Path
    lifts: int


def ulf_check_bounded(functor: FreeFunctor, max_len: int) -> UlfViolation | None:
    """Search for a factorization of an image with other than one lift.

    Checks every domain path with at most ``max_len`` generators against
    every two-way split of its image; returns the first violation in
    enumeration order, or None.  Automaton functors send generators to
    generators and always pass; collapsing a generator to an identity fails
    already on factorizations of identities.
    """
    dom, cod = functor.domain, functor.codomain
    for a in dom.objects:
        for b in dom.objects:
            for alpha in enumerate_paths(dom, a, b, max_len):
                image = apply_functor(functor, alpha)
                mids = [image.src]
                for g in image.gens:
                    mids.append(cod.generator_by_name[g].dst)
                for cut in range(len(image.gens) + 1):
                    u = Path(image.src, mids[cut], image.gens[:cut])
                    v = Path(mids[cut], image.dst, image.gens[cut:])
                    lifts = 0
                    for split in range(len(alpha.gens) + 1):
                        beta = dom.path(alpha.gens[:split], src=alpha.src)
                        gamma = dom.path(alpha.gens[split:], src=beta.dst)
                        if apply_functor(functor, beta) == u and apply_functor(functor, gamma) == v:
                            lifts += 1
                    if lifts != 1:
                        return UlfViolation(alpha, u, v, lifts)
    return None
