"""Free categories on finite graphs.

A finite graph presents a free category: objects are the graph's objects and
arrows are paths, i.e. composable sequences of generating edges.  Arrow
equality is generator-sequence equality, composition is concatenation, and
identities are empty paths.  Functors between free categories are determined
by their action on objects and generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .errors import CompositionError, InputError

STAR = "*"
TOP = "⊤"
END_MARKER = "$"


@dataclass(frozen=True)
class Generator:
    """A generating arrow of a finite graph."""

    name: str
    src: str
    dst: str


@dataclass(frozen=True)
class Path:
    """An arrow of a free category: a composable sequence of generator names.

    Invariants (consecutive generators compose, endpoints match the ambient
    graph) are relative to a graph and checked by ``FiniteGraph.path``; a bare
    ``Path`` only knows its endpoints and its generator names.
    """

    src: str
    dst: str
    gens: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.gens)

    @property
    def is_identity(self) -> bool:
        return not self.gens

    def label(self) -> str:
        """Compact display form; identities render as the empty-word symbol."""
        return "".join(self.gens) if self.gens else "ε"


def identity_path(obj: str) -> Path:
    return Path(obj, obj, ())


@dataclass(frozen=True)
class FiniteGraph:
    """A finite presentation of a free category.

    Objects and generators are kept in declaration order so that every
    enumeration over the graph is reproducible.
    """

    objects: tuple[str, ...]
    generators: tuple[Generator, ...] = ()

    def __post_init__(self) -> None:
        if len(set(self.objects)) != len(self.objects):
            raise InputError("duplicate object names in graph")
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise InputError("duplicate generator names in graph")
        objs = set(self.objects)
        for g in self.generators:
            if g.src not in objs or g.dst not in objs:
                raise InputError(
                    f"generator {g.name!r} has undeclared endpoint {g.src!r} or {g.dst!r}"
                )

    @cached_property
    def generator_by_name(self) -> Mapping[str, Generator]:
        return {g.name: g for g in self.generators}

    @cached_property
    def out_of(self) -> Mapping[str, tuple[Generator, ...]]:
        """Outgoing generators per object, sorted by name for determinism."""
        table: dict[str, list[Generator]] = {o: [] for o in self.objects}
        for g in self.generators:
            table[g.src].append(g)
        return {o: tuple(sorted(gs, key=lambda g: g.name)) for o, gs in table.items()}

    def has_object(self, obj: str) -> bool:
        return obj in set(self.objects)

    def path(self, gens: Iterable[str], src: str | None = None) -> Path:
        """Build a validated path from generator names.

        ``src`` is only needed for the empty path, where the endpoints cannot
        be inferred.
        """
        names = tuple(gens)
        if not names:
            if src is None:
                raise InputError("empty path needs an explicit source object")
            if not self.has_object(src):
                raise InputError(f"unknown object {src!r}")
            return Path(src, src, ())
        table = self.generator_by_name
        missing = [n for n in names if n not in table]
        if missing:
            raise InputError(f"unknown generator(s) {missing!r}")
        first = table[names[0]]
        if src is not None and src != first.src:
            raise InputError(
                f"path declared source {src!r} but first generator starts at {first.src!r}"
            )
        at = first.src
        for n in names:
            g = table[n]
            if g.src != at:
                raise CompositionError(
                    f"generators do not compose: expected source {at!r}, got {g.name!r} : {g.src!r} -> {g.dst!r}"
                )
            at = g.dst
        return Path(first.src, at, names)

    def contains_path(self, p: Path) -> bool:
        try:
            q = self.path(p.gens, src=p.src if p.is_identity else None)
        except (InputError, CompositionError):
            return False
        return q == p


def path_compose(p: Path, q: Path) -> Path:
    """Compose two paths; in a free category this is concatenation."""
    if p.dst != q.src:
        raise CompositionError(
            f"cannot compose {p.src}->{p.dst} with {q.src}->{q.dst}: endpoint mismatch"
        )
    return Path(p.src, q.dst, p.gens + q.gens)


def word(graph: FiniteGraph, letters: str, src: str | None = None) -> Path:
    """Read a path from a string of single-character generator names."""
    if letters and src is None:
        return graph.path(tuple(letters))
    if src is None:
        raise InputError("empty word needs an explicit source object")
    return graph.path(tuple(letters), src=src)


@dataclass(frozen=True)
class FreeFunctor:
    """A functor between free categories, given on objects and generators.

    ``generator_map`` sends each generator of the domain to a path of the
    codomain whose endpoints agree with the object map.
    """

    domain: FiniteGraph
    codomain: FiniteGraph
    object_map: Mapping[str, str] = field(default_factory=dict)
    generator_map: Mapping[str, Path] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "object_map", dict(self.object_map))
        object.__setattr__(self, "generator_map", dict(self.generator_map))
        for o in self.domain.objects:
            if o not in self.object_map:
                raise InputError(f"object {o!r} missing from object map")
            if not self.codomain.has_object(self.object_map[o]):
                raise InputError(f"object {o!r} mapped outside the codomain")
        for g in self.domain.generators:
            img = self.generator_map.get(g.name)
            if img is None:
                raise InputError(f"generator {g.name!r} missing from generator map")
            if not self.codomain.contains_path(img):
                raise InputError(f"image of generator {g.name!r} is not a codomain path")
            if img.src != self.object_map[g.src] or img.dst != self.object_map[g.dst]:
                raise InputError(
                    f"image of generator {g.name!r} has endpoints {img.src}->{img.dst}, "
                    f"expected {self.object_map[g.src]}->{self.object_map[g.dst]}"
                )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreeFunctor):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.object_map == other.object_map
            and self.generator_map == other.generator_map
        )

    __hash__ = None  # type: ignore[assignment]


def identity_functor(graph: FiniteGraph) -> FreeFunctor:
    return FreeFunctor(
        domain=graph,
        codomain=graph,
        object_map={o: o for o in graph.objects},
        generator_map={g.name: Path(g.src, g.dst, (g.name,)) for g in graph.generators},
    )


def apply_functor(functor: FreeFunctor, p: Path) -> Path:
    """Apply a functor to a path: map each generator and concatenate."""
    if not functor.domain.contains_path(p):
        raise InputError(f"path {p} does not lie in the functor's domain")
    out = identity_path(functor.object_map[p.src])
    for name in p.gens:
        out = path_compose(out, functor.generator_map[name])
    return out


def compose_functors(f: FreeFunctor, g: FreeFunctor) -> FreeFunctor:
    """The composite functor applying ``f`` first, then ``g``."""
    if f.codomain != g.domain:
        raise CompositionError("functor domains do not match for composition")
    return FreeFunctor(
        domain=f.domain,
        codomain=g.codomain,
        object_map={o: g.object_map[f.object_map[o]] for o in f.domain.objects},
        generator_map={
            gen.name: apply_functor(g, f.generator_map[gen.name])
            for gen in f.domain.generators
        },
    )


def monoid_graph(letters: Iterable[str]) -> FiniteGraph:
    """The one-object graph whose paths are words over the given alphabet."""
    gens = tuple(Generator(a, STAR, STAR) for a in letters)
    return FiniteGraph(objects=(STAR,), generators=gens)


def end_marked(graph: FiniteGraph) -> FiniteGraph:
    """Adjoin a fresh object and an end-of-input generator to a one-object graph.

    The new generator ``$`` points from the original object to the fresh
    object, so nothing composes after it.
    """
    if len(graph.objects) != 1:
        raise InputError("end_marked expects the one-object graph of an alphabet")
    base = graph.objects[0]
    if TOP in graph.objects or END_MARKER in graph.generator_by_name:
        raise InputError("graph already uses the reserved end-marker names")
    return FiniteGraph(
        objects=(base, TOP),
        generators=graph.generators + (Generator(END_MARKER, base, TOP),),
    )


def _disjointify(
    left: FiniteGraph, right: FiniteGraph
) -> tuple[FiniteGraph, dict[str, str], dict[str, str]]:
    """Rename the right graph's colliding names; returns the renamed graph
    and the object/generator renaming actually applied."""
    taken_objects = set(left.objects)
    taken_gens = {g.name for g in left.generators}
    obj_ren: dict[str, str] = {}
    for o in right.objects:
        new = o
        while new in taken_objects:
            new = new + "#2"
        obj_ren[o] = new
        taken_objects.add(new)
    gen_ren: dict[str, str] = {}
    for g in right.generators:
        new = g.name
        while new in taken_gens:
            new = new + "#2"
        gen_ren[g.name] = new
        taken_gens.add(new)
    renamed = FiniteGraph(
        objects=tuple(obj_ren[o] for o in right.objects),
        generators=tuple(
            Generator(gen_ren[g.name], obj_ren[g.src], obj_ren[g.dst])
            for g in right.generators
        ),
    )
    return renamed, obj_ren, gen_ren


def ordinal_sum(first: FiniteGraph, second: FiniteGraph) -> FiniteGraph:
    """Disjoint union of two graphs plus one fresh connecting generator
    ``e(A,B) : A -> B`` for every object A of the first and B of the second."""
    second, _, _ = _disjointify(first, second)
    connectors = tuple(
        Generator(f"e({a},{b})", a, b) for a in first.objects for b in second.objects
    )
    return FiniteGraph(
        objects=first.objects + second.objects,
        generators=first.generators + second.generators + connectors,
    )


def enumerate_paths(graph: FiniteGraph, src: str, dst: str, max_len: int) -> tuple[Path, ...]:
    """All paths ``src -> dst`` with at most ``max_len`` generators.

    Results come in length order, lexicographic on generator names within a
    length.  Distinct generator sequences are distinct paths in a free
    category, so no deduplication is needed.
    """
    if max_len < 0:
        raise InputError("max_len must be nonnegative")
    if not graph.has_object(src) or not graph.has_object(dst):
        raise InputError("unknown endpoint object")
    found: list[Path] = []

    def extend(at: str, gens: tuple[str, ...]) -> Iterator[Path]:
        if at == dst:
            yield Path(src, dst, gens)
        if len(gens) == max_len:
            return
        for g in graph.out_of[at]:
            yield from extend(g.dst, gens + (g.name,))

    found.extend(extend(src, ()))
    found.sort(key=lambda p: (len(p.gens), p.gens))
    return tuple(found)
