import pytest

from catgram import (
    Apply,
    DyckLetter,
    InputError,
    Node,
    Species,
    apply_functor,
    brackets,
    chromatic_factorization,
    colors_automaton,
    contour_category,
    contour_functor,
    contour_interpretation,
    contour_word,
    cs_check,
    cs_decompose,
    dyck_decode,
    dyck_translate,
    enumerate_closed_trees,
    enumerate_language,
    enumerate_regular_language,
    enumerate_runs,
    eval_tree,
    grammar_from_rules,
    ulf_check_bounded,
    union,
    universal_grammar,
    validate,
    validate_species_map,
    word,
)
from catgram.fixtures import (
    G_AB,
    G_AMB,
    G_END,
    G_EPS,
    GRAPH_AB,
    SPC_FIG3,
    fig3_tree,
)

UP = "↑"
DOWN = "↓"

FIG3_CONTOUR = [
    ("a", 0), ("b", 0), ("a", 1), ("c", 0), ("d", 0), ("c", 1), ("e", 0),
    ("c", 2), ("a", 2), ("f", 0), ("g", 0), ("f", 1), ("a", 3),
]


def corner_names(pairs):
    return tuple(f"({x},{i})" for x, i in pairs)


# -- contour categories -------------------------------------------------------


def test_contour_category_of_fig3_species():
    graph = contour_category(SPC_FIG3)
    assert set(graph.objects) == {"1" + UP, "1" + DOWN}
    assert len(graph.generators) == 13  # 4 + 3 + 2 + four nullary corners


def test_contour_category_single_nullary_node():
    species = Species(("R",), (Node("x", (), "R"),))
    graph = contour_category(species)
    assert [(g.name, g.src, g.dst) for g in graph.generators] == [
        ("(x,0)", "R" + UP, "R" + DOWN)
    ]


def test_contour_category_g_ab_corners():
    graph = contour_category(G_AB.species)
    assert [g.name for g in graph.generators] == ["(r1,0)", "(r1,1)", "(r0,0)"]
    r1_0 = graph.generator_by_name["(r1,0)"]
    r1_1 = graph.generator_by_name["(r1,1)"]
    assert (r1_0.src, r1_0.dst) == ("S" + UP, "S" + UP)
    assert (r1_1.src, r1_1.dst) == ("S" + DOWN, "S" + DOWN)


# -- universal grammars --------------------------------------------------------


def test_universal_grammar_unit_splices():
    uni = universal_grammar(G_AB.species, "S")
    assert [s.gens for s in uni.splice_of("r1").segments] == [(("(r1,0)"),), ("(r1,1)",)]
    assert [s.gens for s in uni.splice_of("r0").segments] == [("(r0,0)",)]


def test_universal_grammars_validate():
    for species, start in (
        (G_AB.species, "S"),
        (G_AMB.species, "S"),
        (G_END.species, "S"),
        (SPC_FIG3, "1"),
    ):
        assert validate(universal_grammar(species, start)) == []


def test_universal_grammar_language_of_g_ab_species():
    uni = universal_grammar(G_AB.species, "S")
    got = {w.gens for w in enumerate_language(uni, 7)}
    expected = {
        ("(r1,0)",) * n + ("(r0,0)",) + ("(r1,1)",) * n for n in range(4)
    }
    assert got == expected


# -- contour words -------------------------------------------------------------


def test_fig3_contour_word_exact():
    cw = contour_word(SPC_FIG3, fig3_tree())
    assert cw.gens == corner_names(FIG3_CONTOUR)
    assert (cw.src, cw.dst) == ("1" + UP, "1" + DOWN)


def test_contour_word_single_nullary():
    b = Apply(SPC_FIG3.node_by_name["b"], ())
    assert contour_word(SPC_FIG3, b).gens == ("(b,0)",)


def test_contour_word_g_ab_tree():
    r0 = G_AB.species.node_by_name["r0"]
    r1 = G_AB.species.node_by_name["r1"]
    cw = contour_word(G_AB.species, Apply(r1, (Apply(r0, ()),)))
    assert cw.gens == ("(r1,0)", "(r0,0)", "(r1,1)")


def test_contour_word_equals_universal_evaluation():
    for species, start in ((G_AB.species, "S"), (G_AMB.species, "S"), (SPC_FIG3, "1")):
        uni = universal_grammar(species, start)
        for t in enumerate_closed_trees(species, start, 6):
            assert eval_tree(uni, t).as_path() == contour_word(species, t)


def test_contour_word_length_law_and_injectivity():
    for species, start in ((G_AB.species, "S"), (G_AMB.species, "S"), (SPC_FIG3, "1")):
        seen = {}
        for t in enumerate_closed_trees(species, start, 8):
            cw = contour_word(species, t)
            expected_len = _sum_arity_plus_one(t)
            assert len(cw.gens) == expected_len
            assert cw.gens not in seen, "contour words must be injective"
            seen[cw.gens] = t


def _sum_arity_plus_one(t):
    return (t.node.arity + 1) + sum(_sum_arity_plus_one(c) for c in t.children)


# -- interpretation functors ---------------------------------------------------


def test_contour_interpretation_of_g_ab():
    q = contour_interpretation(G_AB)
    assert q.generator_map["(r1,0)"] == word(GRAPH_AB, "a")
    assert q.generator_map["(r1,1)"] == word(GRAPH_AB, "b")
    assert q.generator_map["(r0,0)"] == word(GRAPH_AB, "ab")
    assert q.object_map["S" + UP] == "*" and q.object_map["S" + DOWN] == "*"


def test_interpretation_recovers_evaluation():
    for grammar in (G_AB, G_AMB, G_EPS, G_END):
        q = contour_interpretation(grammar)
        for t in enumerate_closed_trees(grammar.species, grammar.start, 6):
            cw = contour_word(grammar.species, t)
            assert apply_functor(q, cw) == eval_tree(grammar, t).as_path()


def test_identity_splice_corners_map_to_identities():
    q = contour_interpretation(G_AMB)
    for i in range(3):
        assert q.generator_map[f"(m,{i})"].is_identity


# -- chromatic factorization ---------------------------------------------------


def test_chromatic_factorization_of_g_ab():
    chromatic, collapse = chromatic_factorization(G_AB)
    assert chromatic.species.colors == ("(*,*)",)
    assert [n.name for n in chromatic.species.nodes] == ["r1", "r0"]
    assert collapse.color_map == {"S": "(*,*)"}
    assert validate(chromatic) == []
    assert validate_species_map(collapse) == []


def test_chromatic_factorization_merges_same_gap_colors():
    g = grammar_from_rules(
        GRAPH_AB,
        "S",
        {"S": ("*", "*"), "T": ("*", "*")},
        [("u", "S", ("T",), (("a",), ())), ("t0", "T", (), (("b",),))],
    )
    chromatic, collapse = chromatic_factorization(g)
    assert chromatic.species.colors == ("(*,*)",)
    assert collapse.color_map["S"] == collapse.color_map["T"]
    # the collapse only removes constraints
    mine = {w.gens for w in enumerate_language(g, 8)}
    theirs = {w.gens for w in enumerate_language(chromatic, 8)}
    assert mine <= theirs
    assert mine < theirs  # here the inclusion is strict: a^n b appears


def test_chromatic_language_contains_original():
    for g in (G_AB, G_AMB, G_EPS, G_END):
        chromatic, _ = chromatic_factorization(g)
        mine = {w.gens for w in enumerate_language(g, 8)}
        theirs = {w.gens for w in enumerate_language(chromatic, 8)}
        assert mine <= theirs


# -- the colors automaton ------------------------------------------------------


def test_colors_automaton_of_g_ab():
    auto = colors_automaton(G_AB)
    assert [s.name for s in auto.states] == ["S" + UP, "S" + DOWN]
    assert len({s.over for s in auto.states}) == 2
    assert len(auto.transitions) == 3
    assert auto.initial == "S" + UP and auto.final == "S" + DOWN


def test_colors_automaton_agrees_with_contour_functor():
    for g in (G_AB, G_AMB, G_END):
        _, collapse = chromatic_factorization(g)
        auto = colors_automaton(g)
        functor = contour_functor(collapse)
        assert auto.functor.object_map == functor.object_map
        assert auto.functor.generator_map == functor.generator_map


def test_contour_functor_is_ulf():
    for g in (G_AB, G_AMB, G_END):
        _, collapse = chromatic_factorization(g)
        assert ulf_check_bounded(contour_functor(collapse), 4) is None


def test_derivation_contours_lift_uniquely():
    for g in (G_AB, G_AMB):
        _, collapse = chromatic_factorization(g)
        auto = colors_automaton(g)
        functor = contour_functor(collapse)
        for t in enumerate_closed_trees(g.species, g.start, 5):
            cw = contour_word(g.species, t)
            image = apply_functor(functor, cw)
            runs = enumerate_runs(auto, image, auto.initial, auto.final)
            assert len(runs) == 1
            assert runs[0].gens == cw.gens


# -- the decomposition ---------------------------------------------------------


G_TWO_SINGLETONS = union(
    grammar_from_rules(GRAPH_AB, "S", {"S": ("*", "*")}, [("a0", "S", (), (("a",),))]),
    grammar_from_rules(GRAPH_AB, "S", {"S": ("*", "*")}, [("b0", "S", (), (("b",),))]),
)


@pytest.mark.parametrize(
    "grammar,bound",
    [(G_AB, 8), (G_AMB, 8), (G_EPS, 6), (G_END, 9), (G_TWO_SINGLETONS, 4)],
)
def test_cs_decomposition_bounded_equality(grammar, bound):
    equal, lhs, rhs = cs_check(grammar, bound)
    assert equal, (sorted(p.gens for p in lhs), sorted(p.gens for p in rhs))


def test_cs_decomposition_empty_language():
    g = grammar_from_rules(GRAPH_AB, "S", {"S": ("*", "*")}, [("loop", "S", ("S",), ((), ()))])
    equal, lhs, rhs = cs_check(g, 6)
    assert equal and lhs == () and rhs == ()


def test_cs_components_have_the_right_shapes():
    parts = cs_decompose(G_AB)
    assert parts.universal.category == parts.automaton.base
    assert parts.interpretation.domain == parts.universal.category
    assert parts.interpretation.codomain == G_AB.category
    assert validate(parts.universal) == []


@pytest.mark.parametrize("grammar", [G_AB, G_AMB, G_END, G_TWO_SINGLETONS])
def test_contour_identity_at_gap_level(grammar, bound=9):
    # the recoloring functor maps the tree contour language onto exactly the
    # chromatic contours accepted by the colors automaton
    parts = cs_decompose(grammar)
    uni = universal_grammar(grammar.species, grammar.start)
    functor = contour_functor(parts.collapse)
    lhs = {
        apply_functor(functor, w).gens for w in enumerate_language(uni, bound)
    }
    chromatic_contours = {w.gens for w in enumerate_language(parts.universal, bound)}
    regular = {w.gens for w in enumerate_regular_language(parts.automaton, bound)}
    assert lhs == (chromatic_contours & regular)


# -- dyck translation ----------------------------------------------------------


FIG3_BRACKETS = "[[[]][[[[]][[]]]][[[[]]]]]"


def test_fig3_dyck_word():
    cw = contour_word(SPC_FIG3, fig3_tree())
    letters = dyck_translate(SPC_FIG3, cw)
    assert len(letters) == 26 == 2 * len(cw.gens)
    assert brackets(letters) == FIG3_BRACKETS
    assert letters[0] == DyckLetter("[", "a", 0)
    assert letters[-1] == DyckLetter("]", "a", 3)


def _match(letters):
    stack, pairs = [], []
    for idx, letter in enumerate(letters):
        if letter.bracket == "[":
            stack.append(idx)
        else:
            assert stack, "dip below zero"
            pairs.append((stack.pop(), idx))
    assert not stack, "unbalanced"
    return pairs


def _fixture_contours():
    for species, start in (
        (SPC_FIG3, "1"),
        (G_AB.species, "S"),
        (G_AMB.species, "S"),
        (G_END.species, "S"),
    ):
        for t in enumerate_closed_trees(species, start, 6):
            cw = contour_word(species, t)
            if len(cw.gens) <= 13:
                yield species, cw


def test_dyck_balanced_and_matched_pairs_share_node():
    for species, cw in _fixture_contours():
        letters = dyck_translate(species, cw)
        assert len(letters) == 2 * len(cw.gens)
        pairs = _match(letters)
        for open_idx, close_idx in pairs:
            assert letters[open_idx].node == letters[close_idx].node


def test_dyck_pair_structure():
    # the first letter of (x,0) matches the second letter of (x,arity); the
    # second letter of (x,i) matches the first letter of (x,i+1)
    for species, cw in _fixture_contours():
        letters = dyck_translate(species, cw)
        matched = dict(_match(letters))
        for open_idx, close_idx in matched.items():
            opener, closer = letters[open_idx], letters[close_idx]
            if open_idx % 2 == 0:  # first letter of its corner
                assert opener.index == 0
                assert closer.node == opener.node
                assert close_idx % 2 == 1
                arity = species.node_by_name[opener.node].arity
                assert closer.index == arity
            else:  # second letter: walks into the next subtree
                assert closer.node == opener.node
                assert closer.index == opener.index + 1


def test_dyck_roundtrip():
    for species, cw in _fixture_contours():
        letters = dyck_translate(species, cw)
        assert dyck_decode(species, letters) == cw


def test_dyck_decode_rejects_garbage():
    cw = contour_word(SPC_FIG3, fig3_tree())
    letters = list(dyck_translate(SPC_FIG3, cw))
    with pytest.raises(InputError):
        dyck_decode(SPC_FIG3, letters[:-1])  # odd length
    swapped = letters.copy()
    swapped[1] = DyckLetter("[", "c", 0)
    with pytest.raises(InputError):
        dyck_decode(SPC_FIG3, swapped)  # pair annotations differ
    flipped = letters.copy()
    flipped[0] = DyckLetter("]", "a", 0)
    flipped[1] = DyckLetter("]", "a", 0)
    with pytest.raises(InputError):
        dyck_decode(SPC_FIG3, flipped)  # arrival orientation broken
    reordered = letters[2:4] + letters[:2] + letters[4:]
    with pytest.raises(InputError):
        dyck_decode(SPC_FIG3, reordered)  # corners no longer compose


def test_dyck_single_nullary_corner():
    b = Apply(SPC_FIG3.node_by_name["b"], ())
    letters = dyck_translate(SPC_FIG3, contour_word(SPC_FIG3, b))
    assert letters == (DyckLetter("[", "b", 0), DyckLetter("]", "b", 0))
