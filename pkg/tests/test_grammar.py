import pytest

from catgram import (
    Apply,
    CompositionError,
    FreeFunctor,
    GapType,
    InputError,
    Leaf,
    SplicedArrow,
    bilinearize,
    check_equiv_bounded,
    enumerate_closed_trees,
    enumerate_language,
    eval_tree,
    export_classical,
    functorial_image,
    grammar_from_rules,
    identity_path,
    import_classical,
    leaf_colors,
    monoid_graph,
    parse_classical_text,
    properties,
    spliced_concat,
    spliced_identity,
    union,
    useful_set,
    validate,
    word,
)
from catgram.fixtures import (
    G_AB,
    G_AMB,
    G_END,
    G_EPS,
    G_TERN,
    GRAPH_A,
    GRAPH_AB,
    GRAPH_AB_END,
)
from conftest import words

TOP = "⊤"


def lang(g, n):
    return words(enumerate_language(g, n))


def test_validate_fixtures_ok():
    for g in (G_AB, G_AMB, G_END, G_EPS, G_TERN):
        assert validate(g) == []


def test_validate_reports_outer_mismatch():
    # S declared over (*, top) while its rule still splices a-b over (*, *)
    bad = grammar_from_rules(
        GRAPH_AB_END,
        "S",
        {"S": ("*", "*")},
        [("r1", "S", ("S",), (("a",), ("b",))), ("r0", "S", (), (("a", "b"),))],
    )
    bad = type(bad)(
        category=bad.category,
        species=bad.species,
        start=bad.start,
        color_gap={"S": GapType("*", TOP)},
        node_splice=bad.node_splice,
    )
    report = validate(bad)
    assert any("outer type" in line for line in report)


def test_validate_knuth_end_rule():
    # the end-of-input production is an ordinary unary node into (*, top)
    fin = G_END.splice_of("fin")
    assert fin.outer == GapType("*", TOP)
    assert ["".join(s.gens) for s in fin.segments] == ["", "$"]
    assert validate(G_END) == []


def test_import_classical_ab_language():
    g = import_classical("ab", ["S"], "S", [("S", ["a", "S", "b"]), ("S", ["ab"])])
    assert validate(g) == []
    assert lang(g, 8) == lang(G_AB, 8)


def test_import_classical_epsilon_production():
    g = import_classical("a", ["S"], "S", [("S", [])])
    node = g.species.nodes[0]
    assert node.arity == 0
    assert g.splice_of(node.name).segments[0].is_identity
    assert lang(g, 4) == {""}


def test_import_classical_unknown_symbol():
    with pytest.raises(InputError):
        import_classical("ab", ["S"], "S", [("S", ["c"])])


def test_classical_text_roundtrip():
    text = "S -> a S b | ab\n"
    sigma, nts, start, prods = parse_classical_text(text)
    assert (sigma, nts, start) == (("a", "b"), ("S",), "S")
    g = import_classical(sigma, nts, start, prods)
    again = import_classical(*parse_classical_text(export_classical(g)))
    assert lang(again, 8) == lang(G_AB, 8)


def test_export_writes_epsilon_as_underscore():
    assert "S -> _" in export_classical(G_EPS)


def test_eval_tree_examples():
    r0 = G_AB.species.node_by_name["r0"]
    r1 = G_AB.species.node_by_name["r1"]
    got = eval_tree(G_AB, Apply(r1, (Apply(r0, ()),)))
    assert got.is_constant and got.as_path() == word(GRAPH_AB, "aabb")

    assert eval_tree(G_AB, Leaf("S")) == spliced_identity(GapType("*", "*"))

    c = G_AMB.species.node_by_name["c"]
    m = G_AMB.species.node_by_name["m"]
    got = eval_tree(G_AMB, Apply(m, (Apply(c, ()), Apply(c, ()))))
    assert got.as_path() == word(GRAPH_A, "aa")


def test_eval_of_closed_trees_matches_gap_types():
    for g in (G_AB, G_AMB, G_EPS, G_END):
        for color in g.species.colors:
            for t in enumerate_closed_trees(g.species, color, 6):
                value = eval_tree(g, t)
                assert value.is_constant
                assert value.outer == g.gap_of(color)


def test_properties_g_ab():
    props = properties(G_AB)
    assert props.linear and props.bilinear and not props.cnf
    assert not props.left_linear and not props.right_linear
    assert props.nullable == ()
    assert props.useful == ("S",)


def test_properties_g_amb():
    props = properties(G_AMB)
    assert not props.linear and props.bilinear
    assert props.nullable == ()


def test_properties_epsilon_rule():
    assert properties(G_EPS).nullable == ("S",)


def test_properties_left_right_linear():
    left = grammar_from_rules(
        GRAPH_AB,
        "S",
        {"S": ("*", "*")},
        [("k", "S", ("S",), ((), ("a",))), ("z", "S", (), ((),))],
    )
    right = grammar_from_rules(
        GRAPH_AB,
        "S",
        {"S": ("*", "*")},
        [("k", "S", ("S",), (("a",), ())), ("z", "S", (), ((),))],
    )
    assert properties(left).left_linear and not properties(left).right_linear
    assert properties(right).right_linear and not properties(right).left_linear


def test_properties_cnf():
    cnf = grammar_from_rules(
        GRAPH_AB,
        "S",
        {"S": ("*", "*"), "A": ("*", "*"), "B": ("*", "*")},
        [
            ("s", "S", ("A", "B"), ((), (), ())),
            ("a", "A", (), (("a",),)),
            ("b", "B", (), (("b",),)),
        ],
    )
    assert properties(cnf).cnf
    assert not properties(G_AB).cnf


def test_nullable_matches_tree_oracle():
    for g in (G_AB, G_AMB, G_EPS, G_END):
        expected = set()
        for color in g.species.colors:
            for t in enumerate_closed_trees(g.species, color, 8):
                if eval_tree(g, t).as_path().is_identity:
                    expected.add(color)
                    break
        assert set(properties(g).nullable) == expected


def _useful_by_open_trees(g, max_nodes=6):
    """Brute force: a color is useful when some closed tree exists below it
    and some one-holed tree of the start color has it as the hole."""
    from test_species import _open_trees

    productive = set()
    contexts = set()
    for color in g.species.colors:
        if any(
            not leaf_colors(t)
            for t in _open_trees(g.species, color, max_nodes)
            if not isinstance(t, Leaf)
        ):
            productive.add(color)
    for t in _open_trees(g.species, g.start, max_nodes):
        holes = leaf_colors(t)
        if len(holes) == 1:
            contexts.add(holes[0])
    return {c for c in productive if c in contexts}


def test_useful_matches_open_tree_oracle():
    dead = grammar_from_rules(
        GRAPH_AB,
        "S",
        {"S": ("*", "*"), "U": ("*", "*"), "W": ("*", "*")},
        [
            ("r0", "S", (), (("a",),)),
            ("loop", "U", ("U",), (("a",), ())),  # unproductive
            ("orphan", "W", (), (("b",),)),  # unreachable
            ("use", "S", ("U",), ((), ())),
        ],
    )
    for g in (G_AB, G_AMB, G_EPS, dead):
        assert set(useful_set(g)) == _useful_by_open_trees(g)


def test_union_of_same_language():
    assert lang(union(G_AB, G_AB), 8) == lang(G_AB, 8)


def test_union_with_empty_language():
    empty = grammar_from_rules(
        GRAPH_AB, "S", {"S": ("*", "*")}, [("loop", "S", ("S",), ((), ()))]
    )
    assert lang(union(G_AB, empty), 8) == lang(G_AB, 8)


def test_union_of_singletons():
    ga = grammar_from_rules(GRAPH_AB, "S", {"S": ("*", "*")}, [("a", "S", (), (("a",),))])
    gb = grammar_from_rules(GRAPH_AB, "S", {"S": ("*", "*")}, [("b", "S", (), (("b",),))])
    u = union(ga, gb)
    assert lang(u, 4) == {"a", "b"}
    assert lang(u, 4) == lang(ga, 4) | lang(gb, 4)


def test_union_rejects_mismatched_starts():
    with pytest.raises(CompositionError):
        union(G_END, _end_grammar_over_star())


def _end_grammar_over_star():
    return grammar_from_rules(
        GRAPH_AB_END, "S", {"S": ("*", "*")}, [("r0", "S", (), (("a", "b"),))]
    )


ABCD = monoid_graph(("a", "b", "c", "d"))
G_AB4 = grammar_from_rules(
    ABCD,
    "S",
    {"S": ("*", "*")},
    [("r1", "S", ("S",), (("a",), ("b",))), ("r0", "S", (), (("a", "b"),))],
)


def test_spliced_concat_wraps_language():
    star = GapType("*", "*")
    op = SplicedArrow(star, (star,), (word(ABCD, "c"), word(ABCD, "d")))
    g = spliced_concat(op, [G_AB4])
    assert lang(g, 8) == {"c" + w + "d" for w in lang(G_AB4, 6)}


def test_spliced_concat_identity_is_neutral():
    g = spliced_concat(spliced_identity(GapType("*", "*")), [G_AB])
    assert lang(g, 8) == lang(G_AB, 8)


def test_spliced_concat_nullary_constant():
    star = GapType("*", "*")
    op = SplicedArrow(star, (), (word(GRAPH_AB, "ab"),))
    g = spliced_concat(op, [], category=GRAPH_AB)
    assert lang(g, 8) == {"ab"}


def test_spliced_concat_two_factors():
    star = GapType("*", "*")
    op = SplicedArrow(
        star, (star, star), (identity_path("*"), word(ABCD, "c"), identity_path("*"))
    )
    g = spliced_concat(op, [G_AB4, G_AB4])
    expected = {
        u + "c" + v
        for u in lang(G_AB4, 8)
        for v in lang(G_AB4, 8)
        if len(u) + len(v) + 1 <= 8
    }
    assert lang(g, 8) == expected


X = monoid_graph(("x",))
COLLAPSE = FreeFunctor(
    domain=GRAPH_AB,
    codomain=X,
    object_map={"*": "*"},
    generator_map={"a": word(X, "x"), "b": word(X, "x")},
)


def test_functorial_image_collapses_letters():
    g = functorial_image(G_AB, COLLAPSE)
    assert lang(g, 8) == {"xx", "xxxx", "xxxxxx", "xxxxxxxx"}
    assert lang(g, 8) == {"x" * len(w) for w in lang(G_AB, 8)}


def test_functorial_image_identity():
    from catgram import identity_functor

    assert functorial_image(G_AB, identity_functor(GRAPH_AB)) == G_AB


def test_functorial_image_erasing():
    B = monoid_graph(("b",))
    erase_a = FreeFunctor(
        domain=GRAPH_AB,
        codomain=B,
        object_map={"*": "*"},
        generator_map={"a": identity_path("*"), "b": word(B, "b")},
    )
    g = functorial_image(G_AB, erase_a)
    assert lang(g, 8) == {"b" * n for n in range(1, 9)}


def test_bilinearize_chain_structure():
    # the ternary node becomes one nullary chain head plus three binary links
    binned = bilinearize(G_TERN)
    assert all(n.arity <= 2 for n in binned.species.nodes)
    added = [c for c in binned.species.colors if c.startswith("I(")]
    assert added == ["I(t,0)", "I(t,1)", "I(t,2)"]
    head = binned.species.node_by_name["t#b0"]
    assert head.arity == 0
    assert "".join(binned.splice_of("t#b0").segments[0].gens) == "a"
    for i, expected_tail in ((1, ""), (2, ""), (3, "b")):
        link = binned.species.node_by_name[f"t#b{i}"]
        assert link.arity == 2
        assert link.inputs[0] == f"I(t,{i - 1})"
        assert link.inputs[1] == "S"
        splice = binned.splice_of(f"t#b{i}")
        assert splice.segments[0].is_identity and splice.segments[1].is_identity
        assert "".join(splice.segments[2].gens) == expected_tail
    # interface colors refine (A, A_i)
    assert binned.gap_of("I(t,0)") == GapType("*", "*")


def test_bilinearize_leaves_small_grammars_alone():
    assert bilinearize(G_AB) == G_AB
    assert bilinearize(G_AMB) == G_AMB


def test_bilinearize_preserves_language():
    assert lang(bilinearize(G_TERN), 8) == lang(G_TERN, 8) == {"aabababb"}
    assert validate(bilinearize(G_TERN)) == []


def test_check_equiv_bounded_equal():
    assert check_equiv_bounded(G_AB, bilinearize(G_AB), 8) is None
    assert check_equiv_bounded(G_TERN, bilinearize(G_TERN), 8) is None


def test_check_equiv_bounded_counterexample():
    amb_over_ab = grammar_from_rules(
        GRAPH_AB,
        "S",
        {"S": ("*", "*")},
        [("c", "S", (), (("a",),)), ("m", "S", ("S", "S"), ((), (), ()))],
    )
    ce = check_equiv_bounded(G_AB, amb_over_ab, 2)
    assert ce is not None and "".join(ce.gens) == "a"


def test_check_equiv_reflexive():
    assert check_equiv_bounded(G_AMB, G_AMB, 6) is None
