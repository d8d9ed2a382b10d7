import pytest

from corpus import make_input, pushout_corpus
from vankampen.errors import (
    CertificationError,
    HypothesisError,
    MorphismError,
    UnknownGeneratorError,
)
from vankampen.groupoids import Arrow, GroupoidPresentation, Word
from vankampen.groups import abelianization, reduce_group_word
from vankampen.pushouts import (
    GroupoidMorphismData,
    PushoutInput,
    certify,
    groupoid_pushout_presentation,
    pushout_object_group,
    retraction_rho,
    validate_pushout_input,
)


def w(start, *letters):
    return Word(start, tuple(letters))


def identity_glue(objects):
    c = GroupoidPresentation(tuple(objects))
    identity = {o: o for o in objects}
    return c, GroupoidMorphismData(identity, {}), GroupoidMorphismData(identity, {})


def two_arc_circle():
    """J = {p, q}, trivial glue, both sides single-arrow trees."""
    objects = ("p", "q")
    a = GroupoidPresentation(objects, (Arrow("a", "p", "q"),))
    b = GroupoidPresentation(objects, (Arrow("b", "p", "q"),))
    c, i, j = identity_glue(objects)
    return PushoutInput(objects, "p", c, a, b, i, j)


class TestValidation:
    def test_smallest_valid_instance(self):
        validated = validate_pushout_input(two_arc_circle())
        assert validated.base_points == ("p", "q")

    def test_non_loop_arrow_in_c(self):
        objects = ("p", "q", "r")
        a = GroupoidPresentation(objects, (Arrow("a0", "p", "q"), Arrow("a1", "q", "r")))
        b = GroupoidPresentation(objects, (Arrow("b0", "p", "q"), Arrow("b1", "q", "r")))
        c = GroupoidPresentation(objects, (Arrow("g", "q", "r"),))
        identity = {o: o for o in objects}
        i = GroupoidMorphismData(identity, {"g": w("q", ("a1", 1))})
        j = GroupoidMorphismData(identity, {"g": w("q", ("b1", 1))})
        inp = PushoutInput(objects, "p", c, a, b, i, j)
        with pytest.raises(HypothesisError) as exc:
            validate_pushout_input(inp)
        assert exc.value.reason == "total_disconnection"

    def test_isolated_object_rejected(self):
        objects = ("p", "q")
        a = GroupoidPresentation(objects)  # no arrows: p and q disconnected
        b = GroupoidPresentation(objects, (Arrow("b", "p", "q"),))
        c, i, j = identity_glue(objects)
        inp = PushoutInput(objects, "p", c, a, b, i, j)
        with pytest.raises(HypothesisError) as exc:
            validate_pushout_input(inp)
        assert exc.value.reason == "connectivity"

    def test_basepoint_must_be_a_base_point(self):
        inp = two_arc_circle()
        bad = PushoutInput(inp.base_points, "zz", inp.c, inp.a, inp.b, inp.i, inp.j)
        with pytest.raises(HypothesisError) as exc:
            validate_pushout_input(bad)
        assert exc.value.reason == "basepoint"

    def test_morphism_endpoint_mismatch(self):
        objects = ("p",)
        a = GroupoidPresentation(objects, (Arrow("la", "p", "p"),))
        b = GroupoidPresentation(objects)
        c = GroupoidPresentation(objects, (Arrow("g", "p", "p"),))
        identity = {"p": "p"}
        i = GroupoidMorphismData(identity, {"g": w("p", ("la", 1), ("la", 1))})
        j = GroupoidMorphismData(identity, {})  # missing image for g
        inp = PushoutInput(objects, "p", c, a, b, i, j)
        with pytest.raises(MorphismError):
            validate_pushout_input(inp)

    def test_relation_image_consequence_check(self):
        # C imposes g^2 = 1 but its image generates an infinite cyclic factor
        objects = ("p",)
        a = GroupoidPresentation(objects, (Arrow("la", "p", "p"),))
        b = GroupoidPresentation(objects)
        c = GroupoidPresentation(
            objects, (Arrow("g", "p", "p"),), (w("p", ("g", 1), ("g", 1)),)
        )
        identity = {"p": "p"}
        i = GroupoidMorphismData(identity, {"g": w("p", ("la", 1))})
        j = GroupoidMorphismData(identity, {"g": w("p")})
        inp = PushoutInput(objects, "p", c, a, b, i, j)
        with pytest.raises(MorphismError):
            validate_pushout_input(inp)
        # shallow validation accepts the same input
        validate_pushout_input(inp, check_relation_images=False)

    def test_corpus_validates(self):
        for name, inp in pushout_corpus():
            validate_pushout_input(inp)


class TestGroupoidPushout:
    def test_identity_glue_adds_no_relations(self):
        product = groupoid_pushout_presentation(two_arc_circle())
        assert product.relations == ()
        assert {a.id for a in product.arrows} == {"a", "b"}

    def test_one_loop_glue(self):
        objects = ("p", "q")
        a = GroupoidPresentation(
            objects, (Arrow("t", "p", "q"), Arrow("la", "q", "q"))
        )
        b = GroupoidPresentation(
            objects, (Arrow("u", "p", "q"), Arrow("lb", "q", "q"))
        )
        c = GroupoidPresentation(objects, (Arrow("g", "q", "q"),))
        identity = {o: o for o in objects}
        i = GroupoidMorphismData(identity, {"g": w("q", ("la", 1))})
        j = GroupoidMorphismData(identity, {"g": w("q", ("lb", 1))})
        inp = PushoutInput(objects, "p", c, a, b, i, j)
        product = groupoid_pushout_presentation(inp)
        assert product.relations == (w("q", ("la", 1), ("lb", -1)),)

    def test_two_loops_give_two_relations(self):
        inp = make_input(2, "loop", "loop", "two_loops")
        product = groupoid_pushout_presentation(inp)
        assert len(product.relations) == 2


class TestPushoutObjectGroup:
    def test_circle_from_two_arcs(self):
        result = pushout_object_group(two_arc_circle())
        assert result.presentation.generators == ("f_q",)
        assert result.presentation.relators == ()
        assert result.f_generators == ("f_q",)
        assert abelianization(result.presentation).free_rank == 1

    def test_single_base_point_is_plain_free_product(self):
        objects = ("p",)
        a = GroupoidPresentation(objects, (Arrow("x", "p", "p"),))
        b = GroupoidPresentation(objects, (Arrow("y", "p", "p"),))
        c, i, j = identity_glue(objects)
        result = pushout_object_group(PushoutInput(objects, "p", c, a, b, i, j))
        assert result.f_generators == ()
        assert set(result.presentation.generators) == {"x", "y"}
        assert result.presentation.relators == ()

    def test_three_base_points_free_of_rank_two(self):
        inp = make_input(3, "tree", "tree", "trivial")
        result = pushout_object_group(inp)
        assert result.presentation.generators == ("f_o1", "f_o2")
        assert result.presentation.relators == ()
        assert abelianization(result.presentation) .free_rank == 2

    def test_glued_loops_identified(self):
        # both sides free on one loop at p, glued along a single loop
        objects = ("p",)
        a = GroupoidPresentation(objects, (Arrow("x", "p", "p"),))
        b = GroupoidPresentation(objects, (Arrow("y", "p", "p"),))
        c = GroupoidPresentation(objects, (Arrow("g", "p", "p"),))
        identity = {"p": "p"}
        i = GroupoidMorphismData(identity, {"g": w("p", ("x", 1))})
        j = GroupoidMorphismData(identity, {"g": w("p", ("y", 1))})
        result = pushout_object_group(PushoutInput(objects, "p", c, a, b, i, j))
        assert result.presentation.relators == ((("x", 1), ("y", -1)),)
        assert abelianization(result.presentation).free_rank == 1

    def test_f_generator_count_law(self):
        for name, inp in pushout_corpus():
            result = pushout_object_group(inp)
            assert len(result.f_generators) == len(result.base_points) - 1, name

    def test_colliding_side_generators_renamed(self):
        objects = ("p",)
        a = GroupoidPresentation(objects, (Arrow("x", "p", "p"),))
        b = GroupoidPresentation(objects, (Arrow("x", "p", "p"),))
        c, i, j = identity_glue(objects)
        result = pushout_object_group(PushoutInput(objects, "p", c, a, b, i, j))
        assert result.a_generators == ("x",)
        assert result.b_generators == ("x_B",)

    def test_tree_independence(self):
        from vankampen.groupoids import SpanningTreeData

        objects = ("p", "q")
        a = GroupoidPresentation(
            objects, (Arrow("a0", "p", "q"), Arrow("a1", "p", "q"))
        )
        b = GroupoidPresentation(objects, (Arrow("b0", "p", "q"),))
        c, i, j = identity_glue(objects)
        inp = PushoutInput(objects, "p", c, a, b, i, j)
        default = pushout_object_group(inp)
        other_tree = SpanningTreeData(
            "p", {"p": w("p"), "q": w("p", ("a1", 1))}, frozenset({"a1"})
        )
        alt = pushout_object_group(inp, tree_a=other_tree)
        assert abelianization(default.presentation) == abelianization(alt.presentation)
        assert certify(default).kind == certify(alt).kind


class TestRetraction:
    def test_a_letters_die(self):
        inp = make_input(2, "loop", "tree", "loop_p")
        result = pushout_object_group(inp)
        word = tuple((g, 1) for g in result.a_generators)
        assert retraction_rho(result, word) == ()

    def test_identity_on_f(self):
        result = pushout_object_group(two_arc_circle())
        assert retraction_rho(result, (("f_q", 1),)) == (("f_q", 1),)

    def test_mixed_word_cancels(self):
        inp = make_input(2, "loop", "loop", "two_loops")
        result = pushout_object_group(inp)
        a = result.a_generators[0]
        b = result.b_generators[0]
        f = result.f_generators[0]
        word = ((a, 1), (f, 1), (b, 1), (f, -1))
        assert retraction_rho(result, word) == ()

    def test_unknown_generator(self):
        result = pushout_object_group(two_arc_circle())
        with pytest.raises(UnknownGeneratorError):
            retraction_rho(result, (("nope", 1),))

    def test_rho_iota_is_identity_on_f(self):
        for name, inp in pushout_corpus():
            result = pushout_object_group(inp)
            for f in result.f_generators:
                assert retraction_rho(result, ((f, 1),)) == ((f, 1),), name


class TestCertify:
    def test_circle_nontrivial(self):
        cert = certify(pushout_object_group(two_arc_circle()))
        assert cert.kind == "nontrivial"
        assert cert.witnesses == ((("f_q", 1),),)

    def test_three_points_nonabelian_with_length_four_commutator(self):
        cert = certify(pushout_object_group(make_input(3, "tree", "tree", "trivial")))
        assert cert.kind == "nonabelian"
        commutator = cert.witnesses[-1]
        assert len(reduce_group_word(commutator)) == 4
        assert {name for name, _ in commutator} == {"f_o1", "f_o2"}

    def test_single_point_none(self):
        objects = ("p",)
        a = GroupoidPresentation(objects)
        b = GroupoidPresentation(objects)
        c, i, j = identity_glue(objects)
        cert = certify(pushout_object_group(PushoutInput(objects, "p", c, a, b, i, j)))
        assert cert.kind == "none"

    def test_rho_kills_every_relator_on_corpus(self):
        for name, inp in pushout_corpus():
            result = pushout_object_group(inp)
            for relator in result.presentation.relators:
                assert retraction_rho(result, relator) == (), name
            certify(result)  # re-verifies mechanically


class TestTwoRouteConsistency:
    def test_corpus_agreement(self):
        names = set()
        for name, inp in pushout_corpus():
            names.add(name)
            direct = pushout_object_group(inp)
            via_groupoid = groupoid_pushout_presentation(inp).object_group(inp.basepoint)
            assert abelianization(direct.presentation) == abelianization(via_groupoid), name
        assert len(names) >= 20

    def test_rank_law_on_trivial_sides(self):
        for size in (1, 2, 3, 4):
            inp = make_input(size, "tree", "tree", "trivial")
            result = pushout_object_group(inp)
            inv = abelianization(result.presentation)
            assert inv.free_rank == size - 1
            assert inv.torsion == ()
