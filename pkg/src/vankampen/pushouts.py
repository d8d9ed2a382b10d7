"""Pushouts of groupoids over a fixed object set.

Given a span C -> A, C -> B over a base-point set J with C totally
disconnected and A, B connected, this module computes a presentation of the
object group of the pushout at a chosen basepoint, together with the
retraction onto its free part and the certificates that retraction yields.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import (
    CertificationError,
    HypothesisError,
    MorphismError,
    UnknownGeneratorError,
)
from .groupoids import Arrow, GroupoidPresentation, SpanningTreeData, Word, free_product_with_maps
from .groups import (
    Certificate,
    GroupPresentation,
    GroupWord,
    invert_group_word,
    reduce_group_word,
    solvable_over_integers,
)


@dataclass(frozen=True)
class GroupoidMorphismData:
    """A morphism of presented groupoids that is the identity on objects.

    ``arrow_map`` sends each generating arrow of the source to a word of the
    target with the same endpoints.
    """

    object_map: Mapping[str, str]
    arrow_map: Mapping[str, Word]


@dataclass(frozen=True)
class PushoutInput:
    """A span of presented groupoids over the base-point set ``base_points``."""

    base_points: tuple[str, ...]
    basepoint: str
    c: GroupoidPresentation
    a: GroupoidPresentation
    b: GroupoidPresentation
    i: GroupoidMorphismData
    j: GroupoidMorphismData


def _check_morphism(
    name: str,
    source: GroupoidPresentation,
    target: GroupoidPresentation,
    morphism: GroupoidMorphismData,
) -> None:
    for obj in source.objects:
        if morphism.object_map.get(obj, obj) != obj:
            raise MorphismError(f"morphism {name} is not the identity on object {obj!r}")
    source_ids = {a.id for a in source.arrows}
    if set(morphism.arrow_map) != source_ids:
        raise MorphismError(
            f"morphism {name} must map exactly the generating arrows of its source"
        )
    for arrow in source.arrows:
        image = morphism.arrow_map[arrow.id]
        if image.start != arrow.src:
            raise MorphismError(
                f"morphism {name}: image of {arrow.id!r} starts at {image.start!r}, "
                f"expected {arrow.src!r}"
            )
        end = target.end_of(image)
        if end != arrow.tgt:
            raise MorphismError(
                f"morphism {name}: image of {arrow.id!r} ends at {end!r}, "
                f"expected {arrow.tgt!r}"
            )


def _apply_morphism_letters(
    morphism: GroupoidMorphismData, word: Word, target: GroupoidPresentation
) -> Word:
    letters: list[tuple[str, int]] = []
    for name, sign in word.letters:
        image = morphism.arrow_map[name]
        if sign == 1:
            letters.extend(image.letters)
        else:
            letters.extend(target.inverse_word(image).letters)
    return Word(morphism.object_map.get(word.start, word.start), tuple(letters))


def _check_relation_images_abelian(
    name: str,
    source: GroupoidPresentation,
    target: GroupoidPresentation,
    morphism: GroupoidMorphismData,
    basepoint: str,
) -> None:
    """Relations of the source must map into consequences of the target's.

    Full checking is a word problem; this verifies the necessary condition at
    the abelianization level: the image's exponent vector must lie in the
    lattice spanned by the target relators' exponent vectors.
    """
    if not source.relations:
        return
    tree = target.spanning_tree(basepoint)
    group = target.object_group_from_tree(tree)
    index = {g: k for k, g in enumerate(group.generators)}
    relator_rows = []
    for rel in group.relators:
        row = [0] * len(index)
        for gen, sign in rel:
            row[index[gen]] += sign
        relator_rows.append(row)
    # solve y·R = v, i.e. Rᵀ·y = v
    transpose = [
        [relator_rows[r][c] for r in range(len(relator_rows))] for c in range(len(index))
    ]
    for k, rel in enumerate(source.relations):
        image = _apply_morphism_letters(morphism, rel, target)
        letters = target.retract_to_generators(tree, image)
        vector = [0] * len(index)
        for gen, sign in letters:
            vector[index[gen]] += sign
        if not relator_rows:
            ok = not any(vector)
        else:
            ok = solvable_over_integers(transpose, vector)
        if not ok:
            raise MorphismError(
                f"morphism {name}: image of relation {k} is not an abelianized "
                "consequence of the target's relations"
            )


def validate_pushout_input(
    pushout_input: PushoutInput, *, check_relation_images: bool = True
) -> PushoutInput:
    """Check the hypotheses and return a copy with sorted base points.

    Raises HypothesisError when C has a non-loop arrow, when A or B is
    disconnected or misses a base point, or when the basepoint is not a base
    point; MorphismError when i or j is ill-formed.
    """
    base_points = tuple(sorted(set(pushout_input.base_points)))
    if not base_points:
        raise HypothesisError("basepoint", "the base-point set is empty")
    if pushout_input.basepoint not in base_points:
        raise HypothesisError(
            "basepoint",
            f"basepoint {pushout_input.basepoint!r} is not a base point",
        )
    c = pushout_input.c
    if set(c.objects) != set(base_points):
        raise HypothesisError(
            "basepoint",
            "the object set of C must equal the base-point set",
        )
    for arrow in c.arrows:
        if arrow.src != arrow.tgt:
            raise HypothesisError(
                "total_disconnection",
                f"C must be totally disconnected but arrow {arrow.id!r} "
                f"runs {arrow.src!r} -> {arrow.tgt!r}",
            )
    for label, side in (("A", pushout_input.a), ("B", pushout_input.b)):
        missing = set(base_points) - set(side.objects)
        if missing:
            raise HypothesisError(
                "connectivity",
                f"{label} does not contain base point(s) {sorted(missing)!r}",
            )
        if not side.is_connected():
            raise HypothesisError("connectivity", f"{label} is not connected")
    _check_morphism("i", c, pushout_input.a, pushout_input.i)
    _check_morphism("j", c, pushout_input.b, pushout_input.j)
    if check_relation_images:
        _check_relation_images_abelian(
            "i", c, pushout_input.a, pushout_input.i, pushout_input.basepoint
        )
        _check_relation_images_abelian(
            "j", c, pushout_input.b, pushout_input.j, pushout_input.basepoint
        )
    return PushoutInput(
        base_points,
        pushout_input.basepoint,
        c,
        pushout_input.a,
        pushout_input.b,
        pushout_input.i,
        pushout_input.j,
    )


def groupoid_pushout_presentation(
    pushout_input: PushoutInput, *, check_relation_images: bool = True
) -> GroupoidPresentation:
    """The pushout as a presented groupoid: A * B with one glue relation
    per generating loop of C."""
    inp = validate_pushout_input(
        pushout_input, check_relation_images=check_relation_images
    )
    product, a_map, b_map = free_product_with_maps(inp.a, inp.b, tags=("A", "B"))
    glue = []
    for gamma in inp.c.arrows:
        iw = inp.i.arrow_map[gamma.id]
        jw = inp.j.arrow_map[gamma.id]
        letters = tuple((a_map[name], sign) for name, sign in iw.letters) + tuple(
            (b_map[name], -sign) for name, sign in reversed(jw.letters)
        )
        glue.append(product.reduce_word(Word(gamma.src, letters)))
    return GroupoidPresentation(
        product.objects, product.arrows, product.relations + tuple(glue)
    )


@dataclass(frozen=True)
class PushoutResult:
    """Presentation of the pushout's object group with full provenance.

    Generators split into three blocks: images of non-tree arrows of A,
    of B, and one formal generator per base point other than the basepoint
    (the basepoint's generator is realized by omission). ``gen_origin``
    records where each generator came from; ``relator_provenance`` tags each
    relator as coming from A, from B, or from a generating loop of C.
    """

    presentation: GroupPresentation
    base_points: tuple[str, ...]
    basepoint: str
    a_generators: tuple[str, ...]
    b_generators: tuple[str, ...]
    f_generators: tuple[str, ...]
    gen_origin: Mapping[str, tuple]
    tree_a: SpanningTreeData
    tree_b: SpanningTreeData
    relator_provenance: tuple[tuple, ...]


def _fresh(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def pushout_object_group(
    pushout_input: PushoutInput,
    *,
    tree_a: SpanningTreeData | None = None,
    tree_b: SpanningTreeData | None = None,
    check_relation_images: bool = True,
) -> PushoutResult:
    """Present the object group of the pushout at the chosen basepoint.

    Spanning trees of A and B rooted at the basepoint supply the retractions
    r and s; each generating loop gamma of C at x contributes the relator
    r(i gamma) · f_x · (s(j gamma))^{-1} · f_x^{-1}, with f at the basepoint
    omitted. Alternative trees may be injected for tree-independence checks.
    """
    inp = validate_pushout_input(
        pushout_input, check_relation_images=check_relation_images
    )
    p = inp.basepoint
    tree_a = tree_a if tree_a is not None else inp.a.spanning_tree(p)
    tree_b = tree_b if tree_b is not None else inp.b.spanning_tree(p)
    group_a = inp.a.object_group_from_tree(tree_a)
    group_b = inp.b.object_group_from_tree(tree_b)

    taken: set[str] = set()
    gen_origin: dict[str, tuple] = {}
    a_names: dict[str, str] = {}
    for gen in group_a.generators:
        name = _fresh(gen, taken)
        a_names[gen] = name
        gen_origin[name] = ("A", gen)
    b_names: dict[str, str] = {}
    for gen in group_b.generators:
        name = _fresh(gen if gen not in taken else f"{gen}_B", taken)
        b_names[gen] = name
        gen_origin[name] = ("B", gen)
    f_names: dict[str, str] = {}
    for x in inp.base_points:
        if x == p:
            continue
        name = _fresh(f"f_{x}", taken)
        f_names[x] = name
        gen_origin[name] = ("F", x)

    def rename(letters: GroupWord, mapping: Mapping[str, str]) -> GroupWord:
        return tuple((mapping[name], sign) for name, sign in letters)

    relators: list[GroupWord] = []
    provenance: list[tuple] = []
    for k, rel in enumerate(group_a.relators):
        relators.append(rename(rel, a_names))
        provenance.append(("A_relation", k))
    for k, rel in enumerate(group_b.relators):
        relators.append(rename(rel, b_names))
        provenance.append(("B_relation", k))
    for gamma in inp.c.arrows:
        x = gamma.src
        r_i = rename(
            inp.a.retract_to_generators(tree_a, inp.i.arrow_map[gamma.id]), a_names
        )
        s_j = rename(
            inp.b.retract_to_generators(tree_b, inp.j.arrow_map[gamma.id]), b_names
        )
        if x == p:
            word = r_i + invert_group_word(s_j)
        else:
            f = ((f_names[x], 1),)
            word = r_i + f + invert_group_word(s_j) + invert_group_word(f)
        relators.append(reduce_group_word(word))
        provenance.append(("glue", x, gamma.id))

    generators = (
        tuple(a_names[g] for g in group_a.generators)
        + tuple(b_names[g] for g in group_b.generators)
        + tuple(f_names[x] for x in inp.base_points if x != p)
    )
    presentation = GroupPresentation(generators, tuple(relators))
    return PushoutResult(
        presentation=presentation,
        base_points=inp.base_points,
        basepoint=p,
        a_generators=tuple(a_names[g] for g in group_a.generators),
        b_generators=tuple(b_names[g] for g in group_b.generators),
        f_generators=tuple(f_names[x] for x in inp.base_points if x != p),
        gen_origin=gen_origin,
        tree_a=tree_a,
        tree_b=tree_b,
        relator_provenance=tuple(provenance),
    )


def retraction_rho(result: PushoutResult, word: GroupWord) -> GroupWord:
    """Retraction onto the free part: kill A- and B-generators, keep f's."""
    f_set = set(result.f_generators)
    killed = set(result.a_generators) | set(result.b_generators)
    letters = []
    for name, sign in word:
        if name in f_set:
            letters.append((name, sign))
        elif name not in killed:
            raise UnknownGeneratorError(f"unknown generator {name!r}")
    return reduce_group_word(letters)


def certify(result: PushoutResult) -> Certificate:
    """Certificates obtained from the retraction onto the free part.

    Verifies mechanically that the retraction kills every relator, then
    witnesses nontriviality (two or more base points) and nonabelianness
    (three or more) by f-generators and their commutator.
    """
    for relator, origin in zip(result.presentation.relators, result.relator_provenance):
        image = retraction_rho(result, relator)
        if image:
            raise CertificationError(
                f"retraction does not kill relator with provenance {origin!r}"
            )
    f = result.f_generators
    if not f:
        return Certificate("none")
    witness: GroupWord = ((f[0], 1),)
    if len(f) >= 2:
        commutator: GroupWord = ((f[0], 1), (f[1], 1), (f[0], -1), (f[1], -1))
        return Certificate("nonabelian", (witness, commutator))
    return Certificate("nontrivial", (witness,))
