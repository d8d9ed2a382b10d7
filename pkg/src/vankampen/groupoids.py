"""Finitely presented groupoids: graphs, words, trees, object groups.

Words compose left to right (diagrammatically): in ``w = u · v`` the end
object of ``u`` must equal the start object of ``v``. Any reader used to
right-to-left juxtaposition must reverse words when comparing by hand.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    ComponentError,
    CompositionError,
    PresentationError,
    RelationShapeError,
    UnknownObjectError,
)
from .groups import GroupPresentation, GroupWord, Letter, reduce_group_word

ObjectId = str


@dataclass(frozen=True)
class Arrow:
    """A generating arrow between two objects."""

    id: str
    src: ObjectId
    tgt: ObjectId


@dataclass(frozen=True)
class Word:
    """A composable sequence of signed arrow letters starting at ``start``.

    The empty word is the identity at ``start``; the end object is derived
    by walking the letters against a presentation's arrow table.
    """

    start: ObjectId
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for name, sign in self.letters:
            if sign not in (1, -1):
                raise PresentationError(f"invalid sign {sign!r} for arrow {name!r}")


@dataclass(frozen=True)
class SpanningTreeData:
    """Chosen tree words from a basepoint to each object of its component.

    ``tau[basepoint]`` is the empty word; every other ``tau[y]`` is a word in
    tree arrows only, with no arrow repeated.
    """

    basepoint: ObjectId
    tau: Mapping[ObjectId, Word]
    tree_arrows: frozenset[str]


@dataclass(frozen=True)
class GroupoidPresentation:
    """Objects, generating arrows, and loop-word relations.

    Relations are stored exactly as authored; reduction happens on demand.
    Instances are immutable and safe to share between threads.
    """

    objects: tuple[ObjectId, ...]
    arrows: tuple[Arrow, ...] = ()
    relations: tuple[Word, ...] = ()

    def __post_init__(self):
        object_set = set()
        for o in self.objects:
            if o in object_set:
                raise PresentationError(f"duplicate object {o!r}")
            object_set.add(o)
        by_id: dict[str, Arrow] = {}
        for a in self.arrows:
            if a.id in by_id:
                raise PresentationError(f"duplicate arrow id {a.id!r}")
            if a.src not in object_set or a.tgt not in object_set:
                raise PresentationError(f"arrow {a.id!r} has endpoints outside the object set")
            by_id[a.id] = a
        object.__setattr__(self, "_object_set", frozenset(object_set))
        object.__setattr__(self, "_arrows_by_id", by_id)
        for k, rel in enumerate(self.relations):
            end = self.end_of(rel)
            if end != rel.start:
                raise RelationShapeError(
                    f"relation {k} is not a loop: runs {rel.start!r} -> {end!r}"
                )

    # -- word algebra -----------------------------------------------------

    def has_object(self, obj: ObjectId) -> bool:
        return obj in self._object_set

    def arrow(self, arrow_id: str) -> Arrow:
        try:
            return self._arrows_by_id[arrow_id]
        except KeyError:
            raise UnknownObjectError(f"unknown arrow {arrow_id!r}") from None

    def end_of(self, word: Word) -> ObjectId:
        """End object of a word; raises CompositionError at the first bad index."""
        if word.start not in self._object_set:
            raise UnknownObjectError(f"unknown object {word.start!r}")
        at = word.start
        for idx, (name, sign) in enumerate(word.letters):
            arrow = self._arrows_by_id.get(name)
            if arrow is None:
                raise CompositionError(idx, f"letter {idx} references unknown arrow {name!r}")
            src, tgt = (arrow.src, arrow.tgt) if sign == 1 else (arrow.tgt, arrow.src)
            if src != at:
                raise CompositionError(
                    idx,
                    f"letter {idx} ({name!r}, {sign:+d}) starts at {src!r} but the word is at {at!r}",
                )
            at = tgt
        return at

    def is_loop(self, word: Word) -> bool:
        return self.end_of(word) == word.start

    def reduce_word(self, word: Word) -> Word:
        """Cancel all adjacent inverse pairs; endpoints are preserved."""
        self.end_of(word)
        return Word(word.start, reduce_group_word(word.letters))

    def inverse_word(self, word: Word) -> Word:
        end = self.end_of(word)
        return Word(end, tuple((name, -sign) for name, sign in reversed(word.letters)))

    def concat(self, first: Word, second: Word) -> Word:
        if self.end_of(first) != second.start:
            raise CompositionError(
                len(first.letters),
                f"cannot compose: first word ends at {self.end_of(first)!r}, "
                f"second starts at {second.start!r}",
            )
        return Word(first.start, first.letters + second.letters)

    # -- connectivity -----------------------------------------------------

    def _incidence(self) -> dict[ObjectId, list[tuple[int, Arrow, int]]]:
        inc: dict[ObjectId, list[tuple[int, Arrow, int]]] = {o: [] for o in self.objects}
        for k, a in enumerate(self.arrows):
            inc[a.src].append((k, a, 1))
            if a.tgt != a.src:
                inc[a.tgt].append((k, a, -1))
        return inc

    def connected_components(self) -> tuple[frozenset[ObjectId], ...]:
        """Partition of the objects by undirected arrow connectivity."""
        inc = self._incidence()
        seen: set[ObjectId] = set()
        parts = []
        for o in self.objects:
            if o in seen:
                continue
            comp = {o}
            queue = deque([o])
            while queue:
                x = queue.popleft()
                for _, a, sign in inc[x]:
                    y = a.tgt if sign == 1 else a.src
                    if y not in comp:
                        comp.add(y)
                        queue.append(y)
            seen |= comp
            parts.append(frozenset(comp))
        return tuple(parts)

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    def spanning_tree(self, basepoint: ObjectId) -> SpanningTreeData:
        """Breadth-first spanning tree of the basepoint's component.

        Neighbours are explored in ascending arrow-index order and the first
        arrival wins, so the result is deterministic.
        """
        if basepoint not in self._object_set:
            raise UnknownObjectError(f"unknown object {basepoint!r}")
        inc = self._incidence()
        tau: dict[ObjectId, Word] = {basepoint: Word(basepoint, ())}
        tree_arrows: list[str] = []
        queue = deque([basepoint])
        while queue:
            x = queue.popleft()
            for _, a, sign in inc[x]:
                y = a.tgt if sign == 1 else a.src
                if y not in tau:
                    tau[y] = Word(basepoint, tau[x].letters + ((a.id, sign),))
                    tree_arrows.append(a.id)
                    queue.append(y)
        return SpanningTreeData(basepoint, tau, frozenset(tree_arrows))

    # -- retraction to an object group ------------------------------------

    def retract(self, tree: SpanningTreeData, word: Word) -> Word:
        """Image of a word under the tree retraction: a loop at the basepoint.

        For ``word : x -> y`` this is ``reduce(tau_x · word · tau_y^{-1})``.
        """
        end = self.end_of(word)
        if word.start not in tree.tau or end not in tree.tau:
            raise ComponentError(
                f"word endpoints {word.start!r} -> {end!r} lie outside the tree component"
            )
        tau_x = tree.tau[word.start].letters
        tau_y_inv = tuple(
            (name, -sign) for name, sign in reversed(tree.tau[end].letters)
        )
        return self.reduce_word(Word(tree.basepoint, tau_x + word.letters + tau_y_inv))

    def retract_to_generators(self, tree: SpanningTreeData, word: Word) -> GroupWord:
        """Image of a word in the object group, written over non-tree arrows.

        Tree arrows retract to identities, so conjugating by tree words does
        not change this image; deleting tree letters directly is equivalent
        to rewriting the full retraction.
        """
        end = self.end_of(word)
        if word.start not in tree.tau or end not in tree.tau:
            raise ComponentError(
                f"word endpoints {word.start!r} -> {end!r} lie outside the tree component"
            )
        return reduce_group_word(
            (name, sign) for name, sign in word.letters if name not in tree.tree_arrows
        )

    def object_group_from_tree(self, tree: SpanningTreeData) -> GroupPresentation:
        """Presentation of the object group at the tree's basepoint.

        One generator per non-tree arrow of the component, named after the
        arrow; one relator per relation based in the component, rewritten
        over those generators.
        """
        component = set(tree.tau)
        generators = tuple(
            a.id
            for a in self.arrows
            if a.id not in tree.tree_arrows and a.src in component
        )
        relators = tuple(
            self.retract_to_generators(tree, rel)
            for rel in self.relations
            if rel.start in component
        )
        return GroupPresentation(generators, relators)

    def object_group(self, basepoint: ObjectId) -> GroupPresentation:
        return self.object_group_from_tree(self.spanning_tree(basepoint))


@dataclass(frozen=True)
class RelationFamily:
    """Per-object families of loop words to quotient by."""

    loops: tuple[tuple[ObjectId, tuple[Word, ...]], ...]

    @classmethod
    def from_dict(cls, loops: Mapping[ObjectId, Iterable[Word]]) -> "RelationFamily":
        items = []
        for obj, words in loops.items():
            words = tuple(words)
            for w in words:
                if w.start != obj:
                    raise RelationShapeError(
                        f"relation listed under {obj!r} starts at {w.start!r}"
                    )
            items.append((obj, words))
        return cls(tuple(items))

    def all_loops(self) -> tuple[Word, ...]:
        return tuple(w for _, words in self.loops for w in words)


def quotient_by_relations(
    groupoid: GroupoidPresentation, family: RelationFamily
) -> GroupoidPresentation:
    """Quotient by extra loop relations; objects and arrows are unchanged."""
    for obj, words in family.loops:
        if not groupoid.has_object(obj):
            raise UnknownObjectError(f"relation family references unknown object {obj!r}")
        for w in words:
            if groupoid.end_of(w) != w.start:
                raise RelationShapeError(f"relation at {obj!r} is not a loop")
    return GroupoidPresentation(
        groupoid.objects, groupoid.arrows, groupoid.relations + family.all_loops()
    )


def _rename_word(word: Word, rename: Mapping[str, str]) -> Word:
    return Word(word.start, tuple((rename[name], sign) for name, sign in word.letters))


def free_product_with_maps(
    g: GroupoidPresentation,
    h: GroupoidPresentation,
    tags: tuple[str, str] = ("1", "2"),
) -> tuple[GroupoidPresentation, dict[str, str], dict[str, str]]:
    """Free product together with the arrow renaming maps for each factor.

    Shared objects are glued as identities. Colliding arrow ids are renamed
    on both sides by suffixing the owning factor's tag.
    """
    g_ids = {a.id for a in g.arrows}
    h_ids = {a.id for a in h.arrows}
    collisions = g_ids & h_ids
    taken = set(g_ids | h_ids)

    def build_map(arrows: tuple[Arrow, ...], tag: str) -> dict[str, str]:
        mapping = {}
        for a in arrows:
            if a.id in collisions:
                name = f"{a.id}_{tag}"
                while name in taken:
                    name += "'"
                taken.add(name)
                mapping[a.id] = name
            else:
                mapping[a.id] = a.id
        return mapping

    g_map = build_map(g.arrows, tags[0])
    h_map = build_map(h.arrows, tags[1])
    g_objects = set(g.objects)
    objects = g.objects + tuple(o for o in h.objects if o not in g_objects)
    arrows = tuple(Arrow(g_map[a.id], a.src, a.tgt) for a in g.arrows) + tuple(
        Arrow(h_map[a.id], a.src, a.tgt) for a in h.arrows
    )
    relations = tuple(_rename_word(w, g_map) for w in g.relations) + tuple(
        _rename_word(w, h_map) for w in h.relations
    )
    return GroupoidPresentation(objects, arrows, relations), g_map, h_map


def free_product(
    g: GroupoidPresentation,
    h: GroupoidPresentation,
    tags: tuple[str, str] = ("1", "2"),
) -> GroupoidPresentation:
    """Free product of two presented groupoids over their shared objects."""
    product, _, _ = free_product_with_maps(g, h, tags)
    return product
