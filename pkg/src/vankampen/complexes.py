"""Finite 2-dimensional regular cell complexes and their groupoid presentations.

Cells are addressed by (kind, id) pairs with kind in {"v", "e", "f"}.
Two complement notions coexist deliberately:

* ``carve`` keeps the cells whose closure avoids a removed closed
  subcomplex; the result is again a closed subcomplex, suitable for
  edge-path fundamental groupoids.
* ``complement_components`` partitions the open complement (every cell not
  in the removed set) under face-incidence adjacency; this is the notion
  under which separation, boundaries, and the Jordan statements are exact.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    ComponentError,
    GenerationError,
    MembershipError,
    PresentationError,
    ShapeError,
    UnknownObjectError,
)
from .groupoids import Arrow, GroupoidPresentation, Word

VERTEX = "v"
EDGE = "e"
FACE = "f"

Cell = tuple[str, str]


@dataclass(frozen=True)
class Face:
    """A 2-cell with its boundary loop written as an edge word."""

    id: str
    boundary: Word


@dataclass(frozen=True)
class Subcomplex:
    """A subset of the cells of some complex, indexed by identifier."""

    vertices: frozenset[str] = frozenset()
    edges: frozenset[str] = frozenset()
    faces: frozenset[str] = frozenset()

    @classmethod
    def from_cells(cls, cells: Iterable[Cell]) -> "Subcomplex":
        vertices, edges, faces = set(), set(), set()
        for kind, name in cells:
            if kind == VERTEX:
                vertices.add(name)
            elif kind == EDGE:
                edges.add(name)
            elif kind == FACE:
                faces.add(name)
            else:
                raise PresentationError(f"unknown cell kind {kind!r}")
        return cls(frozenset(vertices), frozenset(edges), frozenset(faces))

    def cells(self) -> frozenset[Cell]:
        return frozenset(
            {(VERTEX, v) for v in self.vertices}
            | {(EDGE, e) for e in self.edges}
            | {(FACE, f) for f in self.faces}
        )

    def union(self, other: "Subcomplex") -> "Subcomplex":
        return Subcomplex(
            self.vertices | other.vertices,
            self.edges | other.edges,
            self.faces | other.faces,
        )

    def intersection(self, other: "Subcomplex") -> "Subcomplex":
        return Subcomplex(
            self.vertices & other.vertices,
            self.edges & other.edges,
            self.faces & other.faces,
        )

    def is_disjoint(self, other: "Subcomplex") -> bool:
        return (
            not (self.vertices & other.vertices)
            and not (self.edges & other.edges)
            and not (self.faces & other.faces)
        )

    @property
    def size(self) -> int:
        return len(self.vertices) + len(self.edges) + len(self.faces)

    @property
    def is_empty(self) -> bool:
        return self.size == 0


@dataclass(frozen=True)
class CellComplex:
    """Vertices, directed edges, and faces with boundary loops."""

    vertices: tuple[str, ...]
    edges: tuple[Arrow, ...]
    faces: tuple[Face, ...] = ()

    def __post_init__(self):
        presentation = GroupoidPresentation(
            self.vertices, self.edges, tuple(f.boundary for f in self.faces)
        )
        face_ids = set()
        for f in self.faces:
            if f.id in face_ids:
                raise PresentationError(f"duplicate face id {f.id!r}")
            face_ids.add(f.id)
        boundary_cells: dict[str, tuple[frozenset[str], frozenset[str]]] = {}
        for f in self.faces:
            edges = frozenset(name for name, _ in f.boundary.letters)
            vertices = {f.boundary.start}
            at = f.boundary.start
            for name, sign in f.boundary.letters:
                arrow = presentation.arrow(name)
                at = arrow.tgt if sign == 1 else arrow.src
                vertices.add(at)
            boundary_cells[f.id] = (edges, frozenset(vertices))
        object.__setattr__(self, "_presentation", presentation)
        object.__setattr__(self, "_face_boundary", boundary_cells)
        object.__setattr__(self, "_edge_by_id", {a.id: a for a in self.edges})
        object.__setattr__(self, "_face_by_id", {f.id: f for f in self.faces})
        object.__setattr__(self, "_vertex_set", frozenset(self.vertices))

    # -- basic queries -----------------------------------------------------

    @property
    def presentation(self) -> GroupoidPresentation:
        """Edge-path groupoid presentation: arrows are edges, relations are
        face boundaries, on all vertices."""
        return self._presentation

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def edge(self, edge_id: str) -> Arrow:
        try:
            return self._edge_by_id[edge_id]
        except KeyError:
            raise UnknownObjectError(f"unknown edge {edge_id!r}") from None

    def face(self, face_id: str) -> Face:
        try:
            return self._face_by_id[face_id]
        except KeyError:
            raise UnknownObjectError(f"unknown face {face_id!r}") from None

    def has_vertex(self, vertex: str) -> bool:
        return vertex in self._vertex_set

    def all_cells(self) -> frozenset[Cell]:
        return frozenset(
            {(VERTEX, v) for v in self.vertices}
            | {(EDGE, a.id) for a in self.edges}
            | {(FACE, f.id) for f in self.faces}
        )

    def full_subcomplex(self) -> Subcomplex:
        return Subcomplex.from_cells(self.all_cells())

    def contains(self, sub: Subcomplex) -> bool:
        return (
            sub.vertices <= self._vertex_set
            and sub.edges <= set(self._edge_by_id)
            and sub.faces <= set(self._face_by_id)
        )

    # -- closure and closedness --------------------------------------------

    def closure_cells(self, cells: Iterable[Cell]) -> set[Cell]:
        out: set[Cell] = set()
        for cell in cells:
            kind, name = cell
            out.add(cell)
            if kind == EDGE:
                arrow = self.edge(name)
                out.add((VERTEX, arrow.src))
                out.add((VERTEX, arrow.tgt))
            elif kind == FACE:
                edges, vertices = self._face_boundary[name]
                out.update((EDGE, e) for e in edges)
                out.update((VERTEX, v) for v in vertices)
            elif kind == VERTEX:
                if name not in self._vertex_set:
                    raise UnknownObjectError(f"unknown vertex {name!r}")
        return out

    def closure(self, sub: Subcomplex) -> Subcomplex:
        return Subcomplex.from_cells(self.closure_cells(sub.cells()))

    def is_closed(self, sub: Subcomplex) -> bool:
        return self.closure_cells(sub.cells()) <= sub.cells()

    # -- restriction and carving --------------------------------------------

    def restrict(self, sub: Subcomplex) -> "CellComplex":
        """The subcomplex as a complex of its own; requires a closed input."""
        if not self.contains(sub):
            raise UnknownObjectError("subcomplex references cells outside the complex")
        if not self.is_closed(sub):
            raise ShapeError("cannot restrict to a non-closed subcomplex")
        return CellComplex(
            tuple(v for v in self.vertices if v in sub.vertices),
            tuple(a for a in self.edges if a.id in sub.edges),
            tuple(f for f in self.faces if f.id in sub.faces),
        )

    def carve(self, removed: Subcomplex) -> Subcomplex:
        """Cells whose closure avoids the removed closed subcomplex.

        The result is closed again, so it supports edge-path presentations.
        """
        keep_v = {v for v in self.vertices if v not in removed.vertices}
        keep_e = set()
        for a in self.edges:
            if a.id not in removed.edges and a.src in keep_v and a.tgt in keep_v:
                keep_e.add(a.id)
        keep_f = set()
        for f in self.faces:
            if f.id in removed.faces:
                continue
            edges, vertices = self._face_boundary[f.id]
            if edges <= keep_e and vertices <= keep_v:
                keep_f.add(f.id)
        return Subcomplex(frozenset(keep_v), frozenset(keep_e), frozenset(keep_f))


@dataclass(frozen=True)
class ComponentPartition:
    """Disjoint connected parts covering a retained cell set."""

    parts: tuple[frozenset[Cell], ...]

    def __post_init__(self):
        index: dict[Cell, int] = {}
        for k, part in enumerate(self.parts):
            for cell in part:
                if cell in index:
                    raise PresentationError(f"cell {cell!r} appears in two parts")
                index[cell] = k
        object.__setattr__(self, "_index", index)

    def part_of(self, cell: Cell) -> int:
        try:
            return self._index[cell]
        except KeyError:
            raise MembershipError(f"cell {cell!r} is not in any part") from None

    def __len__(self) -> int:
        return len(self.parts)


class UnionFind:
    """Union-find with path compression over arbitrary hashable items."""

    def __init__(self, items: Iterable):
        self.parent = {item: item for item in items}

    def find(self, item):
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while item != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def partition_cells(complex_: CellComplex, cells: Iterable[Cell]) -> ComponentPartition:
    """Connectivity partition of ``cells`` under face-incidence adjacency.

    Two retained cells are adjacent iff one lies in the boundary of the
    other; this is the cell-complex analogue of topological components and
    sidesteps the pixel 4/8-connectivity paradox.
    """
    retained = set(cells)
    uf = UnionFind(retained)
    for a in complex_.edges:
        cell = (EDGE, a.id)
        if cell not in retained:
            continue
        for v in (a.src, a.tgt):
            if (VERTEX, v) in retained:
                uf.union(cell, (VERTEX, v))
    for f in complex_.faces:
        cell = (FACE, f.id)
        if cell not in retained:
            continue
        edges, vertices = complex_._face_boundary[f.id]
        for e in edges:
            if (EDGE, e) in retained:
                uf.union(cell, (EDGE, e))
        for v in vertices:
            if (VERTEX, v) in retained:
                uf.union(cell, (VERTEX, v))
    groups: dict[Cell, set[Cell]] = {}
    for cell in retained:
        groups.setdefault(uf.find(cell), set()).add(cell)
    parts = sorted((frozenset(g) for g in groups.values()), key=min)
    return ComponentPartition(tuple(parts))


def complement_components(complex_: CellComplex, removed: Subcomplex) -> ComponentPartition:
    """Components of the open complement of a closed subcomplex."""
    if not complex_.contains(removed):
        raise UnknownObjectError("subcomplex references cells outside the complex")
    if not complex_.is_closed(removed):
        raise ShapeError("complement requires a closed subcomplex")
    retained = complex_.all_cells() - removed.cells()
    return partition_cells(complex_, retained)


def component_boundary(complex_: CellComplex, part: Iterable[Cell]) -> Subcomplex:
    """closure(part) minus part."""
    part = set(part)
    return Subcomplex.from_cells(complex_.closure_cells(part) - part)


@dataclass(frozen=True)
class FundamentalGroupoid:
    """An edge-path presentation together with its marked base points."""

    presentation: GroupoidPresentation
    base_points: tuple[str, ...]

    def object_group(self, basepoint: str):
        return self.presentation.object_group(basepoint)


def fundamental_groupoid(complex_: CellComplex, base_points: Iterable[str]) -> FundamentalGroupoid:
    """Fundamental groupoid presentation on a base-point set.

    The presentation lives on all vertices; base points are a marked subset
    that must meet every connected component.
    """
    marked = tuple(sorted(set(base_points)))
    if not marked:
        raise UnknownObjectError("the base-point set is empty")
    for p in marked:
        if not complex_.has_vertex(p):
            raise UnknownObjectError(f"base point {p!r} is not a vertex")
    presentation = complex_.presentation
    marked_set = set(marked)
    for component in presentation.connected_components():
        if not (component & marked_set):
            raise ComponentError(
                "base points miss a connected component of the complex"
            )
    return FundamentalGroupoid(presentation, marked)


@dataclass(frozen=True)
class CoverData:
    """Carved cover U = X - D, V = X - E, W = U ∩ V with chosen base points.

    ``base_points`` holds exactly one vertex per component of W, the
    lexicographically least one.
    """

    u: Subcomplex
    v: Subcomplex
    w: Subcomplex
    base_points: tuple[str, ...]
    w_partition: ComponentPartition


def carve_cover(
    complex_: CellComplex,
    d: Subcomplex,
    e: Subcomplex,
    *,
    require_disjoint: bool = False,
) -> CoverData:
    """Carve the cover obtained by deleting two closed subcomplexes.

    With ``require_disjoint=True`` (the Phragmen-Brouwer use) overlapping
    removed sets are rejected.
    """
    for name, sub in (("D", d), ("E", e)):
        if not complex_.contains(sub):
            raise UnknownObjectError(f"{name} references cells outside the complex")
        if not complex_.is_closed(sub):
            raise ShapeError(f"{name} is not closed")
    if require_disjoint and not d.is_disjoint(e):
        raise ShapeError("D and E must be disjoint")
    u = complex_.carve(d)
    v = complex_.carve(e)
    w = complex_.carve(d.union(e))
    assert w == u.intersection(v)
    w_partition = partition_cells(complex_, w.cells())
    base_points = []
    for part in w_partition.parts:
        vertices = sorted(name for kind, name in part if kind == VERTEX)
        if not vertices:
            raise ComponentError(
                "a component of the carved intersection has no vertex to mark"
            )
        base_points.append(vertices[0])
    return CoverData(u, v, w, tuple(sorted(base_points)), w_partition)


# -- model builders ---------------------------------------------------------


def _pad(n: int) -> int:
    return len(str(n))


def _grid_names(n: int):
    w = _pad(n)

    def v(i, j):
        return f"v{i:0{w}d}_{j:0{w}d}"

    def h(i, j):
        return f"h{i:0{w}d}_{j:0{w}d}"

    def u(i, j):
        return f"u{i:0{w}d}_{j:0{w}d}"

    return v, h, u


def _grid_parts(n: int):
    v, h, u = _grid_names(n)
    vertices = tuple(v(i, j) for j in range(n + 1) for i in range(n + 1))
    edges = []
    for j in range(n + 1):
        for i in range(n):
            edges.append(Arrow(h(i, j), v(i, j), v(i + 1, j)))
    for j in range(n):
        for i in range(n + 1):
            edges.append(Arrow(u(i, j), v(i, j), v(i, j + 1)))
    faces = []
    for j in range(n):
        for i in range(n):
            boundary = Word(
                v(i, j),
                (
                    (h(i, j), 1),
                    (u(i + 1, j), 1),
                    (h(i, j + 1), -1),
                    (u(i, j), -1),
                ),
            )
            faces.append(Face(f"f{i:0{_pad(n)}d}_{j:0{_pad(n)}d}", boundary))
    return vertices, tuple(edges), faces


def _perimeter_word(n: int) -> Word:
    v, h, u = _grid_names(n)
    letters = []
    letters += [(h(i, 0), 1) for i in range(n)]
    letters += [(u(n, j), 1) for j in range(n)]
    letters += [(h(i, n), -1) for i in reversed(range(n))]
    letters += [(u(0, j), -1) for j in reversed(range(n))]
    return Word(v(0, 0), tuple(letters))


def grid_sphere(n: int) -> CellComplex:
    """An n-by-n square grid plus one outer face glued along the perimeter."""
    vertices, edges, faces = _grid_parts(n)
    faces = faces + [Face("f_outer", _perimeter_word(n))]
    complex_ = CellComplex(vertices, edges, tuple(faces))
    assert complex_.euler_characteristic == 2
    return complex_


def disk(n: int) -> CellComplex:
    vertices, edges, faces = _grid_parts(n)
    complex_ = CellComplex(vertices, edges, tuple(faces))
    assert complex_.euler_characteristic == 1
    return complex_


def annulus(n: int) -> CellComplex:
    """The grid disk with one central face removed."""
    vertices, edges, faces = _grid_parts(n)
    w = _pad(n)
    mid = (n - 1) // 2
    removed = f"f{mid:0{w}d}_{mid:0{w}d}"
    faces = [f for f in faces if f.id != removed]
    complex_ = CellComplex(vertices, edges, tuple(faces))
    assert complex_.euler_characteristic == 0
    return complex_


def cycle(n: int) -> CellComplex:
    w = _pad(n - 1) if n > 1 else 1
    vertices = tuple(f"c{i:0{w}d}" for i in range(n))
    edges = tuple(
        Arrow(f"e{i:0{w}d}", vertices[i], vertices[(i + 1) % n]) for i in range(n)
    )
    complex_ = CellComplex(vertices, edges)
    assert complex_.euler_characteristic == 0
    return complex_


def interval(n: int) -> CellComplex:
    w = _pad(n)
    vertices = tuple(f"t{i:0{w}d}" for i in range(n + 1))
    edges = tuple(Arrow(f"s{i:0{w}d}", vertices[i], vertices[i + 1]) for i in range(n))
    complex_ = CellComplex(vertices, edges)
    assert complex_.euler_characteristic == 1
    return complex_


MODELS = {
    "grid_sphere": grid_sphere,
    "disk": disk,
    "annulus": annulus,
    "cycle": cycle,
    "interval": interval,
}


def build_space(model: str, n: int) -> CellComplex:
    """Build one of the named desk-scale models at the given size."""
    if model not in MODELS:
        raise ValueError(f"unknown model {model!r}; choose from {sorted(MODELS)}")
    if n < 1:
        raise ValueError("size must be at least 1")
    return MODELS[model](n)


# -- subdivision ------------------------------------------------------------


def _half_letters(edge_id: str, sign: int) -> tuple[tuple[str, int], tuple[str, int]]:
    if sign == 1:
        return ((f"{edge_id}~0", 1), (f"{edge_id}~1", 1))
    return ((f"{edge_id}~1", -1), (f"{edge_id}~0", -1))


def subdivide(complex_: CellComplex) -> CellComplex:
    """One barycentric-style subdivision: midpoints on edges, cones on faces.

    Each edge gains a midpoint and splits in two; each face gains a centre
    vertex, spokes to every boundary point, and is replaced by triangles.
    The id scheme (``e~m``, ``e~0``, ``e~1``, ``f~c``, ``f~s<k>``,
    ``f~t<k>``) is what ``subdivide_subcomplex`` relies on.
    """
    vertices = list(complex_.vertices)
    vertices += [f"{a.id}~m" for a in complex_.edges]
    vertices += [f"{f.id}~c" for f in complex_.faces]
    edges: list[Arrow] = []
    for a in complex_.edges:
        mid = f"{a.id}~m"
        edges.append(Arrow(f"{a.id}~0", a.src, mid))
        edges.append(Arrow(f"{a.id}~1", mid, a.tgt))
    faces: list[Face] = []
    for f in complex_.faces:
        centre = f"{f.id}~c"
        points: list[str] = [f.boundary.start]
        steps: list[tuple[str, int]] = []
        at = f.boundary.start
        for name, sign in f.boundary.letters:
            arrow = complex_.edge(name)
            at = arrow.tgt if sign == 1 else arrow.src
            first, second = _half_letters(name, sign)
            points.append(f"{name}~m")
            points.append(at)
            steps.append(first)
            steps.append(second)
        points.pop()  # the walk returns to the start
        count = len(points)
        for k in range(count):
            edges.append(Arrow(f"{f.id}~s{k}", centre, points[k]))
        for k in range(count):
            boundary = Word(
                centre,
                ((f"{f.id}~s{k}", 1), steps[k], (f"{f.id}~s{(k + 1) % count}", -1)),
            )
            faces.append(Face(f"{f.id}~t{k}", boundary))
    return CellComplex(tuple(vertices), tuple(edges), tuple(faces))


def subdivide_subcomplex(complex_: CellComplex, sub: Subcomplex) -> Subcomplex:
    """Image of a subcomplex of ``complex_`` inside ``subdivide(complex_)``."""
    if not complex_.contains(sub):
        raise UnknownObjectError("subcomplex references cells outside the complex")
    vertices = set(sub.vertices)
    edges: set[str] = set()
    faces: set[str] = set()
    for e in sub.edges:
        vertices.add(f"{e}~m")
        edges.add(f"{e}~0")
        edges.add(f"{e}~1")
    for f in sub.faces:
        vertices.add(f"{f}~c")
        boundary = complex_.face(f).boundary
        count = 2 * len(boundary.letters)
        for k in range(count):
            edges.add(f"{f}~s{k}")
            faces.add(f"{f}~t{k}")
    return Subcomplex(frozenset(vertices), frozenset(edges), frozenset(faces))


# -- random simple cycles -----------------------------------------------------


def random_simple_cycle(
    complex_: CellComplex,
    seed: int,
    min_len: int = 4,
    max_len: int | None = None,
    attempts: int = 2000,
) -> Subcomplex:
    """A seeded self-avoiding-walk cycle in the 1-skeleton.

    Deterministic in the seed. The walk restarts on dead ends or when it
    overruns ``max_len``; the returned subcomplex is closed and every one of
    its vertices has degree exactly two within it.
    """
    if min_len < 3:
        raise ValueError("a simple cycle needs at least three edges")
    if max_len is not None and max_len < min_len:
        raise ValueError("max_len must be at least min_len")
    rng = random.Random(seed)
    adjacency: dict[str, list[tuple[str, str]]] = {v: [] for v in complex_.vertices}
    for a in sorted(complex_.edges, key=lambda a: a.id):
        adjacency[a.src].append((a.id, a.tgt))
        if a.tgt != a.src:
            adjacency[a.tgt].append((a.id, a.src))
    vertices = sorted(complex_.vertices)
    for _ in range(attempts):
        start = rng.choice(vertices)
        path_vertices = [start]
        path_edges: list[str] = []
        visited = {start}
        while True:
            length = len(path_edges)
            if max_len is not None and length >= max_len:
                break  # cannot close in time; restart
            current = path_vertices[-1]
            closing = [
                eid
                for eid, other in adjacency[current]
                if other == start and length + 1 >= min_len and length >= 2
            ]
            extensions = [
                (eid, other)
                for eid, other in adjacency[current]
                if other not in visited
            ]
            must_close = max_len is not None and length + 1 == max_len
            if closing and (must_close or not extensions or rng.random() < 0.25):
                edge_ids = frozenset(path_edges + [closing[0]])
                return Subcomplex(frozenset(path_vertices), edge_ids)
            if not extensions or must_close:
                break
            eid, other = rng.choice(extensions)
            path_edges.append(eid)
            path_vertices.append(other)
            visited.add(other)
    raise GenerationError(
        f"no simple cycle with length in [{min_len}, {max_len}] found in {attempts} attempts"
    )
