"""Group presentations and the decidable analyses used on them.

Everything here works over plain Python integers, so entries may grow
without overflow during normal-form computations.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import PresentationError, UnknownGeneratorError

# A letter is a (generator name, sign) pair with sign in {+1, -1}.
Letter = tuple[str, int]
GroupWord = tuple[Letter, ...]

CERTIFIED_NO_Z_RETRACT = "certified_no_Z_retract"
INCONCLUSIVE = "inconclusive"


def reduce_group_word(letters: Iterable[Letter]) -> GroupWord:
    """Freely reduce a word: cancel adjacent x x^-1 pairs to a fixed point."""
    stack: list[Letter] = []
    for name, sign in letters:
        if sign not in (1, -1):
            raise PresentationError(f"invalid sign {sign!r} for generator {name!r}")
        if stack and stack[-1][0] == name and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((name, sign))
    return tuple(stack)


def invert_group_word(letters: Sequence[Letter]) -> GroupWord:
    return tuple((name, -sign) for name, sign in reversed(letters))


def format_group_word(letters: Sequence[Letter]) -> str:
    """Render a word with exponent collapsing, e.g. ``a^3·b^-1``."""
    if not letters:
        return "1"
    runs: list[tuple[str, int]] = []
    for name, sign in letters:
        if runs and runs[-1][0] == name and (runs[-1][1] > 0) == (sign > 0):
            runs[-1] = (name, runs[-1][1] + sign)
        else:
            runs.append((name, sign))
    parts = [name if exp == 1 else f"{name}^{exp}" for name, exp in runs]
    return "·".join(parts)


@dataclass(frozen=True)
class GroupPresentation:
    """A group given by named generators and relator words."""

    generators: tuple[str, ...]
    relators: tuple[GroupWord, ...]

    def __post_init__(self):
        seen = set()
        for g in self.generators:
            if g in seen:
                raise PresentationError(f"duplicate generator {g!r}")
            seen.add(g)
        for k, rel in enumerate(self.relators):
            for name, sign in rel:
                if name not in seen:
                    raise UnknownGeneratorError(
                        f"relator {k} uses undeclared generator {name!r}"
                    )
                if sign not in (1, -1):
                    raise PresentationError(f"relator {k} has invalid sign {sign!r}")

    def __str__(self) -> str:
        gens = ", ".join(self.generators)
        rels = ", ".join(format_group_word(r) for r in self.relators)
        return f"⟨{gens} | {rels}⟩"


def free_presentation(names: Iterable[str]) -> GroupPresentation:
    return GroupPresentation(tuple(names), ())


@dataclass(frozen=True)
class IntegerMatrix:
    """Integer matrix of relator exponent sums (rows) per generator (cols)."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise PresentationError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows:
            raise PresentationError("row count does not match entries")
        for row in self.entries:
            if len(row) != self.cols:
                raise PresentationError("ragged matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)


def _smith_diagonal(entries: Sequence[Sequence[int]], track_left: bool = False):
    """Diagonalize by unimodular row/column operations.

    Pivot rule: smallest nonzero absolute value in the remaining block,
    ties broken in row-major order, which makes the run deterministic.
    Returns (diagonal, left) where left is the accumulated row transform
    (or None when not tracked).
    """
    m = [list(map(int, row)) for row in entries]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    left = [[int(i == j) for j in range(nrows)] for i in range(nrows)] if track_left else None
    n = min(nrows, ncols)

    def swap_rows(i, k):
        m[i], m[k] = m[k], m[i]
        if left is not None:
            left[i], left[k] = left[k], left[i]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        if left is not None:
            left[i] = [-x for x in left[i]]

    def add_row(i, k, q):  # row_i += q * row_k
        mi, mk = m[i], m[k]
        for j in range(ncols):
            mi[j] += q * mk[j]
        if left is not None:
            li, lk = left[i], left[k]
            for j in range(nrows):
                li[j] += q * lk[j]

    def swap_cols(j, l):
        for row in m:
            row[j], row[l] = row[l], row[j]

    def add_col(j, l, q):  # col_j += q * col_l
        for row in m:
            row[j] += q * row[l]

    for s in range(n):
        best = None
        pr = pc = -1
        for i in range(s, nrows):
            for j in range(s, ncols):
                v = abs(m[i][j])
                if v and (best is None or v < best):
                    best, pr, pc = v, i, j
        if best is None:
            break  # remaining block is zero
        if pr != s:
            swap_rows(s, pr)
        if pc != s:
            swap_cols(s, pc)
        if m[s][s] < 0:
            negate_row(s)
        while True:
            clean = True
            for i in range(s + 1, nrows):
                if m[i][s]:
                    q = m[i][s] // m[s][s]
                    if q:
                        add_row(i, s, -q)
                    if m[i][s]:  # remainder became the new, smaller pivot
                        swap_rows(s, i)
                        clean = False
            if not clean:
                continue
            for j in range(s + 1, ncols):
                if m[s][j]:
                    q = m[s][j] // m[s][s]
                    if q:
                        add_col(j, s, -q)
                    if m[s][j]:
                        swap_cols(s, j)
                        clean = False
            if not clean:
                continue
            # row and column are clear; enforce that the pivot divides the rest
            d = m[s][s]
            culprit = None
            for i in range(s + 1, nrows):
                for j in range(s + 1, ncols):
                    if m[i][j] % d:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            add_row(s, culprit, 1)
    diag = [m[i][i] for i in range(n)]
    return diag, left


def smith_normal_form(matrix: IntegerMatrix | Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Invariant factors d_1 | d_2 | ... of an integer matrix, zeros last."""
    entries = matrix.entries if isinstance(matrix, IntegerMatrix) else matrix
    diag, _ = _smith_diagonal(entries)
    return tuple(diag)


def solvable_over_integers(a_rows: Sequence[Sequence[int]], b: Sequence[int]) -> bool:
    """Whether A·x = b has an integer solution x."""
    if len(a_rows) != len(b):
        raise PresentationError("right-hand side length does not match row count")
    diag, left = _smith_diagonal(a_rows, track_left=True)
    c = [sum(left[i][k] * b[k] for k in range(len(b))) for i in range(len(b))]
    for i, ci in enumerate(c):
        d = diag[i] if i < len(diag) else 0
        if d:
            if ci % d:
                return False
        elif ci:
            return False
    return True


def _unit_pivot_prepass(rows: list[dict[int, int]]):
    """Eliminate ±1 pivots greedily (minimum fill first) on a sparse matrix.

    Each elimination is a unimodular reduction that contributes one invariant
    factor equal to 1; the surviving rows need a dense normal form only for
    the (typically tiny) remainder. Mutates ``rows``; returns
    (count of eliminated unit pivots, surviving row dicts).
    """
    col_rows: dict[int, set[int]] = {}
    for ridx, row in enumerate(rows):
        for c in row:
            col_rows.setdefault(c, set()).add(ridx)
    alive = set(range(len(rows)))
    heap: list[tuple[int, int, int]] = []

    def score(r: int, c: int) -> int:
        return (len(rows[r]) - 1) * (len(col_rows.get(c, ())) - 1)

    def push_units(r: int):
        for c, v in rows[r].items():
            if v in (1, -1):
                heapq.heappush(heap, (score(r, c), r, c))

    for r in alive:
        push_units(r)

    eliminated = 0
    while heap:
        sc, r, c = heapq.heappop(heap)
        if r not in alive:
            continue
        v = rows[r].get(c)
        if v not in (1, -1):
            continue
        current = score(r, c)
        if sc != current:
            heapq.heappush(heap, (current, r, c))
            continue
        pivot_row = rows[r]
        for k in sorted(col_rows.get(c, ())):
            if k == r or k not in alive:
                continue
            coef = rows[k].get(c)
            if not coef:
                continue
            q = coef * v
            rk = rows[k]
            for cc, vv in pivot_row.items():
                nv = rk.get(cc, 0) - q * vv
                if nv:
                    if cc not in rk:
                        col_rows.setdefault(cc, set()).add(k)
                    rk[cc] = nv
                elif cc in rk:
                    del rk[cc]
                    col_rows[cc].discard(k)
            push_units(k)
        alive.discard(r)
        for cc in pivot_row:
            col_rows[cc].discard(r)
        rows[r] = {}
        eliminated += 1
    survivors = [rows[r] for r in sorted(alive) if rows[r]]
    return eliminated, survivors


@dataclass(frozen=True)
class AbelianInvariants:
    """Canonical form of a finitely generated abelian group."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise PresentationError("free rank must be non-negative")
        prev = None
        for t in self.torsion:
            if t < 2:
                raise PresentationError("torsion coefficients must be >= 2")
            if prev is not None and t % prev:
                raise PresentationError("torsion coefficients must form a divisibility chain")
            prev = t

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def exponent_matrix(presentation: GroupPresentation) -> IntegerMatrix:
    index = {g: i for i, g in enumerate(presentation.generators)}
    rows = []
    for rel in presentation.relators:
        row = [0] * len(index)
        for name, sign in rel:
            row[index[name]] += sign
        rows.append(tuple(row))
    return IntegerMatrix(len(rows), len(index), tuple(rows))


def abelianization(presentation: GroupPresentation) -> AbelianInvariants:
    """Abelian invariants of the presented group.

    A sparse unit-pivot prepass keeps the computation fast on the large,
    very sparse exponent matrices coming from cell complexes; the dense
    normal form finishes whatever survives.
    """
    index = {g: i for i, g in enumerate(presentation.generators)}
    rows: list[dict[int, int]] = []
    for rel in presentation.relators:
        d: dict[int, int] = {}
        for name, sign in rel:
            col = index[name]
            d[col] = d.get(col, 0) + sign
        row = {c: v for c, v in d.items() if v}
        if row:
            rows.append(row)
    ones, survivors = _unit_pivot_prepass(rows)
    if survivors:
        cols = sorted({c for row in survivors for c in row})
        cmap = {c: i for i, c in enumerate(cols)}
        dense = [[0] * len(cols) for _ in survivors]
        for i, row in enumerate(survivors):
            for c, v in row.items():
                dense[i][cmap[c]] = v
        diag, _ = _smith_diagonal(dense)
    else:
        diag = []
    nonzero = ones + sum(1 for d in diag if d)
    torsion = tuple(d for d in diag if d > 1)
    return AbelianInvariants(len(presentation.generators) - nonzero, torsion)


def no_z_retract_sufficient(presentation: GroupPresentation) -> str:
    """Sound one-sided test for the absence of an infinite cyclic retract.

    A retract of the group onto Z would force a Z direct summand of the
    abelianization, so free rank zero rules it out. The test never claims
    that a retract exists.
    """
    if abelianization(presentation).free_rank == 0:
        return CERTIFIED_NO_Z_RETRACT
    return INCONCLUSIVE


def _eliminate_generator(
    gens: list[str], relators: list[GroupWord], rel_idx: int, gen: str
) -> None:
    """Solve relator ``rel_idx`` for ``gen`` (single occurrence) and substitute."""
    rel = relators[rel_idx]
    pos = next(i for i, (name, _) in enumerate(rel) if name == gen)
    sign = rel[pos][1]
    prefix, suffix = rel[:pos], rel[pos + 1 :]
    # rel = prefix · gen^sign · suffix = 1  =>  gen^sign = prefix^-1 · suffix^-1
    solved = reduce_group_word(invert_group_word(prefix) + invert_group_word(suffix))
    replacement = solved if sign == 1 else invert_group_word(solved)
    inverse = invert_group_word(replacement)
    out: list[GroupWord] = []
    for i, other in enumerate(relators):
        if i == rel_idx:
            continue
        letters: list[Letter] = []
        for name, s in other:
            if name == gen:
                letters.extend(replacement if s == 1 else inverse)
            else:
                letters.append((name, s))
        out.append(reduce_group_word(letters))
    gens.remove(gen)
    relators[:] = out


def tietze_simplify(presentation: GroupPresentation, budget: int) -> GroupPresentation:
    """Apply up to ``budget`` sound simplification moves.

    Moves, scanned in order: freely reduce a relator, drop an empty relator,
    eliminate a generator that occurs exactly once in some relator. The
    abelian invariants are unchanged by every move.
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    gens = list(presentation.generators)
    relators = [tuple(r) for r in presentation.relators]
    steps = 0
    while steps < budget:
        move = None
        for i, rel in enumerate(relators):
            reduced = reduce_group_word(rel)
            if reduced != rel:
                move = ("reduce", i, reduced)
                break
        if move is None:
            for i, rel in enumerate(relators):
                if not rel:
                    move = ("drop", i, None)
                    break
        if move is None:
            for i, rel in enumerate(relators):
                counts: dict[str, int] = {}
                for name, _ in rel:
                    counts[name] = counts.get(name, 0) + 1
                once = [name for name, _ in rel if counts[name] == 1]
                if once:
                    move = ("eliminate", i, once[0])
                    break
        if move is None:
            break
        kind, i, arg = move
        if kind == "reduce":
            relators[i] = arg
        elif kind == "drop":
            del relators[i]
        else:
            _eliminate_generator(gens, relators, i, arg)
        steps += 1
    return GroupPresentation(tuple(gens), tuple(relators))


CERTIFICATE_KINDS = ("nontrivial", "nonabelian", "none")


@dataclass(frozen=True)
class Certificate:
    """Witnessed verdict about a presented group.

    ``nontrivial`` carries one reduced word that survives the retraction
    onto the free part; ``nonabelian`` additionally carries a commutator
    whose retraction image is a nonempty reduced word.
    """

    kind: str
    witnesses: tuple[GroupWord, ...] = ()

    def __post_init__(self):
        if self.kind not in CERTIFICATE_KINDS:
            raise PresentationError(f"unknown certificate kind {self.kind!r}")
        if self.kind == "none":
            if self.witnesses:
                raise PresentationError("a 'none' certificate carries no witnesses")
            return
        if not self.witnesses:
            raise PresentationError("certificate requires at least one witness")
        if not reduce_group_word(self.witnesses[0]):
            raise PresentationError("witness reduces to the empty word")
        if self.kind == "nonabelian":
            if len(self.witnesses) < 2 or not reduce_group_word(self.witnesses[-1]):
                raise PresentationError("commutator witness reduces to the empty word")
