"""Nugatory crossings and their classification in the punctured disk.

A crossing ``c`` is nugatory when two opposite corners ``(c, k)`` and
``(c, k + 2)`` lie in one face ``F``. A simple closed curve then runs
through ``F`` and the double point, splitting the darts of ``c`` into
``{k + 1, k + 2}`` and ``{k + 3, k}``. The curve is contractible in the
solid torus exactly when the puncture and the outer boundary end up on the
same side of it. A special point inside ``F`` itself can be put on either
side by routing the arc around it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from itertools import product

from .diagram import (
    AnnularDiagram,
    corners_of_face,
    cut_path,
    face_index,
    orient,
    outer_face,
    puncture_face,
)
from .skein import InstanceTooLarge, state_table

__all__ = [
    "CrossingReport",
    "CrossingStatus",
    "SeparatingCurve",
    "StateAdjacency",
    "classify_all",
    "classify_nugatory",
    "is_dotted_reduced",
    "nugatory_crossings",
    "separating_curves",
    "state_adjacency",
    "state_adjacency_scan",
]

X_SIDE, Y_SIDE, FREE = "X", "Y", "free"


class CrossingStatus(str, Enum):
    NON_NUGATORY = "non-nugatory"
    DOTTED_REDUCIBLE = "dotted-reducible"
    DOTTED_IRREDUCIBLE = "dotted-irreducible"


@dataclass(frozen=True)
class SeparatingCurve:
    """A curve through crossing ``crossing`` and the face shared by corners
    ``k`` and ``k + 2``.

    ``puncture_side`` / ``outer_side`` are ``"X"`` (the side holding darts
    ``k + 1, k + 2``), ``"Y"``, or ``"free"`` when the point sits in the
    shared face. ``arc_classes`` lists the realizable (puncture, outer)
    side pairs.
    """

    crossing: int
    k: int
    shared_face: int
    puncture_side: str
    outer_side: str
    crossings_x: frozenset[int]
    arc_classes: tuple[tuple[str, str], ...]

    @property
    def contractible(self) -> bool:
        return any(p == o for p, o in self.arc_classes)


@dataclass(frozen=True)
class CrossingReport:
    crossing: int
    status: CrossingStatus
    curves: tuple[SeparatingCurve, ...] = ()

    @property
    def witness(self) -> tuple[tuple[int, int], tuple[int, int]] | None:
        if not self.curves:
            return None
        c, k = self.crossing, self.curves[0].k
        return (c, k), (c, k + 2)


def nugatory_crossings(d: AnnularDiagram) -> list[int]:
    index = face_index(d)
    return [
        c
        for c in range(d.n)
        if index[(c, 0)] == index[(c, 2)] or index[(c, 1)] == index[(c, 3)]
    ]


def _side_crossings(d: AnnularDiagram, c: int, k: int) -> frozenset[int]:
    """Crossings reachable from darts ``k + 1`` and ``k + 2`` of ``c`` without
    passing through ``c``."""
    seen: set[int] = set()
    queue = deque()
    for s in (k + 1, k + 2):
        other = d.partner[(c, s % 4)][0]
        if other != c and other not in seen:
            seen.add(other)
            queue.append(other)
    while queue:
        x = queue.popleft()
        for s in range(4):
            y = d.partner[(x, s)][0]
            if y != c and y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def _face_side(d: AnnularDiagram, face: int, c: int, k: int, shared: int, xs: frozenset[int]) -> str:
    if face == shared:
        return FREE
    cc, kk = corners_of_face(d, face)[0]
    if cc == c:
        return X_SIDE if kk == (k + 1) % 4 else Y_SIDE
    return X_SIDE if cc in xs else Y_SIDE


def separating_curves(d: AnnularDiagram, c: int) -> list[SeparatingCurve]:
    index = face_index(d)
    pf, of = puncture_face(d), outer_face(d)
    same_piece = d.piece_of[c] == d.piece_of[d.outer[0]]
    out = []
    for k in (0, 1):
        shared = index[(c, k)]
        if shared != index[(c, k + 2)]:
            continue
        xs = _side_crossings(d, c, k)
        if same_piece:
            p_side = _face_side(d, pf, c, k, shared, xs)
            o_side = _face_side(d, of, c, k, shared, xs)
        else:
            # another piece sits in a disk away from both special points
            p_side = o_side = Y_SIDE
        choices_p = (X_SIDE, Y_SIDE) if p_side == FREE else (p_side,)
        choices_o = (X_SIDE, Y_SIDE) if o_side == FREE else (o_side,)
        classes = tuple(product(choices_p, choices_o))
        out.append(SeparatingCurve(c, k, shared, p_side, o_side, xs, classes))
    return out


def classify_nugatory(d: AnnularDiagram, c: int) -> CrossingReport:
    curves = tuple(separating_curves(d, c))
    if not curves:
        raise ValueError(f"crossing {c} is not nugatory")
    if any(curve.contractible for curve in curves):
        status = CrossingStatus.DOTTED_REDUCIBLE
    else:
        status = CrossingStatus.DOTTED_IRREDUCIBLE
    return CrossingReport(c, status, curves)


def classify_all(d: AnnularDiagram) -> list[CrossingReport]:
    nug = set(nugatory_crossings(d))
    return [
        classify_nugatory(d, c) if c in nug else CrossingReport(c, CrossingStatus.NON_NUGATORY)
        for c in range(d.n)
    ]


def is_dotted_reduced(d: AnnularDiagram) -> bool:
    return all(
        classify_nugatory(d, c).status is CrossingStatus.DOTTED_IRREDUCIBLE
        for c in nugatory_crossings(d)
    )


def negative_nugatory(d: AnnularDiagram) -> list[int]:
    signs = orient(d).crossing_signs
    return [c for c in nugatory_crossings(d) if signs[c] < 0]


# ---------------------------------------------------------------------------
# adjacent states


@dataclass(frozen=True)
class StateAdjacency:
    source: int
    target: int
    crossing: int
    delta_circles: int
    delta_dotted: int


EXHAUSTIVE_CAP = 2**16


def state_adjacency(d: AnnularDiagram, state: int, crossing: int) -> StateAdjacency:
    target = state ^ (1 << crossing)
    (_, s0, t0), (_, s1, t1) = state_table(d, states=[state, target])
    return StateAdjacency(state, target, crossing, s1 - s0, t1 - t0)


def state_adjacency_scan(d: AnnularDiagram, *, max_states: int = EXHAUSTIVE_CAP) -> list[StateAdjacency]:
    """Every ordered pair of states differing at one crossing."""
    if (1 << d.n) > max_states:
        raise InstanceTooLarge(f"{1 << d.n} states exceed the exhaustive cap {max_states}")
    table = {st: (s, t) for st, s, t in state_table(d, cut_path(d))}
    out = []
    for st, (s0, t0) in table.items():
        for c in range(d.n):
            target = st ^ (1 << c)
            s1, t1 = table[target]
            out.append(StateAdjacency(st, target, c, s1 - s0, t1 - t0))
    return out
