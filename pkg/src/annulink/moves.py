"""Local rewrites of annular diagrams.

Each rewrite returns a fresh diagram together with the exact factor
relating the brackets, ``<new> = factor * <old>``. Strand directions of
surviving darts are carried over, so writhe-normalized values can be
compared across a rewrite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .crossings import CrossingStatus, X_SIDE, Y_SIDE, classify_nugatory
from .diagram import (
    AnnularDiagram,
    DiagramError,
    corners_of_face,
    cut_path,
    face_index,
    faces,
    orient,
    with_orientation,
)
from .poly import SkeinPolynomial, loop_factor

__all__ = [
    "RewriteError",
    "RewriteResult",
    "insert_loop",
    "r1_insert",
    "r1_sites",
    "r2_insert",
    "r2_sites",
    "remove_dotted_reducible",
]

Side = Literal["left", "right"]


class RewriteError(ValueError):
    pass


@dataclass(frozen=True)
class RewriteResult:
    diagram: AnnularDiagram
    expected_bracket_factor: SkeinPolynomial
    crossing_delta: int


def _kink_factor(sign: int) -> SkeinPolynomial:
    return SkeinPolynomial.monomial(-1, 3 * sign)


def _fresh_labels(d: AnnularDiagram, count: int) -> list[int]:
    start = max(d.edge_darts, default=0) + 1
    return list(range(start, start + count))


def _set_label(xs: list[list[int]], dart: tuple[int, int], label: int) -> None:
    xs[dart[0]][dart[1]] = label


def _kink_crossing(a: int, loop: int, b: int, side: Side, sign: int, xs, index: int):
    """Append a kink crossing entered by ``a`` and left by ``b``; pick the
    slot rotation giving ``sign``."""
    base = [a, loop, loop, b] if side == "right" else [a, b, loop, loop]
    for rot in (base, base[1:] + base[:1]):
        trial = [list(x) for x in xs] + [rot]
        d = AnnularDiagram(tuple(map(tuple, trial)))
        # the kink sign does not depend on direction, default orientation will do
        if orient(d).crossing_signs[index] == sign:
            return rot
    raise AssertionError("unreachable: one rotation has each sign")


def r1_insert(
    d: AnnularDiagram,
    edge: int | tuple[str, int],
    side: Side = "right",
    sign: int = 1,
) -> RewriteResult:
    """Add a kink on ``edge``, its lobe in the face on ``side`` of the edge
    traversed from its smaller dart.

    ``edge`` may be ``("O", k)`` for crossingless loop ``k`` when the
    diagram has no crossings; for a dotted loop ``right`` puts the lobe
    outside the disk around the puncture and ``left`` inside.
    """
    if sign not in (1, -1):
        raise RewriteError(f"sign must be +1 or -1, got {sign}")
    if side not in ("left", "right"):
        raise RewriteError(f"side must be 'left' or 'right', got {side!r}")
    if isinstance(edge, tuple):
        return _r1_on_loop(d, edge[1], side, sign)
    if edge not in d.edge_darts:
        raise RewriteError(f"no edge labelled {edge}")
    d1, d2 = d.edge_darts[edge]
    b, loop = _fresh_labels(d, 2)
    xs = [list(x) for x in d.crossings]
    _set_label(xs, d2, b)
    xs.append(_kink_crossing(edge, loop, b, side, sign, xs, d.n))
    new = d.replace(crossings=tuple(map(tuple, xs)), reversed_components=frozenset())
    new = with_orientation(new, orient(d).leaving)
    return RewriteResult(new, _kink_factor(sign), 1)


def _r1_on_loop(d: AnnularDiagram, k: int, side: Side, sign: int) -> RewriteResult:
    if d.n:
        raise RewriteError("kinks on loops are only supported for crossingless diagrams")
    if not 0 <= k < len(d.loops):
        raise RewriteError(f"no loop {k}")
    dotted = d.loops[k]
    x = _kink_crossing(1, 2, 1, side, sign, [], 0)
    piece = AnnularDiagram((tuple(x),))
    lobe_slot = next(s for s in range(4) if x[s] == 2 and x[(s + 1) % 4] == 2)
    index = face_index(piece)
    lobe = index[(0, lobe_slot)]
    wide = next(f for f in faces(piece) if len(f.corners) == 2)
    rest = next(f for f in faces(piece) if len(f.corners) == 1 and f.id != lobe)
    if not dotted:
        punct = outer = wide.corners[0]
    elif side == "right":
        punct, outer = rest.corners[0], wide.corners[0]
    else:
        punct, outer = wide.corners[0], rest.corners[0]
    loops = d.loops[:k] + d.loops[k + 1:]
    new = AnnularDiagram(piece.crossings, loops, punct, outer)
    return RewriteResult(new, _kink_factor(sign), 1)


def r1_sites(d: AnnularDiagram):
    """All ``(edge, side, sign)`` argument triples for :func:`r1_insert`."""
    edges: list = list(d.edge_darts) if d.n else [("O", k) for k in range(len(d.loops))]
    return [(e, side, sign) for e in edges for side in ("left", "right") for sign in (1, -1)]


def _traversal_in_face(d: AnnularDiagram, face_id: int, label: int):
    for c, k in corners_of_face(d, face_id):
        p = (c, (k + 1) % 4)
        if d.label(p) == label:
            return p, d.partner[p]
    return None


def r2_insert(d: AnnularDiagram, edge1: int, edge2: int, face: int | None = None) -> RewriteResult:
    """Push ``edge1`` over ``edge2`` across a face they share.

    The new bigon and finger lie inside ``face`` (default: the first face,
    by id, bordered by both edges). A special point in that face stays in
    the part holding its designated corner.
    """
    if edge1 == edge2:
        raise RewriteError("r2 needs two distinct edges")
    for e in (edge1, edge2):
        if e not in d.edge_darts:
            raise RewriteError(f"no edge labelled {e}")
    candidates = [f.id for f in faces(d)] if face is None else [face]
    for fid in candidates:
        t1 = _traversal_in_face(d, fid, edge1)
        t2 = _traversal_in_face(d, fid, edge2)
        if t1 and t2:
            break
    else:
        raise RewriteError(f"edges {edge1} and {edge2} share no face")
    (p1, q1), (p2, q2) = t1, t2
    b1, b2, m1, m2 = _fresh_labels(d, 4)
    xs = [list(x) for x in d.crossings]
    _set_label(xs, q1, b1)
    _set_label(xs, q2, b2)
    xs.append([m2, m1, edge2, b1])
    xs.append([b2, m1, m2, edge1])
    new = d.replace(crossings=tuple(map(tuple, xs)), reversed_components=frozenset())
    new = with_orientation(new, orient(d).leaving)
    return RewriteResult(new, SkeinPolynomial.one(), 2)


def r2_sites(d: AnnularDiagram):
    """All ``(edge1, edge2, face)`` triples accepted by :func:`r2_insert`."""
    out = []
    for f in faces(d):
        labels = sorted({d.label((c, (k + 1) % 4)) for c, k in f.corners})
        out += [(e1, e2, f.id) for e1 in labels for e2 in labels if e1 != e2]
    return out


def insert_loop(d: AnnularDiagram, dotted: bool = False) -> RewriteResult:
    empty = d.n == 0 and not d.loops
    factor = SkeinPolynomial.one() if empty else loop_factor()
    if dotted:
        factor = factor.shift(t=1)
    return RewriteResult(d.replace(loops=d.loops + (dotted,)), factor, 0)


def remove_dotted_reducible(d: AnnularDiagram, c: int) -> RewriteResult:
    """Undo a dotted-reducible crossing by turning over the half of the
    diagram cut off by a contractible separating curve.

    The half that is turned over holds neither the puncture nor the outer
    boundary; its crossings have their slot order reversed, which is the
    half-turn about an axis in the projection plane.
    """
    if not 0 <= c < d.n:
        raise RewriteError(f"no crossing {c}")
    try:
        report = classify_nugatory(d, c)
    except ValueError:
        raise RewriteError(f"crossing {c} is not nugatory") from None
    if report.status is not CrossingStatus.DOTTED_REDUCIBLE:
        raise RewriteError(f"crossing {c} is dotted-irreducible")
    piece = set(d.pieces[d.piece_of[c]]) - {c}
    # turn over the smaller admissible half; ties go to the first curve
    options = []
    for curve in report.curves:
        for keep in sorted({p for p, o in curve.arc_classes if p == o}):
            flip = curve.crossings_x if keep == Y_SIDE else frozenset(piece - curve.crossings_x)
            options.append((len(flip), curve.k, keep, flip))
    _, k, keep, flip = min(options, key=lambda opt: (opt[0], opt[1], opt[2]))
    assert keep in (X_SIDE, Y_SIDE)
    sign = orient(d).crossing_signs[c]
    cp = cut_path(d)

    parent: dict[int, int] = {label: label for label in d.edge_darts}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    x = d.crossings[c]
    union(x[k], x[(k + 2) % 4])
    union(x[(k + 1) % 4], x[(k + 3) % 4])

    def new_index(i: int) -> int:
        return i - (i > c)

    def new_dart(i: int, s: int) -> tuple[int, int]:
        return new_index(i), (3 - s if i in flip else s)

    xs = []
    for i, row in enumerate(d.crossings):
        if i == c:
            continue
        row = tuple(find(v) for v in row)
        xs.append(row[::-1] if i in flip else row)
    used = {v for row in xs for v in row}
    loop_parity: dict[int, int] = {}
    for label in d.edge_darts:
        root = find(label)
        if root not in used:
            loop_parity[root] = loop_parity.get(root, 0) ^ cp.edge_parities[label]
    new_loops = d.loops + tuple(bool(loop_parity[r]) for r in sorted(loop_parity))

    index = face_index(d)
    lobes = {index[(c, (k + 1) % 4)], index[(c, (k + 3) % 4)]}

    def redesignate(corner):
        if corner is None:
            return None
        if not xs:
            return None
        phi = index[corner]
        group = lobes if phi in lobes else {phi}
        options = sorted(
            cc for f in group for cc in corners_of_face(d, f) if cc[0] != c
        )
        if not options:
            raise DiagramError("cannot place the puncture or outer marker after removal")
        i, s = options[0]
        return new_index(i), ((2 - s) % 4 if i in flip else s)

    new = AnnularDiagram(
        tuple(xs),
        new_loops,
        redesignate(d.puncture) if d.puncture is not None else None,
        redesignate(d.outer),
    )
    if xs:
        leaving = {
            new_dart(i, s): v for (i, s), v in orient(d).leaving.items() if i != c
        }
        new = with_orientation(new, leaving)
    return RewriteResult(new, _kink_factor(sign) ** -1, -1)
