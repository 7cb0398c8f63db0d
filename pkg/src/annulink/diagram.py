"""Link diagrams on the punctured disk, stored as planar rotation systems.

Every crossing lists four edge labels in counterclockwise order (slots
0..3); the under-strand uses slots 0 and 2 and strands pass straight
through (slot ``s`` continues to slot ``s + 2``). A *dart* ``(c, s)`` is the
end of an edge at slot ``s`` of crossing ``c``; a *corner* ``(c, k)`` is the
angle between slots ``k`` and ``k + 1``.

Face tracing uses ``next(c, k) = partner(c, k + 1)``: leaving a corner along
its counterclockwise dart and arriving at the far end's corner.

The puncture (the solid-torus core) and the outer boundary of the annulus
are each designated by a corner; ``None`` stands for the unbounded region
and is the only choice when there are no crossings.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

__all__ = [
    "AnnularDiagram",
    "CutPath",
    "DiagramError",
    "DiagramSyntaxError",
    "Face",
    "OrientedComponentSet",
    "ValidationReport",
    "cut_path",
    "faces",
    "from_json",
    "from_object",
    "is_alternating",
    "mirror",
    "orient",
    "parse_diagram",
    "serialize",
    "to_json",
    "to_object",
    "validate",
    "writhe",
]

Dart = tuple[int, int]
Corner = tuple[int, int]


class DiagramError(ValueError):
    """Structurally malformed diagram data."""


class DiagramSyntaxError(DiagramError):
    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.field = field


@dataclass(frozen=True)
class AnnularDiagram:
    crossings: tuple[tuple[int, int, int, int], ...] = ()
    loops: tuple[bool, ...] = ()
    puncture: Corner | None = None
    outer: Corner | None = None
    reversed_components: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        xs = tuple(tuple(int(v) for v in x) for x in self.crossings)
        for i, x in enumerate(xs):
            if len(x) != 4:
                raise DiagramError(f"crossing {i} has {len(x)} slots, expected 4")
        object.__setattr__(self, "crossings", xs)
        object.__setattr__(self, "loops", tuple(bool(v) for v in self.loops))
        object.__setattr__(self, "reversed_components", frozenset(self.reversed_components))
        for name in ("puncture", "outer"):
            v = getattr(self, name)
            if v is not None:
                c, s = v
                if not 0 <= s < 4:
                    raise DiagramError(f"{name} slot {s} out of range 0..3")
                object.__setattr__(self, name, (int(c), int(s)))
        counts: dict[int, int] = {}
        for x in xs:
            for label in x:
                counts[label] = counts.get(label, 0) + 1
        bad = sorted(label for label, n in counts.items() if n != 2)
        if bad:
            raise DiagramError(f"edge multiplicity: labels {bad} do not occur exactly twice")

    @property
    def n(self) -> int:
        return len(self.crossings)

    @cached_property
    def partner(self) -> dict[Dart, Dart]:
        """Map each dart to the dart at the other end of its edge."""
        seen: dict[int, Dart] = {}
        out: dict[Dart, Dart] = {}
        for c, x in enumerate(self.crossings):
            for s, label in enumerate(x):
                if label in seen:
                    other = seen.pop(label)
                    out[(c, s)] = other
                    out[other] = (c, s)
                else:
                    seen[label] = (c, s)
        return out

    @cached_property
    def edge_darts(self) -> dict[int, tuple[Dart, Dart]]:
        """Edge label -> its two darts, smaller dart first."""
        found: dict[int, list[Dart]] = {}
        for c, x in enumerate(self.crossings):
            for s, label in enumerate(x):
                found.setdefault(label, []).append((c, s))
        return {label: (ds[0], ds[1]) for label, ds in sorted(found.items())}

    def label(self, dart: Dart) -> int:
        return self.crossings[dart[0]][dart[1]]

    @cached_property
    def pieces(self) -> list[list[int]]:
        """Crossing sets of the connected components of the 4-valent graph."""
        parent = list(range(self.n))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for (c, _), (c2, _) in self.partner.items():
            ra, rb = find(c), find(c2)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for c in range(self.n):
            groups.setdefault(find(c), []).append(c)
        return [groups[r] for r in sorted(groups)]

    @cached_property
    def piece_of(self) -> dict[int, int]:
        return {c: i for i, piece in enumerate(self.pieces) for c in piece}

    def is_connected(self) -> bool:
        """One connected piece in total, counting crossingless loops."""
        return len(self.pieces) + len(self.loops) == 1

    def replace(self, **changes) -> AnnularDiagram:
        fields = dict(
            crossings=self.crossings,
            loops=self.loops,
            puncture=self.puncture,
            outer=self.outer,
            reversed_components=self.reversed_components,
        )
        fields.update(changes)
        return AnnularDiagram(**fields)

    def __str__(self) -> str:
        return serialize(self)


# ---------------------------------------------------------------------------
# text and object formats


def _parse_corner(value: str, line: int, name: str) -> Corner | None:
    value = value.strip()
    if value == "unbounded":
        return None
    parts = value.split(".")
    if len(parts) != 2:
        raise DiagramSyntaxError(f"expected 'i.s' or 'unbounded', got {value!r}", line, name)
    try:
        c, s = int(parts[0]), int(parts[1])
    except ValueError:
        raise DiagramSyntaxError(f"non-integer corner {value!r}", line, name) from None
    if not 0 <= s < 4:
        raise DiagramSyntaxError(f"slot index {s} out of range 0..3", line, name)
    if c < 0:
        raise DiagramSyntaxError(f"negative crossing index {c}", line, name)
    return (c, s)


def _format_corner(corner: Corner | None) -> str:
    return "unbounded" if corner is None else f"{corner[0]}.{corner[1]}"


def parse_diagram(text: str) -> AnnularDiagram:
    """Parse the line-oriented diagram format.

    Lines are ``X i: a b c d``, ``O k: dotted|plain``, ``puncture: i.s``,
    ``outer: i.s`` and ``orient: k=reversed``; ``#`` starts a comment.
    """
    crossings: list[tuple[int, ...]] = []
    loops: list[bool] = []
    puncture: Corner | None = None
    outer: Corner | None = None
    reversed_components: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, body = line.partition(":")
        if not sep:
            raise DiagramSyntaxError("missing ':'", lineno)
        head = head.strip()
        key, _, index = head.partition(" ")
        if key in ("X", "O"):
            try:
                i = int(index)
            except ValueError:
                raise DiagramSyntaxError(f"bad index {index!r}", lineno, key) from None
            expected = len(crossings) if key == "X" else len(loops)
            if i != expected:
                raise DiagramSyntaxError(f"expected index {expected}, got {i}", lineno, key)
            if key == "X":
                try:
                    labels = tuple(int(tok) for tok in body.split())
                except ValueError:
                    raise DiagramSyntaxError("edge labels must be integers", lineno, "X") from None
                if len(labels) != 4:
                    raise DiagramSyntaxError(f"{len(labels)} edge labels, expected 4", lineno, "X")
                crossings.append(labels)
            else:
                kind = body.strip()
                if kind not in ("dotted", "plain"):
                    raise DiagramSyntaxError(f"loop kind {kind!r}", lineno, "O")
                loops.append(kind == "dotted")
        elif head == "puncture":
            puncture = _parse_corner(body, lineno, "puncture")
        elif head == "outer":
            outer = _parse_corner(body, lineno, "outer")
        elif head == "orient":
            for item in body.split(","):
                comp, eq, flag = item.strip().partition("=")
                if not eq or flag.strip() != "reversed":
                    raise DiagramSyntaxError(f"bad orientation flag {item.strip()!r}", lineno, "orient")
                try:
                    reversed_components.add(int(comp))
                except ValueError:
                    raise DiagramSyntaxError(f"bad component {comp!r}", lineno, "orient") from None
        else:
            raise DiagramSyntaxError(f"unknown record {head!r}", lineno)
    try:
        return AnnularDiagram(tuple(crossings), tuple(loops), puncture, outer, frozenset(reversed_components))
    except DiagramSyntaxError:
        raise
    except DiagramError as exc:
        raise DiagramSyntaxError(str(exc)) from None


def serialize(d: AnnularDiagram) -> str:
    lines = [f"X {i}: {' '.join(map(str, x))}" for i, x in enumerate(d.crossings)]
    lines += [f"O {k}: {'dotted' if dot else 'plain'}" for k, dot in enumerate(d.loops)]
    lines.append(f"puncture: {_format_corner(d.puncture)}")
    lines.append(f"outer: {_format_corner(d.outer)}")
    lines += [f"orient: {k}=reversed" for k in sorted(d.reversed_components)]
    return "\n".join(lines) + "\n"


def to_object(d: AnnularDiagram) -> dict:
    return {
        "X": [list(x) for x in d.crossings],
        "O": ["dotted" if dot else "plain" for dot in d.loops],
        "puncture": _format_corner(d.puncture),
        "outer": _format_corner(d.outer),
        "orient": {str(k): "reversed" for k in sorted(d.reversed_components)},
    }


def from_object(obj: Mapping) -> AnnularDiagram:
    unknown = set(obj) - {"X", "O", "puncture", "outer", "orient"}
    if unknown:
        raise DiagramSyntaxError(f"unknown fields {sorted(unknown)}")
    loops = []
    for kind in obj.get("O", []):
        if kind not in ("dotted", "plain"):
            raise DiagramSyntaxError(f"loop kind {kind!r}", field="O")
        loops.append(kind == "dotted")
    flags = set()
    for comp, flag in obj.get("orient", {}).items():
        if flag != "reversed":
            raise DiagramSyntaxError(f"bad orientation flag {flag!r}", field="orient")
        flags.add(int(comp))
    crossings = []
    for x in obj.get("X", []):
        if len(x) != 4:
            raise DiagramSyntaxError(f"{len(x)} edge labels, expected 4", field="X")
        crossings.append(tuple(int(v) for v in x))
    try:
        return AnnularDiagram(
            tuple(crossings),
            tuple(loops),
            _parse_corner(obj.get("puncture", "unbounded"), None, "puncture"),
            _parse_corner(obj.get("outer", "unbounded"), None, "outer"),
            frozenset(flags),
        )
    except DiagramSyntaxError:
        raise
    except DiagramError as exc:
        raise DiagramSyntaxError(str(exc)) from None


def to_json(d: AnnularDiagram) -> str:
    return json.dumps(to_object(d), sort_keys=True) + "\n"


def from_json(text: str) -> AnnularDiagram:
    return from_object(json.loads(text))


# ---------------------------------------------------------------------------
# validation and faces


@dataclass(frozen=True)
class ValidationReport:
    problems: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.problems


@dataclass(frozen=True)
class Face:
    id: int
    corners: tuple[Corner, ...]
    contains_puncture: bool
    is_outer: bool


def _corner_orbits(d: AnnularDiagram) -> list[tuple[Corner, ...]]:
    partner = d.partner
    seen: set[Corner] = set()
    orbits = []
    for c in range(d.n):
        for k in range(4):
            if (c, k) in seen:
                continue
            orbit = []
            cur = (c, k)
            while cur not in seen:
                seen.add(cur)
                orbit.append(cur)
                cur = partner[(cur[0], (cur[1] + 1) % 4)]
            if cur != (c, k):
                raise RuntimeError(f"corner orbit from {(c, k)} does not close")
            orbits.append(tuple(orbit))
    return orbits


def validate(d: AnnularDiagram) -> ValidationReport:
    problems: list[str] = []
    n = d.n
    for name in ("puncture", "outer"):
        corner = getattr(d, name)
        if corner is not None and corner[0] >= n:
            problems.append(f"dangling corner: {name} references crossing {corner[0]} of {n}")
    if n and d.outer is None:
        problems.append("outer face unresolved: diagrams with crossings need an outer corner")
    orbits = _corner_orbits(d)
    per_piece: dict[int, int] = {}
    for orbit in orbits:
        per_piece[d.piece_of[orbit[0][0]]] = per_piece.get(d.piece_of[orbit[0][0]], 0) + 1
    for i, piece in enumerate(d.pieces):
        f = per_piece.get(i, 0)
        if f != len(piece) + 2:
            problems.append(
                f"non-planar rotation system: piece {i} has {len(piece)} crossings and {f} faces, expected {len(piece) + 2}"
            )
    if (
        not problems
        and d.puncture is not None
        and d.outer is not None
        and d.piece_of[d.puncture[0]] != d.piece_of[d.outer[0]]
    ):
        problems.append("puncture and outer corners lie in different connected pieces")
    return ValidationReport(tuple(problems))


def faces(d: AnnularDiagram) -> list[Face]:
    """Faces of the diagram, ordered (and numbered) by smallest corner."""
    return list(_face_data(d)[0])


def _face_data(d: AnnularDiagram) -> tuple[tuple[Face, ...], dict[Corner, int]]:
    cached = d.__dict__.get("_faces")
    if cached is not None:
        return cached
    orbits = sorted(_corner_orbits(d), key=min)
    index = {corner: i for i, orbit in enumerate(orbits) for corner in orbit}
    if len(index) != 4 * d.n:
        raise RuntimeError("corner orbits do not partition the corners")
    outer = index.get(d.outer) if d.outer is not None else None
    punct = index.get(d.puncture) if d.puncture is not None else outer
    result = (
        tuple(Face(i, orbit, i == punct, i == outer) for i, orbit in enumerate(orbits)),
        index,
    )
    d.__dict__["_faces"] = result
    return result


def face_index(d: AnnularDiagram) -> dict[Corner, int]:
    """Corner -> face id."""
    return _face_data(d)[1]


def puncture_face(d: AnnularDiagram) -> int | None:
    """Face id holding the puncture; ``None`` when there are no crossings."""
    if not d.n:
        return None
    index = face_index(d)
    return index[d.puncture] if d.puncture is not None else index[d.outer]


def outer_face(d: AnnularDiagram) -> int | None:
    return face_index(d)[d.outer] if d.n else None


def edge_faces(d: AnnularDiagram, label: int) -> tuple[int, int]:
    """The faces on the two sides of an edge."""
    c, s = d.edge_darts[label][0]
    index = face_index(d)
    return index[(c, (s - 1) % 4)], index[(c, s)]


# ---------------------------------------------------------------------------
# winding parity


@dataclass(frozen=True)
class CutPath:
    """Intersection parities of an arc from the puncture to the outer boundary."""

    edge_parities: Mapping[int, int]
    loop_parities: tuple[int, ...]

    def total(self) -> int:
        return (sum(self.edge_parities.values()) + sum(self.loop_parities)) % 2


def dual_walk(d: AnnularDiagram, start: int, goal: int, *, reverse: bool = False) -> list[int]:
    """Edge labels crossed by a shortest dual-graph walk between two faces."""
    adjacency: dict[int, list[tuple[int, int]]] = {}
    labels = sorted(d.edge_darts, reverse=reverse)
    for label in labels:
        f1, f2 = edge_faces(d, label)
        if f1 != f2:
            adjacency.setdefault(f1, []).append((f2, label))
            adjacency.setdefault(f2, []).append((f1, label))
    prev: dict[int, tuple[int, int] | None] = {start: None}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        if f == goal:
            break
        for g, label in adjacency.get(f, []):
            if g not in prev:
                prev[g] = (f, label)
                queue.append(g)
    if goal not in prev:
        raise RuntimeError(f"dual graph has no walk from face {start} to face {goal}")
    walk = []
    f = goal
    while prev[f] is not None:
        f, label = prev[f]
        walk.append(label)
    return walk[::-1]


def cut_path(d: AnnularDiagram, *, reverse: bool = False) -> CutPath:
    parities = {label: 0 for label in d.edge_darts}
    if d.n:
        start, goal = puncture_face(d), outer_face(d)
        if start != goal:
            for label in dual_walk(d, start, goal, reverse=reverse):
                parities[label] ^= 1
    return CutPath(parities, tuple(int(dot) for dot in d.loops))


# ---------------------------------------------------------------------------
# orientation


@dataclass(frozen=True)
class OrientedComponentSet:
    """Strand components with a direction.

    Each component is a cyclic tuple of ``(label, from_dart, to_dart)``
    steps. ``leaving`` says whether the strand exits its crossing at a dart.
    """

    components: tuple[tuple[tuple[int, Dart, Dart], ...], ...]
    crossing_signs: tuple[int, ...]
    leaving: Mapping[Dart, bool]


def _trace(d: AnnularDiagram, start: Dart) -> tuple[tuple[int, Dart, Dart], ...]:
    steps = []
    cur = start
    while True:
        nxt = d.partner[cur]
        steps.append((d.label(cur), cur, nxt))
        cur = (nxt[0], (nxt[1] + 2) % 4)
        if cur == start:
            return tuple(steps)


def strand_components(d: AnnularDiagram) -> list[tuple[tuple[int, Dart, Dart], ...]]:
    """Components in default direction, ordered by smallest edge label."""
    done: set[int] = set()
    out = []
    for label, (d1, _) in d.edge_darts.items():
        if label in done:
            continue
        comp = _trace(d, d1)
        done.update(step[0] for step in comp)
        out.append(comp)
    return out


def orient(d: AnnularDiagram) -> OrientedComponentSet:
    comps = []
    for i, comp in enumerate(strand_components(d)):
        if i in d.reversed_components:
            comp = tuple((label, b, a) for label, a, b in reversed(comp))
        comps.append(comp)
    leaving = {}
    for comp in comps:
        for _, a, b in comp:
            leaving[a] = True
            leaving[b] = False
    signs = []
    for c in range(d.n):
        under = 0 if leaving[(c, 0)] else 2
        over = 1 if leaving[(c, 1)] else 3
        signs.append(1 if under == (over + 1) % 4 else -1)
    return OrientedComponentSet(tuple(comps), tuple(signs), leaving)


def writhe(o: OrientedComponentSet | AnnularDiagram) -> int:
    if isinstance(o, AnnularDiagram):
        o = orient(o)
    return sum(o.crossing_signs)


def with_orientation(d: AnnularDiagram, leaving: Mapping[Dart, bool]) -> AnnularDiagram:
    """Set component flags so that the given darts keep their direction.

    ``leaving`` may be partial; components it says nothing about keep
    their default direction.
    """
    flags = set()
    for i, comp in enumerate(strand_components(d)):
        for _, a, b in comp:
            if a in leaving:
                if not leaving[a]:
                    flags.add(i)
                break
            if b in leaving:
                if leaving[b]:
                    flags.add(i)
                break
    return d.replace(reversed_components=frozenset(flags))


def is_alternating(d: AnnularDiagram) -> bool:
    for comp in strand_components(d):
        # parity of the entry slot: even = passing under
        passes = [b[1] % 2 for _, _, b in comp]
        if any(passes[i] == passes[i - 1] for i in range(len(passes))):
            return False
    return True


def mirror(d: AnnularDiagram) -> AnnularDiagram:
    """Change every crossing by rotating its slot labels one step.

    The projection is kept; designated corners and strand directions are
    carried to the rotated slots.
    """

    def move(corner: Corner | None) -> Corner | None:
        return None if corner is None else (corner[0], (corner[1] - 1) % 4)

    m = AnnularDiagram(
        tuple(x[1:] + x[:1] for x in d.crossings),
        d.loops,
        move(d.puncture),
        move(d.outer),
    )
    if not d.n:
        return m.replace(reversed_components=d.reversed_components)
    old = orient(d).leaving
    return with_orientation(m, {(c, (s - 1) % 4): v for (c, s), v in old.items()})


def relabel(d: AnnularDiagram, mapping: Mapping[int, int] | None = None) -> AnnularDiagram:
    """Rename edge labels; by default to 1, 2, ... in order of first use."""
    if mapping is None:
        mapping = {}
        for x in d.crossings:
            for label in x:
                mapping.setdefault(label, len(mapping) + 1)
    old = orient(d).leaving if d.n else {}
    fresh = d.replace(
        crossings=tuple(tuple(mapping[v] for v in x) for x in d.crossings),
        reversed_components=frozenset(),
    )
    return with_orientation(fresh, old) if d.n else fresh.replace(reversed_components=d.reversed_components)


def crossing_components(d: AnnularDiagram) -> dict[int, set[int]]:
    """Crossing -> indices of the strand components passing through it."""
    out: dict[int, set[int]] = {c: set() for c in range(d.n)}
    for i, comp in enumerate(strand_components(d)):
        for _, a, _ in comp:
            out[a[0]].add(i)
    return out


def corners_of_face(d: AnnularDiagram, face_id: int) -> tuple[Corner, ...]:
    return _face_data(d)[0][face_id].corners


def iter_corners(d: AnnularDiagram) -> Iterable[Corner]:
    for c in range(d.n):
        for k in range(4):
            yield (c, k)
