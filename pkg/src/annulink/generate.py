"""Random connected annular diagrams.

Shadows (4-valent plane graphs) grow from the one-crossing figure-eight
curve by two local operations: pinching two edges of a common face into
a new transverse double point, and adding a curl. Both keep the rotation
system planar and connected. Over/under data is then chosen either by the
checkerboard rule (alternating) or by fair coin flips.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Literal

from .crossings import nugatory_crossings
from .diagram import AnnularDiagram, edge_faces, face_index, faces, relabel, validate
from .moves import r1_insert

__all__ = ["GeneratorConfig", "generate_random", "random_diagram"]

Policy = Literal["outer", "uniform-random-face", "adversarial-inner"]
POLICIES: tuple[str, ...] = ("outer", "uniform-random-face", "adversarial-inner")


@dataclass(frozen=True)
class GeneratorConfig:
    n_min: int = 1
    n_max: int = 10
    alternating: bool = True
    policy: Policy = "uniform-random-face"
    seed: int = 0
    count: int = 100
    kink_probability: float = 0.2

    def __post_init__(self):
        if not 0 <= self.n_min <= self.n_max:
            raise ValueError(f"bad crossing range [{self.n_min}, {self.n_max}]")
        if self.policy not in POLICIES:
            raise ValueError(f"unknown puncture policy {self.policy!r}")
        if self.count < 0:
            raise ValueError("count must be nonnegative")


def _pinch(d: AnnularDiagram, rng: random.Random) -> AnnularDiagram | None:
    corners = [(c, k) for c in range(d.n) for k in range(4)]
    first = rng.choice(corners)
    index = face_index(d)
    same = [x for x in corners if index[x] == index[first] and x != first]
    if not same:
        return None
    second = rng.choice(same)
    p1 = (first[0], (first[1] + 1) % 4)
    p2 = (second[0], (second[1] + 1) % 4)
    e1, e2 = d.label(p1), d.label(p2)
    if e1 == e2:
        return None
    q1, q2 = d.partner[p1], d.partner[p2]
    b1 = max(d.edge_darts) + 1
    b2 = b1 + 1
    xs = [list(x) for x in d.crossings]
    xs[q1[0]][q1[1]] = b1
    xs[q2[0]][q2[1]] = b2
    xs.append([b1, e1, b2, e2])
    return AnnularDiagram(tuple(map(tuple, xs)))


def _curl(d: AnnularDiagram, rng: random.Random) -> AnnularDiagram:
    edge = rng.choice(sorted(d.edge_darts))
    side = rng.choice(("left", "right"))
    return AnnularDiagram(r1_insert(d, edge, side, 1).diagram.crossings)


def random_shadow(n: int, rng: random.Random, kink_probability: float = 0.2) -> AnnularDiagram:
    if n == 0:
        return AnnularDiagram()
    d = AnnularDiagram(((1, 1, 2, 2),))
    while d.n < n:
        if rng.random() < kink_probability:
            d = _curl(d, rng)
        else:
            d = _pinch(d, rng) or d
    return d


def _checkerboard(d: AnnularDiagram) -> dict[int, int]:
    color = {0: 0}
    adjacency: dict[int, list[int]] = {}
    for label in d.edge_darts:
        f1, f2 = edge_faces(d, label)
        adjacency.setdefault(f1, []).append(f2)
        adjacency.setdefault(f2, []).append(f1)
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for g in adjacency.get(f, []):
            if g not in color:
                color[g] = 1 - color[f]
                queue.append(g)
            elif color[g] == color[f]:
                raise RuntimeError("face graph is not bipartite")
    return color


def _assign_crossings(d: AnnularDiagram, alternating: bool, rng: random.Random) -> AnnularDiagram:
    xs = []
    if alternating:
        color = _checkerboard(d)
        index = face_index(d)
        a_color = rng.randrange(2)
        for c, x in enumerate(d.crossings):
            rotate = color[index[(c, 1)]] != a_color
            xs.append(x[1:] + x[:1] if rotate else x)
    else:
        for x in d.crossings:
            xs.append(x[1:] + x[:1] if rng.random() < 0.5 else x)
    return AnnularDiagram(tuple(xs))


def _designate(d: AnnularDiagram, policy: str, rng: random.Random) -> AnnularDiagram:
    fs = faces(d)
    outer = rng.choice(fs)
    if policy == "outer":
        punct = outer
    elif policy == "uniform-random-face":
        punct = rng.choice(fs)
    else:
        # puncture and boundary in the two faces flanking a nugatory crossing
        # on opposite sides of its separating curve
        index = face_index(d)
        nug = nugatory_crossings(d)
        if nug:
            c = rng.choice(nug)
            k = 0 if index[(c, 0)] == index[(c, 2)] else 1
            inner, other = (c, k + 1), (c, (k + 3) % 4)
            if rng.random() < 0.5:
                inner, other = other, inner
            punct, outer = fs[index[inner]], fs[index[other]]
        else:
            punct = rng.choice(fs)
    return d.replace(puncture=min(punct.corners), outer=min(outer.corners))


def random_diagram(
    n: int,
    rng: random.Random,
    *,
    alternating: bool = True,
    policy: str = "uniform-random-face",
    kink_probability: float = 0.2,
) -> AnnularDiagram:
    if n == 0:
        dotted = policy != "outer" and rng.random() < 0.5
        return AnnularDiagram(loops=(dotted,))
    shadow = random_shadow(n, rng, kink_probability)
    d = relabel(_assign_crossings(shadow, alternating, rng))
    d = _designate(d, policy, rng)
    report = validate(d)
    if not report.ok:
        raise RuntimeError(f"generator produced an invalid diagram: {report.problems}")
    return d


def generate_random(cfg: GeneratorConfig) -> Iterator[AnnularDiagram]:
    """Deterministic stream of ``cfg.count`` validated diagrams."""
    rng = random.Random(cfg.seed)
    for _ in range(cfg.count):
        n = rng.randint(cfg.n_min, cfg.n_max)
        yield random_diagram(
            n,
            rng,
            alternating=cfg.alternating,
            policy=cfg.policy,
            kink_probability=cfg.kink_probability,
        )
