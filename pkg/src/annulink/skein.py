"""Kauffman bracket of annular diagrams by state sum.

A state is an integer bitmask over the crossings; bit ``i`` set means the
B-smoothing at crossing ``i``. The A-smoothing joins each under-slot to its
counterclockwise successor (slot pairs 0-1 and 2-3), the B-smoothing to its
predecessor (0-3 and 1-2).
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

from .diagram import AnnularDiagram, CutPath, cut_path, writhe
from .poly import SkeinPolynomial, loop_factor

__all__ = [
    "DEFAULT_MAX_STATES",
    "InstanceTooLarge",
    "StateResolution",
    "bracket",
    "degree_stats",
    "evaluate_recursive",
    "extreme_state_contributions",
    "jones",
    "normalize",
    "resolve_state",
    "state_contribution",
    "state_table",
]

DEFAULT_MAX_STATES = 2**26


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class StateResolution:
    """Circles of one Kauffman state.

    ``circles`` holds the edge labels of each circle through crossings, in
    traversal order; crossingless loops are counted in ``num_circles`` and
    ``num_dotted`` but have no edges to list.
    """

    circles: tuple[tuple[int, ...], ...]
    num_circles: int
    num_dotted: int
    a: int
    b: int


def smoothing_partner(slot: int, b_smoothing: bool) -> int:
    return 3 - slot if b_smoothing else slot ^ 1


def _check_state(d: AnnularDiagram, state: int) -> None:
    if not 0 <= state < 1 << d.n:
        raise ValueError(f"state {state} out of range for {d.n} crossings")


def resolve_state(d: AnnularDiagram, state: int, cp: CutPath | None = None) -> StateResolution:
    _check_state(d, state)
    if cp is None:
        cp = cut_path(d)
    seen: set[tuple[int, int]] = set()
    circles = []
    dotted = 0
    for start in sorted(d.partner):
        if start in seen:
            continue
        labels = []
        parity = 0
        x = start
        while True:
            y = d.partner[x]
            seen.add(x)
            seen.add(y)
            label = d.label(x)
            labels.append(label)
            parity ^= cp.edge_parities[label]
            c, s = y
            x = (c, smoothing_partner(s, bool(state >> c & 1)))
            if x == start:
                break
        circles.append(tuple(labels))
        dotted += parity
    b = bin(state).count("1")
    return StateResolution(
        tuple(circles),
        len(circles) + len(d.loops),
        dotted + sum(cp.loop_parities),
        d.n - b,
        b,
    )


def state_contribution(r: StateResolution) -> SkeinPolynomial:
    """``A^(a-b) (-A^2 - A^-2)^(|S|-1) t^|T|``."""
    if r.num_circles < 1:
        raise ValueError("a state needs at least one circle")
    return (loop_factor() ** (r.num_circles - 1)).shift(a=r.a - r.b, t=r.num_dotted)


class _Tables:
    """Flat arrays for the hot loop: dart index is ``4 * crossing + slot``."""

    def __init__(self, d: AnnularDiagram, cp: CutPath):
        self.n = d.n
        self.partner = [0] * (4 * d.n)
        self.parity = [0] * (4 * d.n)
        for (c, s), (c2, s2) in d.partner.items():
            self.partner[4 * c + s] = 4 * c2 + s2
            self.parity[4 * c + s] = cp.edge_parities[d.crossings[c][s]]
        self.loops = len(d.loops)
        self.loop_dotted = sum(cp.loop_parities)

    def scan(self, states: Iterable[int]) -> Iterator[tuple[int, int, int]]:
        """Yield ``(state, |S|, |T|)``."""
        partner, parity = self.partner, self.parity
        m = 4 * self.n
        for st in states:
            seen = bytearray(m)
            circles = self.loops
            dotted = self.loop_dotted
            for start in range(m):
                if seen[start]:
                    continue
                circles += 1
                p = 0
                x = start
                while True:
                    seen[x] = 1
                    y = partner[x]
                    seen[y] = 1
                    p ^= parity[x]
                    x = (y ^ 3) if st >> (y >> 2) & 1 else (y ^ 1)
                    if x == start:
                        break
                dotted += p
            yield st, circles, dotted


# for the B-smoothing, slot s pairs with 3 - s; on a dart index 4c + s that is
# (4c + s) ^ 3 since 3 - s == s ^ 3 for s in 0..3


def state_table(d: AnnularDiagram, cp: CutPath | None = None, states: Iterable[int] | None = None):
    """List of ``(state, |S|, |T|)`` over the given states (default: all)."""
    if cp is None:
        cp = cut_path(d)
    if states is None:
        states = range(1 << d.n)
    return list(_Tables(d, cp).scan(states))


def _histogram_poly(n: int, counts: Counter) -> SkeinPolynomial:
    total = SkeinPolynomial()
    powers: dict[int, SkeinPolynomial] = {}
    for (b, circles, dotted), mult in sorted(counts.items()):
        if circles < 1:
            raise ValueError("a state needs at least one circle")
        if circles - 1 not in powers:
            powers[circles - 1] = loop_factor() ** (circles - 1)
        total = total + powers[circles - 1].shift(a=n - 2 * b, t=dotted, coef=mult)
    return total


def _partial_bracket(args: tuple[AnnularDiagram, CutPath, int, int]) -> SkeinPolynomial:
    d, cp, lo, hi = args
    counts: Counter = Counter()
    for st, circles, dotted in _Tables(d, cp).scan(range(lo, hi)):
        counts[(st.bit_count(), circles, dotted)] += 1
    return _histogram_poly(d.n, counts)


def _check_size(d: AnnularDiagram, max_states: int) -> None:
    if (1 << d.n) > max_states:
        raise InstanceTooLarge(f"{d.n} crossings give {1 << d.n} states, cap is {max_states}")


def bracket(
    d: AnnularDiagram,
    *,
    workers: int = 1,
    max_states: int = DEFAULT_MAX_STATES,
    cp: CutPath | None = None,
) -> SkeinPolynomial:
    """Solid-torus Kauffman bracket as a sum over all ``2^n`` states.

    With ``workers > 1`` the state range is split into contiguous blocks
    evaluated in separate processes; partial sums are added in block order,
    so the result does not depend on the worker count.
    """
    _check_size(d, max_states)
    if d.n == 0 and not d.loops:
        return SkeinPolynomial.one()
    if cp is None:
        cp = cut_path(d)
    total = 1 << d.n
    workers = max(1, min(workers, total))
    if workers == 1:
        return _partial_bracket((d, cp, 0, total))
    step = -(-total // workers)
    jobs = [(d, cp, lo, min(lo + step, total)) for lo in range(0, total, step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_partial_bracket, jobs))
    result = SkeinPolynomial()
    for part in parts:
        result = result + part
    return result


def normalize(br: SkeinPolynomial, w: int) -> SkeinPolynomial:
    """Multiply by ``(-A^3)^(-w)``."""
    return br.shift(a=-3 * w, coef=-1 if w % 2 else 1)


def jones(d: AnnularDiagram, **kwargs) -> SkeinPolynomial:
    """``(-A^3)^(-w) <D>``, kept in the variable A."""
    return normalize(bracket(d, **kwargs), writhe(d) if d.n else 0)


def degree_stats(p: SkeinPolynomial) -> tuple[int, int, int]:
    hi, lo = p.max_degree_a(), p.min_degree_a()
    return hi, lo, hi - lo


def extreme_state_contributions(
    d: AnnularDiagram, cp: CutPath | None = None
) -> tuple[SkeinPolynomial, SkeinPolynomial]:
    if cp is None:
        cp = cut_path(d)
    if d.n == 0 and not d.loops:
        return SkeinPolynomial.one(), SkeinPolynomial.one()
    all_a = state_contribution(resolve_state(d, 0, cp))
    all_b = state_contribution(resolve_state(d, (1 << d.n) - 1, cp))
    return all_a, all_b


def default_workers() -> int:
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# independent oracle: recursive skein resolution


def evaluate_recursive(
    d: AnnularDiagram, *, max_states: int = DEFAULT_MAX_STATES, cp: CutPath | None = None
) -> SkeinPolynomial:
    """Bracket by resolving crossings one at a time down to loops.

    Smoothing a crossing splices its four edges in pairs; an edge spliced
    to itself closes into a loop. Loop winding parity is the XOR of the
    cut-path parities of the edges merged into it.
    """
    _check_size(d, max_states)
    if d.n == 0 and not d.loops:
        return SkeinPolynomial.one()
    if cp is None:
        cp = cut_path(d)
    loops = list(cp.loop_parities)
    return _resolve(d.crossings, dict(cp.edge_parities), loops)


_A_PAIRS = ((0, 1), (2, 3))
_B_PAIRS = ((0, 3), (1, 2))


def _resolve(xs, parities: dict[int, int], loops: list[int]) -> SkeinPolynomial:
    if not xs:
        value = loop_factor() ** (len(loops) - 1)
        return value.shift(t=sum(loops))
    last, rest = xs[-1], xs[:-1]
    out = SkeinPolynomial()
    for power, pairs in ((1, _A_PAIRS), (-1, _B_PAIRS)):
        sub_xs, sub_par, sub_loops = _splice(rest, last, pairs, parities, loops)
        out = out + _resolve(sub_xs, sub_par, sub_loops).shift(a=power)
    return out


def _splice(rest, crossing, pairs, parities, loops):
    xs = [list(x) for x in rest]
    par = dict(parities)
    new_loops = list(loops)
    ends = [[crossing[i], crossing[j]] for i, j in pairs]
    for k in range(len(ends)):
        u, v = ends[k]
        if u == v:
            new_loops.append(par.pop(u))
            continue
        par[u] ^= par.pop(v)
        for x in xs:
            for s in range(4):
                if x[s] == v:
                    x[s] = u
        for later in ends[k + 1:]:
            for s in range(2):
                if later[s] == v:
                    later[s] = u
    return tuple(tuple(x) for x in xs), par, new_loops
