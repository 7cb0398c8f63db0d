"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run alone with ``pytest tests/test_acceptance.py -s`` or as a script.
"""

import os
from dataclasses import dataclass
from functools import lru_cache

import pytest

from annulink.crossings import (
    CrossingStatus,
    classify_all,
    is_dotted_reduced,
    negative_nugatory,
    nugatory_crossings,
)
from annulink.diagram import AnnularDiagram, cut_path, is_alternating, writhe
from annulink.generate import POLICIES, GeneratorConfig, generate_random
from annulink.harness import batch, load_corpus
from annulink.moves import (
    insert_loop,
    r1_insert,
    r1_sites,
    r2_insert,
    r2_sites,
    remove_dotted_reducible,
)
from annulink.poly import SkeinPolynomial, loop_factor
from annulink.skein import (
    bracket,
    evaluate_recursive,
    extreme_state_contributions,
    jones,
    normalize,
    state_table,
)

SEED = 20240611
PER_CELL = 200
RESULTS: dict[int, tuple[bool, str]] = {}
P = SkeinPolynomial.parse


def report(number: int, ok: bool, detail: str) -> None:
    RESULTS[number] = (ok, detail)
    print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


@dataclass
class Item:
    name: str
    d: AnnularDiagram
    bracket: SkeinPolynomial
    table: list
    alternating: bool
    reduced: bool


@lru_cache(maxsize=None)
def population() -> tuple[Item, ...]:
    items = []
    for a_i, alternating in enumerate((True, False)):
        for p_i, policy in enumerate(POLICIES):
            cfg = GeneratorConfig(
                n_min=1,
                n_max=10,
                alternating=alternating,
                policy=policy,
                seed=SEED + 10 * a_i + p_i,
                count=PER_CELL,
            )
            for i, d in enumerate(generate_random(cfg)):
                items.append(_item(f"{policy}-{int(alternating)}-{i}", d))
    return tuple(items)


@lru_cache(maxsize=None)
def corpus_items() -> tuple[Item, ...]:
    diagrams, _ = load_corpus()
    return tuple(_item(name, d) for name, d in diagrams.items())


def _item(name: str, d: AnnularDiagram) -> Item:
    cp = cut_path(d)
    return Item(name, d, bracket(d, cp=cp), state_table(d, cp), is_alternating(d), is_dotted_reduced(d))


def core_subset():
    return [x for x in population() + corpus_items() if x.alternating and x.reduced and x.d.is_connected()]


# 1


def test_criterion_01_axioms():
    diagrams, _ = load_corpus()
    failures = []
    if bracket(AnnularDiagram(loops=(False,))) != P("1"):
        failures.append("plain loop")
    if bracket(AnnularDiagram(loops=(True,))) != P("1*t^1"):
        failures.append("dotted loop")
    d = loop_factor()
    for name, base in diagrams.items():
        b = bracket(base)
        if bracket(base.replace(loops=base.loops + (False,))) != d * b:
            failures.append(f"{name} + plain")
        if bracket(base.replace(loops=base.loops + (True,))) != d.shift(t=1) * b:
            failures.append(f"{name} + dotted")
    report(1, not failures, f"{2 * len(diagrams) + 2} axiom instances, failures={failures[:3]}")


# 2


def test_criterion_02_oracle_equivalence():
    big = list(generate_random(GeneratorConfig(n_min=11, n_max=12, seed=SEED, count=6, alternating=False)))
    big += list(generate_random(GeneratorConfig(n_min=11, n_max=12, seed=SEED + 1, count=6)))
    items = list(corpus_items()) + list(population()) + [_item(f"big{i}", d) for i, d in enumerate(big)]
    bad = [x.name for x in items if evaluate_recursive(x.d) != x.bracket]
    report(2, not bad, f"{len(items)} diagrams (n <= 12), mismatches={len(bad)}")


# 3


def test_criterion_03_classical_specialization():
    diagrams, _ = load_corpus()
    problems = []
    trefoil = diagrams["trefoil_outer"]
    br = bracket(trefoil)
    if br != P("1*A^-7 + -1*A^-3 + -1*A^5") or br.span_a() != 12 or len(br) != 3:
        problems.append("trefoil bracket")
    known_jones = {
        "trefoil_outer": "-1*q^4 + 1*q^3 + 1*q^1",
        "figure_eight_outer": "1*q^2 + -1*q^1 + 1 + -1*q^-1 + 1*q^-2",
        "kink_outer": "1",
        "trefoil_twist": "-1*q^4 + 1*q^3 + 1*q^1",
    }
    for name, value in known_jones.items():
        if jones(diagrams[name]).to_q_text() != value:
            problems.append(name)
    checked = 0
    for x in population():
        if x.d.puncture != x.d.outer:
            continue
        checked += 1
        cp = cut_path(x.d)
        if any(cp.edge_parities.values()) or x.bracket.max_degree_t() != 0:
            problems.append(x.name)
    report(3, not problems, f"trefoil span 12 with 3 terms; {checked} outer-policy diagrams t-free; problems={problems[:3]}")


# 4, 5


def test_criterion_04_span_bound():
    items = population()
    bad = [x.name for x in items if x.bracket.span_a() > 4 * x.d.n]
    report(4, len(items) >= 1000 and not bad, f"{len(items)} diagrams, violations={len(bad)}")


def test_criterion_05_extreme_degree_bounds():
    bad = []
    for x in population():
        all_a, all_b = extreme_state_contributions(x.d)
        if x.bracket.max_degree_a() > all_a.max_degree_a() or x.bracket.min_degree_a() < all_b.min_degree_a():
            bad.append(x.name)
    report(5, not bad, f"{len(population())} diagrams, violations={len(bad)}")


# 6


def test_criterion_06_circle_count():
    subset = [x for x in population() if x.alternating and x.d.is_connected()]
    bad = [x.name for x in subset if x.table[0][1] + x.table[-1][1] != x.d.n + 2]
    report(6, bool(subset) and not bad, f"{len(subset)} connected alternating diagrams, violations={len(bad)}")


# 7, 8


def test_criterion_07_span_equality():
    subset = core_subset()
    bad = []
    for x in subset:
        w = writhe(x.d) if x.d.n else 0
        if x.bracket.span_a() != 4 * x.d.n or normalize(x.bracket, w).span_a() != 4 * x.d.n:
            bad.append(x.name)
    irreducible = sum(
        any(r.status is CrossingStatus.DOTTED_IRREDUCIBLE for r in classify_all(x.d)) for x in subset
    )
    report(
        7,
        len(subset) >= 200 and not bad,
        f"{len(subset)} alternating dotted-reduced diagrams ({irreducible} with irreducible nugatory crossings), violations={len(bad)}",
    )


def test_criterion_08_extreme_degrees_attained():
    subset = core_subset()
    bad = []
    for x in subset:
        all_a, all_b = extreme_state_contributions(x.d)
        if x.bracket.max_degree_a() != all_a.max_degree_a() or x.bracket.min_degree_a() != all_b.min_degree_a():
            bad.append(x.name)
    report(8, len(subset) >= 200 and not bad, f"{len(subset)} diagrams, violations={len(bad)}")


# 9


def test_criterion_09_smoothing_facts():
    counts = {"a": 0, "b": 0, "c": 0}
    bad = {"a": [], "b": [], "c": []}
    for x in population():
        if not x.alternating or x.d.n > 10:
            continue
        d, table = x.d, x.table
        s_a, t_a = table[0][1], table[0][2]
        nug = set(nugatory_crossings(d))
        for c in range(d.n):
            if c not in nug:
                counts["a"] += 1
                if table[1 << c][1] >= s_a:
                    bad["a"].append(x.name)
        negative = set(negative_nugatory(d))
        for state, circles, _ in table:
            if circles == s_a + state.bit_count():
                counts["b"] += 1
                if any(state >> c & 1 and c not in negative for c in range(d.n)):
                    bad["b"].append(x.name)
        chosen = [
            r.crossing
            for r in classify_all(d)
            if r.status is CrossingStatus.DOTTED_IRREDUCIBLE and r.crossing in negative
        ]
        for c in chosen:
            counts["c"] += 1
            if table[1 << c][2] != t_a + 2:
                bad["c"].append(x.name)
        for mask in range(1, 1 << len(chosen)):
            state = sum(1 << c for i, c in enumerate(chosen) if mask >> i & 1)
            counts["c"] += 1
            if table[state][2] <= t_a:
                bad["c"].append(x.name)
    ok = not any(bad.values()) and all(counts.values())
    report(
        9,
        ok,
        "checked (a) {a} flips, (b) {b} states, (c) {c} smoothings; ".format(**counts)
        + f"violations a={len(bad['a'])} b={len(bad['b'])} c={len(bad['c'])}",
    )


# 10


def test_criterion_10_move_invariance():
    checked = 0
    bad = []

    def check(name, d, result, isotopy=True):
        nonlocal checked
        checked += 1
        if bracket(result.diagram) != result.expected_bracket_factor * bracket(d):
            bad.append(name)
        elif isotopy and jones(result.diagram) != jones(d):
            bad.append(name)

    for x in corpus_items():
        d = x.d
        for e, side, sign in r1_sites(d):
            check(x.name, d, r1_insert(d, e, side, sign))
        if d.n:
            for e1, e2, face in r2_sites(d):
                check(x.name, d, r2_insert(d, e1, e2, face))
        for r in classify_all(d):
            if r.status is CrossingStatus.DOTTED_REDUCIBLE:
                check(x.name, d, remove_dotted_reducible(d, r.crossing))
        for dotted in (False, True):
            check(x.name, d, insert_loop(d, dotted), isotopy=False)
    report(10, not bad, f"{checked} rewrites over {len(corpus_items())} corpus diagrams, violations={len(bad)}")


# 11


def test_criterion_11_dotted_parity():
    bad = []
    states = 0
    for x in population() + corpus_items():
        if x.d.n > 10:
            continue
        total = cut_path(x.d).total()
        states += len(x.table)
        if any(t % 2 != total for _, _, t in x.table):
            bad.append(x.name)
    report(11, not bad, f"{states} states, violations={len(bad)}")


# 12


def test_criterion_12_determinism():
    items = [(f"g{i}", d) for i, d in enumerate(generate_random(GeneratorConfig(seed=SEED, count=80, n_max=9)))]
    items += [(x.name, x.d) for x in corpus_items()]
    counts = sorted({1, 2, os.cpu_count() or 1, 4})
    reports = {w: batch(items, workers=w, seed=SEED) for w in counts}
    csv = {reports[w].to_csv() for w in counts}
    js = {reports[w].to_json() for w in counts}
    big = max((x.d for x in population()), key=lambda d: d.n)
    brackets = {bracket(big, workers=w).to_text() for w in counts}
    ok = len(csv) == len(js) == len(brackets) == 1
    report(12, ok, f"workers {counts}: csv variants={len(csv)}, json variants={len(js)}, bracket variants={len(brackets)}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
