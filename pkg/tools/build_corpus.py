"""Regenerate src/annulink/corpus from the literals below.

Hand-derived values are asserted against both bracket evaluators before
anything is written; the remaining expectations come from the recursive
skein evaluator and are labelled as such.
"""

from __future__ import annotations

import json
from pathlib import Path

from annulink.crossings import classify_all, is_dotted_reduced
from annulink.diagram import is_alternating, parse_diagram, relabel, serialize, validate, writhe
from annulink.moves import r1_insert, r2_insert
from annulink.poly import SkeinPolynomial
from annulink.skein import bracket, evaluate_recursive, jones

OUT = Path(__file__).resolve().parents[1] / "src" / "annulink" / "corpus"

TREFOIL = "X 0: 4 2 5 1\nX 1: 6 4 1 3\nX 2: 2 6 3 5\n"
FIGURE_EIGHT = "X 0: 4 2 5 1\nX 1: 8 6 1 5\nX 2: 6 3 7 4\nX 3: 2 7 3 8\n"
KINK = "X 0: 1 1 2 2\n"

CLASSICAL_TREFOIL = "1*A^-7 + -1*A^-3 + -1*A^5"
TREFOIL_T = "1*A^-7*t^1 + -1*A^-3*t^1 + -1*A^5*t^1"

# (name, document, hand value of the bracket or None, provenance note)
ENTRIES = [
    ("plain_loop", "O 0: plain\n", "1", "normalization of the empty-diagram loop"),
    ("dotted_loop", "O 0: dotted\n", "1*t^1", "loop around the core is t"),
    (
        "dotted_plus_plain",
        "O 0: dotted\nO 1: plain\n",
        "-1*A^-2*t^1 + -1*A^2*t^1",
        "disjoint trivial loop multiplies by -A^2 - A^-2",
    ),
    (
        "two_dotted",
        "O 0: dotted\nO 1: dotted\n",
        "-1*A^-2*t^2 + -1*A^2*t^2",
        "disjoint dotted loop multiplies by (-A^2 - A^-2) t",
    ),
    (
        "two_plain",
        "O 0: plain\nO 1: plain\n",
        "-1*A^-2 + -1*A^2",
        "disjoint trivial loop multiplies by -A^2 - A^-2",
    ),
    (
        "kink_outer",
        KINK + "puncture: 0.1\nouter: 0.1\n",
        "-1*A^3",
        "positive curl on a trivial loop: A + A^-1 d",
    ),
    (
        "kink_lobe_inner",
        KINK + "puncture: 0.0\nouter: 0.1\n",
        "-1*A^3*t^1",
        "curl on a loop around the core, lobe away from the core",
    ),
    (
        "kink_lobe_outer",
        KINK + "puncture: 0.1\nouter: 0.2\n",
        "-1*A^3*t^1",
        "curl on a loop around the core, lobe on the far side",
    ),
    (
        "kink_irreducible",
        KINK + "puncture: 0.0\nouter: 0.2\n",
        "1*A^-1 + -1*A^-1*t^2 + -1*A^3*t^2",
        "one lobe holds the core, the other the boundary: the A-smoothing leaves two loops"
        " around the core (A d t^2), the B-smoothing one trivial loop (A^-1)",
    ),
    (
        "trefoil_outer",
        TREFOIL + "puncture: 0.0\nouter: 0.0\n",
        CLASSICAL_TREFOIL,
        "classical right-handed trefoil, 8-state expansion",
    ),
    (
        "trefoil_center",
        TREFOIL + "puncture: 0.2\nouter: 0.0\n",
        "1*A^-7 + -1*A^-3 + 1*A^1 + -1*A^1*t^2 + -1*A^5*t^2",
        "closure of the 2-braid s^3 about its axis: expand (A + A^-1 e)^3, close id to d t^2 and e^k to d^(k-1)",
    ),
    (
        "trefoil_bigon_a",
        TREFOIL + "puncture: 0.1\nouter: 0.0\n",
        TREFOIL_T,
        "cut path crosses one edge, so every state has exactly one dotted circle",
    ),
    (
        "trefoil_bigon_b",
        TREFOIL + "puncture: 0.3\nouter: 0.0\n",
        TREFOIL_T,
        "cut path crosses one edge, so every state has exactly one dotted circle",
    ),
    (
        "trefoil_bigon_c",
        TREFOIL + "puncture: 1.3\nouter: 0.0\n",
        TREFOIL_T,
        "cut path crosses one edge, so every state has exactly one dotted circle",
    ),
    (
        "figure_eight_outer",
        FIGURE_EIGHT + "puncture: 0.0\nouter: 0.0\n",
        "1*A^-8 + -1*A^-4 + 1 + -1*A^4 + 1*A^8",
        "classical figure-eight bracket",
    ),
]


def derived_entries():
    """Diagrams built by rewrites; values from the recursive evaluator."""
    trefoil = parse_diagram(TREFOIL + "puncture: 0.0\nouter: 0.0\n")
    center = parse_diagram(TREFOIL + "puncture: 0.2\nouter: 0.0\n")
    kink = parse_diagram(KINK + "puncture: 0.1\nouter: 0.1\n")
    out = []
    fig = parse_diagram(FIGURE_EIGHT + "puncture: 0.0\nouter: 0.0\n")
    for corner in [(0, 1), (0, 2), (1, 0)]:
        d = fig.replace(puncture=corner)
        out.append((f"figure_eight_p{corner[0]}{corner[1]}", d, "figure-eight analog with the core through an inner face"))
    twisted = relabel(r1_insert(trefoil, 3, "left", 1).diagram)
    out.append(("trefoil_twist", twisted, "alternating trefoil with a reducible curl; classical value times -A^3"))
    lobe = r1_insert(center, 3, "left", 1).diagram
    c = lobe.n - 1
    lobe_corner = next((c, k) for k in range(4) if lobe.crossings[c][k] == lobe.crossings[c][(k + 1) % 4])
    out.append(
        (
            "trefoil_irreducible_kink",
            relabel(lobe.replace(puncture=lobe_corner, outer=(0, 0))),
            "trefoil with a curl whose lobe holds the core",
        )
    )
    double = relabel(r1_insert(kink, 1, "right", 1).diagram)
    out.append(("nested_double_kink", double, "trivial loop with two curls"))
    nonalt = relabel(r2_insert(trefoil, 1, 3).diagram)
    out.append(("trefoil_r2_nonalternating", nonalt, "non-alternating witness: span 12 below 4n = 20"))
    pair_b = relabel(center, {1: 3, 2: 4, 3: 5, 4: 6, 5: 1, 6: 2})
    out.append(("isotopic_pair_center_b", pair_b, "relabelled copy of trefoil_center"))
    return out


def record(name, d, note, hand):
    report = validate(d)
    assert report.ok, (name, report.problems)
    br = bracket(d)
    oracle = evaluate_recursive(d)
    assert br == oracle, name
    if hand is not None:
        assert br == SkeinPolynomial.parse(hand), (name, br.to_text(), hand)
    return {
        "file": f"{name}.txt",
        "n": d.n,
        "bracket": br.to_text(),
        "jones": jones(d).to_text(),
        "writhe": writhe(d) if d.n else 0,
        "alternating": is_alternating(d),
        "dotted_reduced": is_dotted_reduced(d),
        "classification": [r.status.value for r in classify_all(d)],
        "provenance": ("hand: " if hand is not None else "recursive skein evaluator: ") + note,
    }


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    expected = {}
    for name, text, hand, note in ENTRIES:
        d = parse_diagram(text)
        (OUT / f"{name}.txt").write_text(f"# {name}\n" + serialize(d))
        expected[name] = record(name, d, note, hand)
    for name, d, note in derived_entries():
        (OUT / f"{name}.txt").write_text(f"# {name}\n" + serialize(d))
        expected[name] = record(name, d, note, None)
    expected["_pairs"] = {"isotopic": [["trefoil_center", "isotopic_pair_center_b"], ["trefoil_bigon_a", "trefoil_bigon_b"]]}
    (OUT / "expected.json").write_text(json.dumps(expected, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(expected) - 1} diagrams to {OUT}")


if __name__ == "__main__":
    main()
