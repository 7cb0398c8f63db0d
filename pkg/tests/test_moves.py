import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from annulink.crossings import CrossingStatus, classify_all, classify_nugatory, nugatory_crossings
from annulink.diagram import AnnularDiagram, cut_path, face_index, is_alternating, parse_diagram, relabel, validate
from annulink.moves import (
    RewriteError,
    insert_loop,
    r1_insert,
    r1_sites,
    r2_insert,
    r2_sites,
    remove_dotted_reducible,
)
from annulink.poly import SkeinPolynomial, loop_factor
from annulink.skein import bracket, jones

from conftest import KINK, TREFOIL, diagrams, doc

P = SkeinPolynomial.parse


def same_up_to_relabel(a, b):
    if a.n != b.n or a.loops != b.loops:
        return False
    if relabel(a).crossings != relabel(b).crossings:
        return False
    if not a.n:
        return True
    ia, ib = face_index(a), face_index(b)
    return ia[a.puncture] == ib[b.puncture] and ia[a.outer] == ib[b.outer]


def check(d, result):
    assert validate(result.diagram).ok
    assert result.diagram.n == d.n + result.crossing_delta
    assert bracket(result.diagram) == result.expected_bracket_factor * bracket(d)
    assert jones(result.diagram) == jones(d)


# r1


@pytest.mark.parametrize("sign", [1, -1])
def test_r1_on_trefoil(trefoil, sign):
    result = r1_insert(trefoil, 2, "right", sign)
    assert result.expected_bracket_factor == SkeinPolynomial.monomial(-1, 3 * sign)
    assert result.crossing_delta == 1
    check(trefoil, result)
    assert nugatory_crossings(result.diagram) == [3]
    assert classify_nugatory(result.diagram, 3).status is CrossingStatus.DOTTED_REDUCIBLE


@pytest.mark.parametrize("sign", [1, -1])
def test_r1_on_plain_loop(sign):
    loop = parse_diagram("O 0: plain\n")
    result = r1_insert(loop, ("O", 0), "right", sign)
    assert result.diagram.n == 1
    assert bracket(result.diagram) == SkeinPolynomial.monomial(-1, 3 * sign)


@pytest.mark.parametrize("side", ["left", "right"])
def test_r1_on_dotted_loop(side):
    result = r1_insert(parse_diagram("O 0: dotted\n"), ("O", 0), side, 1)
    assert bracket(result.diagram) == P("-1*A^3*t^1")


def test_r1_errors(trefoil):
    with pytest.raises(RewriteError):
        r1_insert(trefoil, 99)
    with pytest.raises(RewriteError):
        r1_insert(trefoil, 1, "up")
    with pytest.raises(RewriteError):
        r1_insert(trefoil, 1, sign=2)
    with pytest.raises(RewriteError):
        r1_insert(trefoil.replace(loops=(False,)), ("O", 0))


# r2


def test_r2_on_trefoil(trefoil):
    result = r2_insert(trefoil, 1, 3)
    assert result.crossing_delta == 2
    assert result.expected_bracket_factor == SkeinPolynomial.one()
    check(trefoil, result)
    assert not is_alternating(result.diagram)


def test_r2_across_puncture_face_changes_parities():
    center = doc(TREFOIL, "0.2", "0.0")
    moved = False
    for e1, e2, face in r2_sites(center):
        result = r2_insert(center, e1, e2, face)
        check(center, result)
        before = cut_path(center).edge_parities
        after = cut_path(result.diagram).edge_parities
        moved |= any(after.get(label, 0) != v for label, v in before.items())
    assert moved


def test_r2_errors(trefoil):
    with pytest.raises(RewriteError):
        r2_insert(trefoil, 1, 1)
    with pytest.raises(RewriteError):
        r2_insert(trefoil, 1, 42)
    # edges 1 and 4 never border one face of the trefoil
    shared = {(e1, e2) for e1, e2, _ in r2_sites(trefoil)}
    pair = next((a, b) for a in range(1, 7) for b in range(1, 7) if a != b and (a, b) not in shared)
    with pytest.raises(RewriteError):
        r2_insert(trefoil, *pair)


# loops


def test_insert_loop_factors():
    plain = parse_diagram("O 0: plain\n")
    assert insert_loop(plain, False).expected_bracket_factor == loop_factor()
    empty = AnnularDiagram()
    r = insert_loop(empty, True)
    assert r.expected_bracket_factor == P("1*t^1")
    assert bracket(r.diagram) == P("1*t^1")
    two = insert_loop(r.diagram, True)
    assert bracket(two.diagram) == loop_factor().shift(t=2)
    assert two.crossing_delta == 0


@settings(max_examples=40, deadline=None)
@given(diagrams(n_max=7), st.booleans())
def test_insert_loop_property(d, dotted):
    r = insert_loop(d, dotted)
    assert bracket(r.diagram) == r.expected_bracket_factor * bracket(d)


# removal


def test_remove_kink_gives_unknot():
    result = remove_dotted_reducible(doc(KINK, "0.1", "0.1"), 0)
    assert result.diagram.n == 0
    assert result.diagram.loops == (False,)
    assert result.crossing_delta == -1
    assert bracket(result.diagram) == P("1")
    assert jones(result.diagram) == P("1")


def test_remove_kink_around_core_gives_dotted_loop():
    result = remove_dotted_reducible(doc(KINK, "0.0", "0.1"), 0)
    assert result.diagram.loops == (True,)


def test_remove_irreducible_rejected(corpus):
    with pytest.raises(RewriteError):
        remove_dotted_reducible(corpus[0]["kink_irreducible"], 0)
    with pytest.raises(RewriteError):
        remove_dotted_reducible(doc(TREFOIL), 0)


def test_nested_double_kink(corpus):
    d = corpus[0]["nested_double_kink"]
    for c in range(2):
        result = remove_dotted_reducible(d, c)
        check(d, result)
        assert nugatory_crossings(result.diagram) == [0]


def test_remove_from_alternating(corpus):
    d = corpus[0]["trefoil_twist"]
    assert is_alternating(d)
    result = remove_dotted_reducible(d, 3)
    assert result.diagram.n == 3
    check(d, result)


def test_remove_undoes_r1(corpus):
    for name, d in corpus[0].items():
        if not 1 <= d.n <= 4:
            continue
        for e, side, sign in r1_sites(d):
            kinked = r1_insert(d, e, side, sign).diagram
            back = remove_dotted_reducible(kinked, kinked.n - 1).diagram
            assert same_up_to_relabel(back, d), (name, e, side, sign)


def test_all_sites_on_small_corpus(corpus):
    for name, d in corpus[0].items():
        if d.n > 4:
            continue
        for e, side, sign in r1_sites(d):
            check(d, r1_insert(d, e, side, sign))
        for e1, e2, face in r2_sites(d):
            check(d, r2_insert(d, e1, e2, face))
        for r in classify_all(d):
            if r.status is CrossingStatus.DOTTED_REDUCIBLE:
                check(d, remove_dotted_reducible(d, r.crossing))


@settings(max_examples=30, deadline=None)
@given(diagrams(n_max=6), st.data())
def test_random_rewrites(d, data):
    e, side, sign = data.draw(st.sampled_from(r1_sites(d)))
    check(d, r1_insert(d, e, side, sign))
    sites = r2_sites(d)
    e1, e2, face = data.draw(st.sampled_from(sites))
    check(d, r2_insert(d, e1, e2, face))
    for r in classify_all(d):
        if r.status is CrossingStatus.DOTTED_REDUCIBLE:
            check(d, remove_dotted_reducible(d, r.crossing))
