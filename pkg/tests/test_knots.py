import json

import pytest
import sympy as sp

from oracles import alexander_minor_gcd, fox_abelian, parse_word
from tavkit.knots import (DEFAULT_CORPUS, FoxElement, FreeWord, PresentationError,
                          WirtingerPresentation, alexander_polynomial, builtin_knot, fox_derivative,
                          knot_names, load_knot)
from tavkit.laurent import LaurentPoly

# frozen from the minor-gcd oracle in oracles.py (normalized, ascending coefficients)
ALEXANDER = {
    "3_1": [1, -1, 1],
    "4_1": [1, -3, 1],
    "5_1": [1, -1, 1, -1, 1],
    "5_2": [2, -3, 2],
    "6_1": [2, -5, 2],
    "6_2": [1, -3, 3, -3, 1],
    "6_3": [1, -3, 5, -3, 1],
}


def coeffs(p: LaurentPoly):
    return [p.coefficient(e) for e in range(p.low, p.degree + 1)]


@pytest.mark.parametrize("name", sorted(ALEXANDER))
def test_alexander_matches_frozen_values(name):
    assert coeffs(alexander_polynomial(builtin_knot(name))) == ALEXANDER[name]


@pytest.mark.parametrize("name", [k for k in knot_names() if k != "unknot"])
def test_alexander_matches_oracle(name):
    K = builtin_knot(name)
    want = alexander_minor_gcd([r.tokens() for r in K.relators], K.n)
    assert coeffs(alexander_polynomial(K)) == want


def test_alexander_independent_of_column():
    K = builtin_knot("5_2")
    vals = {str(alexander_polynomial(K, j)) for j in range(K.n)}
    assert len(vals) == 1


def test_fox_derivative_abelianized_matches_oracle():
    w = FreeWord.parse("s1 s2^-1 s1^2 s3 s1^-1")
    toks = w.tokens()
    for j in range(3):
        got = fox_derivative(w, j).abelianize()
        want = fox_abelian(parse_word(toks), j)
        t = sp.Symbol("t")
        got_expr = sum(c * t ** e for e, c in got.terms.items())
        assert sp.simplify(got_expr - want) == 0


def test_fox_product_rule():
    u = FreeWord.parse("s1 s2^-1")
    v = FreeWord.parse("s2 s1 s2")
    for j in range(2):
        lhs = fox_derivative(u * v, j)
        rhs = fox_derivative(u, j) + FoxElement.word(u) * fox_derivative(v, j)
        assert lhs == rhs


def test_word_parsing_and_reduction():
    w = FreeWord.parse(["s1", "s2", "s2^-1", "s1^-1"])
    assert w.reduced() == FreeWord.identity()
    assert FreeWord.parse("s3^2").tokens() == ["s3", "s3"]
    assert FreeWord.parse("s1 s2").inverse().tokens() == ["s2^-1", "s1^-1"]


def test_json_round_trip(tmp_path):
    K = builtin_knot("4_1")
    path = tmp_path / "k.json"
    path.write_text(json.dumps(K.to_json()))
    K2 = load_knot(str(path))
    assert K2.n == K.n
    assert alexander_polynomial(K2) == alexander_polynomial(K)


def test_json_schema_keys():
    data = builtin_knot("3_1").to_json()
    assert set(data) == {"name", "generators", "relators"}
    assert all(isinstance(tok, str) for r in data["relators"] for tok in r)


def test_invalid_presentations():
    with pytest.raises(PresentationError):
        WirtingerPresentation.from_json({"name": "x", "generators": 2,
                                         "relators": [["s1", "s3", "s1^-1", "s2^-1"]]})
    with pytest.raises(PresentationError):
        WirtingerPresentation.from_json({"name": "x", "generators": 2,
                                         "relators": [["s1", "s1"]]})
    with pytest.raises(KeyError):
        load_knot("9_99")


def test_corpus_default():
    assert DEFAULT_CORPUS == ("3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3")
    assert all(builtin_knot(k).n >= 3 for k in DEFAULT_CORPUS)
