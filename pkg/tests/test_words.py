import pytest
from hypothesis import given, strategies as st

from ribbonmcg import groups as GR
from ribbonmcg.words import PivotWord, Relabeling, compose, parse_word

letters = st.lists(st.tuples(st.sampled_from("abc"), st.sampled_from([1, -1])), max_size=12)
words = st.builds(PivotWord.make, letters, st.integers(-3, 3))


def test_parse_commutator():
    assert parse_word("[a,b]") == parse_word("a b a^-1 b^-1")
    assert str(parse_word("p^-1 a2^-1 b1 a1")) == "p^-1 a2^-1 b1 a1"


def test_parse_groups_and_names():
    w = parse_word("(a b)^3 u", {"u": parse_word("b^-1")})
    assert w == parse_word("a b a b a")
    assert parse_word("1").is_identity()
    assert parse_word("p p a a^-1") == PivotWord.pivot(2)


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_word("[a,b")


@given(words)
def test_inverse(w):
    assert (w * w.inverse()).is_identity()
    assert (w.inverse() * w).is_identity()


@given(words, words, words)
def test_associative(x, y, z):
    assert (x * y) * z == x * (y * z)


@given(words, words)
def test_substitution_is_homomorphism(x, y):
    images = {"a": parse_word("b c"), "b": parse_word("p a^-1"), "c": parse_word("c")}
    assert (x * y).substitute(images) == x.substitute(images) * y.substitute(images)


@given(words, st.lists(st.integers(0, 5), min_size=3, max_size=3))
def test_evaluate_matches_letters(w, vals):
    grp = GR.symmetric(3)
    labels = dict(zip("abc", vals))
    acc = grp.identity
    for s, e in w.letters:
        acc = grp.mul(acc, labels[s] if e > 0 else grp.inv(labels[s]))
    assert w.evaluate(labels, grp.mul, grp.inv, grp.identity, grp.identity) == acc


def test_compose_order():
    f = Relabeling({"a": parse_word("b a"), "b": parse_word("b")})
    g = Relabeling({"a": parse_word("a"), "b": parse_word("b a^-1")})
    # f after g: substitute g into f
    assert compose(f, g)["a"] == parse_word("b a^-1 a") == parse_word("b")
    assert f.then(g) == compose(g, f)
    assert Relabeling.identity(["a", "b"]).changed() == {}
