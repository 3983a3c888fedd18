import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shapecap.geometry import ShapeKind
from shapecap.language import (
    CaptionParseError,
    UnknownWordError,
    parse,
    realize,
    tokenize,
    vocabulary,
)
from shapecap.semantics import (
    Conjunction,
    EntityPredicate,
    Existential,
    Quantified,
    Quantifier,
    Relation,
    Relational,
)
from shapecap.worldgen import Color

P = EntityPredicate


def preds():
    return st.builds(P,
                     shape=st.sampled_from(list(ShapeKind) + [None]),
                     color=st.sampled_from(list(Color) + [None]))


def captions():
    simple = st.one_of(
        st.builds(Existential, preds()),
        st.builds(Relational, preds(), st.sampled_from(list(Relation)),
                  preds()),
        st.builds(Quantified, st.sampled_from(list(Quantifier)), preds(),
                  preds()),
    )
    return st.one_of(simple, st.builds(Conjunction, simple, simple))


def test_existential_surface_forms():
    assert realize(Existential(P())) == "There is a shape."
    assert realize(Existential(P(color=Color.RED))) == "There is a red shape."
    assert (realize(Existential(P(shape=ShapeKind.SQUARE, color=Color.RED)))
            == "There is a red square.")


def test_article_an_before_vowel():
    assert realize(Existential(P(shape=ShapeKind.ELLIPSE))) == "There is an ellipse."
    assert realize(Existential(P(shape=ShapeKind.SEMICIRCLE))) == "There is a semicircle."


def test_relational_surface_forms():
    c = Relational(P(color=Color.RED), Relation.LEFT_OF,
                   P(shape=ShapeKind.CROSS))
    assert realize(c) == "A red shape is to the left of a cross."
    c = Relational(P(shape=ShapeKind.ELLIPSE), Relation.ABOVE, P())
    assert realize(c) == "An ellipse is above a shape."
    c = Relational(P(), Relation.BELOW, P(color=Color.CYAN))
    assert realize(c) == "A shape is below a cyan shape."


def test_quantified_surface_forms():
    assert (realize(Quantified(Quantifier.A, P(color=Color.RED),
                               P(shape=ShapeKind.SQUARE)))
            == "A red shape is a square.")
    assert (realize(Quantified(Quantifier.NO, P(), P(color=Color.BLUE)))
            == "No shape is blue.")
    assert (realize(Quantified(Quantifier.THE, P(shape=ShapeKind.TRIANGLE),
                               P(color=Color.GREEN)))
            == "The triangle is green.")
    assert (realize(Quantified(Quantifier.TWO, P(color=Color.CYAN),
                               P(shape=ShapeKind.CIRCLE)))
            == "Two cyan shapes are circles.")
    assert (realize(Quantified(Quantifier.MOST, P(),
                               P(shape=ShapeKind.PENTAGON)))
            == "Most shapes are pentagons.")
    assert (realize(Quantified(Quantifier.ALL, P(shape=ShapeKind.SEMICIRCLE),
                               P(color=Color.WHITE)))
            == "All semicircles are white.")


def test_conjunction_single_sentence():
    c = Conjunction(Existential(P(color=Color.RED)),
                    Quantified(Quantifier.A, P(), P(color=Color.BLUE)))
    s = realize(c)
    assert s == "There is a red shape and there are some shapes which are blue."
    assert s.count(".") == 1
    assert s[0].isupper() and " There" not in s


def test_tokenize():
    assert tokenize("There is a red square.") == [
        "there", "is", "a", "red", "square", "."]
    with pytest.raises(UnknownWordError):
        tokenize("There is a purple square.")


def test_parse_errors_carry_position():
    with pytest.raises(CaptionParseError):
        parse("There is red a square.")
    with pytest.raises(CaptionParseError):
        parse("There is an square.")  # article agreement is canonical
    with pytest.raises(CaptionParseError):
        parse("There is a square")  # missing period


def test_vocabulary_closed_and_small():
    vocab = vocabulary()
    assert vocab[0] == "<pad>"
    assert len(vocab) == len(set(vocab))
    assert len(vocab) <= 64


@given(captions())
@settings(max_examples=1000, deadline=None)
def test_round_trip(caption):
    assert parse(realize(caption)) == caption


@given(captions())
@settings(max_examples=300, deadline=None)
def test_realized_tokens_in_vocabulary(caption):
    vocab = set(vocabulary())
    assert set(tokenize(realize(caption))) <= vocab


@given(captions())
@settings(max_examples=300, deadline=None)
def test_copula_number_agreement(caption):
    if not isinstance(caption, Quantified):
        return
    tokens = tokenize(realize(caption))
    plural = caption.quantifier in (Quantifier.TWO, Quantifier.MOST,
                                    Quantifier.ALL)
    assert ("are" in tokens) == plural
    assert ("is" in tokens) != plural
