"""Bidirectional controlled-English grammar over a closed lexicon.

`realize` deterministically maps caption ASTs to English sentences and
`parse` maps those sentences back. The grammar is template-shaped and
unambiguous, so parsing is a single-pass recursive descent over tokens.
"""
from __future__ import annotations

from .geometry import ShapeKind
from .semantics import (
    Conjunction,
    EntityPredicate,
    Existential,
    Quantified,
    Quantifier,
    Relation,
    Relational,
)
from .worldgen import Color


class LanguageError(Exception):
    pass


class UnknownWordError(LanguageError):
    def __init__(self, word: str):
        super().__init__(f"word not in lexicon: {word!r}")
        self.word = word


class CaptionParseError(LanguageError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at token {position})")
        self.position = position


SHAPE_NOUNS = {
    ShapeKind.SQUARE: ("square", "squares"),
    ShapeKind.RECTANGLE: ("rectangle", "rectangles"),
    ShapeKind.TRIANGLE: ("triangle", "triangles"),
    ShapeKind.PENTAGON: ("pentagon", "pentagons"),
    ShapeKind.CROSS: ("cross", "crosses"),
    ShapeKind.CIRCLE: ("circle", "circles"),
    ShapeKind.SEMICIRCLE: ("semicircle", "semicircles"),
    ShapeKind.ELLIPSE: ("ellipse", "ellipses"),
}
HYPERNYM = ("shape", "shapes")

_SINGULAR_TO_SHAPE = {sg: k for k, (sg, _) in SHAPE_NOUNS.items()}
_PLURAL_TO_SHAPE = {pl: k for k, (_, pl) in SHAPE_NOUNS.items()}
_COLOR_WORDS = {c.value: c for c in Color}

FUNCTION_WORDS = (
    "there", "is", "are", "a", "an", "the", "no", "most", "all", "two",
    "some", "which", "and", "to", "of", "left", "right", "above", "below",
)

PERIOD = "."

_REL_PHRASE = {
    Relation.LEFT_OF: "to the left of",
    Relation.RIGHT_OF: "to the right of",
    Relation.ABOVE: "above",
    Relation.BELOW: "below",
}


def vocabulary():
    """Fixed token enumeration; index is the token id, id 0 is padding."""
    vocab = ["<pad>"]
    vocab.extend(FUNCTION_WORDS)
    vocab.extend(c.value for c in Color)
    for sg, pl in SHAPE_NOUNS.values():
        vocab.extend((sg, pl))
    vocab.extend(HYPERNYM)
    vocab.append(PERIOD)
    return vocab


_LEXICON = frozenset(vocabulary()[1:])


def _noun(pred: EntityPredicate, plural: bool) -> str:
    forms = HYPERNYM if pred.shape is None else SHAPE_NOUNS[pred.shape]
    return forms[1] if plural else forms[0]


def _plain_np(pred: EntityPredicate, plural: bool = False) -> str:
    noun = _noun(pred, plural)
    if pred.color is None:
        return noun
    return f"{pred.color.value} {noun}"


def _article(phrase: str) -> str:
    return "an" if phrase[0] in "aeiou" else "a"


def _indef_np(pred: EntityPredicate) -> str:
    phrase = _plain_np(pred)
    return f"{_article(phrase)} {phrase}"


def _body(pred: EntityPredicate, plural: bool) -> str:
    if pred.shape is None and pred.color is not None:
        return pred.color.value  # bare adjective
    if plural:
        return _plain_np(pred, plural=True)
    return _indef_np(pred)


def _clause(caption, in_conjunct: bool) -> str:
    if isinstance(caption, Existential):
        return f"there is {_indef_np(caption.pred)}"
    if isinstance(caption, Relational):
        return (
            f"{_indef_np(caption.subject)} is "
            f"{_REL_PHRASE[caption.relation]} {_indef_np(caption.object)}"
        )
    if isinstance(caption, Quantified):
        q = caption.quantifier
        if q is Quantifier.A:
            if in_conjunct:
                # Relative-clause variant, used only inside conjunctions.
                return (
                    f"there are some {_plain_np(caption.restrictor, plural=True)} "
                    f"which are {_body(caption.body, plural=True)}"
                )
            return f"{_indef_np(caption.restrictor)} is {_body(caption.body, plural=False)}"
        if q in (Quantifier.NO, Quantifier.THE):
            return (
                f"{q.value} {_plain_np(caption.restrictor)} is "
                f"{_body(caption.body, plural=False)}"
            )
        return (
            f"{q.value} {_plain_np(caption.restrictor, plural=True)} are "
            f"{_body(caption.body, plural=True)}"
        )
    if isinstance(caption, Conjunction):
        return f"{_clause(caption.left, True)} and {_clause(caption.right, True)}"
    raise TypeError(f"not a caption: {caption!r}")


def realize(caption) -> str:
    """Deterministic English rendering of a caption AST."""
    text = _clause(caption, in_conjunct=False)
    return text[0].upper() + text[1:] + "."


def tokenize(text: str):
    """Lowercase, split on whitespace, detach the terminal period."""
    tokens = []
    for raw in text.lower().split():
        if raw.endswith(PERIOD) and raw != PERIOD:
            tokens.extend((raw[:-1], PERIOD))
        else:
            tokens.append(raw)
    for tok in tokens:
        if tok not in _LEXICON:
            raise UnknownWordError(tok)
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self, ahead: int = 0):
        i = self.pos + ahead
        return self.tokens[i] if i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise CaptionParseError("unexpected end of caption", self.pos)
        self.pos += 1
        return tok

    def expect(self, word: str):
        tok = self.take()
        if tok != word:
            raise CaptionParseError(f"expected {word!r}, found {tok!r}", self.pos - 1)
        return tok

    def sentence(self):
        caption = self.clause()
        if self.peek() == "and":
            self.take()
            caption = Conjunction(caption, self.clause())
        self.expect(PERIOD)
        if self.pos != len(self.tokens):
            raise CaptionParseError("trailing tokens after period", self.pos)
        return caption

    def clause(self):
        tok = self.peek()
        if tok == "there":
            return self.there_clause()
        if tok in ("a", "an"):
            return self.indefinite_clause()
        if tok in ("no", "the"):
            q = Quantifier.NO if self.take() == "no" else Quantifier.THE
            restrictor = self.plain_np(plural=False)
            self.expect("is")
            return Quantified(q, restrictor, self.body(plural=False))
        if tok in ("two", "most", "all"):
            q = Quantifier(self.take())
            restrictor = self.plain_np(plural=True)
            self.expect("are")
            return Quantified(q, restrictor, self.body(plural=True))
        raise CaptionParseError(f"cannot start a clause with {tok!r}", self.pos)

    def there_clause(self):
        self.expect("there")
        tok = self.take()
        if tok == "is":
            return Existential(self.indef_np())
        if tok == "are":
            self.expect("some")
            restrictor = self.plain_np(plural=True)
            self.expect("which")
            self.expect("are")
            return Quantified(Quantifier.A, restrictor, self.body(plural=True))
        raise CaptionParseError(f"expected 'is' or 'are', found {tok!r}", self.pos - 1)

    def indefinite_clause(self):
        subject = self.indef_np()
        self.expect("is")
        tok = self.peek()
        if tok in ("to", "above", "below"):
            relation = self.relation()
            return Relational(subject, relation, self.indef_np())
        return Quantified(Quantifier.A, subject, self.body(plural=False))

    def relation(self) -> Relation:
        tok = self.take()
        if tok == "above":
            return Relation.ABOVE
        if tok == "below":
            return Relation.BELOW
        self.expect("the")
        side = self.take()
        if side not in ("left", "right"):
            raise CaptionParseError(f"expected 'left' or 'right', found {side!r}", self.pos - 1)
        self.expect("of")
        return Relation.LEFT_OF if side == "left" else Relation.RIGHT_OF

    def indef_np(self) -> EntityPredicate:
        art = self.take()
        if art not in ("a", "an"):
            raise CaptionParseError(f"expected article, found {art!r}", self.pos - 1)
        pred = self.plain_np(plural=False)
        if _article(_plain_np(pred)) != art:
            raise CaptionParseError(f"article {art!r} disagrees with noun phrase", self.pos - 1)
        return pred

    def plain_np(self, plural: bool) -> EntityPredicate:
        color = None
        if self.peek() in _COLOR_WORDS:
            color = _COLOR_WORDS[self.take()]
        noun = self.take()
        table = _PLURAL_TO_SHAPE if plural else _SINGULAR_TO_SHAPE
        hypernym = HYPERNYM[1] if plural else HYPERNYM[0]
        if noun == hypernym:
            return EntityPredicate(shape=None, color=color)
        if noun in table:
            return EntityPredicate(shape=table[noun], color=color)
        number = "plural" if plural else "singular"
        raise CaptionParseError(f"expected a {number} noun, found {noun!r}", self.pos - 1)

    def body(self, plural: bool) -> EntityPredicate:
        tok = self.peek()
        nouns = (_PLURAL_TO_SHAPE if plural else _SINGULAR_TO_SHAPE)
        hypernym = HYPERNYM[1] if plural else HYPERNYM[0]
        if tok in _COLOR_WORDS:
            nxt = self.peek(1)
            if nxt in nouns or nxt == hypernym:
                return self.plain_np(plural)
            self.take()
            return EntityPredicate(shape=None, color=_COLOR_WORDS[tok])
        if not plural and tok in ("a", "an"):
            return self.indef_np()
        return self.plain_np(plural)


def parse(text: str):
    """Inverse of realize over the template grammar's language."""
    return _Parser(tokenize(text)).sentence()
