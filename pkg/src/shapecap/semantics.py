"""Caption ASTs and the truth-evaluation interpreter.

A caption is a small tree of statements over entity predicates. `evaluate`
is the ground-truth oracle of the whole generator: an instance's agreement
label is by definition `evaluate(caption, world)`.

Predicate wildcards use None: shape=None is the hypernym "shape" (matches
every shape), color=None matches every color.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .geometry import ShapeKind
from .worldgen import Color, WorldModel


class Relation(str, Enum):
    LEFT_OF = "left_of"
    RIGHT_OF = "right_of"
    ABOVE = "above"
    BELOW = "below"

    def inverse(self) -> "Relation":
        return _INVERSE[self]


_INVERSE = {
    Relation.LEFT_OF: Relation.RIGHT_OF,
    Relation.RIGHT_OF: Relation.LEFT_OF,
    Relation.ABOVE: Relation.BELOW,
    Relation.BELOW: Relation.ABOVE,
}


class Quantifier(str, Enum):
    A = "a"          # intersection >= 1
    NO = "no"        # intersection == 0
    THE = "the"      # restrictor == 1 and intersection == 1
    TWO = "two"      # intersection >= 2
    MOST = "most"    # restrictor > 0 and intersection / restrictor > 1/2
    ALL = "all"      # intersection == restrictor


@dataclass(frozen=True)
class EntityPredicate:
    shape: ShapeKind = None
    color: Color = None

    @property
    def fully_specified(self) -> bool:
        return self.shape is not None and self.color is not None

    @property
    def uses_hypernym(self) -> bool:
        return self.shape is None

    def matches(self, entity) -> bool:
        return (self.shape is None or entity.shape == self.shape) and (
            self.color is None or entity.color == self.color
        )


@dataclass(frozen=True)
class Existential:
    pred: EntityPredicate


@dataclass(frozen=True)
class Relational:
    subject: EntityPredicate
    relation: Relation
    object: EntityPredicate


@dataclass(frozen=True)
class Quantified:
    quantifier: Quantifier
    restrictor: EntityPredicate
    body: EntityPredicate


@dataclass(frozen=True)
class Conjunction:
    left: "Caption"
    right: "Caption"


Caption = (Existential, Relational, Quantified, Conjunction)


def filter_entities(world: WorldModel, pred: EntityPredicate) -> set:
    """Indices of world entities matched by the predicate."""
    return {i for i, e in enumerate(world.entities) if pred.matches(e)}


def _relation_holds(rel: Relation, a, b) -> bool:
    # Entity centers compared with strict inequality; image y grows downward.
    if rel is Relation.LEFT_OF:
        return a.location[0] < b.location[0]
    if rel is Relation.RIGHT_OF:
        return a.location[0] > b.location[0]
    if rel is Relation.ABOVE:
        return a.location[1] < b.location[1]
    return a.location[1] > b.location[1]


def eval_relation(world: WorldModel, subj: EntityPredicate, rel: Relation,
                  obj: EntityPredicate) -> bool:
    """Existential over distinct entity pairs drawn from the two predicates."""
    subj_idx = filter_entities(world, subj)
    obj_idx = filter_entities(world, obj)
    return any(
        _relation_holds(rel, world.entities[i], world.entities[j])
        for i in subj_idx
        for j in obj_idx
        if i != j
    )


def eval_quantifier(q: Quantifier, restrictor_size: int, intersection_size: int) -> bool:
    """Cardinality comparison between a restrictor set and its body intersection."""
    if not 0 <= intersection_size <= restrictor_size:
        raise ValueError("intersection must be within [0, restrictor]")
    if q is Quantifier.A:
        return intersection_size >= 1
    if q is Quantifier.NO:
        return intersection_size == 0
    if q is Quantifier.TWO:
        return intersection_size >= 2
    if q is Quantifier.ALL:
        return intersection_size == restrictor_size
    if q is Quantifier.THE:
        # Presupposition failure (non-unique restrictor) folds into falsity.
        return restrictor_size == 1 and intersection_size == 1
    # MOST: false on empty restrictor, else strict majority.
    return restrictor_size > 0 and intersection_size / restrictor_size > 0.5


def evaluate(caption, world: WorldModel) -> bool:
    """Truth of a caption against a world model; total over valid inputs."""
    if isinstance(caption, Existential):
        return len(filter_entities(world, caption.pred)) >= 1
    if isinstance(caption, Relational):
        return eval_relation(world, caption.subject, caption.relation, caption.object)
    if isinstance(caption, Quantified):
        restrictor = filter_entities(world, caption.restrictor)
        body = filter_entities(world, caption.body)
        return eval_quantifier(caption.quantifier, len(restrictor), len(restrictor & body))
    if isinstance(caption, Conjunction):
        return evaluate(caption.left, world) and evaluate(caption.right, world)
    raise TypeError(f"not a caption: {caption!r}")


def predicates(caption):
    """All entity predicates mentioned anywhere in the caption tree."""
    if isinstance(caption, Existential):
        return [caption.pred]
    if isinstance(caption, Relational):
        return [caption.subject, caption.object]
    if isinstance(caption, Quantified):
        return [caption.restrictor, caption.body]
    return predicates(caption.left) + predicates(caption.right)


def quantifiers(caption):
    """All quantifiers used anywhere in the caption tree."""
    if isinstance(caption, Quantified):
        return [caption.quantifier]
    if isinstance(caption, Conjunction):
        return quantifiers(caption.left) + quantifiers(caption.right)
    return []


def caption_to_dict(caption) -> dict:
    """Canonical tree record; serialize with sorted keys for byte stability."""
    if isinstance(caption, Existential):
        return {"type": "existential", "pred": _pred_to_dict(caption.pred)}
    if isinstance(caption, Relational):
        return {
            "type": "relational",
            "subject": _pred_to_dict(caption.subject),
            "relation": caption.relation.value,
            "object": _pred_to_dict(caption.object),
        }
    if isinstance(caption, Quantified):
        return {
            "type": "quantified",
            "quantifier": caption.quantifier.value,
            "restrictor": _pred_to_dict(caption.restrictor),
            "body": _pred_to_dict(caption.body),
        }
    return {
        "type": "conjunction",
        "left": caption_to_dict(caption.left),
        "right": caption_to_dict(caption.right),
    }


def caption_from_dict(d: dict):
    t = d["type"]
    if t == "existential":
        return Existential(_pred_from_dict(d["pred"]))
    if t == "relational":
        return Relational(
            _pred_from_dict(d["subject"]),
            Relation(d["relation"]),
            _pred_from_dict(d["object"]),
        )
    if t == "quantified":
        return Quantified(
            Quantifier(d["quantifier"]),
            _pred_from_dict(d["restrictor"]),
            _pred_from_dict(d["body"]),
        )
    if t == "conjunction":
        return Conjunction(caption_from_dict(d["left"]), caption_from_dict(d["right"]))
    raise ValueError(f"unknown caption type {t!r}")


def _pred_to_dict(pred: EntityPredicate) -> dict:
    return {
        "shape": pred.shape.value if pred.shape is not None else None,
        "color": pred.color.value if pred.color is not None else None,
    }


def _pred_from_dict(d: dict) -> EntityPredicate:
    return EntityPredicate(
        shape=ShapeKind(d["shape"]) if d["shape"] is not None else None,
        color=Color(d["color"]) if d["color"] is not None else None,
    )
