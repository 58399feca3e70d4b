"""Logarithm bases (entropy units) and the 0 log 0 convention."""

from __future__ import annotations

import math

import numpy as np

from .errors import ValidationError

#: Accepted spellings for the three supported bases.
_ALIASES = {
    2: 2.0,
    2.0: 2.0,
    "2": 2.0,
    "bits": 2.0,
    "e": math.e,
    "nats": math.e,
    math.e: math.e,
    10: 10.0,
    10.0: 10.0,
    "10": 10.0,
    "dits": 10.0,
}

DEFAULT_BASE = 2.0


def resolve_base(base=DEFAULT_BASE) -> float:
    """Return the numeric log base for ``base`` (2, ``"e"`` or 10)."""
    try:
        return _ALIASES[base]
    except (KeyError, TypeError):
        raise ValidationError(f"log base must be one of 2, 'e', 10; got {base!r}") from None


def base_label(base) -> str:
    b = resolve_base(base)
    return {2.0: "2", math.e: "e", 10.0: "10"}[b]


def entropy_of(probs, base=DEFAULT_BASE) -> float:
    """-sum p log p over a flat array of probabilities, with 0 log 0 = 0."""
    p = np.asarray(probs, dtype=float).ravel()
    p = p[p > 0]
    if p.size == 0:
        return 0.0
    h = 0.0 - float(np.sum(p * np.log(p)))
    return h / math.log(resolve_base(base))


def to_base(nats: float, base=DEFAULT_BASE) -> float:
    """Convert a value in nats to the requested base."""
    return nats / math.log(resolve_base(base))
