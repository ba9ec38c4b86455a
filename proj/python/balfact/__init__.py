"""Balanced factorisations a = a1 a2 ... ak with a1 + ... + ak = 0.

Rings are named by descriptor strings: "7", "3^2", "local:3:2", "quot:3:1,0,1",
"mat:3:2" or "Q".  Elements use the ring's text format, for example "1,1" in
GF(9) or "363/70" in Q.  Certificates are returned as dicts.
"""

from __future__ import annotations

import json
from typing import Optional, Sequence, Union

from . import _core
from ._core import (
    DEFAULT_BUDGET,
    BalfactError,
    BudgetExceeded,
    IllConditioned,
    NotPrimePower,
    ParseError,
    PreconditionViolated,
    ResidueFieldObstruction,
    TwoElementResidueField,
    ZeroInput,
)

Element = Union[str, int]

__all__ = [
    "DEFAULT_BUDGET",
    "BalfactError",
    "BudgetExceeded",
    "IllConditioned",
    "NotPrimePower",
    "ParseError",
    "PreconditionViolated",
    "ResidueFieldObstruction",
    "TwoElementResidueField",
    "ZeroInput",
    "census",
    "classify",
    "construct",
    "curve_sweep",
    "decompose",
    "mason",
    "matrix_balanced",
    "minimal_polynomial",
    "rational",
    "search",
    "verify",
]


def _maybe(text: Optional[str]) -> Optional[dict]:
    return None if text is None else json.loads(text)


def classify(q: int, k: int) -> dict:
    return json.loads(_core.classify(q, k))


def census(ring: str, k: int, *, budget: int = DEFAULT_BUDGET, threads: int = 1) -> dict:
    return json.loads(_core.census(ring, k, budget, threads))


def construct(field: str, a: Element, k: int, *, nonpower: bool = False) -> Optional[dict]:
    return _maybe(_core.construct(field, str(a), k, nonpower))


def search(
    ring: str, a: Element, k: int, *, nonpower: bool = False, budget: int = DEFAULT_BUDGET, threads: int = 1
) -> Optional[dict]:
    return _maybe(_core.search(ring, str(a), k, nonpower, budget, threads))


def decompose(ring: str, a: Element, n: int) -> dict:
    return json.loads(_core.decompose(ring, str(a), n))


def matrix_balanced(field: str, dim: int, entries: Sequence[Element], k: int) -> dict:
    return json.loads(_core.matrix_balanced(field, dim, ",".join(map(str, entries)), k))


def minimal_polynomial(field: str, dim: int, entries: Sequence[Element]) -> str:
    return _core.minimal_polynomial(field, dim, ",".join(map(str, entries)))


def rational(
    target: Union[str, int], k: int, *, height: int = 2000, budget: int = DEFAULT_BUDGET, threads: int = 1
) -> Optional[dict]:
    return _maybe(_core.rational(str(target), k, height, budget, threads))


def mason(
    field: str, x: Sequence[Element], y: Sequence[Element], z: Optional[Sequence[Element]] = None
) -> dict:
    conv = lambda p: [str(c) for c in p]  # noqa: E731
    return json.loads(_core.mason(field, conv(x), conv(y), None if z is None else conv(z)))


def curve_sweep(field: str, family: str, *, threads: int = 1) -> list[dict]:
    return [json.loads(line) for line in _core.curve_sweep(field, family, threads)]


def verify(cert: Union[dict, str]) -> bool:
    return _core.verify(cert if isinstance(cert, str) else json.dumps(cert))
