"""Python access to the specmult eigenvalue multiplicity toolkit.

Graphs are given either as edge-list text ("n m" then one "u v" pair per
line) or as a pair (n, edges). Matrices use the text format of the command
line tool. Eigenvalues are rationals (int, Fraction or "p/q" strings) or
roots of a monic integer polynomial given by its coefficients, lowest degree
first, together with a nearby float.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence, Union

from . import _specmult
from ._specmult import SpecmultError, __version__

GraphLike = Union[str, tuple]
Rational = Union[int, Fraction, str]

__all__ = [
    "SpecmultError",
    "__version__",
    "graph_text",
    "analyze",
    "multiplicity",
    "spectrum",
    "classify",
    "check_upper_bound",
    "verify",
]


def graph_text(graph: GraphLike) -> str:
    if isinstance(graph, str):
        return graph
    n, edges = graph
    edges = [tuple(e) for e in edges]
    lines = [f"{n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def _lambda_args(lam, minpoly: Sequence[int] | None, near: float) -> dict:
    return {
        "lam": None if lam is None else str(lam),
        "minpoly": None if minpoly is None else ",".join(str(c) for c in minpoly),
        "near": float(near),
    }


def analyze(graph: GraphLike) -> dict:
    return json.loads(_specmult.analyze(graph_text(graph)))


def multiplicity(graph: GraphLike, lam: Rational | None = None, *, matrix: str | None = None,
                 minpoly: Sequence[int] | None = None, near: float = 0.0) -> dict:
    return json.loads(_specmult.multiplicity(graph_text(graph), matrix, **_lambda_args(lam, minpoly, near)))


def spectrum(graph: GraphLike, *, matrix: str | None = None) -> dict:
    return json.loads(_specmult.spectrum(graph_text(graph), matrix))


def classify(graph: GraphLike, lam: Rational | None = None, *, matrix: str | None = None,
             minpoly: Sequence[int] | None = None, near: float = 0.0) -> dict:
    return json.loads(_specmult.classify(graph_text(graph), matrix, **_lambda_args(lam, minpoly, near)))


def check_upper_bound(graph: GraphLike, lam: Rational | None = None, *, matrix: str | None = None,
                      minpoly: Sequence[int] | None = None, near: float = 0.0) -> dict:
    return json.loads(_specmult.check_upper_bound(graph_text(graph), matrix, **_lambda_args(lam, minpoly, near)))


def verify(campaign: str, *, cap: int = 0, dedup: bool = True, seeds: int = 16, graphs: int = 500,
           guvh: int = 200, seed: int = 1, jobs: int = 1) -> list[dict]:
    """Runs a campaign; the last record is the summary."""
    text = _specmult.verify(campaign, cap, dedup, seeds, graphs, guvh, seed, jobs)
    return [json.loads(line) for line in text.splitlines() if line]
