"""The fixed catalog of small graphs the verification grids run over.

Every entry id is a construction expression, so ids can be handed straight
to the command line.  Invariants are memoised per id for the life of the
process; grids revisit the same factors many times.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterator

from ..expr import build
from ..graph import Graph
from ..solvers.coloring import ChromaticCertificate, chromatic_number
from ..solvers.fractional import FractionalResult, fractional_chromatic

MAX_KNESER_ORDER = 60


def catalog_ids() -> list[str]:
    """Complete graphs, cycles, Kneser graphs and two Mycielski graphs, in a fixed order."""
    ids = [f"K({n})" for n in range(1, 7)]
    ids += [f"C({n})" for n in range(3, 10)]
    for n in range(2, 10):
        for m in range(2 * n, 4 * n + 40):
            if math.comb(m, n) <= MAX_KNESER_ORDER:
                ids.append(f"Kneser({m},{n})")
    ids += ["Mycielski(C(5))", "Mycielski(Mycielski(C(5)))"]
    return ids


@lru_cache(maxsize=None)
def graph(gid: str) -> Graph:
    return build(gid)


@lru_cache(maxsize=None)
def chromatic(gid: str) -> ChromaticCertificate:
    return chromatic_number(graph(gid))


@lru_cache(maxsize=None)
def fractional(gid: str) -> FractionalResult:
    return fractional_chromatic(graph(gid))


def entries(max_order: int | None = None) -> list[str]:
    return [g for g in catalog_ids() if max_order is None or graph(g).n <= max_order]


def pairs(max_product: int, *, ordered: bool = False) -> Iterator[tuple[str, str]]:
    """Catalog pairs whose product has at most ``max_product`` vertices.

    Unordered pairs (with repetition) by default, since both products are
    symmetric up to isomorphism; the lexicographic grid asks for ordered ones.
    """
    ids = catalog_ids()
    for i, a in enumerate(ids):
        for j, b in enumerate(ids):
            if not ordered and j < i:
                continue
            if graph(a).n * graph(b).n <= max_product:
                yield a, b
