"""On-disk cache of solver certificates, keyed by graph and invariant.

An entry is only reused after its witness checks out against the graph it
is looked up for; a stale or corrupted entry is discarded and recomputed.
Results without a checkable witness (a failed homomorphism search) are
never stored.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .graph import Coloring, Graph, is_clique, is_independent, is_proper_coloring
from .io import graph_key, write_atomic
from .solvers.fractional import FractionalResult, verify_fractional
from .solvers.homomorphism import SetColoring

CACHE_ENV = "KNESERLAB_CACHE_DIR"


def cache_dir() -> Path:
    raw = os.environ.get(CACHE_ENV)
    if raw:
        return Path(raw)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "kneserlab"


def _check_chromatic(g: Graph, obj: dict) -> bool:
    colors = obj["coloring"]
    if len(colors) != g.n or max(colors, default=0) != obj["value"] or min(colors, default=1) < 1:
        return False
    if not is_proper_coloring(g, Coloring.of(colors)):
        return False
    reason = obj["lower_bound"]
    if reason.get("kind") in ("clique", "exhaustion"):
        clique = reason["clique"]
        return is_clique(g, clique) and (reason["kind"] == "exhaustion" or len(clique) == obj["value"])
    return reason.get("kind") == "empty" and g.n == 0


def _check_clique(g: Graph, obj: dict) -> bool:
    return len(obj["witness"]) == obj["value"] and is_clique(g, obj["witness"])


def _check_independence(g: Graph, obj: dict) -> bool:
    return len(obj["witness"]) == obj["value"] and is_independent(g, obj["witness"])


def _check_fractional(g: Graph, obj: dict) -> bool:
    res = FractionalResult(
        Fraction(obj["value"]),
        tuple((tuple(s), Fraction(x)) for s, x in obj["cover"]),
        tuple(Fraction(y) for y in obj["weights"]),
    )
    return verify_fractional(g, res)


def _check_multichromatic(g: Graph, obj: dict) -> bool:
    w = obj["witness"]
    if w["m"] != obj["value"]:
        return False
    return SetColoring(tuple(tuple(s) for s in w["sets"]), w["m"], w["k"]).is_valid(g)


CHECKS: dict[str, Callable[[Graph, dict], bool]] = {
    "chromatic": _check_chromatic,
    "clique": _check_clique,
    "independence": _check_independence,
    "fractional": _check_fractional,
    "multichromatic": _check_multichromatic,
}


class CertificateCache:
    def __init__(self, root: Path | None = None):
        self.root = Path(root) if root is not None else cache_dir()

    def path(self, invariant: str, g: Graph, param: str = "") -> Path:
        suffix = f"-{param}" if param else ""
        return self.root / f"{invariant}{suffix}-{graph_key(g)}.json"

    def load(self, invariant: str, g: Graph, param: str = "") -> dict | None:
        """The cached certificate, or None when absent or when its witness fails to check."""
        path = self.path(invariant, g, param)
        try:
            obj = json.loads(path.read_text(encoding="utf-8"))
            if CHECKS[invariant](g, obj):
                return obj
        except (OSError, ValueError, KeyError, TypeError, IndexError):
            pass
        return None

    def store(self, invariant: str, g: Graph, obj: dict, param: str = "") -> Path:
        path = self.path(invariant, g, param)
        write_atomic(path, json.dumps(obj, sort_keys=True) + "\n")
        return path

    def entries(self) -> list[Path]:
        if not self.root.is_dir():
            return []
        return sorted(p for p in self.root.glob("*.json") if p.is_file())

    def clear(self) -> int:
        removed = 0
        for p in self.entries():
            p.unlink()
            removed += 1
        return removed
