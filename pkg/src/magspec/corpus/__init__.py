"""Fixed test domains with frozen reference geometry.

The bundled JSON files use the same format the CLI accepts for domains,
plus a name, human notes, and reference factors evaluated at
N_theta = 2**16 (regenerate with scripts/make_corpus.py).  The set spans
the qualitatively different shapes the bounds respond to: exact disks, an
elongated ellipse-like family (g1-dominated), oscillatory and flower
boundaries (g0-dominated), and a grid of single-harmonic near-circles for
the perturbative regime.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ..geometry import GeometricFactors, RadiusProfile

__all__ = ["CorpusEntry", "load_corpus", "corpus_entry"]


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    profile: RadiusProfile
    reference: GeometricFactors
    notes: str


def _read(name: str) -> dict:
    with resources.files(__package__).joinpath(name).open("r", encoding="utf-8") as fh:
        return json.load(fh)


@lru_cache(maxsize=1)
def load_corpus() -> tuple:
    """All bundled entries, in the index order."""
    entries = []
    for name in _read("index.json")["entries"]:
        data = _read(f"{name}.json")
        ref = data["reference_factors"]
        entries.append(CorpusEntry(
            name=data["name"],
            profile=RadiusProfile.from_dict(data),
            reference=GeometricFactors(
                area=ref["area"], polar_moment=ref["polar_moment"],
                g0=ref["g0"], g1=ref["g1"], g=ref["g"]),
            notes=data["notes"]))
    return tuple(entries)


def corpus_entry(name: str) -> CorpusEntry:
    for entry in load_corpus():
        if entry.name == name:
            return entry
    raise KeyError(f"no corpus entry named {name!r}")
