#!/usr/bin/env python3
"""Regenerate the bundled corpus JSON files.

Reference geometric factors are evaluated with the periodic trapezoidal
rule at N_theta = 2**16, well beyond the package default, and frozen into
the files; a corpus test asserts the default quadrature reproduces them.
"""

import json
import math
from pathlib import Path

import numpy as np

from magspec.geometry import RadiusProfile, factors

OUT = Path(__file__).resolve().parents[1] / "src" / "magspec" / "corpus"
N_REFERENCE = 2**16
N_SAMPLES = 512


def sampled(fn):
    grid = np.arange(N_SAMPLES) * (2 * math.pi / N_SAMPLES)
    return {"samples": [float(v) for v in fn(grid)]}


def entries():
    yield "disk", {"r0": 1.0, "harmonics": []}, "unit disk; all factors exactly 1"
    yield "disk_scaled_2x", {"r0": 2.0, "harmonics": []}, \
        "dilated disk; exercises scale invariance of g0, g1"
    for delta in (0.3, 0.6):
        yield (f"ellipse_{int(100 * delta):03d}",
               sampled(lambda g, d=delta: np.sqrt(1 + d * np.cos(2 * g))),
               f"ellipse-like R = sqrt(1 + {delta} cos 2t); elongation makes g1 dominate")
    yield "oscillatory_8", {"r0": 1.0, "harmonics": [{"n": 8, "a": 0.1, "b": 0.0}]}, \
        "R = 1 + 0.1 cos 8t; boundary oscillation makes g0 dominate"
    yield "flower_5", {"r0": 1.0, "harmonics": [{"n": 5, "a": 0.2, "b": 0.0}]}, \
        "R = 1 + 0.2 cos 5t; strongly non-circular five-petal boundary"
    for n in (1, 2, 3):
        for eps in (0.01, 0.02, 0.04):
            yield (f"near_circle_{n}_{int(1000 * eps):03d}",
                   {"r0": 1.0, "harmonics": [{"n": n, "a": eps, "b": 0.0}]},
                   f"R = 1 + {eps} cos {n}t; perturbative regime")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    names = []
    for name, geometry, notes in entries():
        profile = RadiusProfile.from_dict(geometry)
        ref = factors(profile, n_theta=N_REFERENCE)
        payload = dict(geometry)
        payload["name"] = name
        payload["notes"] = notes
        payload["reference_factors"] = {
            "area": ref.area, "polar_moment": ref.polar_moment,
            "g0": ref.g0, "g1": ref.g1, "g": ref.g,
        }
        path = OUT / f"{name}.json"
        path.write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")
        names.append(name)
        print(f"wrote {path.name}: g0={ref.g0:.12g} g1={ref.g1:.12g}")
    (OUT / "index.json").write_text(json.dumps({"entries": names}, indent=1) + "\n",
                                    encoding="utf-8")


if __name__ == "__main__":
    main()
