"""JSON wire formats for matrices, circle maps, and map descriptors.

Complex matrices serialize as flat row-major lists of [re, im] pairs;
map descriptors are tagged objects {"family": ..., "params": ...} that
round-trip every serializable family.
"""

from __future__ import annotations

import math

import numpy as np

from . import circle
from .circle import CircleMap, sampled_from_json, sampled_to_json
from .maps import (
    StateMap,
    block_embed,
    composed_phi_form,
    entrywise_abs,
    proper_subspace_map,
    separable_embed,
    standard_map,
    wigner_map,
)
from .states import state_from_json, state_to_json

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "circle_map_to_json",
    "circle_map_from_json",
    "map_to_json",
    "map_from_json",
]


def matrix_to_json(mat: np.ndarray) -> list[list[float]]:
    """Flat row-major [re, im] pairs of a square complex matrix."""
    mat = np.asarray(mat, dtype=complex)
    return [[float(c.real), float(c.imag)] for c in mat.reshape(-1)]


def matrix_from_json(data, dim: int | None = None) -> np.ndarray:
    """Rebuild a square matrix from flat row-major [re, im] pairs."""
    flat = np.array([complex(re, im) for re, im in data])
    n = math.isqrt(flat.size) if dim is None else dim
    if n * n != flat.size:
        raise ValueError(f"matrix entry count {flat.size} is not a square")
    return flat.reshape(n, n)


def _unit_from_pair(pair) -> complex:
    return complex(pair[0], pair[1])


def circle_map_to_json(g: CircleMap) -> dict:
    """Tagged JSON for a circle map with known structure."""
    if g.kind in ("rotation", "conj_rotation", "constant"):
        c = complex(g.param)
        return {"kind": g.kind, "c": [c.real, c.imag]}
    if g.kind == "fold":
        return {"kind": "fold"}
    if g.kind == "power":
        return {"kind": "power", "k": int(g.param)}
    if g.kind == "sampled":
        return {"kind": "sampled", "table": sampled_to_json(g)}
    raise ValueError(f"circle map kind {g.kind!r} has no JSON form")


def circle_map_from_json(obj: dict) -> CircleMap:
    """Rebuild a circle map from its tagged JSON."""
    kind = obj.get("kind")
    if kind == "rotation":
        return circle.rotation(_unit_from_pair(obj["c"]))
    if kind == "conj_rotation":
        return circle.conjugate_rotation(_unit_from_pair(obj["c"]))
    if kind == "constant":
        return circle.constant(_unit_from_pair(obj["c"]))
    if kind == "fold":
        return circle.fold()
    if kind == "power":
        return circle.power(int(obj["k"]))
    if kind == "sampled":
        return sampled_from_json(obj["table"])
    raise ValueError(f"unknown circle map kind {kind!r}")


def map_to_json(map_: StateMap) -> dict:
    """Tagged JSON descriptor of a serializable map family."""
    family = map_.family
    if family == "wigner":
        return {
            "family": "wigner",
            "params": {
                "dim": map_.dim_in,
                "unitary": matrix_to_json(map_.params["unitary"]),
                "antiunitary": map_.params["antiunitary"],
            },
        }
    if family == "phi":
        basis = map_.params.get("basis")
        return {
            "family": "phi",
            "params": {
                "dim": map_.dim_in,
                "basis": None if basis is None else matrix_to_json(basis),
            },
        }
    if family == "tau":
        return {"family": "tau", "params": {"g": circle_map_to_json(map_.params["g"])}}
    if family == "composed":
        return {
            "family": "composed",
            "params": {
                "dim": map_.dim_in,
                "pre": matrix_to_json(map_.params["pre"]),
                "post": matrix_to_json(map_.params["post"]),
            },
        }
    if family == "block_embed":
        return {
            "family": "block_embed",
            "params": {"dim": map_.dim_in, "threshold": map_.params["threshold"]},
        }
    if family == "separable_embed":
        return {
            "family": "separable_embed",
            "params": {"anchors": [state_to_json(a) for a in map_.params["anchors"]]},
        }
    if family == "proper_subspace":
        return {
            "family": "proper_subspace",
            "params": {
                "dim": map_.dim_in,
                "k": map_.params["k"],
                "alpha0": map_.params["alpha0"],
            },
        }
    raise ValueError(f"map family {family!r} has no JSON form")


def map_from_json(obj: dict) -> StateMap:
    """Build a map from its tagged JSON descriptor."""
    if not isinstance(obj, dict) or "family" not in obj:
        raise ValueError("map descriptor must be an object with a 'family' tag")
    family = obj["family"]
    params = obj.get("params", {})
    if family == "wigner":
        u = matrix_from_json(params["unitary"], params.get("dim"))
        return wigner_map(u, bool(params.get("antiunitary", False)))
    if family == "phi":
        basis = params.get("basis")
        dim = params["dim"]
        return entrywise_abs(
            dim, None if basis is None else matrix_from_json(basis, dim)
        )
    if family == "tau":
        return standard_map(circle_map_from_json(params["g"]))
    if family == "composed":
        dim = params.get("dim")
        return composed_phi_form(
            matrix_from_json(params["pre"], dim), matrix_from_json(params["post"], dim)
        )
    if family == "block_embed":
        return block_embed(params["dim"], threshold=float(params.get("threshold", 0.5)))
    if family == "separable_embed":
        return separable_embed([state_from_json(a) for a in params["anchors"]])
    if family == "proper_subspace":
        return proper_subspace_map(
            params["dim"], params["k"], params.get("alpha0", 0)
        )
    raise ValueError(f"unknown map family {family!r}")
