"""JSON matrix files and report envelopes.

A matrix file is one JSON object ``{"n": 2, "entries": [[re, im], ...], "label": "A"}``
with the ``n * n`` entries in row-major order.  Report envelopes serialise
complex numbers as ``[re, im]`` pairs and vectors as lists of pairs, so
``envelope_from_json(envelope_to_json(e)) == e`` holds exactly (floats are
written with ``repr`` precision).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .errors import OpRadiusError
from .geometry import OrthogonalityReport, ParallelismReport, WitnessRecord
from .oracle import OracleVerdict
from .radius import RadiusCertificate


class MatrixFileError(OpRadiusError):
    """Malformed matrix file; the message names the offending field."""


@dataclass(frozen=True)
class MatrixFile:
    n: int
    entries: np.ndarray
    label: str | None = None

    @property
    def matrix(self) -> np.ndarray:
        return self.entries


def _pair_value(item, where: str) -> complex:
    if (not isinstance(item, (list, tuple)) or len(item) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in item)):
        raise MatrixFileError(f"{where}: expected a [re, im] pair of numbers, got {item!r}")
    re, im = float(item[0]), float(item[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise MatrixFileError(f"{where}: non-finite value {item!r}")
    return complex(re, im)


def parse_matrix(obj: Any) -> MatrixFile:
    if not isinstance(obj, dict):
        raise MatrixFileError("top level: expected a JSON object with fields n, entries, label")
    if "n" not in obj:
        raise MatrixFileError("n: missing")
    n = obj["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise MatrixFileError(f"n: expected a positive integer, got {n!r}")
    if "entries" not in obj:
        raise MatrixFileError("entries: missing")
    entries = obj["entries"]
    if not isinstance(entries, list):
        raise MatrixFileError("entries: expected a list of [re, im] pairs")
    if len(entries) != n * n:
        raise MatrixFileError(f"entries: expected {n * n} pairs for n={n}, got {len(entries)}")
    label = obj.get("label")
    if label is not None and not isinstance(label, str):
        raise MatrixFileError(f"label: expected a string, got {label!r}")
    data = np.array([_pair_value(e, f"entries[{k}]") for k, e in enumerate(entries)], dtype=complex)
    return MatrixFile(n, data.reshape(n, n), label)


def load_matrix(path) -> MatrixFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatrixFileError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    return parse_matrix(obj)


def matrix_to_obj(a, label: str | None = None) -> dict:
    a = np.asarray(a, dtype=complex)
    obj = {"n": int(a.shape[0]), "entries": [[float(z.real), float(z.imag)] for z in a.ravel()]}
    if label is not None:
        obj["label"] = label
    return obj


def save_matrix(path, a, label: str | None = None) -> None:
    Path(path).write_text(json.dumps(matrix_to_obj(a, label)) + "\n")


# --------------------------------------------------------------------------
# envelopes


def _c(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _v(v) -> list | None:
    return None if v is None else [_c(z) for z in np.asarray(v).ravel()]


def _unc(p) -> complex:
    return complex(p[0], p[1])


def _unv(p):
    return None if p is None else np.array([_unc(z) for z in p], dtype=complex)


def witness_to_obj(w: WitnessRecord) -> dict:
    return {
        "theta": w.theta,
        "x": _v(w.x),
        "y": _v(w.y),
        "attainment_residual": w.attainment_residual,
        "sign_or_product_residual": w.sign_or_product_residual,
        "found": w.found,
    }


def witness_from_obj(d: dict) -> WitnessRecord:
    return WitnessRecord(d["theta"], _unv(d["x"]), _unv(d["y"]), d["attainment_residual"],
                         d["sign_or_product_residual"], d["found"])


def result_to_obj(result) -> dict:
    if isinstance(result, RadiusCertificate):
        return {"kind": "radius", "radius": result.radius, "theta_star": result.theta_star,
                "attaining_vector": _v(result.attaining_vector), "residual": result.residual}
    if isinstance(result, OrthogonalityReport):
        return {"kind": "orthogonality", "orthogonal": result.orthogonal, "rho": result.rho.value,
                "base_radius": result.base_radius, "min_value": result.min_value,
                "gamma_star": _c(result.gamma_star), "tolerance": result.tolerance,
                "degenerate": result.degenerate}
    if isinstance(result, ParallelismReport):
        return {"kind": "parallelism", "parallel": result.parallel, "rho": result.rho.value,
                "sum_radius": result.sum_radius, "max_value": result.max_value,
                "lambda_star": _c(result.lambda_star), "tolerance": result.tolerance,
                "degenerate": result.degenerate}
    if isinstance(result, OracleVerdict):
        return {"kind": "oracle", "agrees": result.agrees, "oracle_value": result.oracle_value,
                "main_value": result.main_value, "discrepancy": result.discrepancy,
                "main_decision": result.main_decision, "oracle_decision": result.oracle_decision,
                "resolution": result.resolution}
    if isinstance(result, dict):
        return {"kind": "table", **result}
    raise TypeError(f"cannot serialise {type(result).__name__}")


@dataclass
class ReportEnvelope:
    command: str
    inputs: list
    rho: float | None
    tolerance: float | None
    result: dict
    witnesses: list = field(default_factory=list)
    cross_check: dict | None = None

    def to_obj(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "rho": self.rho,
            "tolerance": self.tolerance,
            "result": self.result,
            "witnesses": [witness_to_obj(w) for w in self.witnesses],
            "cross_check": self.cross_check,
        }

    def __eq__(self, other):
        if not isinstance(other, ReportEnvelope):
            return NotImplemented
        return self.to_obj() == other.to_obj()


def envelope_to_json(env: ReportEnvelope) -> str:
    return json.dumps(env.to_obj(), indent=2, allow_nan=False) + "\n"


def envelope_from_json(text: str) -> ReportEnvelope:
    d = json.loads(text)
    return ReportEnvelope(d["command"], d["inputs"], d["rho"], d["tolerance"], d["result"],
                          [witness_from_obj(w) for w in d["witnesses"]], d["cross_check"])
