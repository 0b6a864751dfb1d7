"""Shared result record for inequality and identity checks.

Every verification in the toolkit reports through CheckReport so the CLI
and the experiment harness can serialize results uniformly:
{"lhs": ..., "rhs": ..., "ratio": ..., "tol": ..., "pass": bool, "meta": {...}}.
"""

from dataclasses import dataclass, field

from .scalars import scalar_to_json


def _jsonify(value):
    if isinstance(value, dict):
        return {k: _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonify(v) for v in value]
    if isinstance(value, (bool, str, int, float)) or value is None:
        return value
    return scalar_to_json(value)


@dataclass(frozen=True)
class CheckReport:
    lhs: object
    rhs: object
    ratio: object
    tol: object
    passed: bool
    meta: dict = field(default_factory=dict)

    def to_json_dict(self):
        return {
            "lhs": _jsonify(self.lhs),
            "rhs": _jsonify(self.rhs),
            "ratio": _jsonify(self.ratio),
            "tol": _jsonify(self.tol),
            "pass": self.passed,
            "meta": _jsonify(self.meta),
        }


def comparison_report(lhs, rhs, *, tol=0, meta=None):
    """Report for an inequality lhs <= rhs (+ tol)."""
    ratio = lhs / rhs if rhs != 0 else None
    return CheckReport(lhs, rhs, ratio, tol, bool(lhs <= rhs + tol), dict(meta or {}))


def equality_report(lhs, rhs, *, tol=0, meta=None):
    """Report for an identity lhs = rhs (within tol)."""
    ratio = lhs / rhs if rhs != 0 else None
    return CheckReport(lhs, rhs, ratio, tol, bool(abs(lhs - rhs) <= tol), dict(meta or {}))
