"""Run reports and their JSON encoding."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import FormatError

PASS = "Pass"
FAIL = "Fail"
PASS_WITH_WARNINGS = "PassWithWarnings"


def encode_complex(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def encode_matrix(m) -> dict:
    m = np.asarray(m, dtype=complex)
    return {"dim": int(m.shape[0]), "re": m.real.tolist(), "im": m.imag.tolist()}


def decode_matrix(obj) -> np.ndarray:
    try:
        dim = obj["dim"]
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad matrix object: {exc}") from exc
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise FormatError(f"'dim' must be a positive integer, got {dim!r}")
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise FormatError(f"'re' and 'im' must be {dim}x{dim}, got {re.shape} and {im.shape}")
    return re + 1j * im


@dataclass
class RunReport:
    command: str
    inputs: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    signatures: dict = field(default_factory=dict)
    states: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def check(self, key: str, value: float, bound: float) -> None:
        self.residuals[key] = float(value)
        self.bounds[key] = float(bound)

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.residuals.items() if not v <= self.bounds[k]]

    @property
    def verdict(self) -> str:
        if self.failures:
            return FAIL
        return PASS_WITH_WARNINGS if self.warnings else PASS

    @property
    def exit_code(self) -> int:
        return 1 if self.verdict == FAIL else 0

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "verdict": self.verdict,
            "inputs": self.inputs,
            "tolerances": self.tolerances,
            "residuals": self.residuals,
            "bounds": self.bounds,
            "signatures": self.signatures,
            "states": self.states,
            "warnings": self.warnings,
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"{self.command}: {self.verdict}"]
        for k, v in self.inputs.items():
            lines.append(f"  input {k} = {v}")
        if self.residuals:
            lines.append("  residual                          value       bound   ok")
            for k, v in self.residuals.items():
                ok = "yes" if v <= self.bounds[k] else "NO"
                lines.append(f"  {k:<30} {v:10.3e}  {self.bounds[k]:10.3e}   {ok}")
        for k, sig in self.signatures.items():
            shown = " ".join("+" if s > 0 else "-" for s in sig) if isinstance(sig, list) else sig
            lines.append(f"  signature {k}: {shown}")
        if self.states:
            lines.append("  n        energy  nodes  type  sign  agree")
            for st in self.states:
                sign = {1: "+", -1: "-", None: "?"}[st["sign_product"]]
                lines.append(
                    f"  {st['n']:<3d} {st['energy']:12.6f}  {st['node_count']:5d}  {st['classification']:>4}"
                    f"  {sign:>4}  {st['agreement']!s:>5}"
                )
        for w in self.warnings:
            lines.append(f"  warning: {w}")
        return "\n".join(lines)
