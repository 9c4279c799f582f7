"""Exact reduction and resultant certification for cohomogeneity-one profile curves."""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Mapping

from . import _core
from ._core import (
    BoundaryError,
    DomainError,
    ParseError,
    PipelineError,
    UnsupportedCaseError,
    ValidationError,
)

__all__ = [
    "BoundaryError",
    "DomainError",
    "ParseError",
    "PipelineError",
    "UnsupportedCaseError",
    "ValidationError",
    "cases",
    "certify",
    "derive",
    "integrate",
    "registry_path",
    "run_cli",
    "verify_paper_example",
]

_PACKAGED_REGISTRY = Path(__file__).with_name("data") / "cases.json"


def registry_path(registry: str | os.PathLike | None = None) -> Path:
    """Explicit path, else $BIHARM_REGISTRY, else the packaged table."""
    if registry is not None:
        return Path(registry)
    if os.environ.get("BIHARM_REGISTRY"):
        return Path(os.environ["BIHARM_REGISTRY"])
    if _PACKAGED_REGISTRY.is_file():
        return _PACKAGED_REGISTRY
    return Path(_core.default_registry_path())


def _params(params: Mapping[str, int] | None) -> dict[str, int]:
    return {str(k): int(v) for k, v in (params or {}).items()}


def cases(registry=None) -> list[dict]:
    """Every registry row at its default parameters."""
    return json.loads(_core.cases_json(registry_path(registry)))


def derive(case: str, params: Mapping[str, int] | None = None, registry=None) -> dict:
    """Walls, Q_d, V^2, R and the A/C coefficient polynomials as canonical text."""
    return json.loads(_core.derive_json(registry_path(registry), case, _params(params)))


def certify(case: str, params: Mapping[str, int] | None = None, precision_bits: int = 200, registry=None) -> dict:
    """Certificate object with the same schema as the CLI output."""
    return json.loads(_core.certify_json(registry_path(registry), case, _params(params), precision_bits))


def integrate(
    case: str,
    mode: str = "biharmonic-candidate",
    x0: float = 1.0,
    y0: float = 0.3,
    angle: float = 0.7,
    steps: int = 10000,
    h: float = 1e-4,
    wall_epsilon: float = 1e-9,
    params: Mapping[str, int] | None = None,
    registry=None,
) -> dict:
    """Trajectory columns (s, x, y, xd, yd, f, A2, res_poly, res_ode) plus diagnostics."""
    return _core.integrate(
        registry_path(registry), case, _params(params), mode, x0, y0, angle, steps, h, wall_epsilon
    )


def verify_paper_example(case: str = "U5", registry=None) -> dict:
    return _core.verify_paper_example(registry_path(registry), case)


def run_cli(*args: str) -> tuple[int, str, str]:
    """Run the command-line front end in-process; returns (exit code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
