"""Exact Levi-Civita, curvature and Dirac computations on frame-presented geometries."""

import json as _json

from ._ncgcurv import (
    DivisionByZero,
    Geometry,
    GeometryParseError,
    GeometryValidationError,
    PoleError,
    Scalar,
    ScalarParseError,
    builtin,
    builtin_names,
    load_geometry,
    parse_geometry,
    resolve_geometry,
    run_cli,
    scalar_curvature,
    solve_levi_civita,
    validate,
    verify_theta_theorems,
    weitzenbock_residue,
)


def report(*args):
    """Run a CLI subcommand and return (exit code, parsed JSON report)."""
    code, out, err = run_cli([*args, "--json", "-"])
    if code == 2:
        raise ValueError(err.strip())
    return code, _json.loads(out)


__all__ = [name for name in dir() if not name.startswith("_")]
