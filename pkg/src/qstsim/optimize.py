"""Deterministic scalar maximization: coarse grid scan plus golden-section
refinement.  No randomness, no external state; identical inputs give
identical results."""

import math

import numpy as np

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Maximum of a unimodal function on [lo, hi] by golden-section search.

    The bracket shrinks by the golden ratio each iteration until its width
    drops below tol; returns the better interior point and its value.
    """
    if hi < lo:
        raise ValueError("need lo <= hi")
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def pick_best(candidates: "list[tuple[float, float]]") -> tuple[float, float]:
    """Highest value wins; ties within 1e-12 go to the smallest abscissa."""
    top = max(v for _, v in candidates)
    tied = [(x, v) for x, v in candidates if v >= top - 1e-12]
    return min(tied, key=lambda c: c[0])


def grid_then_golden_max(f, points: np.ndarray, tol: float) -> tuple[float, float]:
    """Scan f on a grid, then golden-section refine around the best point.

    Refinement is bracketed by the best point's grid neighbours and never
    returns a value below the best grid sample.  Grid ties within 1e-12 are
    broken toward the smallest abscissa.
    """
    points = np.asarray(points, dtype=float)
    values = np.array([f(x) for x in points])
    best = float(values.max())
    idx = int(np.nonzero(values >= best - 1e-12)[0][0])
    lo = float(points[max(idx - 1, 0)])
    hi = float(points[min(idx + 1, len(points) - 1)])
    refined = golden_section_max(f, lo, hi, tol)
    return pick_best([(float(points[idx]), best), refined])
