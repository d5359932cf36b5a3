"""Excluded states of the fermion pair and the rate peaks around them.

In the two-dimensional spatial model the antisymmetric subspace of two atoms
is one-dimensional, so the unnormalized fermion state is a scalar multiple of
``psi (x) psi_perp - psi_perp (x) psi``.  That scalar is

    a f + b (c chi_2 - d chi_1)

with ``(chi_1, chi_2)`` the components of ``chi``; for real parameters this
reads ``a f + b c (g f - e h) - b d (g e + h f)``.  Exclusion happens where it
vanishes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .closed_form import Statistics, SuperCoeffs, ni_radicand
from .errors import DegenerateManifold, NoValidPoints
from .gram import CMParams, unrecoiled_gram
from .sweep import RateCurve

ZERO_TOL = 1e-12


@dataclass(frozen=True)
class ExclusionSolution:
    a: complex
    b: complex
    residual: float
    nf_at_solution: float


@dataclass(frozen=True)
class PeakReport:
    a_peak: float
    rate_peak: float
    baseline_distinguishable: float
    baseline_boson: float
    ratio: float


def _b_coefficient(params: CMParams):
    chi1, chi2 = params.chi_coords
    return params.c * chi2 - params.d * chi1


def exclusion_residual(coeffs: SuperCoeffs, params: CMParams) -> float:
    return abs(coeffs.a * params.f + coeffs.b * _b_coefficient(params))


def nf_value(coeffs: SuperCoeffs, params: CMParams) -> float:
    """Inverse squared fermion normalization ``1 / N_I^2``."""
    return float(ni_radicand(coeffs, unrecoiled_gram(params), Statistics.FERMION))


def solve_exclusion(params: CMParams) -> ExclusionSolution | None:
    """Excluded superposition with real nonnegative ``a, b``, if one exists.

    Returns ``None`` when the only solutions need a negative or complex
    ratio ``a / b``.
    """
    k = _b_coefficient(params)
    f = params.f
    if abs(f) < ZERO_TOL:
        if abs(k) < ZERO_TOL:
            raise DegenerateManifold("f = 0 and the b-coefficient vanishes: every (a, b) is excluded")
        coeffs = SuperCoeffs(1.0, 0.0)
    else:
        t = -k / f
        if abs(t.imag) > ZERO_TOL or t.real < 0:
            return None
        t = t.real
        norm = np.sqrt(1.0 + t * t)
        coeffs = SuperCoeffs(t / norm, 1.0 / norm)
    return ExclusionSolution(
        coeffs.a, coeffs.b, exclusion_residual(coeffs, params), nf_value(coeffs, params)
    )


def nf_curve(params: CMParams, grid):
    """``(a, NF)`` pairs along ``b = sqrt(1 - a^2)``."""
    g0 = unrecoiled_gram(params)
    return [
        (float(a), float(ni_radicand(SuperCoeffs.from_a(a), g0, Statistics.FERMION)))
        for a in grid
    ]


def detect_peak(curve: RateCurve) -> PeakReport:
    rf = curve.rate_fermion
    valid = np.isfinite(rf)
    if not valid.any():
        raise NoValidPoints("every fermion point is excluded")
    i = int(np.nanargmax(np.where(valid, rf, -np.inf)))
    rd = float(curve.rate_distinguishable[i])
    rb = float(curve.rate_boson[i])
    base = np.nanmax([rd, rb])
    return PeakReport(float(curve.grid[i]), float(rf[i]), rd, rb, float(rf[i] / base))
