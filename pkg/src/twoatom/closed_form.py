"""Closed-form normalizations and first-order absorption matrix elements.

All quantities are in arbitrary units: the interaction time, hbar and the
dipole/polarization factors are folded into the couplings ``d_a, d_b, d``.
Rates are reported as ``|M|^2``.

Overlap notation inside this module: ``s_xy`` is the unrecoiled overlap
``<x|y>`` and ``r_xy`` the recoiled one ``<x*|y*>``, with
``p = psi, v = varphi, f = phi, c = chi``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateState, ExcludedState, NormalizationError
from .gram import CMParams, GramTable, RecoilModel, gram_pair

EPS_EXCL = 1e-12
COEFF_TOL = 1e-9


class Statistics(enum.Enum):
    DISTINGUISHABLE = "distinguishable"
    BOSON = "boson"
    FERMION = "fermion"

    @property
    def identical(self):
        return self is not Statistics.DISTINGUISHABLE

    def sign(self):
        if self is Statistics.BOSON:
            return 1
        if self is Statistics.FERMION:
            return -1
        raise ValueError("exchange sign is only defined for identical atoms")


@dataclass(frozen=True)
class SuperCoeffs:
    """Superposition amplitudes of the two dissociation branches."""

    a: complex
    b: complex

    def __post_init__(self):
        a, b = complex(self.a), complex(self.b)
        norm = abs(a) ** 2 + abs(b) ** 2
        if abs(norm - 1.0) > COEFF_TOL:
            raise NormalizationError(f"|a|^2 + |b|^2 = {norm:.12g}, expected 1")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_a(cls, a):
        """Real convention used by the sweeps: ``b = sqrt(1 - a^2) >= 0``."""
        a = float(a)
        return cls(a, np.sqrt(max(0.0, 1.0 - a * a)))


@dataclass(frozen=True)
class Couplings:
    """Effective transition amplitudes of atom A, atom B and of identical atoms."""

    d_a: complex = 0.9
    d_b: complex = 1.1
    d: complex = 1.0


@dataclass(frozen=True)
class Amplitude:
    value: complex

    @property
    def rate(self):
        return abs(self.value) ** 2


def _overlaps(g0: GramTable, g1: GramTable):
    u, r = g0.entries, g1.entries
    return (
        {"pv": u[0, 1], "pf": u[0, 2], "pc": u[0, 3], "vf": u[1, 2], "vc": u[1, 3], "fc": u[2, 3]},
        {"pv": r[0, 1], "pf": r[0, 2], "pc": r[0, 3], "vf": r[1, 2], "vc": r[1, 3], "fc": r[2, 3]},
    )


def _inv_sqrt(radicand, exc):
    if radicand < EPS_EXCL:
        raise exc
    return radicand ** -0.5


# radicands ----------------------------------------------------------------

def nd_radicand(coeffs: SuperCoeffs, gram: GramTable):
    ab = coeffs.a.conjugate() * coeffs.b
    return 1.0 + 2.0 * (ab * gram["psi", "varphi"] * gram["phi", "chi"]).real


def ni_radicand(coeffs: SuperCoeffs, gram: GramTable, stats: Statistics):
    """Squared norm of the unnormalized symmetrized initial state."""
    sg = stats.sign()
    a, b = coeffs.a, coeffs.b
    ab = a.conjugate() * b
    s = gram.entries
    return (
        2.0
        + sg * 2.0 * abs(a) ** 2 * abs(s[0, 2]) ** 2
        + sg * 2.0 * abs(b) ** 2 * abs(s[1, 3]) ** 2
        + 4.0 * (ab * s[0, 1] * s[2, 3]).real
        + sg * 4.0 * (ab * s[0, 3] * s[2, 1]).real
    )


def nstar_radicand(coeffs: SuperCoeffs, g0: GramTable, g1: GramTable):
    s, r = _overlaps(g0, g1)
    ab = coeffs.a.conjugate() * coeffs.b
    return 2.0 + 2.0 * (ab * r["pv"] * s["fc"]).real + 2.0 * (ab * s["pv"] * r["fc"]).real


def _identical_bracket(coeffs, g0, g1, sg):
    """Half the squared norm of the absorption image of the symmetrized state."""
    s, r = _overlaps(g0, g1)
    a, b = coeffs.a, coeffs.b
    ab = a.conjugate() * b
    ab_ = a * b.conjugate()
    return (
        2.0
        + 2.0 * (ab * r["pv"] * s["fc"]).real
        + 2.0 * (ab * s["pv"] * r["fc"]).real
        + sg * 2.0 * (ab * r["pc"] * np.conj(s["vf"])).real
        + sg * 2.0 * (ab_ * r["vf"] * np.conj(s["pc"])).real
        + sg * 2.0 * abs(a) ** 2 * (r["pf"] * np.conj(s["pf"])).real
        + sg * 2.0 * abs(b) ** 2 * (r["vc"] * np.conj(s["vc"])).real
    )


def nf_radicand(coeffs: SuperCoeffs, g0: GramTable, g1: GramTable, stats: Statistics):
    s, r = _overlaps(g0, g1)
    sg = stats.sign()
    a, b = coeffs.a, coeffs.b
    ab = a.conjugate() * b
    ab_ = a * b.conjugate()
    return (
        4.0
        + 4.0 * (ab * r["pv"] * s["fc"]).real
        + 4.0 * (ab_ * np.conj(s["pv"]) * np.conj(r["fc"])).real
        + sg * 4.0 * (ab * r["pc"] * np.conj(s["vf"])).real
        + sg * 4.0 * (ab_ * r["vf"] * np.conj(s["pc"])).real
        + sg * 4.0 * abs(a) ** 2 * (r["pf"] * np.conj(s["pf"])).real
        + sg * 4.0 * abs(b) ** 2 * (r["vc"] * np.conj(s["vc"])).real
    )


# normalizations -----------------------------------------------------------

def n_d(coeffs: SuperCoeffs, gram: GramTable) -> float:
    rad = nd_radicand(coeffs, gram)
    return _inv_sqrt(rad, DegenerateState(f"N_D radicand {rad:.3e} is not positive"))


def n_i(coeffs: SuperCoeffs, gram: GramTable, stats: Statistics) -> float:
    """Normalization of the symmetrized initial state.

    Raises ExcludedState when the unnormalized state vanishes.
    """
    rad = ni_radicand(coeffs, gram, stats)
    return _inv_sqrt(rad, ExcludedState(rad))


def n_star(coeffs: SuperCoeffs, g0: GramTable, g1: GramTable) -> float:
    rad = nstar_radicand(coeffs, g0, g1)
    return _inv_sqrt(rad, DegenerateState(f"N_* radicand {rad:.3e} is not positive"))


def n_f(coeffs: SuperCoeffs, g0: GramTable, g1: GramTable, stats: Statistics) -> float:
    rad = nf_radicand(coeffs, g0, g1, stats)
    return _inv_sqrt(rad, ExcludedState(rad))


# matrix elements ----------------------------------------------------------

def m_distinguishable(coeffs: SuperCoeffs, g0: GramTable, g1: GramTable, k: Couplings) -> Amplitude:
    s, r = _overlaps(g0, g1)
    ab = coeffs.a.conjugate() * coeffs.b
    # couplings stay outside Re(): that is what the term-by-term expansion gives
    bracket = (
        k.d_a + k.d_b
        + k.d_a * 2.0 * (ab * r["pv"] * s["fc"]).real
        + k.d_b * 2.0 * (ab * s["pv"] * r["fc"]).real
    )
    return Amplitude(n_star(coeffs, g0, g1) * n_d(coeffs, g0) * bracket)


def m_identical(
    coeffs: SuperCoeffs, g0: GramTable, g1: GramTable, k: Couplings, stats: Statistics
) -> Amplitude:
    ni = n_i(coeffs, g0, stats)
    nf = n_f(coeffs, g0, g1, stats)
    bracket = _identical_bracket(coeffs, g0, g1, stats.sign())
    return Amplitude(2.0 * nf * ni * k.d * bracket)


def matrix_element(coeffs, g0, g1, k, stats: Statistics) -> Amplitude:
    if stats is Statistics.DISTINGUISHABLE:
        return m_distinguishable(coeffs, g0, g1, k)
    return m_identical(coeffs, g0, g1, k, stats)


# bundled rates ------------------------------------------------------------

@dataclass(frozen=True)
class RateTriplet:
    """Rates of the three pipelines at one superposition; ``None`` marks exclusion."""

    rate_distinguishable: float | None
    rate_boson: float | None
    rate_fermion: float | None
    nf_boson: float
    nf_fermion: float

    @property
    def excluded_boson(self):
        return self.rate_boson is None

    @property
    def excluded_fermion(self):
        return self.rate_fermion is None


def rates_from_grams(coeffs, g0, g1, k=Couplings(), nf_cutoff=EPS_EXCL) -> RateTriplet:
    """Rates for precomputed tables.

    Identical-atom points whose initial-state radicand is below ``nf_cutoff``
    are reported as excluded instead of evaluated.
    """
    try:
        rate_d = m_distinguishable(coeffs, g0, g1, k).rate
    except DegenerateState:
        rate_d = None
    nf = {}
    rates = {}
    for stats in (Statistics.BOSON, Statistics.FERMION):
        nf[stats] = float(ni_radicand(coeffs, g0, stats))
        if nf[stats] < max(nf_cutoff, EPS_EXCL):
            rates[stats] = None
            continue
        try:
            rates[stats] = m_identical(coeffs, g0, g1, k, stats).rate
        except ExcludedState:
            rates[stats] = None
    return RateTriplet(
        rate_d,
        rates[Statistics.BOSON],
        rates[Statistics.FERMION],
        nf[Statistics.BOSON],
        nf[Statistics.FERMION],
    )


def rate_triplet(
    coeffs: SuperCoeffs,
    params: CMParams,
    model: RecoilModel = RecoilModel(),
    k: Couplings = Couplings(),
    nf_cutoff=EPS_EXCL,
) -> RateTriplet:
    g0, g1 = gram_pair(params, model)
    return rates_from_grams(coeffs, g0, g1, k, nf_cutoff)
