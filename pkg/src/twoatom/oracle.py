"""Brute-force bra-ket engine used as ground truth for the closed forms.

States are finite linear combinations of labeled product kets

    |spatial_1, internal_1 ; spatial_2, internal_2 ; n photons>

where a spatial label is one of the four center-of-mass states plus a recoil
flag.  Inner products expand every pair of terms and look spatial overlaps
up in the Gram table of the matching variant.  Nothing here uses the
closed-form expressions.
"""
from __future__ import annotations

from collections import defaultdict
from typing import NamedTuple

from .closed_form import Amplitude, Couplings, Statistics, SuperCoeffs
from .errors import CrossRecoilOverlap, ExcludedState
from .gram import INDEX, GramTable

PRUNE = 1e-15
EPS_EXCL = 1e-12


class FormalKet(NamedTuple):
    spatial_1: str
    recoil_1: bool
    internal_1: str
    spatial_2: str
    recoil_2: bool
    internal_2: str
    photons: int

    def swapped(self):
        return FormalKet(
            self.spatial_2, self.recoil_2, self.internal_2,
            self.spatial_1, self.recoil_1, self.internal_1,
            self.photons,
        )


def ket(s1, s2, i1="g", i2="g", photons=1, r1=False, r2=False):
    return FormalKet(s1, r1, i1, s2, r2, i2, photons)


class FormalState:
    """Complex linear combination of FormalKet terms."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        acc = defaultdict(complex)
        for k, amp in (terms or {}).items():
            acc[k] += amp
        self.terms = {k: v for k, v in acc.items() if abs(v) >= PRUNE}

    @classmethod
    def single(cls, k: FormalKet, amp=1.0):
        return cls({k: complex(amp)})

    def __add__(self, other):
        acc = defaultdict(complex, self.terms)
        for k, amp in other.terms.items():
            acc[k] += amp
        return FormalState(acc)

    def __mul__(self, scalar):
        return FormalState({k: scalar * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-other)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"FormalState({self.terms!r})"

    def swap_slots(self):
        return FormalState({k.swapped(): v for k, v in self.terms.items()})


def _spatial(bra_label, bra_recoil, ket_label, ket_recoil, g0, g1):
    if bra_recoil != ket_recoil:
        raise CrossRecoilOverlap(
            f"<{bra_label}{'*' if bra_recoil else ''}|{ket_label}{'*' if ket_recoil else ''}> is undefined"
        )
    table = g1 if bra_recoil else g0
    return table.entries[INDEX[bra_label], INDEX[ket_label]]


def inner_product(x: FormalState, y: FormalState, g0: GramTable, g1: GramTable) -> complex:
    total = 0j
    for kx, ax in x.terms.items():
        for ky, ay in y.terms.items():
            if (kx.internal_1 != ky.internal_1 or kx.internal_2 != ky.internal_2
                    or kx.photons != ky.photons):
                continue
            o1 = _spatial(kx.spatial_1, kx.recoil_1, ky.spatial_1, ky.recoil_1, g0, g1)
            o2 = _spatial(kx.spatial_2, kx.recoil_2, ky.spatial_2, ky.recoil_2, g0, g1)
            total += ax.conjugate() * ay * o1 * o2
    return total


def build_initial(coeffs: SuperCoeffs, stats: Statistics) -> FormalState:
    """Unnormalized two-atom state before absorption, one photon present."""
    a, b = coeffs.a, coeffs.b
    state = FormalState.single(ket("psi", "phi"), a) + FormalState.single(ket("varphi", "chi"), b)
    if stats is Statistics.DISTINGUISHABLE:
        return state
    return state + stats.sign() * state.swap_slots()


def apply_absorption(x: FormalState, k: Couplings, stats: Statistics) -> FormalState:
    """Absorption branch of the first-order interaction acting on ``x``.

    Each ground-state slot is excited, its spatial label is recoiled, and the
    photon is removed.  Terms without a photon are annihilated.
    """
    if stats is Statistics.DISTINGUISHABLE:
        k1, k2 = k.d_a, k.d_b
    else:
        k1 = k2 = k.d
    out = defaultdict(complex)
    for t, amp in x.terms.items():
        if t.photons != 1:
            continue
        if t.internal_1 == "g":
            out[t._replace(internal_1="e", recoil_1=True, photons=0)] += amp * k1
        if t.internal_2 == "g":
            out[t._replace(internal_2="e", recoil_2=True, photons=0)] += amp * k2
    return FormalState(out)


UNIT = Couplings(1.0, 1.0, 1.0)


def oracle_norms(coeffs: SuperCoeffs, g0: GramTable, g1: GramTable, stats: Statistics):
    """Squared norms of the unnormalized initial and final states."""
    initial = build_initial(coeffs, stats)
    final = apply_absorption(initial, UNIT, stats)
    return (
        inner_product(initial, initial, g0, g1).real,
        inner_product(final, final, g0, g1).real,
    )


def oracle_matrix_element(
    coeffs: SuperCoeffs, g0: GramTable, g1: GramTable, k: Couplings, stats: Statistics
) -> Amplitude:
    initial = build_initial(coeffs, stats)
    final = apply_absorption(initial, UNIT, stats)
    n0 = inner_product(initial, initial, g0, g1).real
    n1 = inner_product(final, final, g0, g1).real
    if n0 < EPS_EXCL or n1 < EPS_EXCL:
        raise ExcludedState(min(n0, n1))
    absorbed = apply_absorption(initial, k, stats)
    value = inner_product(final, absorbed, g0, g1) / (n0 ** 0.5 * n1 ** 0.5)
    return Amplitude(value)
