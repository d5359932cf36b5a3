"""Center-of-mass state parametrization and overlap (Gram) tables.

The four center-of-mass states live in a two-dimensional space spanned by
``psi`` and ``psi_perp``::

    varphi = c psi + d psi_perp
    phi    = e psi + f psi_perp
    chi    = g phi + h phi_perp,    phi_perp = conj(f) psi - conj(e) psi_perp

Inner products are conjugate-linear in the first argument.  Recoiled
(post-absorption) overlaps are obtained from the unrecoiled ones with the
attenuation model ``r(s) = (rho + (1 - rho) s) s``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NormalizationError

LABELS = ("psi", "varphi", "phi", "chi")
INDEX = {label: i for i, label in enumerate(LABELS)}

UNRECOILED = "unrecoiled"
RECOILED = "recoiled"

NORM_TOL = 1e-9


@dataclass(frozen=True)
class CMParams:
    """Basis coefficients of the four center-of-mass states."""

    c: complex
    d: complex
    e: complex
    f: complex
    g: complex
    h: complex

    def __post_init__(self):
        for name in "cdefgh":
            value = complex(getattr(self, name))
            if not np.isfinite(value.real) or not np.isfinite(value.imag):
                raise NormalizationError(f"coefficient {name} is not finite")
            object.__setattr__(self, name, value)
        for x, y in (("c", "d"), ("e", "f"), ("g", "h")):
            norm = abs(getattr(self, x)) ** 2 + abs(getattr(self, y)) ** 2
            if abs(norm - 1.0) > NORM_TOL:
                raise NormalizationError(
                    f"|{x}|^2 + |{y}|^2 = {norm:.12g}, expected 1"
                )

    @classmethod
    def from_real(cls, c, e, g):
        """Complete real ``c, e, g`` with nonnegative ``d, f, h``."""
        comp = [np.sqrt(max(0.0, 1.0 - float(x) ** 2)) for x in (c, e, g)]
        return cls(c, comp[0], e, comp[1], g, comp[2])

    @property
    def chi_coords(self):
        """Components of ``chi`` along ``(psi, psi_perp)``."""
        c1 = self.g * self.e + self.h * self.f.conjugate()
        c2 = self.g * self.f - self.h * self.e.conjugate()
        return c1, c2

    def vectors(self):
        """Rows are the 2-component expansions of psi, varphi, phi, chi."""
        return np.array(
            [[1.0, 0.0], [self.c, self.d], [self.e, self.f], list(self.chi_coords)],
            dtype=complex,
        )

    def as_tuple(self):
        return (self.c, self.d, self.e, self.f, self.g, self.h)


def cm_params_new(c, d, e, f, g, h):
    return CMParams(c, d, e, f, g, h)


@dataclass(frozen=True)
class RecoilModel:
    """Recoil attenuation factor; ``rho = 1`` means no recoil."""

    rho: float = 0.9

    def __post_init__(self):
        rho = float(self.rho)
        if not 0.0 <= rho <= 1.0:
            raise ValueError(f"rho must lie in [0, 1], got {rho}")
        object.__setattr__(self, "rho", rho)


@dataclass(frozen=True, eq=False)
class GramTable:
    """4x4 Hermitian table of overlaps indexed by ``LABELS``.

    Only same-variant lookups exist: a recoiled and an unrecoiled state are
    never paired by this table.
    """

    entries: np.ndarray
    variant: str = UNRECOILED
    _index: dict = field(default_factory=lambda: INDEX, repr=False)

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"Gram table must be 4x4, got {m.shape}")
        if self.variant not in (UNRECOILED, RECOILED):
            raise ValueError(f"unknown variant {self.variant!r}")
        # enforce Hermiticity exactly from the upper triangle
        iu = np.triu_indices(4, 1)
        m[iu[1], iu[0]] = np.conj(m[iu])
        m[np.diag_indices(4)] = 1.0
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    def __getitem__(self, key):
        bra, ket = key
        return self.entries[self._index[bra], self._index[ket]]

    def __eq__(self, other):
        if not isinstance(other, GramTable):
            return NotImplemented
        return self.variant == other.variant and np.array_equal(self.entries, other.entries)

    __hash__ = None

    def is_psd(self, tol=1e-10):
        return bool(np.linalg.eigvalsh(self.entries).min() >= -tol)


def identity_gram(variant=UNRECOILED):
    """Table with all four states mutually orthogonal (needs a 4-D space)."""
    return GramTable(np.eye(4), variant)


def unrecoiled_gram(params: CMParams) -> GramTable:
    c, d, e, f = params.c, params.d, params.e, params.f
    chi1, chi2 = params.chi_coords
    m = np.eye(4, dtype=complex)
    m[0, 1] = c
    m[0, 2] = e
    m[0, 3] = chi1
    m[1, 2] = c.conjugate() * e + d.conjugate() * f
    m[1, 3] = c.conjugate() * chi1 + d.conjugate() * chi2
    m[2, 3] = params.g
    return GramTable(m, UNRECOILED)


def recoiled_overlap(s, model: RecoilModel):
    rho = model.rho
    return (rho + (1.0 - rho) * s) * s


def recoiled_gram(gram: GramTable, model: RecoilModel) -> GramTable:
    if gram.variant != UNRECOILED:
        raise ValueError("recoil is applied to an unrecoiled table only")
    m = np.eye(4, dtype=complex)
    iu = np.triu_indices(4, 1)
    m[iu] = recoiled_overlap(gram.entries[iu], model)
    return GramTable(m, RECOILED)


def gram_pair(params: CMParams, model: RecoilModel):
    """Unrecoiled and recoiled tables for one parameter set."""
    g0 = unrecoiled_gram(params)
    return g0, recoiled_gram(g0, model)
