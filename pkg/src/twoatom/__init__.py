"""Absorption rates of entangled two-atom systems with photon recoil.

Distinguishable, boson and fermion pairs prepared in superpositions of
non-orthogonal center-of-mass states; includes a brute-force bra-ket oracle
and tools to locate entanglement-induced excluded states.
"""
from .closed_form import (
    Amplitude,
    Couplings,
    RateTriplet,
    Statistics,
    SuperCoeffs,
    m_distinguishable,
    m_identical,
    n_d,
    n_f,
    n_i,
    n_star,
    rate_triplet,
)
from .errors import (
    CrossRecoilOverlap,
    DegenerateManifold,
    DegenerateState,
    EmptySeries,
    ExcludedState,
    NoValidPoints,
    NormalizationError,
    UnknownFigure,
)
from .gram import CMParams, GramTable, RecoilModel, recoiled_gram, recoiled_overlap, unrecoiled_gram

__version__ = "0.1.0"
