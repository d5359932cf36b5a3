"""Rate curves over the superposition coefficient and the figure datasets."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .closed_form import Couplings, SuperCoeffs, rates_from_grams
from .errors import EmptySeries, UnknownFigure
from .gram import CMParams, RecoilModel, gram_pair

DEFAULT_POINTS = 1001
# grid points this close to an excluded state are flagged, not evaluated
NEAR_EXCLUSION_NF = 1e-6


@dataclass(frozen=True, eq=False)
class RateCurve:
    grid: np.ndarray
    rate_distinguishable: np.ndarray
    rate_boson: np.ndarray
    rate_fermion: np.ndarray
    nf_boson: np.ndarray
    nf_fermion: np.ndarray
    excluded_boson: np.ndarray
    excluded_fermion: np.ndarray
    params: CMParams
    rho: float
    couplings: Couplings

    def __len__(self):
        return len(self.grid)


@dataclass(frozen=True)
class FigureSpec:
    id: str
    params: CMParams
    rho: float = 0.9
    couplings: Couplings = Couplings(0.9, 1.1, 1.0)


FIGURES = {
    "fig1": FigureSpec("fig1", CMParams.from_real(0.8, 1 / np.sqrt(2), 0.8)),
    "fig2_left": FigureSpec("fig2_left", CMParams.from_real(0.9, 0.3, 0.9)),
    "fig2_right": FigureSpec("fig2_right", CMParams.from_real(0.5, 0.5, 0.5)),
}
ALIASES = {"fig1": "fig1", "fig2l": "fig2_left", "fig2r": "fig2_right"}


def get_figure(name) -> FigureSpec:
    if isinstance(name, FigureSpec):
        return name
    key = ALIASES.get(name, name)
    try:
        return FIGURES[key]
    except KeyError:
        raise UnknownFigure(f"unknown figure id {name!r}; expected one of {sorted(ALIASES)}") from None


def _nan_if_none(x):
    return np.nan if x is None else float(x)


def sweep_rates(
    params: CMParams,
    model: RecoilModel = RecoilModel(),
    k: Couplings = Couplings(),
    n_points: int = DEFAULT_POINTS,
    nf_cutoff: float = NEAR_EXCLUSION_NF,
) -> RateCurve:
    """Evaluate the three rates on a uniform grid ``a in [0, 1]``, ``b = sqrt(1 - a^2)``."""
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    grid = np.linspace(0.0, 1.0, n_points)
    g0, g1 = gram_pair(params, model)
    cols = {name: np.empty(n_points) for name in ("d", "b", "f", "nfb", "nff")}
    for i, a in enumerate(grid):
        t = rates_from_grams(SuperCoeffs.from_a(a), g0, g1, k, nf_cutoff)
        cols["d"][i] = _nan_if_none(t.rate_distinguishable)
        cols["b"][i] = _nan_if_none(t.rate_boson)
        cols["f"][i] = _nan_if_none(t.rate_fermion)
        cols["nfb"][i] = t.nf_boson
        cols["nff"][i] = t.nf_fermion
    return RateCurve(
        grid=grid,
        rate_distinguishable=cols["d"],
        rate_boson=cols["b"],
        rate_fermion=cols["f"],
        nf_boson=cols["nfb"],
        nf_fermion=cols["nff"],
        excluded_boson=np.isnan(cols["b"]),
        excluded_fermion=np.isnan(cols["f"]),
        params=params,
        rho=model.rho,
        couplings=k,
    )


def figure_dataset(spec, n_points: int = DEFAULT_POINTS) -> RateCurve:
    spec = get_figure(spec)
    return sweep_rates(spec.params, RecoilModel(spec.rho), spec.couplings, n_points)


def flatness_metric(series) -> float:
    """Spread ``(max - min) / mean`` over the defined (non-nan) entries."""
    x = np.asarray(series, dtype=float)
    x = x[np.isfinite(x)]
    if x.size < 2:
        raise EmptySeries("flatness needs at least two defined points")
    return float((x.max() - x.min()) / x.mean())
