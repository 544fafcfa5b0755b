"""Entanglement generated by a lossless beam splitter from two squeezed vacua."""

from .gaussian import (
    BeamSplitterParams,
    CovarianceMatrix2,
    GaussianState,
    PhaseSpacePoint,
    SqueezingParam,
    ThermalEquivalent,
    covariance_elements,
    delta,
    entanglement,
    ppt_inseparable,
    thermal_equivalent,
)

__all__ = [
    "BeamSplitterParams",
    "CovarianceMatrix2",
    "GaussianState",
    "PhaseSpacePoint",
    "SqueezingParam",
    "ThermalEquivalent",
    "covariance_elements",
    "delta",
    "entanglement",
    "ppt_inseparable",
    "thermal_equivalent",
]
