"""Composite-consumption kernel: aggregator interface, CES instance, housing utility.

The equilibrium machinery is generic in a linearly homogeneous aggregator
c(y, z) over young- and old-age consumption: it only ever calls ``value``,
``partials``, ``second_partials``, ``mrs`` and ``eis``. The CES family is the
shipped instance; its unit-elasticity member (Cobb-Douglas) is an exact
branch, never a numerical limit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = ["Aggregator", "CesAggregator", "HousingUtility"]


def _check_point(y: float, z: float) -> None:
    if not (y > 0.0 and math.isfinite(y)):
        raise DomainError(f"y must be positive and finite, got {y!r}")
    if not (z > 0.0 and math.isfinite(z)):
        raise DomainError(f"z must be positive and finite, got {z!r}")


class Aggregator:
    """Interface for a linearly homogeneous consumption aggregator c(y, z).

    Implementations must provide ``value``, ``partials`` and
    ``second_partials``; ``mrs`` and ``eis`` are derived. Degree-one
    homogeneity of ``value`` (hence degree-zero partials) is assumed
    throughout the solver.
    """

    def value(self, y: float, z: float) -> float:
        """Composite consumption c(y, z)."""
        raise NotImplementedError

    def partials(self, y: float, z: float) -> tuple[float, float]:
        """First partial derivatives (c_y, c_z), both positive."""
        raise NotImplementedError

    def second_partials(self, y: float, z: float) -> tuple[float, float, float]:
        """Second partial derivatives (c_yy, c_yz, c_zz), signs (-, +, -)."""
        raise NotImplementedError

    def mrs(self, y: float, z: float) -> float:
        """Marginal rate of substitution c_y / c_z.

        Strictly decreasing in y and increasing in z; homogeneous of
        degree zero.
        """
        cy, cz = self.partials(y, z)
        return cy / cz

    def eis(self, y: float, z: float) -> float:
        """Elasticity of intertemporal substitution c_y c_z / (c c_yz)."""
        c = self.value(y, z)
        cy, cz = self.partials(y, z)
        cyz = self.second_partials(y, z)[1]
        return cy * cz / (c * cyz)


@dataclass(frozen=True)
class CesAggregator(Aggregator):
    """CES aggregator c(y, z) = ((1-beta) y^(1-sigma) + beta z^(1-sigma))^(1/(1-sigma)).

    Parameters
    ----------
    beta : float
        Weight on old-age consumption, in (0, 1).
    sigma : float
        Inverse elasticity of intertemporal substitution, positive.
        ``sigma == 1`` selects the exact Cobb-Douglas branch
        c(y, z) = y^(1-beta) z^beta.
    """

    beta: float
    sigma: float

    def __post_init__(self):
        if not (0.0 < self.beta < 1.0):
            raise DomainError(f"beta must lie in (0, 1), got {self.beta!r}")
        if not (self.sigma > 0.0 and math.isfinite(self.sigma)):
            raise DomainError(f"sigma must be positive and finite, got {self.sigma!r}")

    def value(self, y: float, z: float) -> float:
        _check_point(y, z)
        if self.sigma == 1.0:
            return y ** (1.0 - self.beta) * z ** self.beta
        e = 1.0 - self.sigma
        # log-sum-exp with max factoring keeps the power sum in range for
        # extreme sigma or widely scaled inputs
        ly = e * math.log(y)
        lz = e * math.log(z)
        top = max(ly, lz)
        inner = (1.0 - self.beta) * math.exp(ly - top) + self.beta * math.exp(lz - top)
        return math.exp((top + math.log(inner)) / e)

    def partials(self, y: float, z: float) -> tuple[float, float]:
        c = self.value(y, z)
        cy = (1.0 - self.beta) * (y / c) ** (-self.sigma)
        cz = self.beta * (z / c) ** (-self.sigma)
        return cy, cz

    def second_partials(self, y: float, z: float) -> tuple[float, float, float]:
        # cross partial from the CES curvature identity c_yz = sigma c_y c_z / c;
        # the rest follow from degree-zero homogeneity of the first partials
        c = self.value(y, z)
        cy, cz = self.partials(y, z)
        cyz = self.sigma * cy * cz / c
        cyy = -(z / y) * cyz
        czz = -(y / z) * cyz
        return cyy, cyz, czz


@dataclass(frozen=True)
class HousingUtility:
    """Curvature and level of the utility flow from the fixed housing stock.

    Parameters
    ----------
    gamma : float
        Inverse elasticity of substitution between composite consumption
        and housing, positive. ``gamma < 1``, ``== 1`` and ``> 1`` select
        qualitatively different long-run branches.
    m : float
        Marginal utility of one housing unit at the fixed unit stock,
        positive.
    """

    gamma: float
    m: float

    def __post_init__(self):
        if not (self.gamma > 0.0 and math.isfinite(self.gamma)):
            raise DomainError(f"gamma must be positive and finite, got {self.gamma!r}")
        if not (self.m > 0.0 and math.isfinite(self.m)):
            raise DomainError(f"m must be positive and finite, got {self.m!r}")

    @property
    def branch(self) -> str:
        """Curvature branch tag: 'below_one', 'log' or 'above_one'."""
        if self.gamma < 1.0:
            return "below_one"
        if self.gamma == 1.0:
            return "log"
        return "above_one"
