"""Exception types shared across the package.

Every violation carries the exact rational witness that triggered it, so a
failed check can be re-verified independently.
"""

from __future__ import annotations

from fractions import Fraction


class BVCodesError(Exception):
    """Base class for all domain errors."""


class ZeroPolynomial(BVCodesError):
    """Operation undefined for the identically-zero polynomial."""


class RateViolation(BVCodesError):
    """A Cauchy-rate inequality ||p_k - p_{k+1}||_1 <= 2^-k failed."""

    def __init__(self, level: int, norm_lower_bound: Fraction, bound: Fraction):
        self.level = level
        self.norm_lower_bound = norm_lower_bound
        self.bound = bound
        super().__init__(
            f"rate violated at level {level}: ||p_{level} - p_{level + 1}||_1 "
            f">= {norm_lower_bound} > {bound}"
        )


class VariationViolation(BVCodesError):
    """A stored polynomial's variation exceeds the declared bound v."""

    def __init__(self, level: int, variation_lower_bound: Fraction, v: Fraction):
        self.level = level
        self.variation_lower_bound = variation_lower_bound
        self.v = v
        super().__init__(
            f"variation bound violated at level {level}: "
            f"int|p_{level}'| >= {variation_lower_bound} > v = {v}"
        )


class DepthExhausted(BVCodesError):
    """A finite prefix is too short for the requested operation."""


class GapTooSmall(BVCodesError):
    """Smoothing radius does not fit between breakpoints."""


class ProjectionBudgetExceeded(BVCodesError):
    """No polynomial within the degree budget met the error target."""

    def __init__(self, max_degree: int, best_error: Fraction | None):
        self.max_degree = max_degree
        self.best_error = best_error
        super().__init__(
            f"no polynomial of degree <= {max_degree} met the target "
            f"(best exact error: {best_error})"
        )


class DimensionTooSmall(BVCodesError):
    """Product-space truncation too coarse for the requested certificate depth."""


class GridTooCoarse(BVCodesError):
    """Sample grid coarser than the declared modulus requires."""

    def __init__(self, family: int, level: int):
        self.family = family
        self.level = level
        super().__init__(f"grid for family {family} too coarse at level {level}")


class HypothesisViolation(BVCodesError):
    """A selection hypothesis (norm or variation bound) failed on an input."""

    def __init__(self, which: str, index: int, witness: Fraction):
        self.which = which
        self.index = index
        self.witness = witness
        super().__init__(
            f"hypothesis '{which}' violated by input {index}: witness {witness}"
        )


class BoundaryViolation(BVCodesError):
    """Test function does not vanish at the domain endpoints."""


class NotAGadgetCode(BVCodesError):
    """Endpoint decoding requested on a code without gadget provenance."""


class PrecisionExhausted(BVCodesError):
    """An exact comparison could not be decided within the refinement cap."""
