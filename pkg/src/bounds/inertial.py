"""
Inertial bounds. Both are exact rationals since they only use the counts
(n+, n0, n-) of the adjacency spectrum.

    inertial:        1 + max(n+/n-, n-/n+)                 <= orthogonal rank
    weaker inertial: 1 + max(n+/(n- + n0), n-/(n+ + n0))   <= projective rank
"""
from fractions import Fraction

from src.bounds import BoundTarget, BoundValue, SpectralBound, SpectralProfile
from src.errors import ValidationError
from src.spectral import Inertia, Spectrum


def inertial_value(inertia: Inertia) -> Fraction:
    p, _, q = inertia
    if p == 0 or q == 0:
        return Fraction(1)
    return 1 + max(Fraction(p, q), Fraction(q, p))


def weaker_inertial_value(inertia: Inertia) -> Fraction:
    p, z, q = inertia
    if p + z + q == 0:
        raise ValidationError("weaker inertial bound needs at least one vertex")
    if q + z == 0 or p + z == 0:
        raise ValidationError(f"inertia {tuple(inertia)} has an empty denominator")
    return 1 + max(Fraction(p, q + z), Fraction(q, p + z))


def inertial_bound(s: Spectrum) -> BoundValue:
    """Lower bound for the orthogonal rank from the adjacency inertia."""
    degenerate = s.inertia.positive == 0 or s.inertia.negative == 0
    return BoundValue(
        "inertial", inertial_value(s.inertia), BoundTarget.XI, str(s.matrix), degenerate
    )


def weaker_inertial_bound(s: Spectrum) -> BoundValue:
    """Lower bound for the projective rank; equals the inertial bound when n0 = 0."""
    degenerate = s.inertia.positive == 0 and s.inertia.negative == 0
    return BoundValue(
        "weaker_inertial",
        weaker_inertial_value(s.inertia),
        BoundTarget.XI_F,
        str(s.matrix),
        degenerate,
    )


class InertialBound(SpectralBound):
    name = "inertial"
    target = BoundTarget.XI

    def evaluate(self, profile: SpectralProfile) -> BoundValue:
        return inertial_bound(profile.adjacency)


class WeakerInertialBound(SpectralBound):
    name = "weaker_inertial"
    target = BoundTarget.XI_F

    def evaluate(self, profile: SpectralProfile) -> BoundValue:
        return weaker_inertial_bound(profile.adjacency)
