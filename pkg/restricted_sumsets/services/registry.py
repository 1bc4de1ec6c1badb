"""Static description of every theorem a scan can check."""

from dataclasses import dataclass

from restricted_sumsets.constants import Restriction, TheoremId
from restricted_sumsets.core.bounds import cor_1_1_min_size, resolve_kind


@dataclass(frozen=True)
class TheoremSpec:
    """How instances of one statement are built and evaluated."""

    theorem: TheoremId
    restriction: Restriction
    # One set A used for every coordinate
    common_set: bool = False
    value_set: bool = False
    # Plain sums x_1 + ... + x_n, coefficient vector fixed to ones
    coefficient_free: bool = False
    # Subsets may be replaced by affine orbit representatives
    affine_invariant: bool = False
    # Per-set sizes must be strictly increasing
    increasing_sizes: bool = False
    # Takes a random restricting polynomial P
    uses_poly: bool = False
    # Takes the scan's m values
    uses_m: bool = False

    def default_sizes(self, p: int, n: int) -> list[int]:
        """Set sizes scanned when the box does not name any."""
        if self.theorem is TheoremId.THM_1_2:
            return list(range(max(1, 2 * n - 2), p + 1))
        if self.theorem is TheoremId.COR_1_1:
            return list(range(cor_1_1_min_size(p), p + 1))
        return list(range(1, p + 1))


_SPECS = [
    TheoremSpec(TheoremId.CAUCHY_DAVENPORT, Restriction.NONE, affine_invariant=True),
    TheoremSpec(
        TheoremId.DIAS_DA_SILVA_HAMIDOUNE,
        Restriction.DISTINCT,
        common_set=True,
        coefficient_free=True,
        affine_invariant=True,
    ),
    TheoremSpec(
        TheoremId.ALON_NATHANSON_RUZSA,
        Restriction.DISTINCT,
        coefficient_free=True,
        affine_invariant=True,
        increasing_sizes=True,
    ),
    TheoremSpec(TheoremId.CONJ_1_1, Restriction.DISTINCT, common_set=True, affine_invariant=True),
    TheoremSpec(TheoremId.THM_1_1, Restriction.DISTINCT, common_set=True, affine_invariant=True),
    TheoremSpec(TheoremId.THM_1_2, Restriction.DISTINCT, affine_invariant=True),
    TheoremSpec(TheoremId.EQ_1_8, Restriction.DISTINCT, common_set=True, affine_invariant=True),
    TheoremSpec(TheoremId.COR_1_1, Restriction.DISTINCT, common_set=True, affine_invariant=True),
    TheoremSpec(TheoremId.THM_1_3, Restriction.POLYNOMIAL, coefficient_free=True, uses_poly=True),
    TheoremSpec(TheoremId.COR_1_2_F, Restriction.COLLISION, common_set=True, uses_m=True),
    TheoremSpec(TheoremId.COR_1_2_DIFF, Restriction.DIFFERENCE, common_set=True, uses_m=True),
    TheoremSpec(TheoremId.COR_1_3, Restriction.DIFFERENCE, uses_m=True),
    TheoremSpec(TheoremId.THM_5_1_I, Restriction.NONE, value_set=True),
    TheoremSpec(TheoremId.THM_5_1_II, Restriction.DISTINCT, value_set=True),
    TheoremSpec(TheoremId.THM_5_2, Restriction.POLYNOMIAL, value_set=True, uses_poly=True),
    TheoremSpec(TheoremId.COR_5_1, Restriction.DISTINCT, value_set=True),
    TheoremSpec(TheoremId.COR_5_2, Restriction.DISTINCT, common_set=True, value_set=True),
    TheoremSpec(TheoremId.CONJ_5_2, Restriction.DISTINCT, common_set=True, value_set=True),
]

THEOREMS: dict[TheoremId, TheoremSpec] = {spec.theorem: spec for spec in _SPECS}


def get_theorem_spec(theorem: TheoremId | str) -> TheoremSpec:
    """Look up the spec of a theorem id or alias.

    Raises:
        PreconditionError: If the id is unknown
    """
    return THEOREMS[resolve_kind(theorem)]
