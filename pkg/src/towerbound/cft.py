"""Class-field-theoretic bounds: generator ranks, relation slack, the
Golod-Shafarevich infinitude criterion, genus via the conductor-discriminant
formula, and exact rational lower bounds on the Ihara constant A(q).

Everything here is exact integer or rational arithmetic; decimal strings are
produced only for display and never compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .curve import PlaceSpectrum
from .errors import (
    DegenerateGenus,
    InconsistentModel,
    NotCertified,
    ParityViolation,
    SideConditionViolated,
)
from .ff import FieldParams


def local_unit_rank(params: FieldParams, f: int, nu: int) -> int:
    """p-rank of U^(1)/U^(nu) at a place of degree f: f*e*(nu - 1 - floor((nu-1)/p))."""
    if f < 1 or nu < 1:
        raise ValueError("need degree f >= 1 and exponent nu >= 1")
    k = nu - 1
    return f * params.e * (k - k // params.p)


def local_rd_bound(params: FieldParams, f: int, nu: int) -> int:
    """Binomial bound on r_p(G_p) - d_p(G_p) for an abelian local extension
    of ramification depth at most nu: binom(e*f*(nu-1) + 1, 2)."""
    if f < 1 or nu < 2:
        raise ValueError("need degree f >= 1 and exponent nu >= 2")
    m = params.e * f * (nu - 1)
    return m * (m + 1) // 2


@dataclass(frozen=True)
class RamificationPlan:
    """A conductor choice: entries (degree f, multiplicity, exponent nu) plus
    the number t of completely split rational places.

    Exponents nu = 1 are rejected outright (they contribute zero local rank,
    so such an entry can never help).  When a spectrum of the underlying
    field is supplied, multiplicities are checked against the available
    place counts and t against the rational places left over for T.
    """

    params: FieldParams
    entries: tuple[tuple[int, int, int], ...]  # (f, count, nu)
    t: int
    available_spectrum: PlaceSpectrum | None = None

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("t must be positive: the tower needs a nonempty split set")
        for f, count, nu in self.entries:
            if f < 1 or count < 1:
                raise ValueError(f"bad plan entry (f={f}, count={count}, nu={nu})")
            if nu < 2:
                raise ValueError(
                    f"conductor exponent nu = {nu} at degree {f} contributes zero "
                    "local rank and is rejected as useless"
                )
        spec = self.available_spectrum
        if spec is not None:
            amap = spec.a_map
            per_degree: dict[int, int] = {}
            for f, count, _ in self.entries:
                per_degree[f] = per_degree.get(f, 0) + count
            for f, need in per_degree.items():
                have = amap.get(f, 0)
                if need > have:
                    raise InconsistentModel(
                        f"plan uses {need} places of degree {f}, spectrum has {have}"
                    )
            a1 = amap.get(1, 0)
            if self.t > a1:
                raise InconsistentModel(f"t = {self.t} exceeds a_1 = {a1}")
            if self.t + per_degree.get(1, 0) > a1:
                raise InconsistentModel(
                    "S and T overlap: not enough rational places for both "
                    f"(t = {self.t}, degree-1 ramified = {per_degree.get(1, 0)}, a_1 = {a1})"
                )

    @property
    def rank_sum(self) -> int:
        return sum(
            count * local_unit_rank(self.params, f, nu) for f, count, nu in self.entries
        )

    @property
    def rd_sum(self) -> int:
        return sum(
            count * local_rd_bound(self.params, f, nu) for f, count, nu in self.entries
        )

    @property
    def side_condition_ok(self) -> bool:
        """t <= sum of local unit ranks over S."""
        return self.t <= self.rank_sum

    @property
    def d_lower(self) -> int:
        return 1 + self.rank_sum - self.t

    @property
    def rd_upper(self) -> int:
        return self.rd_sum + self.t - 1

    @property
    def conductor_degree(self) -> int:
        return sum(count * f * nu for f, count, nu in self.entries)

    def describe(self) -> str:
        inner = " + ".join(f"{count}x(f={f},nu={nu})" for f, count, nu in self.entries)
        return f"S = {inner or 'empty'}, t = {self.t}"


def generator_rank_lower(plan: RamificationPlan) -> int:
    """Lower bound for the p-rank of the ray class group: 1 + sum of local
    unit ranks - t.  The global unit defect term is a nonnegative unknown
    and is dropped, which only weakens the bound."""
    return plan.d_lower


class GsResult(NamedTuple):
    gs_margin: int
    infinite: bool
    d_lower: int
    rd_upper: int


def _margin_from_pair(d: int, rd: int) -> int:
    return d * d - 4 * d - 4 * rd


def gs_margin_raw(d: int, rd: int) -> bool:
    """True when a finite p-group with >= d generators and relation slack
    <= rd is impossible: rd <= d^2/4 - d (exact rational comparison).

    d = 0 never certifies: a trivial group satisfies everything.
    """
    if d < 0 or rd < 0:
        raise ValueError("d and rd must be nonnegative")
    if d < 1:
        return False
    return Fraction(d * d, 4) - d >= rd


def check_gs_inequality(plan: RamificationPlan) -> GsResult:
    """Evaluate the infinitude criterion for the plan, exactly.

    gs_margin = (1 + sum ef(nu-1-[(nu-1)/p]) - t)^2
                - 2 sum ef(nu-1)(ef(nu-1)+1) - 4 sum ef(nu-1-[(nu-1)/p]),
    which equals d^2 - 4d - 4(r - d) for the derived pair; the tower is
    provably infinite when the margin is nonnegative.
    """
    if not plan.side_condition_ok:
        raise SideConditionViolated(
            f"t = {plan.t} exceeds the local rank sum {plan.rank_sum}"
        )
    d, rd = plan.d_lower, plan.rd_upper
    margin = _margin_from_pair(d, rd)
    infinite = margin >= 0
    if infinite != gs_margin_raw(d, rd):  # the two formulations must agree
        raise RuntimeError("margin formulation disagrees with the raw criterion")
    return GsResult(gs_margin=margin, infinite=infinite, d_lower=d, rd_upper=rd)


@dataclass(frozen=True)
class CharacterConductorProfile:
    """Conductor degrees of the nontrivial characters of an abelian cover group."""

    degree_multiset: tuple[tuple[int, int], ...]  # (conductor degree, multiplicity)
    group_order: int

    def __post_init__(self):
        if self.group_order < 1:
            raise ValueError("group order must be >= 1")
        total = sum(mult for _, mult in self.degree_multiset)
        if total != self.group_order - 1:
            raise ValueError(
                f"profile lists {total} characters, group of order {self.group_order} "
                f"has {self.group_order - 1} nontrivial ones"
            )
        for deg, mult in self.degree_multiset:
            if deg < 0 or mult < 1:
                raise ValueError(f"bad profile entry ({deg}, {mult})")

    @property
    def conductor_degree_sum(self) -> int:
        return sum(deg * mult for deg, mult in self.degree_multiset)


def genus_from_conductors(base_genus: int, profile: CharacterConductorProfile) -> int:
    """Conductor-discriminant formula for an abelian cover:
    2 g(K) - 2 = [K:F] (2 g(F) - 2) + sum over characters of deg(conductor)."""
    total = profile.group_order * (2 * base_genus - 2) + profile.conductor_degree_sum
    if total % 2:
        raise ParityViolation(
            f"2g - 2 = {total} is odd: conductor degrees inconsistent with the cover"
        )
    return total // 2 + 1


def _plain_denominator(genus: int, plan: RamificationPlan) -> Fraction:
    return Fraction(genus - 1) + Fraction(plan.conductor_degree, 2)


def _refined_denominator(genus: int, plan: RamificationPlan) -> Fraction:
    q = plan.params.q
    den = Fraction(genus - 1)
    for f, count, nu in plan.entries:
        den += Fraction(count * f * nu, 2) * (1 - Fraction(1, q**f))
    return den


def _require_certified(plan: RamificationPlan):
    if not plan.side_condition_ok:
        raise NotCertified(
            f"side condition fails: t = {plan.t} > rank sum {plan.rank_sum}"
        )
    if _margin_from_pair(plan.d_lower, plan.rd_upper) < 0:
        raise NotCertified(
            f"gs margin {_margin_from_pair(plan.d_lower, plan.rd_upper)} is negative"
        )


def bound_plain(genus: int, plan: RamificationPlan) -> Fraction:
    """A(q) >= t / (g - 1 + (1/2) sum f nu), using the worst-case conductor
    degree for every character.  Requires a certified plan."""
    _require_certified(plan)
    return Fraction(plan.t) / _plain_denominator(genus, plan)


def bound_refined(genus: int, plan: RamificationPlan) -> Fraction:
    """Sharper bound with per-place damping 1 - q^(-f): a place of degree f
    can appear in the conductor of at most that fraction of the characters.

    The damping exponent is f even when the local unit rank e*f*(nu-1-...)
    differs from e*f: see refinement_warnings.
    """
    _require_certified(plan)
    return Fraction(plan.t) / _refined_denominator(genus, plan)


def refinement_warnings(plan: RamificationPlan) -> list[str]:
    """Flag entries where the damping exponent f differs from the local rank."""
    affected = sorted(
        {f for f, _, nu in plan.entries if (nu - 1 - (nu - 1) // plan.params.p) != 1}
    )
    if not affected:
        return []
    return [
        "refined bound damps the conductor contribution of degree-f places by "
        f"1 - q^-f (degrees {affected}); the local unit rank at those places "
        "exceeds e*f, and the damping exponent follows the per-place character "
        "fraction, not the rank"
    ]


def asymptotic_ratio(t_split: int, genus: int) -> Fraction:
    """A(q) >= |T| / (g - 1) for a field with an infinite tower split over T."""
    if genus <= 1:
        raise DegenerateGenus(f"genus {genus} <= 1 gives no asymptotic ratio")
    return Fraction(t_split, genus - 1)


@dataclass(frozen=True)
class TowerCertificate:
    """Everything the infinitude criterion produced for one plan."""

    d_lower: int
    rd_upper: int
    gs_margin: int
    side_condition_ok: bool
    infinite: bool
    bound: Fraction | None
    bound_refined: Fraction | None
    genus: int
    plan: RamificationPlan
    warnings: tuple[str, ...] = ()


def certify_tower(genus: int, plan: RamificationPlan) -> TowerCertificate:
    """Full pipeline: ranks, margin, side condition, and (when certified)
    both exact rational bounds.  The margin is reported even when negative."""
    d, rd = plan.d_lower, plan.rd_upper
    margin = _margin_from_pair(d, rd)
    side = plan.side_condition_ok
    infinite = side and margin >= 0 and d >= 2
    return TowerCertificate(
        d_lower=d,
        rd_upper=rd,
        gs_margin=margin,
        side_condition_ok=side,
        infinite=infinite,
        bound=bound_plain(genus, plan) if infinite else None,
        bound_refined=bound_refined(genus, plan) if infinite else None,
        genus=genus,
        plan=plan,
        warnings=tuple(refinement_warnings(plan)),
    )
