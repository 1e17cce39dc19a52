"""Bounded exhaustive search over ramification plans, and the side-by-side
comparison of the two inequality systems for towers built from rank-l
elementary abelian covers.

The search treats places of equal degree as interchangeable: every formula
in the certification depends only on (degree, exponent, multiplicity), so
candidates are multiplicity vectors indexed by degree, not subsets of
places.  Enumeration order and tie-breaking are deterministic, so two runs
over the same space return identical ranked lists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import cft
from .curve import PlaceSpectrum
from .errors import EmptySpace


@dataclass(frozen=True)
class SearchSpace:
    """Candidate plans over a fixed base field with a known spectrum and genus."""

    spectrum: PlaceSpectrum
    base_genus: int
    degrees: tuple[int, ...] = (5, 6, 7, 8, 9, 10)
    allowed_nu: tuple[int, ...] = ()  # empty means (p,)
    t_values: tuple[int, ...] = ()  # empty means (a_1,)
    max_multiplicity: int = 200
    top_n: int = 10

    def nus(self) -> tuple[int, ...]:
        return self.allowed_nu or (self.spectrum.params.p,)

    def ts(self) -> tuple[int, ...]:
        return self.t_values or (self.spectrum.a_map.get(1, 0),)


@dataclass(frozen=True)
class SearchResult:
    ranked: tuple  # ((plan, certificate), ...) best first
    candidates_evaluated: int
    certified_count: int
    space: SearchSpace = field(compare=False)

    @property
    def best(self):
        return self.ranked[0]


def optimize(space: SearchSpace) -> SearchResult:
    """Enumerate every multiplicity vector in the space, keep the candidates
    that certify an infinite tower, and rank them by the refined bound.

    Ties break toward the lexicographically smaller multiplicity vector.
    Raises EmptySpace when nothing certifies.
    """
    params = space.spectrum.params
    q = params.q
    amap = space.spectrum.a_map
    genus = space.base_genus
    nus = space.nus()
    ts = space.ts()
    a1 = amap.get(1, 0)
    for t in ts:
        if t < 1 or t > a1:
            raise ValueError(f"split count t = {t} not available (a_1 = {a1})")

    degrees = [d for d in space.degrees if amap.get(d, 0) > 0]
    caps = {d: min(amap[d], space.max_multiplicity) for d in degrees}

    # per-degree option list: (multiplicity, nu, unit rank, rd bound, f*nu, refined term)
    options = []
    for d in degrees:
        opts = [(0, 0, 0, 0, 0, Fraction(0))]
        damp = 1 - Fraction(1, q**d)
        for nu in nus:
            r1 = cft.local_unit_rank(params, d, nu)
            rd1 = cft.local_rd_bound(params, d, nu)
            for m in range(1, caps[d] + 1):
                opts.append((m, nu, m * r1, m * rd1, m * d * nu, Fraction(m * d * nu, 2) * damp))
        options.append(opts)

    candidates = 0
    kept = []
    for combo in itertools.product(*options):
        rank_sum = sum(o[2] for o in combo)
        rd_sum = sum(o[3] for o in combo)
        for t in ts:
            candidates += 1
            if t > rank_sum:
                continue  # side condition
            d_low = 1 + rank_sum - t
            rd_up = rd_sum + t - 1
            margin = d_low * d_low - 4 * d_low - 4 * rd_up
            if margin < 0:
                continue
            refined_den = Fraction(genus - 1) + sum((o[5] for o in combo), Fraction(0))
            bound = Fraction(t) / refined_den
            vector = tuple((o[0], o[1]) for o in combo)
            kept.append((bound, vector, t, combo))

    if not kept:
        raise EmptySpace(
            f"no plan over degrees {list(space.degrees)} certifies an infinite tower"
        )
    kept.sort(key=lambda item: (-item[0], item[1], item[2]))

    ranked = []
    for bound, vector, t, combo in kept[: space.top_n]:
        entries = tuple(
            (d, m, nu) for d, (m, nu, *_ ) in zip(degrees, combo) if m > 0
        )
        plan = cft.RamificationPlan(params, entries, t, available_spectrum=space.spectrum)
        cert = cft.certify_tower(genus, plan)
        if cert.bound_refined != bound:  # the fast path must agree with the slow one
            raise RuntimeError("optimizer bound disagrees with certify_tower")
        ranked.append((plan, cert))
    return SearchResult(
        ranked=tuple(ranked),
        candidates_evaluated=candidates,
        certified_count=len(kept),
        space=space,
    )


def candidate_count(space: SearchSpace) -> int:
    """Size of the enumeration, for completeness assertions."""
    amap = space.spectrum.a_map
    total = 1
    for d in space.degrees:
        if amap.get(d, 0) > 0:
            cap = min(amap[d], space.max_multiplicity)
            total *= 1 + cap * len(space.nus())
    return total * len(space.ts() or (None,))


# ---------------------------------------------------------------------------
# the two inequality systems for towers over rank-l elementary abelian covers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MethodComparisonInput:
    """Parameters of a tower whose middle step is a rank-l elementary abelian
    p-cover, totally ramified at s rational places, with t completely split
    rational places and s_prime ramified places included in the split set."""

    s: int
    l: int
    t: int
    s_prime: int
    t_size: int  # |T|, counted in the cover
    p: int = 2

    def __post_init__(self):
        for name in ("s", "l", "t", "s_prime", "t_size"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    @property
    def t_k(self) -> int:
        return self.t + self.s_prime


@dataclass(frozen=True)
class MethodPair:
    d_lower: int
    rd_upper: int
    certifies: bool


@dataclass(frozen=True)
class MethodComparison:
    input: MethodComparisonInput
    usual: MethodPair
    ours: MethodPair


def _verdict(d: int, rd: int) -> bool:
    if d < 1 or rd < 0:
        return False
    return cft.gs_margin_raw(d, rd)


def compare_methods(inp: MethodComparisonInput) -> MethodComparison:
    """Both bound systems for the same tower data.

    usual:  d >= s*l - (|T_k| - 1) - l,   r - d <= |T| - 1
    ours:   d >= s*l - (|T_k| - 1),       r - d <= s*C(l+1, 2) - s'*l + |T_k| - 1
    """
    tk = inp.t_k
    usual_d = inp.s * inp.l - (tk - 1) - inp.l
    usual_rd = inp.t_size - 1
    ours_d = inp.s * inp.l - (tk - 1)
    ours_rd = inp.s * (inp.l * (inp.l + 1) // 2) - inp.s_prime * inp.l + tk - 1
    return MethodComparison(
        input=inp,
        usual=MethodPair(usual_d, usual_rd, _verdict(usual_d, usual_rd)),
        ours=MethodPair(ours_d, ours_rd, _verdict(ours_d, ours_rd)),
    )
