"""Profile generation, falsification campaigns, fixture rules, and the
proof-derived uniqueness witnesses for the endpoint-median rule.

All exhaustive sweeps run over anonymized profiles (every rule under
study except the id-sensitive fixture is anonymous); identified profiles
are synthesized with integer ids 1..n in canonical order where per-voter
semantics are needed.
"""

from __future__ import annotations

import itertools
import math
import os
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .core import (
    AnonProfile,
    Interval,
    Profile,
    VotingError,
    canonical_intervals,
)
from .axioms import (
    UNDETERMINED,
    VIOLATION,
    CheckResult,
    RuleFn,
    Violation,
    check_anonymity,
    check_majority_criterion,
    check_reinforcement,
    check_right_biased_continuity,
    check_robustness,
    check_shift_symmetry,
    check_strategyproofness,
    check_strong_unanimity,
    check_strong_uncompromisingness,
    check_unanimity,
    check_weak_efficiency,
)
from .rules import (
    ONE_HALF,
    PositionThresholdRule,
    ThresholdVector,
    WeightVector,
    collective_position,
    individual_position,
)

BUDGET_ENV = "INTERVAL_VOTE_BUDGET"
DEFAULT_BUDGET = 1_000_000


class TooLarge(VotingError):
    pass


class UnsupportedAxiom(VotingError):
    pass


@dataclass(frozen=True)
class SearchBounds:
    m_max: int = 3
    n_max: int = 3
    pair_budget: int = 5
    lambda_max: int = 1000
    seed: int = 0


def enumeration_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


def profile_count(m: int, n: int) -> int:
    q = m * (m + 1) // 2
    return math.comb(q + n - 1, n)


def enumerate_profiles(m: int, n: int, budget: Optional[int] = None) -> Iterator[AnonProfile]:
    """All multisets of n ballots over the canonical intervals, in
    lexicographic order of the underlying index tuples."""
    if budget is None:
        budget = enumeration_budget()
    count = profile_count(m, n)
    if count > budget:
        raise TooLarge(
            f"enumeration of {count} profiles exceeds budget {budget}"
        )
    q = m * (m + 1) // 2
    for combo in itertools.combinations_with_replacement(range(q), n):
        counts = [0] * q
        for idx in combo:
            counts[idx] += 1
        yield AnonProfile(m, tuple(counts))


def random_profile(m: int, n: int, seed: int) -> Profile:
    """Uniform i.i.d. intervals per voter, reproducible from the seed."""
    if n < 1:
        raise VotingError(f"need at least one voter, got n={n}")
    rng = random.Random(seed)
    options = canonical_intervals(m)
    return Profile(m, {v: rng.choice(options) for v in range(1, n + 1)})


def random_weight_vector(m: int, rng: random.Random, max_denominator: int = 12) -> WeightVector:
    vals = []
    for _ in range(m):
        d = rng.randint(1, max_denominator)
        vals.append(Fraction(rng.randint(0, d), d))
    return WeightVector(m, tuple(vals))


def random_threshold_vector(m: int, rng: random.Random, max_denominator: int = 12) -> ThresholdVector:
    vals = []
    for _ in range(m):
        d = rng.randint(2, max_denominator)
        vals.append(Fraction(rng.randint(1, d - 1), d))
    vals.sort(reverse=True)
    return ThresholdVector(m, tuple(vals))


def sample_vector_pairs(
    m: int,
    count: int,
    seed: int,
    compatible: bool,
    max_denominator: int = 12,
) -> list[tuple[WeightVector, ThresholdVector]]:
    """Seeded rejection sampling of (alpha, theta) pairs by compatibility."""
    from .rules import check_compatible

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        alpha = random_weight_vector(m, rng, max_denominator)
        theta = random_threshold_vector(m, rng, max_denominator)
        ok, _ = check_compatible(alpha, theta)
        if ok == compatible:
            out.append((alpha, theta))
    return out


# ---------------------------------------------------------------------------
# fixture rules


def _median_of_endpoints(p: Profile, which: str) -> int:
    endpoints = [
        iv.left if which == "left" else iv.right for iv in p.voters.values()
    ]
    n = len(endpoints)
    count = 0
    for i in range(1, p.m + 1):
        count += sum(1 for e in endpoints if e == i)
        if 2 * count >= n:
            return i
    raise AssertionError("unreachable")


def _log_parity_winner(p: Profile) -> int:
    parity = math.ceil(math.log2(p.n)) if p.n > 1 else 0
    side = "left" if parity % 2 == 1 else "right"
    return _median_of_endpoints(p, side)


def _strict_threshold_winner(rule: PositionThresholdRule, p: Profile) -> int:
    n = p.n
    for i in range(1, rule.m):
        if collective_position(rule.alpha, p, i) > rule.theta.theta[i - 1] * n:
            return i
    return rule.m


def _even_doubled_winner(p: Profile) -> int:
    """Endpoint-median with ballots of even integer voter ids counted twice."""
    weighted: list[tuple[Interval, int]] = []
    for voter, iv in p.voters.items():
        try:
            weight = 2 if int(voter) % 2 == 0 else 1
        except (TypeError, ValueError):
            weight = 1
        weighted.append((iv, weight))
    total = sum(w for _, w in weighted)
    half = WeightVector.constant(p.m, ONE_HALF)
    for i in range(1, p.m + 1):
        pos = sum(w * individual_position(half, iv, i) for iv, w in weighted)
        if pos >= Fraction(total, 2):
            return i
    raise AssertionError("unreachable")


def _profile_dependent_alpha_winner(p: Profile) -> int:
    """Endpoint-variant whose first weight shrinks with the number of
    voters excluding x_1; behaves like a different threshold rule per
    profile, which no fixed vector pair can reproduce."""
    excluded = sum(1 for iv in p.voters.values() if not iv.contains(1))
    a1 = ONE_HALF - Fraction(excluded, 2 * p.n)
    alpha = WeightVector(p.m, (a1,) + (Fraction(1),) * (p.m - 1))
    n = p.n
    for i in range(1, p.m):
        if collective_position(alpha, p, i) >= ONE_HALF * n:
            return i
    return p.m


FIXTURE_TAGS = (
    "constant",
    "strict-threshold",
    "log-parity",
    "even-voter-doubled",
    "profile-dependent-alpha",
)


def fixture(tag: str, m: int, params: Optional[dict] = None) -> RuleFn:
    """Counterexample rules, each failing exactly one characterization
    axiom (or, for the profile-dependent weights, fixed-vector
    representability)."""
    params = params or {}
    if tag == "constant":
        target = int(params.get("winner", 1))
        return RuleFn(m, lambda p: target, name=f"constant-x{target}")
    if tag == "strict-threshold":
        rule = PositionThresholdRule.make(
            WeightVector.constant(m, ONE_HALF),
            ThresholdVector.constant(m, ONE_HALF),
        )
        return RuleFn(
            m, lambda p: _strict_threshold_winner(rule, p), name="strict-threshold"
        )
    if tag == "log-parity":
        return RuleFn(m, _log_parity_winner, name="log-parity")
    if tag == "even-voter-doubled":
        return RuleFn(m, _even_doubled_winner, name="even-voter-doubled")
    if tag == "profile-dependent-alpha":
        return RuleFn(
            m, _profile_dependent_alpha_winner, name="profile-dependent-alpha"
        )
    raise VotingError(f"unknown fixture tag {tag!r}")


# ---------------------------------------------------------------------------
# falsification campaigns


@dataclass
class Campaign:
    axiom: str
    checked: int = 0
    undetermined: int = 0
    elapsed: float = 0.0
    violation: Optional[Violation] = None
    first_undetermined: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "instances_checked": self.checked,
            "undetermined": self.undetermined,
            "elapsed_seconds": round(self.elapsed, 3),
            "violation": self.violation.to_json() if self.violation else None,
            "first_undetermined": self.first_undetermined,
        }


AXIOM_TAGS = (
    "robustness",
    "reinforcement",
    "unanimity",
    "anonymity",
    "continuity",
    "strategyproofness",
    "strong-uncompromisingness",
    "majority-criterion",
    "strong-unanimity",
    "weak-efficiency",
    "shift-symmetry",
)


def _identified_profiles(m: int, n_max: int) -> Iterator[Profile]:
    for n in range(1, n_max + 1):
        for anon in enumerate_profiles(m, n):
            yield anon.to_profile()


def _disjoint_pairs(m: int, total_max: int) -> Iterator[tuple[Profile, Profile]]:
    for n1 in range(1, total_max):
        for n2 in range(1, total_max - n1 + 1):
            for a1 in enumerate_profiles(m, n1):
                p1 = a1.to_profile()
                for a2 in enumerate_profiles(m, n2):
                    p2 = a2.to_profile(first_id=n1 + 1)
                    yield p1, p2


def falsify(f: RuleFn, axiom: str, bounds: SearchBounds) -> Campaign:
    """Scan exhaustive instance streams for the first counterexample.

    Deterministic: identical bounds and rule give the same first
    violation (canonical instance order) or the same clean result.
    """
    if axiom not in AXIOM_TAGS:
        raise UnsupportedAxiom(f"unknown axiom {axiom!r}")
    m = f.m
    campaign = Campaign(axiom=axiom)
    start = time.monotonic()

    def record(result: CheckResult) -> bool:
        """Returns True when the campaign should stop."""
        campaign.checked += 1
        if result.status == VIOLATION and campaign.violation is None:
            campaign.violation = result.violation
            return True
        if result.status == UNDETERMINED:
            campaign.undetermined += 1
            if campaign.first_undetermined is None:
                campaign.first_undetermined = result.detail
        return False

    if axiom == "robustness":
        for p in _identified_profiles(m, bounds.n_max):
            campaign.checked += 1
            found = check_robustness(f, p)
            if found:
                campaign.violation = found[0]
                break
    elif axiom == "reinforcement":
        for p1, p2 in _disjoint_pairs(m, bounds.pair_budget):
            if record(check_reinforcement(f, p1, p2)):
                break
    elif axiom == "unanimity":
        for j in range(1, m + 1):
            if record(check_unanimity(f, m, j, n_max=bounds.n_max)):
                break
    elif axiom == "anonymity":
        for p in _identified_profiles(m, bounds.n_max):
            ids = sorted(p.voters)
            stop = False
            for perm in itertools.permutations(ids):
                mapping = dict(zip(ids, perm))
                if record(check_anonymity(f, p, mapping)):
                    stop = True
                    break
            if stop:
                break
    elif axiom == "continuity":
        for p1, p2 in _disjoint_pairs(m, bounds.pair_budget):
            if record(
                check_right_biased_continuity(
                    f, p1, p2, lambda_max=bounds.lambda_max
                )
            ):
                break
    elif axiom == "strategyproofness":
        for p in _identified_profiles(m, bounds.n_max):
            stop = False
            for voter in sorted(p.voters, key=str):
                campaign.checked += 1
                found = check_strategyproofness(f, p, voter)
                if found:
                    campaign.violation = found[0]
                    stop = True
                    break
            if stop:
                break
    elif axiom == "strong-uncompromisingness":
        intervals = canonical_intervals(m)
        for p in _identified_profiles(m, bounds.n_max):
            stop = False
            for voter in sorted(p.voters, key=str):
                for new_iv in intervals:
                    if record(
                        check_strong_uncompromisingness(f, p, voter, new_iv)
                    ):
                        stop = True
                        break
                if stop:
                    break
            if stop:
                break
    elif axiom == "majority-criterion":
        for p in _identified_profiles(m, bounds.n_max):
            if record(check_majority_criterion(f, p)):
                break
    elif axiom == "strong-unanimity":
        for p in _identified_profiles(m, bounds.n_max):
            if record(check_strong_unanimity(f, p)):
                break
    elif axiom == "weak-efficiency":
        for p in _identified_profiles(m, bounds.n_max):
            if record(check_weak_efficiency(f, p)):
                break
    elif axiom == "shift-symmetry":
        for p in _identified_profiles(m, bounds.n_max):
            if record(check_shift_symmetry(f, p)):
                break

    campaign.elapsed = time.monotonic() - start
    return campaign


# ---------------------------------------------------------------------------
# uniqueness witnesses for the endpoint-median characterization


def _fraction_strictly_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Smallest-total w1/(w1+w2) strictly between lo and hi."""
    for total in itertools.count(2):
        for w1 in range(1, total):
            frac = Fraction(w1, total)
            if lo < frac < hi:
                return frac
    raise AssertionError("unreachable")


def theorem2_uniqueness_witness(
    rule: PositionThresholdRule,
) -> Optional[tuple[Profile, str, Violation]]:
    """For any threshold rule other than the all-1/2 one, build a profile
    where it breaks the majority criterion or strong unanimity.

    Threshold deviations yield majority-criterion violations via a
    two-bloc singleton profile; weight deviations yield strong-unanimity
    violations via a shared-alternative profile.  Every witness is
    confirmed by the corresponding checker before being returned.
    """
    m = rule.m
    f = RuleFn.from_ptr(rule)
    theta = rule.theta.theta
    alpha = rule.alpha.alpha

    for i in range(1, m):  # theta_m is inert
        t = theta[i - 1]
        if t == ONE_HALF:
            continue
        if t < ONE_HALF:
            frac = _fraction_strictly_between(t, ONE_HALF)
        else:
            frac = _fraction_strictly_between(ONE_HALF, t)
        w1 = frac.numerator
        w2 = frac.denominator - frac.numerator
        voters = {k: Interval(i, i) for k in range(1, w1 + 1)}
        voters.update(
            {k: Interval(m, m) for k in range(w1 + 1, w1 + w2 + 1)}
        )
        p = Profile(m, voters)
        result = check_majority_criterion(f, p)
        if result.status == VIOLATION:
            return p, "majority-criterion", result.violation

    for i in range(1, m):  # alpha_m is inert
        a = alpha[i - 1]
        if a == ONE_HALF:
            continue
        if a < ONE_HALF:
            # the lone {x_i} voter adds a full point to Pi(x_i), so the
            # straddling bloc must lose more than one point against it
            delta = ONE_HALF - a
            t = int(Fraction(1) / delta) + 1  # smallest t with t*delta > 1
            lone = Interval(i, i)
        else:
            delta = a - ONE_HALF
            t = int(ONE_HALF / delta) + 1  # smallest t with t*delta > 1/2
            lone = Interval(i + 1, i + 1)
        voters = {k: Interval(i, i + 1) for k in range(1, t + 1)}
        voters[t + 1] = lone
        p = Profile(m, voters)
        result = check_strong_unanimity(f, p)
        if result.status == VIOLATION:
            return p, "strong-unanimity", result.violation

    return None


# ---------------------------------------------------------------------------
# fixed-vector inconsistency of the profile-dependent fixture


def remark_scaled_triple(m: int = 2) -> tuple[Profile, Profile, Profile]:
    """Three four-voter profiles over {x_1, x_2} that the
    profile-dependent-alpha fixture decides inconsistently with every
    fixed weight/threshold pair."""
    single1, single2, both = Interval(1, 1), Interval(2, 2), Interval(1, 2)
    pa = Profile(m, {1: single1, 2: single1, 3: single2, 4: single2})
    pb = Profile(m, {1: both, 2: both, 3: both, 4: both})
    pc = Profile(m, {1: both, 2: both, 3: single1, 4: single2})
    return pa, pb, pc


def fixed_rule_infeasible_for_triple(
    winners: tuple[int, int, int]
) -> bool:
    """Replay the inequality chain showing no fixed (beta, phi) threshold
    rule reproduces the triple's winners (x_1, x_1, x_2).

    From the singleton profile, winner x_1 forces phi_1 <= 1/2.  From the
    all-{x_1,x_2} profile, winner x_1 forces beta_1 >= phi_1.  From the
    mixed profile, winner x_2 needs 1 + 2*beta_1 < 4*phi_1, hence
    phi_1 > 1/2 after substituting beta_1 >= phi_1 -- contradiction.
    """
    if winners != (1, 1, 2):
        return False
    phi_upper = ONE_HALF  # from profile A: 2 >= 4*phi_1
    # from C with beta_1 >= phi_1: 4*phi_1 > 1 + 2*beta_1 >= 1 + 2*phi_1
    phi_lower_exclusive = ONE_HALF  # 2*phi_1 > 1
    return phi_lower_exclusive >= phi_upper  # feasible region is empty


def fit_fixed_rule_to_winners(
    m: int,
    observations: list[tuple[Profile, int]],
    max_denominator: int = 16,
) -> Optional[PositionThresholdRule]:
    """Brute-force search for a fixed-vector rule matching all observed
    winners; None when the grid is exhausted.  Only constant vectors are
    scanned, which suffices for two-alternative instances."""
    values = sorted(
        {
            Fraction(num, den)
            for den in range(1, max_denominator + 1)
            for num in range(0, den + 1)
        }
    )
    inner = [v for v in values if 0 < v < 1]
    for phi in inner:
        for beta in values:
            rule = PositionThresholdRule.make_unchecked(
                WeightVector.constant(m, beta),
                ThresholdVector.constant(m, phi),
            )
            if all(rule.winner(p) == w for p, w in observations):
                return rule
    return None
