"""The optimal key-extraction attack against tag-masked authentication.

The attacker fixes two messages x != x_sub, asks for x every round, and
replaces the observed (x, t) with (x_sub, t ^ c_i), where c_i runs through
the tag space in a fixed order.  The forgery is accepted in round i exactly
when c_i equals the key's hash difference c(k1) = h_{k1}(x) ^ h_{k1}(x_sub);
a rejection eliminates one candidate for good.  The one-time pads cancel out
of every acceptance event, so the exact engine enumerates k1 only and
integrates the pads away analytically; the Monte Carlo engine keeps them and
simulates rounds honestly, giving an independent route to the same number.

For a family whose two-point XOR bound is exactly 1/|T| the difference
c(k1) is uniform over the tag space, which pins everything down:

    success within L rounds     = L / |T|
    round i success given prior failures = 1 / (|T| - i + 1)
    H(K1 | transcript after L)  = (L/|T|) log2(|K|/|T|)
                                  + (1 - L/|T|) log2((|K|/|T|)(|T| - L))

The entropy is computed from the actual posteriors and compared with that
closed form *exactly*: values are kept as q0 + sum q_p log2(p) over odd
primes, where unique factorization makes the representation canonical, so
structural equality is value equality.

Only the acceptance bits leak: conditioned on the tagged messages alone the
posterior of k1 is exactly uniform (the pads are a perfect mask), which the
tests check by brute-force enumeration over all pad vectors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import BudgetExceeded, DomainError, DEFAULT_BUDGET
from .families import HashFamily
from .measure import measure_axu2
from .protocol import AuthKey, KeyStream, TaggedMessage, authenticate, verify


def _factor(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class ExactEntropy:
    """A value q0 + sum q_p * log2(p) over odd primes p, exactly.

    log2 of any positive rational lands in this set, and by unique
    factorization the representation is unique, so dataclass equality is
    equality of real numbers.  Only bits (base-2 logs) appear here.
    """

    rational: Fraction = Fraction(0)
    terms: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def _make(cls, rational: Fraction, coeffs: dict[int, Fraction]) -> "ExactEntropy":
        terms = tuple(sorted((p, c) for p, c in coeffs.items() if c != 0))
        return cls(Fraction(rational), terms)

    @classmethod
    def log2(cls, q) -> "ExactEntropy":
        q = Fraction(q)
        if q <= 0:
            raise ValueError(f"log2 of non-positive value {q}")
        rational = Fraction(0)
        coeffs: dict[int, Fraction] = {}
        for n, sign in ((q.numerator, 1), (q.denominator, -1)):
            for p, e in _factor(n).items():
                if p == 2:
                    rational += sign * e
                else:
                    coeffs[p] = coeffs.get(p, Fraction(0)) + sign * e
        return cls._make(rational, coeffs)

    def __add__(self, other: "ExactEntropy") -> "ExactEntropy":
        coeffs = dict(self.terms)
        for p, c in other.terms:
            coeffs[p] = coeffs.get(p, Fraction(0)) + c
        return self._make(self.rational + other.rational, coeffs)

    def scaled(self, by) -> "ExactEntropy":
        by = Fraction(by)
        return self._make(self.rational * by, {p: c * by for p, c in self.terms})

    def __float__(self) -> float:
        import math

        return float(self.rational) + sum(float(c) * math.log2(p) for p, c in self.terms)


def entropy_of(probs: list[Fraction]) -> ExactEntropy:
    """Shannon entropy in bits of an explicit distribution, exactly."""
    total = ExactEntropy()
    for p in probs:
        if p < 0:
            raise ValueError("negative probability")
        if p == 0:
            continue
        total = total + ExactEntropy.log2(1 / p).scaled(p)
    return total


class RoundRecord(NamedTuple):
    x: object
    t: int
    x_sub: object
    t_sub: int
    accepted: bool


@dataclass(frozen=True)
class Transcript:
    rounds: tuple[RoundRecord, ...]
    guesses: tuple[int, ...]   # tag-difference candidates tried, in order

    def validate(self) -> None:
        if len(set(self.guesses)) != len(self.guesses):
            raise ValueError("eliminated guesses must be pairwise distinct")
        accepts = [i for i, r in enumerate(self.rounds) if r.accepted]
        if len(accepts) > 1:
            raise ValueError("a transcript accepts at most once")
        if accepts and accepts[0] != len(self.rounds) - 1:
            raise ValueError("the attack stops substituting after a success")


@dataclass(frozen=True)
class AttackReport:
    rounds: int
    x: object
    x_sub: object
    success_prob: Fraction
    success_formula: Fraction
    per_round_conditional: tuple[Fraction, ...]
    entropy_bits: ExactEntropy
    entropy_formula_bits: ExactEntropy


@dataclass(frozen=True)
class MonteCarloReport:
    rounds: int
    trials: int
    hits: int
    rate: Fraction
    expected: Fraction
    interval: tuple[float, float]   # rate +- 3 sigma-hat
    within_3sigma: bool             # of the expected value, theory sigma
    seed: int


def _attack_pair(fam: HashFamily):
    if len(fam.messages) < 2:
        raise DomainError("the attack needs at least two messages")
    return fam.messages[0], fam.messages[1]


def _require_uniform_difference(fam: HashFamily, budget: int) -> None:
    eps = measure_axu2(fam, budget=budget).epsilon
    want = Fraction(1, fam.tag_count)
    if eps != want:
        raise DomainError(
            f"{fam.descriptor()} has two-point bound {eps}, not 1/|T| = {want}; "
            "the per-round elimination analysis does not apply"
        )


def _difference_counts(fam: HashFamily) -> list[int]:
    """Count keys per hash-difference value for the canonical message pair."""
    x, xp = _attack_pair(fam)
    counts = [0] * fam.tag_count
    for k in fam.keys():
        counts[fam._tag(k, x) ^ fam._tag(k, xp)] += 1
    return counts


def run_attack_exact(fam: HashFamily, rounds: int,
                     budget: int = DEFAULT_BUDGET) -> AttackReport:
    """Exact success and leakage accounting; pads integrated out."""
    if not 1 <= rounds <= fam.tag_count:
        raise DomainError(f"rounds must be in 1..{fam.tag_count}")
    _require_uniform_difference(fam, budget)
    x, xp = _attack_pair(fam)
    counts = _difference_counts(fam)
    nk = fam.key_count
    hit = sum(counts[:rounds])
    conditionals = []
    remaining = nk
    for i in range(rounds):
        conditionals.append(Fraction(counts[i], remaining))
        remaining -= counts[i]
    computed, formula = posterior_entropy(fam, rounds, budget=budget)
    return AttackReport(
        rounds=rounds,
        x=x,
        x_sub=xp,
        success_prob=Fraction(hit, nk),
        success_formula=Fraction(rounds, fam.tag_count),
        per_round_conditional=tuple(conditionals),
        entropy_bits=computed,
        entropy_formula_bits=formula,
    )


def posterior_entropy(fam: HashFamily, rounds: int,
                      budget: int = DEFAULT_BUDGET) -> tuple[ExactEntropy, ExactEntropy]:
    """H(K1 | transcript) after `rounds` rounds: computed and closed form.

    Transcript classes: success in round j pins the difference to the j-th
    guess; total failure leaves the complement.  Within a class the posterior
    is uniform (the likelihood depends on k1 only through its difference
    value), and the pads add no information, so classes by acceptance
    pattern are exhaustive.  The computed value uses the actual posterior
    probabilities; the formula is exactly the two-branch closed form.
    """
    if not 0 <= rounds <= fam.tag_count:
        raise DomainError(f"rounds must be in 0..{fam.tag_count}")
    _require_uniform_difference(fam, budget)
    counts = _difference_counts(fam)
    nk = fam.key_count
    tc = fam.tag_count
    computed = ExactEntropy()
    for j in range(rounds):
        pz = Fraction(counts[j], nk)
        if pz == 0:
            continue
        post = [Fraction(1, counts[j])] * counts[j]
        computed = computed + entropy_of(post).scaled(pz)
    fail_keys = nk - sum(counts[:rounds])
    if fail_keys:
        pz = Fraction(fail_keys, nk)
        post = [Fraction(1, fail_keys)] * fail_keys
        computed = computed + entropy_of(post).scaled(pz)
    kt = Fraction(nk, tc)
    formula = ExactEntropy.log2(kt)
    if rounds < tc:
        formula = formula + ExactEntropy.log2(tc - rounds).scaled(1 - Fraction(rounds, tc))
    return computed, formula


def success_recurrence(fam: HashFamily, l_max: int,
                       budget: int = DEFAULT_BUDGET) -> list[Fraction]:
    """Measured P(success in round L+1 | failure through round L), L=0..l_max.

    Requires l_max <= |T| - 1 so the conditioning event has positive
    probability throughout.
    """
    _require_uniform_difference(fam, budget)
    if not 0 <= l_max <= fam.tag_count - 1:
        raise DomainError(f"l_max must be in 0..{fam.tag_count - 1}")
    counts = _difference_counts(fam)
    out = []
    remaining = fam.key_count
    for i in range(l_max + 1):
        out.append(Fraction(counts[i], remaining))
        remaining -= counts[i]
    return out


def sample_transcript(fam: HashFamily, rounds: int, rng: random.Random,
                      x=None, x_sub=None) -> Transcript:
    """One honestly simulated attack run: fresh pads, real verify calls."""
    if x is None or x_sub is None:
        x, x_sub = _attack_pair(fam)
    k1 = rng.randrange(fam.key_count)
    pads = tuple(rng.randrange(fam.tag_count) for _ in range(rounds))
    ks = KeyStream(k1, pads, fam.tag_bits)
    recs = []
    guesses = []
    for i in range(rounds):
        key = ks.next_key()
        ym = authenticate(fam, key, x)
        forged = TaggedMessage(x_sub, ym.t ^ i)
        accepted = verify(fam, key, forged) is not None
        recs.append(RoundRecord(x, ym.t, x_sub, forged.t, accepted))
        guesses.append(i)
        if accepted:
            break
    return Transcript(tuple(recs), tuple(guesses))


def run_attack_montecarlo(fam: HashFamily, rounds: int, trials: int,
                          seed: int = 0) -> MonteCarloReport:
    """Simulate the attack with pseudorandom keys and pads.

    A cross-check of the exact engine through the ordinary protocol code
    path; nothing here integrates the pads out.
    """
    if not 1 <= rounds <= fam.tag_count:
        raise DomainError(f"rounds must be in 1..{fam.tag_count}")
    if trials < 1:
        raise DomainError("need at least one trial")
    rng = random.Random(seed)
    x, x_sub = _attack_pair(fam)
    kc, tc, tb = fam.key_count, fam.tag_count, fam.tag_bits
    hits = 0
    for _ in range(trials):
        k1 = rng.randrange(kc)
        pads = tuple(rng.randrange(tc) for _ in range(rounds))
        ks = KeyStream(k1, pads, tb)
        for i in range(rounds):
            key = ks.next_key()
            ym = authenticate(fam, key, x)
            if verify(fam, key, TaggedMessage(x_sub, ym.t ^ i)) is not None:
                hits += 1
                break
    import math

    rate = Fraction(hits, trials)
    expected = Fraction(rounds, tc)
    p = float(rate)
    sig_hat = math.sqrt(max(p * (1 - p), 0.0) / trials)
    pe = float(expected)
    sig = math.sqrt(pe * (1 - pe) / trials)
    return MonteCarloReport(
        rounds=rounds,
        trials=trials,
        hits=hits,
        rate=rate,
        expected=expected,
        interval=(max(0.0, p - 3 * sig_hat), min(1.0, p + 3 * sig_hat)),
        within_3sigma=abs(p - pe) <= 3 * sig,
        seed=seed,
    )
