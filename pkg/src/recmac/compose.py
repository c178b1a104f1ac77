"""Error accounting for many authentication rounds glued to a toy key source.

A run consists of r key-generation rounds; each round refreshes the pad
supply (modeled as an ideal functionality that is simply *declared* to be
eps'-close to ideal; nothing quantum is simulated here) and then performs
l authenticated transmissions that keep recycling the same hash key k1.
Failure probabilities compose additively, so the ledger holds one entry per
component and the total is exactly

    r * (l * eps + eps')

where eps is the measured two-point bound of the family.  The ledger never
does anything cleverer than that sum; its value is that the exact multi-round
simulation below can be held against it.

simulate_composition() enumerates the full joint distribution of the
multi-round real execution (one k1 throughout, fresh uniform pads per
round, the list-elimination environment carrying its candidate list across
all rounds and across key-refresh boundaries) against the fully ideal
execution, and returns the exact distance.  For the list-elimination
environment on a 1/|T|-bounded family this comes out at exactly
min(1, r*l/|T|), matching the attack success probability: the additive
ledger is tight, up to the declared eps' terms, which the simulation treats
as zero by taking the key source ideal.

The environment substitutes every round until its first success, then turns
honest; in the ideal world no forgery is ever accepted, so there it
substitutes for as long as it has candidates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .dist import Dist, statistical_distance
from .errors import BudgetExceeded, DomainError, DEFAULT_BUDGET
from .families import HashFamily
from .measure import measure_axu2

LIST_ELIMINATION = "list-elimination"
IDENTITY = "identity"


@dataclass(frozen=True)
class ToyQkdFunctionality:
    """A declared-quality key source: emits out_bits, promises eps_prime."""

    out_bits: int
    eps_prime: Fraction

    def __post_init__(self):
        if self.out_bits < 0:
            raise DomainError("out_bits must be non-negative")
        if not 0 <= self.eps_prime <= 1:
            raise DomainError("eps_prime must be a probability")


@dataclass(frozen=True)
class LedgerEntry:
    round: int        # key-generation round, 1-based
    component: str    # "auth" or "qkd"
    epsilon: Fraction


@dataclass(frozen=True)
class ErrorLedger:
    entries: tuple[LedgerEntry, ...]

    @property
    def total(self) -> Fraction:
        return sum((e.epsilon for e in self.entries), Fraction(0))

    def cumulative(self) -> list[Fraction]:
        acc = Fraction(0)
        out = []
        for e in self.entries:
            acc += e.epsilon
            out.append(acc)
        return out


def compose_ledger(fam: HashFamily, qkd_rounds: int, auths_per_round: int,
                   qkd: ToyQkdFunctionality,
                   budget: int = DEFAULT_BUDGET) -> tuple[ErrorLedger, Fraction]:
    """The additive ledger and its closed-form total r*(l*eps + eps')."""
    if qkd_rounds < 1 or auths_per_round < 1:
        raise DomainError("need at least one round of each kind")
    eps = measure_axu2(fam, budget=budget).epsilon
    entries = []
    for r in range(1, qkd_rounds + 1):
        entries.append(LedgerEntry(r, "qkd", qkd.eps_prime))
        for _ in range(auths_per_round):
            entries.append(LedgerEntry(r, "auth", eps))
    ledger = ErrorLedger(tuple(entries))
    bound = qkd_rounds * (auths_per_round * eps + qkd.eps_prime)
    assert ledger.total == bound
    return ledger, bound


def simulate_composition(fam: HashFamily, qkd_rounds: int, auths_per_round: int,
                         env: str = LIST_ELIMINATION,
                         budget: int = DEFAULT_BUDGET) -> Fraction:
    """Exact real-vs-ideal distance of the full multi-round execution.

    Outcomes are (tag vector, per-round receiver outputs, recycled k1); the
    pads make the tag vector uniform in both worlds, and in the real world
    the acceptance pattern is a function of k1's hash difference alone.
    """
    if env not in (LIST_ELIMINATION, IDENTITY):
        raise DomainError(f"unknown environment {env!r}")
    if qkd_rounds < 1 or auths_per_round < 1:
        raise DomainError("need at least one round of each kind")
    n = qkd_rounds * auths_per_round
    tc, kc = fam.tag_count, fam.key_count
    work = kc * tc ** n
    if work > budget:
        raise BudgetExceeded(
            f"multi-round enumeration needs {work} cells, budget is {budget}"
        )
    if len(fam.messages) < 2:
        raise DomainError("need two messages to substitute")
    x, xp = fam.messages[0], fam.messages[1]
    cs = [fam._tag(k, x) ^ fam._tag(k, xp) for k in fam.keys()]
    fields = ("tags", "outs", "k1")
    unit = Fraction(1, kc * tc ** n)

    real: dict[tuple, Fraction] = {}
    for k1 in range(kc):
        outs_honest: list = []
        gi = 0
        succeeded = False
        for _ in range(n):
            if env == IDENTITY or succeeded or gi >= tc:
                outs_honest.append(x)
            else:
                guess = gi
                gi += 1
                if cs[k1] == guess:
                    outs_honest.append(xp)
                    succeeded = True
                else:
                    outs_honest.append(None)
        outs = tuple(outs_honest)
        for tags in itertools.product(range(tc), repeat=n):
            real[(tags, outs, k1)] = unit
    real_dist = Dist(fields, real)

    ideal: dict[tuple, Fraction] = {}
    if env == IDENTITY:
        outs = tuple([x] * n)
    else:
        outs = tuple([None] * min(n, tc) + [x] * max(0, n - tc))
    for k1 in range(kc):
        for tags in itertools.product(range(tc), repeat=n):
            ideal[(tags, outs, k1)] = unit
    ideal_dist = Dist(fields, ideal)

    return statistical_distance(real_dist, ideal_dist)
