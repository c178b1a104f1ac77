"""Real-versus-ideal execution of one authentication round.

The game: an environment picks a message distribution, sees the tagged
message the sender emits, and chooses what the receiver gets instead.  In
the real world the receiver checks the tag under the actual keys and, in
recycling mode, the hash key k1 is afterwards handed back to the
environment.  In the ideal world a simulator runs the same sender on its own
fresh keys, the receiver accepts only a byte-identical wire message, and the
recycled key it returns is uniform and independent of everything already
seen.  Security of a scheme is the total variation distance between the two
resulting outcome distributions, maximized over environments.

Outcome fields are (x, y, yp, out, k1) for substitution environments and
(yp, out, k1) for impersonation environments (which inject a wire message
before any round ran).  In no-recycling mode the k1 column is dropped from
the returned distribution by an explicit projection.

The worst-case search exploits a structural fact instead of enumerating all
|X*T|^|T| substitution maps: both worlds give y the same marginal, and the
conditional outcome given y depends on the environment only through the
single wire message it substitutes for y.  The distance of a deterministic
environment is therefore sum_y P(y) * TV(real | y, ideal | y), and the
maximum over environments is attained by maximizing each y-slice
independently.  The greedy witness is then re-run through run_real/run_ideal
and the two numbers are asserted equal, so the reported maximum never rests
on the decomposition alone.  Ties break toward the earliest candidate in
canonical order (messages in family order, tags ascending), and identity is
kept wherever no substitution gains anything.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .dist import Dist, outcome_sort_key, statistical_distance
from .errors import BudgetExceeded, DomainError, DEFAULT_BUDGET
from .families import CounterexampleFamily, HashFamily

SUBSTITUTION = "substitution"
IMPERSONATION = "impersonation"

FIELDS_SUB = ("x", "y", "yp", "out", "k1")
FIELDS_IMP = ("yp", "out", "k1")


def _is_wire(v) -> bool:
    return isinstance(v, tuple) and len(v) == 2 and isinstance(v[1], int)


class AuthProtocol:
    """One-round protocol interface the executions run against."""

    messages: Sequence
    recycles: bool = False

    def keys(self) -> Sequence:
        raise NotImplementedError

    def encode(self, key, x) -> tuple:
        raise NotImplementedError

    def receive(self, key, wire: tuple):
        """Message accepted under `key` for the wire input, or None."""
        raise NotImplementedError

    def recycled(self, key) -> Optional[int]:
        return None

    def recycled_values(self) -> Sequence[int]:
        return ()

    def wire_values(self) -> list[tuple]:
        raise NotImplementedError

    def check_message(self, x) -> None:
        raise NotImplementedError


class WcProtocol(AuthProtocol):
    """(x, h_{k1}(x) ^ k2) with k1 recycled, or (x, h_k(x)) without a pad."""

    def __init__(self, fam: HashFamily, recycle: bool):
        self.fam = fam
        self.recycles = recycle
        self.messages = fam.messages
        self._tab = fam.tag_table()
        self._idx = {x: i for i, x in enumerate(fam.messages)}

    def keys(self):
        if self.recycles:
            return [
                (k1, k2) for k1 in range(self.fam.key_count)
                for k2 in range(self.fam.tag_count)
            ]
        return list(range(self.fam.key_count))

    def encode(self, key, x):
        i = self._idx[x]
        if self.recycles:
            k1, k2 = key
            return (x, self._tab[k1][i] ^ k2)
        return (x, self._tab[key][i])

    def receive(self, key, wire):
        xp, tp = self._split_wire(wire)
        i = self._idx[xp]
        if self.recycles:
            k1, k2 = key
            expected = self._tab[k1][i] ^ k2
        else:
            expected = self._tab[key][i]
        return xp if expected == tp else None

    def _split_wire(self, wire):
        try:
            xp, tp = wire
        except (TypeError, ValueError):
            raise DomainError(f"wire message must be (message, tag), got {wire!r}") from None
        if xp not in self._idx:
            raise DomainError(f"{xp!r} is not a message of {self.fam.descriptor()}")
        if not isinstance(tp, int) or not 0 <= tp < self.fam.tag_count:
            raise DomainError(f"tag {tp!r} out of range for {self.fam.descriptor()}")
        return xp, tp

    def recycled(self, key):
        return key[0] if self.recycles else None

    def recycled_values(self):
        return range(self.fam.key_count) if self.recycles else ()

    def wire_values(self):
        return [(x, t) for x in self.messages for t in self.fam.tags()]

    def check_message(self, x):
        if x not in self._idx:
            raise DomainError(f"{x!r} is not a message of {self.fam.descriptor()}")


class CounterexampleProtocol(AuthProtocol):
    """Encode a bit x as (x ^ a, h_b(x ^ a)) with key (a, b).

    Built on the family whose hash of 0 is the zero tag under every key.
    Because (0, 0) verifies under all keys, injecting it is accepted with
    certainty, while substitution after seeing a round is much weaker: this
    protocol separates the two attack notions.  No key is recycled.
    """

    def __init__(self, m: int):
        self.fam = CounterexampleFamily(m)
        self.messages = range(2)
        self._tab = self.fam.tag_table()
        self.recycles = False

    def keys(self):
        return [(a, b) for a in range(2) for b in range(self.fam.key_count)]

    def encode(self, key, x):
        a, b = key
        w = x ^ a
        return (w, self._tab[b][w])

    def receive(self, key, wire):
        a, b = key
        try:
            wp, tp = wire
        except (TypeError, ValueError):
            raise DomainError(f"wire message must be (bit, tag), got {wire!r}") from None
        if wp not in (0, 1):
            raise DomainError(f"carrier bit must be 0 or 1, got {wp!r}")
        if not isinstance(tp, int) or not 0 <= tp < self.fam.tag_count:
            raise DomainError(f"tag {tp!r} out of range")
        return (wp ^ a) if self._tab[b][wp] == tp else None

    def wire_values(self):
        return [(w, t) for w in range(2) for t in self.fam.tags()]

    def check_message(self, x):
        if x not in (0, 1):
            raise DomainError(f"message must be 0 or 1, got {x!r}")


def counterexample_protocol(m: int) -> CounterexampleProtocol:
    return CounterexampleProtocol(m)


def as_protocol(fam_or_proto, recycle: bool = False) -> AuthProtocol:
    if isinstance(fam_or_proto, AuthProtocol):
        return fam_or_proto
    if isinstance(fam_or_proto, HashFamily):
        return WcProtocol(fam_or_proto, recycle)
    raise DomainError(f"not a family or protocol: {fam_or_proto!r}")


@dataclass(frozen=True)
class EnvStrategy:
    """A deterministic environment.

    Substitution mode: `msg_dist` is a Dist over ("x",) and `subst` maps the
    observed wire message (x, t) to the wire message delivered instead.  Wire
    messages absent from the map are delivered unchanged, so the empty map is
    the honest environment and every map is total.  Impersonation mode:
    `inject` is delivered before any round runs.
    """

    mode: str
    msg_dist: Optional[Dist] = None
    subst: Mapping[tuple, tuple] = field(default_factory=dict)
    inject: Optional[tuple] = None

    def __post_init__(self):
        if self.mode == SUBSTITUTION:
            if self.msg_dist is None or self.msg_dist.fields != ("x",):
                raise DomainError("substitution strategy needs a msg_dist over ('x',)")
            for key, val in self.subst.items():
                if not (_is_wire(key) and _is_wire(val)):
                    raise DomainError(
                        "substitution map entries are wire -> wire pairs "
                        f"((message, tag) tuples), got {key!r} -> {val!r}")
        elif self.mode == IMPERSONATION:
            if self.inject is None:
                raise DomainError("impersonation strategy needs an injected wire message")
        else:
            raise DomainError(f"unknown strategy mode {self.mode!r}")

    @classmethod
    def substitute(cls, x_or_dist, subst: Mapping[tuple, tuple] | None = None) -> "EnvStrategy":
        if isinstance(x_or_dist, Dist):
            md = x_or_dist
        elif isinstance(x_or_dist, dict):
            md = Dist(("x",), {(x,): Fraction(w) for x, w in x_or_dist.items()})
        else:
            md = Dist.point(("x",), (x_or_dist,))
        return cls(SUBSTITUTION, msg_dist=md, subst=dict(subst or {}))

    @classmethod
    def impersonate(cls, wire: tuple) -> "EnvStrategy":
        return cls(IMPERSONATION, inject=tuple(wire))

    def deliver(self, y: tuple) -> tuple:
        return self.subst.get(y, y)


def _finish(acc, nonrec_fields, proto: AuthProtocol) -> Dist:
    d = Dist(nonrec_fields + ("k1",), acc)
    if not proto.recycles:
        d = d.project(nonrec_fields)  # the declared marginalization step
    return d


def _check_run_budget(proto: AuthProtocol, env: EnvStrategy, budget: int) -> list:
    keys = list(proto.keys())
    support = 1 if env.mode == IMPERSONATION else len(env.msg_dist.weights)
    work = support * len(keys)
    if work > budget:
        raise BudgetExceeded(f"run needs {work} cells, budget is {budget}")
    return keys


def run_real(fam_or_proto, env: EnvStrategy, recycle: bool = False,
             budget: int = DEFAULT_BUDGET) -> Dist:
    """Exact outcome distribution of the real execution under `env`."""
    proto = as_protocol(fam_or_proto, recycle)
    keys = _check_run_budget(proto, env, budget)
    unit = Fraction(1, len(keys))
    acc: dict[tuple, Fraction] = defaultdict(Fraction)
    if env.mode == SUBSTITUTION:
        for (x,), px in env.msg_dist.items():
            proto.check_message(x)
            w = px * unit
            for key in keys:
                y = proto.encode(key, x)
                yp = env.deliver(y)
                out = proto.receive(key, yp)
                acc[(x, y, yp, out, proto.recycled(key))] += w
        return _finish(acc, ("x", "y", "yp", "out"), proto)
    yp = env.inject
    for key in keys:
        out = proto.receive(key, yp)
        acc[(yp, out, proto.recycled(key))] += unit
    return _finish(acc, ("yp", "out"), proto)


def run_ideal(fam_or_proto, env: EnvStrategy, recycle: bool = False,
              budget: int = DEFAULT_BUDGET) -> Dist:
    """Exact outcome distribution of the simulated (ideal) execution.

    The simulator encodes the message under its own fresh keys, so the wire
    message shown to the environment has the real marginal; the receiver
    accepts only if the delivery is unmodified, and the recycled key is drawn
    uniformly, independent of the transcript.
    """
    proto = as_protocol(fam_or_proto, recycle)
    keys = _check_run_budget(proto, env, budget)
    unit = Fraction(1, len(keys))
    rvals = list(proto.recycled_values()) if proto.recycles else [None]
    runit = Fraction(1, len(rvals))
    acc: dict[tuple, Fraction] = defaultdict(Fraction)
    if env.mode == SUBSTITUTION:
        for (x,), px in env.msg_dist.items():
            proto.check_message(x)
            ymarg: dict[tuple, int] = defaultdict(int)
            for key in keys:
                ymarg[proto.encode(key, x)] += 1
            for y, cnt in ymarg.items():
                yp = env.deliver(y)
                out = x if yp == y else None
                w = px * cnt * unit * runit
                for k1 in rvals:
                    acc[(x, y, yp, out, k1)] += w
        return _finish(acc, ("x", "y", "yp", "out"), proto)
    yp = env.inject
    for k1 in rvals:
        acc[(yp, None, k1)] += runit
    return _finish(acc, ("yp", "out"), proto)


def uc_distance(fam_or_proto, env: EnvStrategy, recycle: bool = False,
                budget: int = DEFAULT_BUDGET) -> Fraction:
    proto = as_protocol(fam_or_proto, recycle)
    return statistical_distance(
        run_real(proto, env, budget=budget), run_ideal(proto, env, budget=budget)
    )


def impersonation_distance(fam_or_proto, wire: tuple, recycle: bool = False,
                           budget: int = DEFAULT_BUDGET) -> Fraction:
    """Distance of the environment that injects `wire` before any round."""
    return uc_distance(fam_or_proto, EnvStrategy.impersonate(wire), recycle, budget)


def _conditional_tv(proto: AuthProtocol, x, y, yp, klist, rvals) -> Fraction:
    """TV between the two worlds' (out, k1) conditionals at observed y."""
    n = len(klist)
    real: dict[tuple, int] = defaultdict(int)
    for key in klist:
        real[(proto.receive(key, yp), proto.recycled(key))] += 1
    out0 = x if yp == y else None
    runit = Fraction(1, len(rvals))
    total = Fraction(0)
    seen = set(real)
    seen.update((out0, k1) for k1 in rvals)
    for cell in seen:
        p = Fraction(real.get(cell, 0), n)
        q = runit if cell[0] == out0 else Fraction(0)
        total += abs(p - q)
    return total / 2


def _search_budget(proto: AuthProtocol, budget: int) -> tuple[list, list]:
    keys = list(proto.keys())
    wire = proto.wire_values()
    work = len(proto.messages) * len(keys) * (1 + len(wire))
    if work > budget:
        raise BudgetExceeded(f"worst-case search needs {work} cells, budget is {budget}")
    return keys, wire


def worst_case_substitution(fam_or_proto, recycle: bool = False,
                            budget: int = DEFAULT_BUDGET) -> tuple[Fraction, EnvStrategy]:
    """Maximal distance over point-mass messages and deterministic maps.

    Point masses lose nothing: the distance is affine in the message
    distribution, so its maximum sits at a vertex.  Per-y maximization loses
    nothing either (module docstring); the returned distance is recomputed
    from the witness via the ordinary run pipeline.
    """
    proto = as_protocol(fam_or_proto, recycle)
    keys, wire = _search_budget(proto, budget)
    rvals = list(proto.recycled_values()) if proto.recycles else [None]
    nkeys = len(keys)
    best_total = None
    best_env = None
    for x in proto.messages:
        by_y: dict[tuple, list] = defaultdict(list)
        for key in keys:
            by_y[proto.encode(key, x)].append(key)
        total = Fraction(0)
        mapping: dict[tuple, tuple] = {}
        for y in sorted(by_y, key=outcome_sort_key):
            klist = by_y[y]
            best_tv = Fraction(0)
            best_yp = None
            for yp in wire:
                tv = _conditional_tv(proto, x, y, yp, klist, rvals)
                if tv > best_tv:
                    best_tv, best_yp = tv, yp
            if best_yp is not None:
                mapping[y] = best_yp
                total += Fraction(len(klist), nkeys) * best_tv
        if best_total is None or total > best_total:
            best_total = total
            best_env = EnvStrategy.substitute(x, mapping)
    check = uc_distance(proto, best_env, budget=budget)
    assert check == best_total, "per-y decomposition disagrees with direct run"
    return best_total, best_env


def worst_case_impersonation(fam_or_proto, recycle: bool = False,
                             budget: int = DEFAULT_BUDGET) -> tuple[Fraction, EnvStrategy]:
    """Maximal distance over all injectable wire messages."""
    proto = as_protocol(fam_or_proto, recycle)
    _, wire = _search_budget(proto, budget)
    best = None
    best_env = None
    for yp in wire:
        env = EnvStrategy.impersonate(yp)
        d = uc_distance(proto, env, budget=budget)
        if best is None or d > best:
            best, best_env = d, env
    return best, best_env


def worst_case_distance(fam_or_proto, recycle: bool = False,
                        budget: int = DEFAULT_BUDGET) -> tuple[Fraction, EnvStrategy]:
    """Maximum over substitution and impersonation environments.

    Substitution wins ties so the richer witness is reported.
    """
    proto = as_protocol(fam_or_proto, recycle)
    d_sub, env_sub = worst_case_substitution(proto, budget=budget)
    d_imp, env_imp = worst_case_impersonation(proto, budget=budget)
    if d_imp > d_sub:
        return d_imp, env_imp
    return d_sub, env_sub
