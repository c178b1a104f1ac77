"""Keyed hash families with enumerable key and message spaces.

Every family here is small enough to enumerate: keys are indexed 0..K-1,
messages live in an explicit list, and tags are m-bit integers.  That is the
whole point: the security properties measured in measure.py and ucsim.py are
computed by exact counting, not bounded by proofs.

Families:

  Mul            h_k(x) = k*x in GF(2^m); keys and messages are field elements.
  Poly(L)        h_k(x_1..x_L) = sum x_i * k^i; no constant term, so the
                 difference polynomial of two distinct messages has no
                 constant term either and k=0 is always a root.
  Toeplitz       h_k(x) = T_k x over GF(2); T_k is the m-by-n Toeplitz matrix
                 whose diagonals are the n+m-1 key bits.
  Table          explicit |K| x |X| tag table, for fixtures.
  Counterexample h_k(0) = 0 for every key and h_k(1) ranges uniformly over
                 the 2^m - 1 nonzero tags; the family whose perfect
                 substitution resistance coexists with trivial forgeability
                 of the all-zero tagged message.

Mul, Poly and Toeplitz are XOR-linear in the message: h_k(x1) ^ h_k(x2) =
h_k(x1 ^ x2).  The `xor_linear` flag records that structural fact; measure.py
uses it to collapse pair enumerations to difference enumerations without
giving up exactness.
"""

from __future__ import annotations

import itertools
import json
from typing import Sequence

from .errors import BudgetExceeded, DomainError, DEFAULT_BUDGET
from .gf2m import FieldCtx


class HashFamily:
    """Base class; subclasses set the spaces and implement _tag()."""

    field: FieldCtx
    tag_bits: int
    message_bits: int
    key_count: int
    messages: Sequence
    xor_linear: bool = False

    def __init__(self) -> None:
        self._msg_index: dict | None = None
        self._table: list[list[int]] | None = None

    # -- spaces ------------------------------------------------------------

    @property
    def tag_count(self) -> int:
        return 1 << self.tag_bits

    def tags(self) -> range:
        return range(self.tag_count)

    def keys(self) -> range:
        return range(self.key_count)

    def message_index(self, x) -> int:
        if self._msg_index is None:
            self._msg_index = {m: i for i, m in enumerate(self.messages)}
        try:
            return self._msg_index[x]
        except (KeyError, TypeError):
            raise DomainError(f"{x!r} is not a message of {self.descriptor()}") from None

    def check_key(self, k: int) -> int:
        if not 0 <= k < self.key_count:
            raise DomainError(f"key {k!r} out of range for {self.descriptor()}")
        return k

    # -- evaluation --------------------------------------------------------

    def tag(self, k: int, x) -> int:
        """The tag h_k(x)."""
        self.check_key(k)
        self.message_index(x)
        return self._tag(k, x)

    def _tag(self, k: int, x) -> int:
        raise NotImplementedError

    def tag_table(self, budget: int = DEFAULT_BUDGET) -> list[list[int]]:
        """The full |K| x |X| evaluation table, built once and cached."""
        if self._table is None:
            cells = self.key_count * len(self.messages)
            if cells > budget:
                raise BudgetExceeded(
                    f"evaluation table needs {cells} cells, budget is {budget}"
                )
            self._table = [
                [self._tag(k, x) for x in self.messages] for k in self.keys()
            ]
        return self._table

    # -- wire encoding of messages ------------------------------------------

    def message_to_int(self, x) -> int:
        """Messages as integers of message_bits bits, for the wire format."""
        return x

    def message_from_int(self, v: int):
        if not 0 <= v < (1 << self.message_bits):
            raise DomainError(f"{v} does not fit in {self.message_bits} message bits")
        return v

    def descriptor(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.descriptor()}>"


class MulFamily(HashFamily):
    """h_k(x) = k*x in GF(2^m); zero message and zero key allowed."""

    def __init__(self, m: int, modulus: int | None = None):
        super().__init__()
        self.field = FieldCtx(m, modulus)
        self.tag_bits = m
        self.message_bits = m
        self.key_count = self.field.order
        self.messages = range(self.field.order)
        self.xor_linear = True

    def _tag(self, k: int, x: int) -> int:
        return self.field.mul(k, x)

    def descriptor(self) -> str:
        return f"mul:m={self.tag_bits}"


class PolyFamily(HashFamily):
    """h_k(x) = sum_{i=1..L} x_i * k^i over GF(2^m).

    Messages are L-tuples of field elements.  The sum deliberately starts at
    i=1: with no constant term an L-term difference polynomial has at most L
    roots, giving the L/2^m two-key collision bound that measure.py checks.
    """

    def __init__(self, m: int, length: int, modulus: int | None = None):
        super().__init__()
        if length < 1:
            raise DomainError("poly family needs at least one block")
        if m * length > 20:
            raise BudgetExceeded(
                f"poly message space 2^{m * length} is too large to enumerate"
            )
        self.field = FieldCtx(m, modulus)
        self.length = length
        self.tag_bits = m
        self.message_bits = m * length
        self.key_count = self.field.order
        self.messages = list(itertools.product(self.field.elements(), repeat=length))
        self.xor_linear = True

    def _tag(self, k: int, x: tuple) -> int:
        f = self.field
        acc = 0
        kp = 1
        for block in x:
            kp = f.mul(kp, k)
            acc ^= f.mul(block, kp)
        return acc

    def message_to_int(self, x: tuple) -> int:
        v = 0
        for block in x:
            v = (v << self.tag_bits) | block
        return v

    def message_from_int(self, v: int) -> tuple:
        if not 0 <= v < (1 << self.message_bits):
            raise DomainError(f"{v} does not fit in {self.message_bits} message bits")
        mask = self.tag_count - 1
        blocks = []
        for i in range(self.length):
            blocks.append((v >> (self.tag_bits * (self.length - 1 - i))) & mask)
        return tuple(blocks)

    def descriptor(self) -> str:
        return f"poly:m={self.tag_bits},L={self.length}"


class ToeplitzFamily(HashFamily):
    """h_k(x) = T_k x over GF(2) for an m-by-n Toeplitz matrix T_k.

    The key is an (n+m-1)-bit integer s; entry T[i][j] = bit i-j+n-1 of s,
    so every diagonal is constant.  Message bit j and tag bit i are the
    corresponding low-order bits.
    """

    def __init__(self, n: int, m: int):
        super().__init__()
        if n < 1 or m < 1:
            raise DomainError("toeplitz family needs n >= 1 and m >= 1")
        if n > 16 or m > 16:
            raise BudgetExceeded("toeplitz spaces beyond 16 bits are not enumerable here")
        self.field = FieldCtx(m)
        self.n = n
        self.tag_bits = m
        self.message_bits = n
        self.key_count = 1 << (n + m - 1)
        self.messages = range(1 << n)
        self.xor_linear = True

    def _tag(self, k: int, x: int) -> int:
        t = 0
        for i in range(self.tag_bits):
            row = 0
            for j in range(self.n):
                if (k >> (i - j + self.n - 1)) & 1:
                    row |= 1 << j
            if (x & row).bit_count() & 1:
                t |= 1 << i
        return t

    def descriptor(self) -> str:
        return f"toeplitz:n={self.n},m={self.tag_bits}"


class TableFamily(HashFamily):
    """A family given by an explicit tag table; rows may repeat.

    The JSON form is {"keys": K, "messages": [...], "table": [[...], ...]}
    with one row per key.  An optional "m" pins the tag width; otherwise the
    smallest width holding every tag is used.
    """

    def __init__(self, messages: Sequence, table: Sequence[Sequence[int]],
                 m: int | None = None, source: str = "inline"):
        super().__init__()
        messages = list(messages)
        if not messages:
            raise DomainError("table family needs at least one message")
        if len(set(map(self._freeze, messages))) != len(messages):
            raise DomainError("table family messages must be distinct")
        rows = [list(r) for r in table]
        if not rows:
            raise DomainError("table family needs at least one key row")
        for r in rows:
            if len(r) != len(messages):
                raise DomainError("every table row must have one tag per message")
        max_tag = max(max(r) for r in rows)
        min_tag = min(min(r) for r in rows)
        if min_tag < 0:
            raise DomainError("tags must be non-negative")
        if m is None:
            m = max(1, max_tag.bit_length())
        if max_tag >= (1 << m):
            raise DomainError(f"tag {max_tag} does not fit in {m} bits")
        self.field = FieldCtx(m)
        self.tag_bits = m
        self.message_bits = max(1, (len(messages) - 1).bit_length())
        self.key_count = len(rows)
        self.messages = messages
        self._rows = rows
        self._source = source

    @staticmethod
    def _freeze(x):
        return tuple(x) if isinstance(x, list) else x

    @classmethod
    def from_json(cls, path: str) -> "TableFamily":
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        try:
            keys = doc["keys"]
            messages = [cls._freeze(x) for x in doc["messages"]]
            table = doc["table"]
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed table file {path}: {exc}") from None
        if keys != len(table):
            raise DomainError(f"{path}: 'keys' is {keys} but table has {len(table)} rows")
        return cls(messages, table, m=doc.get("m"), source=f"@{path}")

    def _tag(self, k: int, x) -> int:
        return self._rows[k][self.message_index(x)]

    def message_to_int(self, x) -> int:
        return self.message_index(x)

    def message_from_int(self, v: int):
        if not 0 <= v < len(self.messages):
            raise DomainError(f"message index {v} out of range")
        return self.messages[v]

    def descriptor(self) -> str:
        return f"table:{self._source}"


class CounterexampleFamily(HashFamily):
    """Two messages; h_k(0) = 0 always, h_k(1) uniform over nonzero tags.

    The key space has 2^m - 1 keys, one per nonzero tag.  Substitution of one
    message for the other succeeds with probability at most 1/(2^m - 1), yet
    the tagged message (0, 0) verifies under every key.
    """

    def __init__(self, m: int):
        super().__init__()
        self.field = FieldCtx(m)
        self.tag_bits = m
        self.message_bits = 1
        self.key_count = self.field.order - 1
        self.messages = range(2)
        self.xor_linear = True

    def _tag(self, k: int, x: int) -> int:
        return (k + 1) if x else 0

    def descriptor(self) -> str:
        return f"counterexample:m={self.tag_bits}"


class LiftedFamily(HashFamily):
    """g_{(k1,k2)}(x) = h_{k1}(x) ^ k2: the pad folded into the key.

    Keys are indexed k1 * |T| + k2.  If h has two-key collision bound eps,
    g carries the same bound in two-point form, and its tag marginal is
    exactly uniform whatever h does.
    """

    def __init__(self, base: HashFamily):
        super().__init__()
        self.base = base
        self.field = base.field
        self.tag_bits = base.tag_bits
        self.message_bits = base.message_bits
        self.key_count = base.key_count * base.tag_count
        self.messages = base.messages
        self.xor_linear = False  # affine in the message, not linear

    def split_key(self, k: int) -> tuple[int, int]:
        self.check_key(k)
        return divmod(k, self.tag_count)

    def _tag(self, k: int, x) -> int:
        k1, k2 = divmod(k, self.tag_count)
        return self.base._tag(k1, x) ^ k2

    def message_to_int(self, x) -> int:
        return self.base.message_to_int(x)

    def message_from_int(self, v: int):
        return self.base.message_from_int(v)

    def descriptor(self) -> str:
        return f"lift({self.base.descriptor()})"


def lift_to_asu2(fam: HashFamily) -> LiftedFamily:
    """The pad-keyed family used by the no-recycling authentication mode."""
    return LiftedFamily(fam)


def parse_family(desc: str) -> HashFamily:
    """Build a family from a descriptor string.

    Grammar: mul:m=M | poly:m=M,L=L | toeplitz:n=N,m=M | table:@file.json
    | counterexample:m=M.
    """
    desc = desc.strip()
    name, sep, rest = desc.partition(":")
    if not sep:
        raise DomainError(f"descriptor {desc!r} has no parameters")
    name = name.lower()
    if name == "table":
        if not rest.startswith("@"):
            raise DomainError("table descriptor must be table:@<path.json>")
        return TableFamily.from_json(rest[1:])
    params: dict[str, int] = {}
    for part in rest.split(","):
        key, psep, val = part.partition("=")
        if not psep:
            raise DomainError(f"bad parameter {part!r} in {desc!r}")
        try:
            params[key.strip().lower()] = int(val)
        except ValueError:
            raise DomainError(f"parameter {part!r} in {desc!r} is not an integer") from None
    builders = {
        "mul": (("m",), MulFamily),
        "poly": (("m", "l"), PolyFamily),
        "toeplitz": (("n", "m"), ToeplitzFamily),
        "counterexample": (("m",), CounterexampleFamily),
    }
    if name not in builders:
        raise DomainError(f"unknown family {name!r}")
    wanted, build = builders[name]
    try:
        args = [params.pop(w) for w in wanted]
    except KeyError as exc:
        raise DomainError(f"descriptor {desc!r} is missing parameter {exc}") from None
    if params:
        raise DomainError(f"descriptor {desc!r} has unknown parameters {sorted(params)}")
    return build(*args)
