"""Independent oracles the test suite holds the library against.

Nothing in this file imports library internals beyond the public evaluation
API (fam.tag, fam.keys, ...).  Field arithmetic, collision measures, and
real/ideal distances are reimplemented here from first principles, slowly and
obviously, so a library bug cannot hide in a shared helper.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from recmac import MulFamily, TableFamily, lift_to_asu2


# -- GF(2)[x] schoolbook arithmetic -------------------------------------------


def poly_mul_bits(a: int, b: int) -> int:
    """Carry-less product of two bit polynomials."""
    acc = 0
    i = 0
    while b >> i:
        if (b >> i) & 1:
            acc ^= a << i
        i += 1
    return acc


def poly_mod_bits(a: int, mod: int) -> int:
    """Long division remainder, one subtracted multiple at a time."""
    dm = mod.bit_length() - 1
    while a.bit_length() - 1 >= dm and a != 0:
        a ^= mod << (a.bit_length() - 1 - dm)
    return a


def gf_mul_oracle(a: int, b: int, mod: int) -> int:
    return poly_mod_bits(poly_mul_bits(a, b), mod)


def irreducible_oracle(mask: int, m: int) -> bool:
    """Trial division by every polynomial of degree 1..m-1."""
    if mask.bit_length() - 1 != m:
        return False
    for q in range(2, 1 << m):
        if q.bit_length() - 1 < 1:
            continue
        if poly_mod_bits(mask, q) == 0:
            return True if q == mask else False
    return True


# -- collision-measure oracles ------------------------------------------------


def axu2_oracle(fam) -> Fraction:
    """Naive max over pairs and targets of Pr_k[h(x1) ^ h(x2) = t]."""
    msgs = list(fam.messages)
    if len(msgs) < 2:
        return Fraction(0)
    best = 0
    for i, x1 in enumerate(msgs):
        for x2 in msgs[i + 1:]:
            hits: dict[int, int] = {}
            for k in fam.keys():
                d = fam.tag(k, x1) ^ fam.tag(k, x2)
                hits[d] = hits.get(d, 0) + 1
            best = max(best, max(hits.values()))
    return Fraction(best, fam.key_count)


def asu2_oracle(fam) -> Fraction:
    """Naive max over pairs of |T| * Pr_k[h(x1) = t1 and h(x2) = t2]."""
    msgs = list(fam.messages)
    if len(msgs) < 2:
        return Fraction(0)
    best = 0
    for i, x1 in enumerate(msgs):
        for x2 in msgs[i + 1:]:
            hits: dict[tuple, int] = {}
            for k in fam.keys():
                cell = (fam.tag(k, x1), fam.tag(k, x2))
                hits[cell] = hits.get(cell, 0) + 1
            best = max(best, max(hits.values()))
    return Fraction(fam.tag_count * best, fam.key_count)


# -- real/ideal distance oracle -----------------------------------------------
#
# Counting version of the one-round game for hash-family protocols, kept in
# integers until the final division.  Substitution: the sender tags x, the
# map replaces the observed wire message, the receiver checks.  Recycling
# mode keys are (k1, pad) with k1 published afterwards; standard mode keys
# are just the family key.  The ideal receiver accepts only unmodified
# delivery and its published k1 is uniform, independent of the rest.


def substitution_tv_oracle(fam, x, subst: dict, recycle: bool) -> Fraction:
    real: dict[tuple, int] = {}
    ideal: dict[tuple, int] = {}
    if recycle:
        kc, tc = fam.key_count, fam.tag_count
        denom = kc * tc * kc
        for k1 in range(kc):
            for pad in range(tc):
                y = (x, fam.tag(k1, x) ^ pad)
                yp = subst.get(y, y)
                xp, tp = yp
                out = xp if fam.tag(k1, xp) ^ pad == tp else None
                cell = (x, y, yp, out, k1)
                real[cell] = real.get(cell, 0) + kc
        for k1s in range(kc):
            for pad in range(tc):
                y = (x, fam.tag(k1s, x) ^ pad)
                yp = subst.get(y, y)
                out = x if yp == y else None
                for k1 in range(kc):
                    cell = (x, y, yp, out, k1)
                    ideal[cell] = ideal.get(cell, 0) + 1
    else:
        denom = fam.key_count
        for k in fam.keys():
            y = (x, fam.tag(k, x))
            yp = subst.get(y, y)
            xp, tp = yp
            out = xp if fam.tag(k, xp) == tp else None
            cell = (x, y, yp, out)
            real[cell] = real.get(cell, 0) + 1
        for k in fam.keys():
            y = (x, fam.tag(k, x))
            yp = subst.get(y, y)
            out = x if yp == y else None
            cell = (x, y, yp, out)
            ideal[cell] = ideal.get(cell, 0) + 1
    diff = 0
    for cell in real.keys() | ideal.keys():
        diff += abs(real.get(cell, 0) - ideal.get(cell, 0))
    return Fraction(diff, 2 * denom)


def impersonation_tv_oracle(fam, wire: tuple, recycle: bool) -> Fraction:
    xp, tp = wire
    real: dict[tuple, int] = {}
    ideal: dict[tuple, int] = {}
    if recycle:
        kc, tc = fam.key_count, fam.tag_count
        denom = kc * tc
        for k1 in range(kc):
            for pad in range(tc):
                out = xp if fam.tag(k1, xp) ^ pad == tp else None
                cell = (wire, out, k1)
                real[cell] = real.get(cell, 0) + 1
            ideal[(wire, None, k1)] = tc
    else:
        denom = fam.key_count
        for k in fam.keys():
            out = xp if fam.tag(k, xp) == tp else None
            cell = (wire, out)
            real[cell] = real.get(cell, 0) + 1
            ideal[(wire, None)] = ideal.get((wire, None), 0) + 1
    diff = 0
    for cell in real.keys() | ideal.keys():
        diff += abs(real.get(cell, 0) - ideal.get(cell, 0))
    return Fraction(diff, 2 * denom)


# -- shared fixtures ------------------------------------------------------------


def build_table16():
    """|K|=16, |X|=4, |T|=4 fixture: the pad-keyed form of k*x over GF(4).

    Rows are written out through the public API of the lifted family so the
    fixture is a plain explicit table, independent of the lift class once
    built.
    """
    lifted = lift_to_asu2(MulFamily(2))
    rows = [[lifted.tag(k, x) for x in lifted.messages] for k in lifted.keys()]
    return TableFamily(list(lifted.messages), rows, m=2, source="table16")


@pytest.fixture(scope="session")
def table16():
    return build_table16()
