"""One-round authentication, key streams, and the wire format."""

from fractions import Fraction as F

import pytest

from recmac import (
    AuthKey,
    DomainError,
    KeyStream,
    MulFamily,
    PadExhausted,
    PolyFamily,
    TableFamily,
    TaggedMessage,
    ToeplitzFamily,
    authenticate,
    pack_tagged,
    unpack_tagged,
    verify,
)


def test_authenticate_frozen():
    fam = MulFamily(2)
    assert authenticate(fam, AuthKey(3, 1), 2) == TaggedMessage(2, 0)


def test_roundtrip_exhaustive():
    for fam in (MulFamily(2), MulFamily(3)):
        for k1 in fam.keys():
            for k2 in fam.tags():
                key = AuthKey(k1, k2)
                for x in fam.messages:
                    ym = authenticate(fam, key, x)
                    assert verify(fam, key, ym) == x
                    for wrong in fam.tags():
                        if wrong != ym.t:
                            assert verify(fam, key, TaggedMessage(x, wrong)) is None


def test_verify_validates_inputs():
    fam = MulFamily(2)
    with pytest.raises(DomainError):
        verify(fam, AuthKey(0, 0), TaggedMessage(0, 4))
    with pytest.raises(DomainError):
        verify(fam, AuthKey(0, 4), TaggedMessage(0, 0))
    with pytest.raises(DomainError):
        verify(fam, AuthKey(9, 0), TaggedMessage(0, 0))
    with pytest.raises(DomainError):
        authenticate(fam, AuthKey(0, 0), 11)


def test_masked_tag_is_uniform_over_pads():
    fam = MulFamily(3)
    for k1 in fam.keys():
        for x in fam.messages:
            tags = {authenticate(fam, AuthKey(k1, k2), x).t for k2 in fam.tags()}
            assert tags == set(fam.tags())


def test_key_stream():
    ks = KeyStream(5, (1, 3, 0), tag_bits=2)
    assert ks.pads_remaining == 3
    assert ks.bits_consumed == 0
    assert ks.next_key() == AuthKey(5, 1)
    assert ks.next_key() == AuthKey(5, 3)
    assert ks.bits_consumed == 4
    assert ks.pads_remaining == 1
    assert ks.next_key() == AuthKey(5, 0)
    assert ks.bits_consumed == 6
    with pytest.raises(PadExhausted):
        ks.next_key()
    with pytest.raises(DomainError):
        KeyStream(0, (4,), tag_bits=2)


def test_pack_frozen():
    fam = MulFamily(2)
    assert pack_tagged(fam, TaggedMessage(2, 0)) == b"\x02\x00"


def test_pack_unpack_roundtrip():
    for fam in (MulFamily(2), MulFamily(8), PolyFamily(4, 2), ToeplitzFamily(4, 3),
                TableFamily(["a", "b", "c"], [[0, 1, 2]])):
        for x in list(fam.messages)[:8]:
            for t in (0, fam.tag_count - 1):
                ym = TaggedMessage(x, t)
                wire = pack_tagged(fam, ym)
                assert unpack_tagged(fam, wire) == ym


def test_pack_poly_blocks_big_endian():
    fam = PolyFamily(4, 2)
    assert pack_tagged(fam, TaggedMessage((2, 1), 9)) == b"\x21\x09"


def test_unpack_validates():
    fam = MulFamily(2)
    with pytest.raises(DomainError):
        unpack_tagged(fam, b"\x00")
    with pytest.raises(DomainError):
        unpack_tagged(fam, b"\x00\x00\x00")
    with pytest.raises(DomainError):
        unpack_tagged(fam, b"\x00\x04")   # tag beyond 2 bits
    with pytest.raises(DomainError):
        unpack_tagged(fam, b"\x05\x00")   # message beyond 2 bits
    with pytest.raises(DomainError):
        pack_tagged(fam, TaggedMessage(0, 4))


def test_forgery_rate_bounded_by_family_epsilon():
    # Over uniform (k1, pad), a fixed substitution of the observed wire
    # message succeeds with probability at most the family's two-point bound.
    fam = MulFamily(2)
    eps = F(1, 4)
    for x in fam.messages:
        for xp in fam.messages:
            if xp == x:
                continue
            for delta in fam.tags():
                hits = 0
                total = 0
                for k1 in fam.keys():
                    for k2 in fam.tags():
                        ym = authenticate(fam, AuthKey(k1, k2), x)
                        forged = TaggedMessage(xp, ym.t ^ delta)
                        total += 1
                        if verify(fam, AuthKey(k1, k2), forged) == xp:
                            hits += 1
                assert F(hits, total) <= eps
