"""The from-scratch SHA-1 against independent oracles.

hashlib is the independent reference implementation here; the standard test
vectors are frozen as hex constants and additionally cross-checked against it,
so a mistake in the constants cannot mask a backend bug (or vice versa).
These tests gate everything downstream: if they fail, no table or search
result means anything.
"""

import hashlib
import random

import numpy as np
import pytest

from hptsp.sha1 import (
    Sha1,
    pad_batch,
    padded_len,
    padding,
    sha1_digest,
    sha1_words_batch,
    words_to_digest,
)

# Standard one-block/two-block vectors plus the million-'a' torture input.
FIPS_VECTORS = [
    (b"", "da39a3ee5e6b4b0d3255bfef95601890afd80709"),
    (b"abc", "a9993e364706816aba3e25717850c26c9cd0d89d"),
    (b"abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq",
     "84983e441c3bd26ebaae4aa1f95129e5e54670f1"),
    (b"a" * 1_000_000, "34aa973cd4c4daa4f61eeb2bdbad27316534016f"),
]


@pytest.mark.parametrize("message,expected", FIPS_VECTORS, ids=["empty", "abc", "two-block", "million-a"])
def test_standard_vectors(message, expected):
    assert sha1_digest(message).hex() == expected
    # the frozen constant itself is checked against the independent oracle
    assert hashlib.sha1(message).hexdigest() == expected


@pytest.mark.parametrize("length", [0, 1, 55, 56, 64, 65, 1_000_000])
def test_fixed_output_at_padding_boundaries(length):
    message = bytes(range(256)) * (length // 256) + bytes(range(length % 256))
    digest = sha1_digest(message)
    assert len(digest) == 20
    assert digest == hashlib.sha1(message).digest()


def test_streaming_matches_one_shot_for_random_chunkings():
    rng = random.Random(1234)
    message = rng.randbytes(10 * 1024)
    expected = sha1_digest(message)
    assert expected == hashlib.sha1(message).digest()
    for _ in range(1000):
        ctx = Sha1()
        pos = 0
        while pos < len(message):
            step = rng.randint(1, 400)
            ctx.update(message[pos : pos + step])
            pos += step
        assert ctx.digest() == expected


def test_update_in_one_chunk_equals_whole_message():
    message = b"A1B2C3D4"
    assert Sha1().update(message).digest() == sha1_digest(message)
    assert Sha1(b"A1B2").update(b"C3D4").digest() == sha1_digest(message)


def test_digest_is_not_destructive():
    ctx = Sha1(b"abc")
    first = ctx.digest()
    assert ctx.digest() == first
    ctx.update(b"def")
    assert ctx.digest() == sha1_digest(b"abcdef")


def test_copy_is_independent():
    ctx = Sha1(b"abc")
    dup = ctx.copy()
    dup.update(b"def")
    assert ctx.digest() == sha1_digest(b"abc")
    assert dup.digest() == sha1_digest(b"abcdef")


def test_padding_layout():
    pad = padding(8)
    assert pad[0] == 0x80
    assert pad[-8:] == (64).to_bytes(8, "big")
    assert (8 + len(pad)) % 64 == 0
    assert padded_len(8) == 64
    assert padded_len(55) == 64
    assert padded_len(56) == 128
    with pytest.raises(ValueError):
        padding(-1)


def test_resume_reproduces_extended_message():
    prefix = b"A1B2"
    suffix = b"C3D4"
    full = prefix + padding(len(prefix)) + suffix
    resumed = Sha1.resume(sha1_digest(prefix), len(prefix)).update(suffix).digest()
    assert resumed == sha1_digest(full) == hashlib.sha1(full).digest()
    with pytest.raises(ValueError):
        Sha1.resume(b"short", 4)


@pytest.mark.parametrize("length", [1, 8, 22, 55, 56, 64, 100, 130])
def test_batch_matches_scalar_and_oracle(length):
    rng = np.random.default_rng(99)
    msgs = rng.integers(0, 256, size=(64, length), dtype=np.uint8)
    words = sha1_words_batch(msgs)
    assert words.shape == (64, 5) and words.dtype == np.uint32
    for i in range(msgs.shape[0]):
        data = msgs[i].tobytes()
        assert words_to_digest(words[i]) == sha1_digest(data) == hashlib.sha1(data).digest()


def test_batch_rejects_non_matrix_input():
    with pytest.raises(ValueError):
        sha1_words_batch(np.zeros(10, dtype=np.uint8))


def test_pad_batch_layout():
    msgs = np.full((3, 10), ord("x"), dtype=np.uint8)
    padded = pad_batch(msgs)
    assert padded.shape == (3, 64)
    assert (padded[:, 10] == 0x80).all()
    assert (padded[:, -8:] == np.frombuffer((80).to_bytes(8, "big"), dtype=np.uint8)).all()


def test_determinism_across_calls():
    message = b"determinism" * 7
    assert sha1_digest(message) == sha1_digest(message) == Sha1(message).digest()
