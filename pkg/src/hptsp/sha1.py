"""SHA-1 implemented from the public standard (FIPS 180), self-contained.

The hash is built the classic block-iterated way: the input is padded with a
single 1 bit, zeros, and the 64-bit big-endian message bit length, then a
160-bit chaining state is folded over the 512-bit blocks.  Because the whole
state is the digest, a computation can be *resumed* from a digest plus the
original message length, which is exactly what the length-extension helper in
:mod:`hptsp.hashes` relies on.

Two evaluation paths are provided and tested against each other:

* :class:`Sha1` / :func:`sha1_digest` -- scalar, streaming, any length.
* :func:`sha1_words_batch` -- numpy-vectorised, hashes a matrix of
  equal-length messages at once (the exhaustive-search hot path).
"""

from __future__ import annotations

import struct

import numpy as np

BLOCK_SIZE = 64
DIGEST_SIZE = 20

_H0 = (0x67452301, 0xEFCDAB89, 0x98BADCFE, 0x10325476, 0xC3D2E1F0)
_MASK = 0xFFFFFFFF


def compress(state, block):
    """One compression round: fold a 64-byte block into the 5-word state."""
    w = list(struct.unpack(">16L", block))
    for i in range(16, 80):
        x = w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16]
        w.append(((x << 1) | (x >> 31)) & _MASK)
    a, b, c, d, e = state
    for i in range(0, 20):
        t = (((a << 5) | (a >> 27)) + (d ^ (b & (c ^ d))) + e + 0x5A827999 + w[i]) & _MASK
        a, b, c, d, e = t, a, ((b << 30) | (b >> 2)) & _MASK, c, d
    for i in range(20, 40):
        t = (((a << 5) | (a >> 27)) + (b ^ c ^ d) + e + 0x6ED9EBA1 + w[i]) & _MASK
        a, b, c, d, e = t, a, ((b << 30) | (b >> 2)) & _MASK, c, d
    for i in range(40, 60):
        t = (((a << 5) | (a >> 27)) + ((b & (c | d)) | (c & d)) + e + 0x8F1BBCDC + w[i]) & _MASK
        a, b, c, d, e = t, a, ((b << 30) | (b >> 2)) & _MASK, c, d
    for i in range(60, 80):
        t = (((a << 5) | (a >> 27)) + (b ^ c ^ d) + e + 0xCA62C1D6 + w[i]) & _MASK
        a, b, c, d, e = t, a, ((b << 30) | (b >> 2)) & _MASK, c, d
    return (
        (state[0] + a) & _MASK,
        (state[1] + b) & _MASK,
        (state[2] + c) & _MASK,
        (state[3] + d) & _MASK,
        (state[4] + e) & _MASK,
    )


def padding(message_len: int) -> bytes:
    """The trailer appended to a message of `message_len` bytes before hashing.

    One 0x80 byte, zero fill, then the 64-bit big-endian bit count; the padded
    length is the next multiple of 64.  For length extension this is the "glue"
    that sits between the original message and the attacker's suffix.
    """
    if message_len < 0:
        raise ValueError("message_len must be non-negative")
    zeros = (55 - message_len) % 64
    return b"\x80" + b"\x00" * zeros + struct.pack(">Q", message_len * 8)


def padded_len(message_len: int) -> int:
    """Total bytes actually compressed for a message of `message_len` bytes."""
    return ((message_len + 8) // 64 + 1) * 64


class Sha1:
    """Streaming SHA-1 context.  Single-owner; not thread-safe."""

    block_size = BLOCK_SIZE
    digest_size = DIGEST_SIZE

    def __init__(self, data: bytes = b""):
        self._state = _H0
        self._buffer = b""
        self._compressed = 0  # bytes already folded into the state
        if data:
            self.update(data)

    @classmethod
    def resume(cls, digest: bytes, message_len: int) -> "Sha1":
        """Rebuild a context from a finished digest.

        `message_len` is the byte length of the original (possibly unknown)
        message; the rebuilt context behaves as if `message || padding` had
        been fed through it, so subsequent updates compute the hash of
        `message || padding(message_len) || suffix`.
        """
        if len(digest) != DIGEST_SIZE:
            raise ValueError(f"digest must be {DIGEST_SIZE} bytes, got {len(digest)}")
        ctx = cls()
        ctx._state = struct.unpack(">5L", digest)
        ctx._compressed = padded_len(message_len)
        return ctx

    def update(self, data: bytes) -> "Sha1":
        self._buffer += data
        n = len(self._buffer) // 64 * 64
        if n:
            state = self._state
            buf = self._buffer
            for i in range(0, n, 64):
                state = compress(state, buf[i : i + 64])
            self._state = state
            self._buffer = buf[n:]
            self._compressed += n
        return self

    def digest(self) -> bytes:
        total = self._compressed + len(self._buffer)
        tail = self._buffer + padding(total)
        state = self._state
        for i in range(0, len(tail), 64):
            state = compress(state, tail[i : i + 64])
        return struct.pack(">5L", *state)

    def hexdigest(self) -> str:
        return self.digest().hex()

    def copy(self) -> "Sha1":
        dup = Sha1()
        dup._state = self._state
        dup._buffer = self._buffer
        dup._compressed = self._compressed
        return dup


def sha1_digest(data: bytes) -> bytes:
    """One-shot digest; short inputs take a single-block fast path."""
    n = len(data)
    if n <= 55:
        block = data + b"\x80" + b"\x00" * (55 - n) + struct.pack(">Q", n * 8)
        return struct.pack(">5L", *compress(_H0, block))
    return Sha1(data).digest()


# ---------------------------------------------------------------------------
# Vectorised path: many equal-length messages at once.
# numpy uint32 arithmetic wraps mod 2^32, which is exactly the arithmetic the
# compression function needs, so no masking is required.
# ---------------------------------------------------------------------------


def compress_words_batch(state, words):
    """Fold one block per message into per-message states.

    state: list of five (n,) uint32 arrays (mutated and returned).
    words: (n, 16) uint32 array of big-endian-decoded block words.
    """
    n = words.shape[0]
    w = np.empty((80, n), dtype=np.uint32)
    w[:16] = words.T
    for i in range(16, 80):
        x = w[i - 3] ^ w[i - 8]
        x ^= w[i - 14]
        x ^= w[i - 16]
        w[i] = (x << 1) | (x >> 31)
    a, b, c, d, e = state
    a = a.copy(); b = b.copy(); c = c.copy(); d = d.copy(); e = e.copy()
    for i in range(80):
        if i < 20:
            f = d ^ (b & (c ^ d))
            k = np.uint32(0x5A827999)
        elif i < 40:
            f = b ^ c ^ d
            k = np.uint32(0x6ED9EBA1)
        elif i < 60:
            f = (b & (c | d)) | (c & d)
            k = np.uint32(0x8F1BBCDC)
        else:
            f = b ^ c ^ d
            k = np.uint32(0xCA62C1D6)
        t = (a << 5) | (a >> 27)
        t += f
        t += e
        t += k
        t += w[i]
        e = d
        d = c
        c = (b << 30) | (b >> 2)
        b = a
        a = t
    out = [a, b, c, d, e]
    for j in range(5):
        out[j] += state[j]
    return out


def initial_state_batch(n):
    """Fresh per-message chaining states for a batch of n messages."""
    return [np.full(n, h, dtype=np.uint32) for h in _H0]


def blocks_from_padded(padded):
    """View an (n, 64*k) uint8 matrix of padded messages as uint32 block words."""
    return np.ascontiguousarray(padded).view(">u4").astype(np.uint32)


def pad_batch(msgs: np.ndarray) -> np.ndarray:
    """Pad an (n, L) uint8 message matrix into an (n, padded_len(L)) matrix."""
    n, length = msgs.shape
    total = padded_len(length)
    padded = np.zeros((n, total), dtype=np.uint8)
    padded[:, :length] = msgs
    padded[:, length] = 0x80
    padded[:, -8:] = np.frombuffer(struct.pack(">Q", length * 8), dtype=np.uint8)
    return padded


def sha1_words_batch(msgs: np.ndarray) -> np.ndarray:
    """Hash n equal-length messages; returns their digests as (n, 5) uint32.

    Word j of row i is bytes 4j..4j+3 of the digest read big-endian, so
    lexicographic comparison of the word tuples equals byte-wise comparison
    of the digests.
    """
    if msgs.ndim != 2:
        raise ValueError("expected a 2-d (n, length) message matrix")
    n = msgs.shape[0]
    padded = pad_batch(msgs)
    state = initial_state_batch(n)
    for off in range(0, padded.shape[1], 64):
        state = compress_words_batch(state, blocks_from_padded(padded[:, off : off + 64]))
    return np.stack(state, axis=1)


def words_to_digest(words) -> bytes:
    """Convert one 5-word row back to the 20-byte digest."""
    return struct.pack(">5L", *(int(x) for x in words))
