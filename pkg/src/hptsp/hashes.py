"""Pluggable fixed-output hash backends and the digest operations built on them.

The search and verification code only ever sees this module's surface:
``lookup_hash`` resolves the id stored in an instance file, ``digest`` maps
bytes to bytes, and ``length_extend`` resumes a block-iterated computation
from a finished digest.  The default registry holds the package's own SHA-1
(see :mod:`hptsp.sha1`) and, to demonstrate that nothing depends on the
160-bit output size, a 256-bit standard hash backed by :mod:`hashlib`.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Callable, Iterator

from . import sha1 as _sha1
from .errors import CapabilityError, HashRegistrationError, UnknownHashError


@dataclass(frozen=True)
class HashFunction:
    """A deterministic map from arbitrary byte strings to fixed-length digests.

    resume, when present, rebuilds a streaming context from (digest,
    message_len) for block-iterated constructions; backends without it cannot
    serve length extension.
    """

    id: str
    digest_len: int
    block_len: int
    new: Callable[[], object]  # streaming context: .update(bytes), .digest()
    resume: Callable[[bytes, int], object] | None = None

    def digest(self, message: bytes) -> bytes:
        return self.new().update(message).digest()


class _HashlibCtx:
    """Adapter giving hashlib objects the update-returns-self shape used here."""

    def __init__(self, inner):
        self._inner = inner

    def update(self, data: bytes):
        self._inner.update(data)
        return self

    def digest(self) -> bytes:
        return self._inner.digest()


def _scratch_sha1() -> HashFunction:
    return HashFunction(
        id="sha1",
        digest_len=_sha1.DIGEST_SIZE,
        block_len=_sha1.BLOCK_SIZE,
        new=_sha1.Sha1,
        resume=_sha1.Sha1.resume,
    )


def _hashlib_sha256() -> HashFunction:
    return HashFunction(
        id="sha256",
        digest_len=32,
        block_len=64,
        new=lambda: _HashlibCtx(hashlib.sha256()),
    )


_REGISTRY: dict[str, HashFunction] = {}


def register_hash(fn: HashFunction) -> None:
    """Add a backend; ids are unique for the life of the process."""
    if fn.id in _REGISTRY:
        raise HashRegistrationError(f"hash id already registered: {fn.id!r}")
    _REGISTRY[fn.id] = fn


def unregister_hash(hash_id: str) -> None:
    """Remove a backend (test support; the built-ins are normally permanent)."""
    _REGISTRY.pop(hash_id, None)


def lookup_hash(hash_id: str) -> HashFunction:
    try:
        return _REGISTRY[hash_id]
    except KeyError:
        raise UnknownHashError(f"unknown hash id: {hash_id!r}") from None


def registered_ids() -> list[str]:
    return sorted(_REGISTRY)


register_hash(_scratch_sha1())
register_hash(_hashlib_sha256())


def _resolve(h: HashFunction | str) -> HashFunction:
    return lookup_hash(h) if isinstance(h, str) else h


def digest(h: HashFunction | str, message: bytes) -> bytes:
    """Hash a complete message."""
    return _resolve(h).digest(message)


def digest_streaming(h: HashFunction | str, chunks: Iterator[bytes] | list[bytes]) -> bytes:
    """Hash a message provided in arbitrary chunks; equals digest(join(chunks))."""
    ctx = _resolve(h).new()
    for chunk in chunks:
        ctx.update(chunk)
    return ctx.digest()


def glue_padding(h: HashFunction | str, message_len: int) -> bytes:
    """The padding bytes the backend appends to a message of the given length."""
    fn = _resolve(h)
    if fn.resume is None:
        raise CapabilityError(f"backend {fn.id!r} does not expose its padding")
    return _sha1.padding(message_len)


def length_extend(
    h: HashFunction | str, digest_of_prefix: bytes, prefix_len: int, suffix: bytes
) -> bytes:
    """Digest of ``prefix || padding(prefix_len) || suffix`` without the prefix.

    Works only for block-iterated backends whose full chaining state is the
    digest; the prefix itself is never needed, just its digest and length.
    """
    fn = _resolve(h)
    if fn.resume is None:
        raise CapabilityError(f"backend {fn.id!r} does not support length extension")
    if prefix_len < 0:
        raise ValueError("prefix_len must be non-negative")
    if len(digest_of_prefix) != fn.digest_len:
        raise ValueError(
            f"digest must be {fn.digest_len} bytes for {fn.id!r}, got {len(digest_of_prefix)}"
        )
    return fn.resume(digest_of_prefix, prefix_len).update(suffix).digest()


def block_count(h: HashFunction | str, message_len: int) -> int:
    """Number of compression-function applications for a message of this size."""
    fn = _resolve(h)
    return (message_len + 8) // fn.block_len + 1
