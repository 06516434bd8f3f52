"""Route enumeration, the interleaved route-string encoding, and digest order.

A route is one of the v! directed visiting sequences; rotations and reversals
are deliberately *not* identified, so the rank space is exactly the
lexicographic order on permutations of 0..v-1.  Ranks use the factorial
number system and fit in 64 bits up to v = 20, which bounds full enumeration.

The encoding interleaves vertex labels with the decimal edge weights and
closes the cycle, e.g. labels A,B,C,D with weights AB=1, BC=2, CD=3, DA=4
encode as ``A1B2C3D4`` -- the trailing 4 is the closing edge back to A.
There are no separators; the bytes are fed to the hash backend as-is.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from math import factorial
from typing import TYPE_CHECKING, Iterator

from .errors import CapacityError, DigestLengthError, RankRangeError

if TYPE_CHECKING:  # pragma: no cover
    from .instances import Instance

# 20! < 2^63 < 21!; ranks beyond that no longer fit machine integers.
MAX_ENUM_V = 20


@dataclass(frozen=True)
class Route:
    """A visiting order (permutation of 0..v-1) plus its lexicographic rank."""

    order: tuple[int, ...]
    rank: int

    def __post_init__(self):
        v = len(self.order)
        if sorted(self.order) != list(range(v)):
            raise ValueError(f"order is not a permutation of 0..{v - 1}: {self.order}")
        if not 0 <= self.rank < factorial(v):
            raise RankRangeError(f"rank {self.rank} out of range for v={v}")

    @property
    def v(self) -> int:
        return len(self.order)

    @classmethod
    def from_order(cls, order) -> "Route":
        order = tuple(order)
        return cls(order, route_to_rank(order))

    @classmethod
    def from_rank(cls, rank: int, v: int) -> "Route":
        return rank_to_route(rank, v)


@dataclass(frozen=True)
class EncodedRoute:
    """The exact byte string handed to the hash backend, with its source route."""

    data: bytes
    route: Route


@total_ordering
@dataclass(frozen=True)
class Digest:
    """Fixed-length hash output; ordering is byte-wise (= lowercase-hex order)."""

    data: bytes

    def hex(self) -> str:
        return self.data.hex()

    def __eq__(self, other):
        if not isinstance(other, Digest):
            return NotImplemented
        return self.data == other.data

    def __lt__(self, other):
        if not isinstance(other, Digest):
            return NotImplemented
        return compare_digests(self, other) < 0

    def __hash__(self):
        return hash(self.data)


def compare_digests(a: Digest | bytes, b: Digest | bytes) -> int:
    """Three-way byte-wise comparison; digests of unequal length don't compare."""
    da = a.data if isinstance(a, Digest) else a
    db = b.data if isinstance(b, Digest) else b
    if len(da) != len(db):
        raise DigestLengthError(f"cannot compare digests of lengths {len(da)} and {len(db)}")
    if da < db:
        return -1
    if da > db:
        return 1
    return 0


def _check_v(v: int) -> None:
    if v < 3:
        raise ValueError(f"need at least 3 vertices, got {v}")
    if v > MAX_ENUM_V:
        raise CapacityError(f"v={v} exceeds the enumeration capacity (v <= {MAX_ENUM_V})")


def rank_to_route(rank: int, v: int) -> Route:
    """Unrank: lexicographic index -> permutation (factorial number system)."""
    _check_v(v)
    if not 0 <= rank < factorial(v):
        raise RankRangeError(f"rank {rank} out of range [0, {v}!)")
    remaining = list(range(v))
    order = []
    r = rank
    for i in range(v - 1, -1, -1):
        f = factorial(i)
        order.append(remaining.pop(r // f))
        r %= f
    return Route(tuple(order), rank)


def route_to_rank(order) -> int:
    """Rank: permutation -> lexicographic index (inverse of rank_to_route)."""
    order = tuple(order)
    v = len(order)
    _check_v(v)
    if sorted(order) != list(range(v)):
        raise ValueError(f"not a permutation of 0..{v - 1}: {order}")
    rank = 0
    for i, x in enumerate(order):
        smaller = sum(1 for y in order[i + 1 :] if y < x)
        rank += smaller * factorial(v - 1 - i)
    return rank


def _next_permutation(order: list[int]) -> bool:
    """Advance to the lexicographic successor in place; False at the last one."""
    i = len(order) - 2
    while i >= 0 and order[i] >= order[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = len(order) - 1
    while order[j] <= order[i]:
        j -= 1
    order[i], order[j] = order[j], order[i]
    order[i + 1 :] = reversed(order[i + 1 :])
    return True


def enumerate_routes(v: int, start: int = 0, stop: int | None = None) -> Iterator[Route]:
    """Yield routes in rank order for ranks [start, stop); stop=None means v!.

    Sub-ranges exist so that disjoint pieces of the rank space can be walked
    independently (and concatenate back to the full enumeration).
    """
    _check_v(v)
    total = factorial(v)
    if stop is None:
        stop = total
    if not (0 <= start <= stop <= total):
        raise RankRangeError(f"invalid rank range [{start}, {stop}) for v={v}")
    if start == stop:
        return
    order = list(rank_to_route(start, v).order)
    for rank in range(start, stop):
        yield Route(tuple(order), rank)
        if not _next_permutation(order):
            break


def encode_order(instance: "Instance", order) -> bytes:
    """Serialize a visiting order to the hashed byte string (closing edge included).

    Rank-free variant of encode_route: works for any v the instance allows,
    including vertex counts past the enumeration capacity.
    """
    v = len(order)
    if v != instance.v:
        raise ValueError(f"order has {v} vertices, instance has {instance.v}")
    labels, costs = instance.encoding_tables()
    parts = []
    for i in range(v):
        a = order[i]
        parts.append(labels[a])
        parts.append(costs[a][order[(i + 1) % v]])
    return b"".join(parts)


def encode_route(instance: "Instance", route: Route) -> EncodedRoute:
    """Serialize a route to the hashed byte string (closing edge included)."""
    return EncodedRoute(encode_order(instance, route.order), route)


def route_labels(instance: "Instance", route: Route) -> str:
    """Human-readable vertex sequence, e.g. 'DCAB'."""
    return "".join(instance.labels[i] for i in route.order)
