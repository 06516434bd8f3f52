"""Empirical probes of the hash behaviour the construction leans on.

Three questions, each answered with data rather than argument:

* sac_test -- does flipping one input bit flip each output bit about half
  the time?  (The avalanche property that scrambles digest order.)
* leak_test -- does any cheap local feature of a route (its first edge, the
  digest of its first half) predict where the full digest ranks?  The same
  features are run against classic tour-cost order as a control, where the
  first edge genuinely does leak.
* length_extension_demo / bucket_census -- what a resumed-state digest
  actually equals (the glue-padded message, never the continuous one), and
  how v! digests spread over leading-bit buckets.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, sqrt

import numpy as np
from scipy import stats

from . import engine
from . import sha1 as _sha1
from .errors import CapabilityError, FeatureError
from .hashes import glue_padding, length_extend, lookup_hash
from .instances import Instance
from .routes import encode_route, enumerate_routes, route_labels

# 99% two-sided normal quantile, for the binomial halfwidth of the mean rate.
_Z99 = 2.5758293035489004

FEATURE_PREFIX_DIGEST = "prefix-digest-first-byte"
FEATURE_FIRST_EDGE_ID = "first-edge-identity"
FEATURE_FIRST_EDGE_COST = "first-edge-cost"
FEATURES = (FEATURE_PREFIX_DIGEST, FEATURE_FIRST_EDGE_ID, FEATURE_FIRST_EDGE_COST)

TARGET_DIGEST = "digest"
TARGET_TSP_COST = "tsp-cost"


@dataclass(frozen=True)
class AvalancheReport:
    trials: int
    input_len: int
    mean_flip_rate: float
    per_output_bit_rates: tuple[float, ...]
    confidence_halfwidth: float  # 99% binomial halfwidth around the mean rate


@dataclass(frozen=True)
class LeakReport:
    v: int
    feature_name: str
    target: str
    correlation: float  # Spearman rank correlation
    p_value_chance: float  # permutation-test probability under "no association"
    sample_size: int


@dataclass(frozen=True)
class ExtensionRow:
    route: str
    split: int
    extended_hex: str
    direct_hex: str
    full_hex: str

    @property
    def extended_equals_direct(self) -> bool:
        return self.extended_hex == self.direct_hex

    @property
    def extended_equals_full(self) -> bool:
        return self.extended_hex == self.full_hex


@dataclass(frozen=True)
class ExtensionReport:
    rows: tuple[ExtensionRow, ...]

    @property
    def all_match_direct(self) -> bool:
        return all(r.extended_equals_direct for r in self.rows)

    @property
    def none_match_full(self) -> bool:
        return not any(r.extended_equals_full for r in self.rows)


@dataclass(frozen=True)
class CensusReport:
    prefix_bits: int
    counts: tuple[int, ...]
    chi_square: float
    p_value: float

    @property
    def mean_occupancy(self) -> float:
        return sum(self.counts) / len(self.counts)


def sac_test(hash_id: str, trials: int, input_len: int, seed: int = 0) -> AvalancheReport:
    """Flip one random input bit per trial and tally which output bits change."""
    if trials < 1000:
        raise ValueError(f"need at least 1000 trials for a stable estimate, got {trials}")
    if input_len < 1:
        raise ValueError("input_len must be at least 1")
    fn = lookup_hash(hash_id)
    rng = np.random.default_rng(seed)
    base = rng.integers(0, 256, size=(trials, input_len), dtype=np.uint8)
    bit = rng.integers(0, input_len * 8, size=trials)
    flipped = base.copy()
    flipped[np.arange(trials), bit >> 3] ^= (0x80 >> (bit & 7)).astype(np.uint8)

    if hash_id == "sha1":
        d0 = _words_to_bytes_matrix(_sha1.sha1_words_batch(base))
        d1 = _words_to_bytes_matrix(_sha1.sha1_words_batch(flipped))
    else:
        d0 = _digest_matrix(fn, base)
        d1 = _digest_matrix(fn, flipped)

    diff_bits = np.unpackbits(d0 ^ d1, axis=1)
    rates = diff_bits.mean(axis=0)
    mean = float(rates.mean())
    n_obs = trials * rates.size
    halfwidth = _Z99 * sqrt(max(mean * (1.0 - mean), 1e-12) / n_obs)
    return AvalancheReport(
        trials=trials,
        input_len=input_len,
        mean_flip_rate=mean,
        per_output_bit_rates=tuple(float(r) for r in rates),
        confidence_halfwidth=halfwidth,
    )


def _words_to_bytes_matrix(words: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(words.astype(">u4")).view(np.uint8).reshape(words.shape[0], -1)


def _digest_matrix(fn, msgs: np.ndarray) -> np.ndarray:
    digs = b"".join(fn.digest(row.tobytes()) for row in msgs)
    return np.frombuffer(digs, dtype=np.uint8).reshape(msgs.shape[0], fn.digest_len)


@dataclass(frozen=True)
class _RouteArrays:
    """Per-route arrays over the whole rank space, in rank order."""

    first_edge: np.ndarray  # (v!, 2) first and second vertex
    words: np.ndarray  # (v!, 5) digest words of the full route string
    tour_cost: np.ndarray  # (v!,) closed-tour cost
    prefix_byte: np.ndarray | None  # (v!,) first byte of the half-string digest


def _enumeration_arrays(instance: Instance, need_prefix_digest: bool) -> _RouteArrays:
    v = instance.v
    total = factorial(v)
    costs = np.array(instance.costs, dtype=np.int64)
    first = np.empty((total, 2), dtype=np.int64)
    words = np.empty((total, 5), dtype=np.uint32)
    tour = np.empty(total, dtype=np.int64)
    prefix_byte = np.empty(total, dtype=np.int64) if need_prefix_digest else None
    if engine.vectorizable(instance):
        layout = engine.uniform_layout(instance)
        half = layout.msg_len // 2
        for base, P in engine.perm_blocks(v, 0, total):
            n = P.shape[0]
            sl = slice(base, base + n)
            msgs = engine.messages_for(instance, layout, P)
            first[sl, 0] = P[:, 0]
            first[sl, 1] = P[:, 1]
            words[sl] = _sha1.sha1_words_batch(msgs)
            acc = np.zeros(n, dtype=np.int64)
            for i in range(v):
                acc += costs[P[:, i], P[:, (i + 1) % v]]
            tour[sl] = acc
            if need_prefix_digest:
                pw = _sha1.sha1_words_batch(np.ascontiguousarray(msgs[:, :half]))
                prefix_byte[sl] = pw[:, 0] >> 24
        return _RouteArrays(first, words, tour, prefix_byte)
    fn = lookup_hash(instance.hash_id)
    for route in enumerate_routes(v):
        data = encode_route(instance, route).data
        dig = fn.digest(data)
        r = route.rank
        order = route.order
        first[r, 0] = order[0]
        first[r, 1] = order[1]
        words[r] = np.frombuffer(dig[:20], dtype=">u4").astype(np.uint32)
        tour[r] = sum(instance.cost(order[i], order[(i + 1) % v]) for i in range(v))
        if need_prefix_digest:
            prefix_byte[r] = fn.digest(data[: len(data) // 2])[0]
    return _RouteArrays(first, words, tour, prefix_byte)


def _digest_order_ranks(words: np.ndarray) -> np.ndarray:
    """Position of each route in ascending digest order (ties keep rank order)."""
    order = np.lexsort((words[:, 4], words[:, 3], words[:, 2], words[:, 1], words[:, 0]))
    ranks = np.empty(len(order), dtype=np.int64)
    ranks[order] = np.arange(len(order))
    return ranks


def leak_test(
    instance: Instance,
    feature: str,
    seed: int = 0,
    *,
    target: str = TARGET_DIGEST,
    shuffles: int = 1000,
) -> LeakReport:
    """Rank-correlate a partial-information feature against the full ordering.

    target="digest" ranks routes by final digest (the hashed problem);
    target="tsp-cost" ranks them by plain tour cost (the classic problem,
    where local features genuinely carry information -- the control).
    The p-value comes from a permutation test with `shuffles` reshuffles.
    """
    v = instance.v
    if v > 9:
        raise ValueError(f"leak_test enumerates all v! routes; v={v} is past the v<=9 guard")
    if feature not in FEATURES:
        raise FeatureError(f"unsupported feature {feature!r}; expected one of {FEATURES}")
    if target not in (TARGET_DIGEST, TARGET_TSP_COST):
        raise ValueError(f"unknown target {target!r}")

    arrays = _enumeration_arrays(instance, feature == FEATURE_PREFIX_DIGEST)
    total = arrays.words.shape[0]

    if feature == FEATURE_PREFIX_DIGEST:
        x = arrays.prefix_byte.astype(np.float64)
    elif feature == FEATURE_FIRST_EDGE_ID:
        x = (arrays.first_edge[:, 0] * v + arrays.first_edge[:, 1]).astype(np.float64)
    else:
        costs = np.array(instance.costs, dtype=np.int64)
        x = costs[arrays.first_edge[:, 0], arrays.first_edge[:, 1]].astype(np.float64)

    if target == TARGET_DIGEST:
        y = _digest_order_ranks(arrays.words).astype(np.float64)
    else:
        y = arrays.tour_cost.astype(np.float64)

    zx = _standardized_ranks(x)
    zy = _standardized_ranks(y)
    rho = float(np.dot(zx, zy) / len(zx))
    rng = np.random.default_rng(seed)
    extreme = 0
    for _ in range(shuffles):
        null = float(np.dot(zx, rng.permutation(zy)) / len(zx))
        if abs(null) >= abs(rho):
            extreme += 1
    p = (1 + extreme) / (1 + shuffles)
    return LeakReport(
        v=v,
        feature_name=feature,
        target=target,
        correlation=rho,
        p_value_chance=p,
        sample_size=total,
    )


def _standardized_ranks(values: np.ndarray) -> np.ndarray:
    r = stats.rankdata(values)
    r -= r.mean()
    sd = r.std()
    return r / sd if sd else r


def length_extension_demo(instance: Instance, split: int | None = None) -> ExtensionReport:
    """For every route: resume the hash from the half-route digest and compare.

    The resumed digest always equals the digest of prefix||padding||suffix
    computed directly, and never equals the digest of the unbroken route
    string -- the padding bytes in the middle are a different message.
    """
    fn = lookup_hash(instance.hash_id)
    if fn.resume is None:
        raise CapabilityError(f"backend {fn.id!r} cannot resume from a digest")
    v = instance.v
    if v > 8:
        raise ValueError(f"demo enumerates all v! routes; v={v} is past the v<=8 guard")
    rows = []
    for route in enumerate_routes(v):
        data = encode_route(instance, route).data
        mid = len(data) // 2 if split is None else split
        if not 1 <= mid < len(data):
            raise ValueError(f"split must leave a non-empty prefix and suffix, got {mid}")
        prefix, suffix = data[:mid], data[mid:]
        extended = length_extend(fn, fn.digest(prefix), mid, suffix)
        direct = fn.digest(prefix + glue_padding(fn, mid) + suffix)
        full = fn.digest(data)
        rows.append(
            ExtensionRow(
                route=route_labels(instance, route),
                split=mid,
                extended_hex=extended.hex(),
                direct_hex=direct.hex(),
                full_hex=full.hex(),
            )
        )
    return ExtensionReport(rows=tuple(rows))


def bucket_census(instance: Instance, prefix_bits: int) -> CensusReport:
    """Bucket all v! digests by their leading bits and test against uniform."""
    if not 1 <= prefix_bits <= 16:
        raise ValueError(f"prefix_bits must be in [1, 16], got {prefix_bits}")
    v = instance.v
    if v > 9:
        raise ValueError(f"census enumerates all v! routes; v={v} is past the v<=9 guard")
    words = _enumeration_arrays(instance, need_prefix_digest=False).words
    keys = (words[:, 0] >> np.uint32(32 - prefix_bits)).astype(np.int64)
    counts = np.bincount(keys, minlength=2**prefix_bits)
    chi2, p = stats.chisquare(counts)
    return CensusReport(
        prefix_bits=prefix_bits,
        counts=tuple(int(c) for c in counts),
        chi_square=float(chi2),
        p_value=float(p),
    )
