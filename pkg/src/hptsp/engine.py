"""Batched enumeration and digest scanning for the exhaustive search.

The rank space [0, v!) is walked in blocks that share a fixed prefix of the
permutation; within a block the suffixes come from a cached lexicographic
template, so contiguous rank ranges slice directly into numpy matrices.  When
an instance is *uniform* (all labels the same byte width, all edge weights
the same digit count) the route strings of a block form an (n, L) uint8
matrix assembled by table gathers, and the package's vectorised SHA-1 hashes
the whole block at once.  Non-uniform instances or non-SHA-1 backends fall
back to the scalar route walk, which produces identical results.

Everything here is deterministic: results depend only on the instance and the
rank range, never on batch size or scheduling.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Iterator

import numpy as np

from . import sha1 as _sha1
from .hashes import lookup_hash
from .instances import Instance
from .routes import encode_route, enumerate_routes, rank_to_route

# Suffix templates are cached per length; 9! rows is ~3.3 MB, the sweet spot
# between block granularity and template cost.
MAX_SUFFIX = 9

_TEMPLATES: dict[int, np.ndarray] = {}


def suffix_template(s: int) -> np.ndarray:
    """All permutations of range(s) in lexicographic order, as (s!, s) uint8."""
    tmpl = _TEMPLATES.get(s)
    if tmpl is None:
        tmpl = np.array(list(itertools.permutations(range(s))), dtype=np.uint8)
        _TEMPLATES[s] = tmpl
    return tmpl


def perm_blocks(v: int, start: int, stop: int, batch: int = 16384) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (base_rank, P) pieces covering ranks [start, stop) in order.

    P is an (n, v) uint8 matrix whose row i is the permutation of rank
    base_rank + i; n never exceeds `batch`.
    """
    total = factorial(v)
    if not (0 <= start <= stop <= total):
        raise ValueError(f"invalid rank range [{start}, {stop}) for v={v}")
    if start == stop:
        return
    s = min(v, MAX_SUFFIX)
    k = v - s
    block = factorial(s)
    tmpl = suffix_template(s)
    for b in range(start // block, (stop + block - 1) // block):
        base = b * block
        lo = max(start, base) - base
        hi = min(stop, base + block) - base
        prefix = rank_to_route(base, v).order[:k]
        rest = np.array(sorted(set(range(v)) - set(prefix)), dtype=np.uint8)
        for off in range(lo, hi, batch):
            end = min(off + batch, hi)
            sub = tmpl[off:end]
            n = sub.shape[0]
            P = np.empty((n, v), dtype=np.uint8)
            for i, p in enumerate(prefix):
                P[:, i] = p
            P[:, k:] = rest[sub]
            yield base + off, P


@dataclass(frozen=True)
class UniformLayout:
    """Byte layout shared by every route string of a uniform instance."""

    label_width: int
    cost_width: int
    msg_len: int


def uniform_layout(instance: Instance) -> UniformLayout | None:
    """The common route-string layout, or None when widths vary."""
    labels, costs = instance.encoding_tables()
    a = len(labels[0])
    if any(len(lab) != a for lab in labels):
        return None
    v = instance.v
    widths = {len(costs[i][j]) for i in range(v) for j in range(v) if i != j}
    if len(widths) != 1:
        return None
    b = widths.pop()
    return UniformLayout(a, b, v * (a + b))


def _vector_luts(instance: Instance, layout: UniformLayout):
    """Label and cost byte tables as numpy arrays (cached on the instance)."""
    cached = instance.__dict__.get("_vector_luts")
    if cached is None:
        labels, costs = instance.encoding_tables()
        v = instance.v
        label_lut = np.zeros((v, layout.label_width), dtype=np.uint8)
        for i, lab in enumerate(labels):
            label_lut[i] = np.frombuffer(lab, dtype=np.uint8)
        cost_lut = np.zeros((v, v, layout.cost_width), dtype=np.uint8)
        for i in range(v):
            for j in range(v):
                if i != j:
                    cost_lut[i, j] = np.frombuffer(costs[i][j], dtype=np.uint8)
        cached = (label_lut, cost_lut)
        object.__setattr__(instance, "_vector_luts", cached)
    return cached


def messages_for(instance: Instance, layout: UniformLayout, P: np.ndarray) -> np.ndarray:
    """Assemble the (n, msg_len) route-string matrix for a permutation block."""
    label_lut, cost_lut = _vector_luts(instance, layout)
    a, b = layout.label_width, layout.cost_width
    n, v = P.shape
    msgs = np.empty((n, layout.msg_len), dtype=np.uint8)
    for i in range(v):
        base = i * (a + b)
        msgs[:, base : base + a] = label_lut[P[:, i]]
        msgs[:, base + a : base + a + b] = cost_lut[P[:, i], P[:, (i + 1) % v]]
    return msgs


def vectorizable(instance: Instance) -> bool:
    return instance.hash_id == "sha1" and uniform_layout(instance) is not None


def _argmin_lex(words: np.ndarray) -> int:
    """Row index of the lexicographically smallest 5-word digest (first wins)."""
    idx = np.arange(words.shape[0])
    for col in range(words.shape[1]):
        h = words[idx, col]
        idx = idx[h == h.min()]
        if idx.size == 1:
            break
    return int(idx[0])


def _le_mask(words: np.ndarray, m_words: tuple[int, ...]) -> np.ndarray:
    """Boolean mask of rows whose digest is <= m (word-wise lexicographic)."""
    le = words[:, 0] < np.uint32(m_words[0])
    eq = words[:, 0] == np.uint32(m_words[0])
    for col in range(1, words.shape[1]):
        le |= eq & (words[:, col] < np.uint32(m_words[col]))
        eq &= words[:, col] == np.uint32(m_words[col])
    return le | eq


def _m_words(m_bytes: bytes) -> tuple[int, ...]:
    return tuple(int.from_bytes(m_bytes[i : i + 4], "big") for i in range(0, len(m_bytes), 4))


def scan_range(instance: Instance, start: int, stop: int, batch: int = 16384):
    """Minimum (digest bytes, rank) over ranks [start, stop); ties to low rank."""
    if start >= stop:
        return None
    if vectorizable(instance):
        layout = uniform_layout(instance)
        best = None
        for base, P in perm_blocks(instance.v, start, stop, batch):
            words = _sha1.sha1_words_batch(messages_for(instance, layout, P))
            j = _argmin_lex(words)
            cand = (_sha1.words_to_digest(words[j]), base + j)
            if best is None or cand < best:
                best = cand
        return best
    fn = lookup_hash(instance.hash_id)
    use_fast = instance.hash_id == "sha1"
    best = None
    for route in enumerate_routes(instance.v, start, stop):
        data = encode_route(instance, route).data
        dig = _sha1.sha1_digest(data) if use_fast else fn.digest(data)
        if best is None or dig < best[0]:
            best = (dig, route.rank)
    return best


def first_rank_at_most(instance: Instance, start: int, stop: int, batch: int = 16384):
    """Earliest rank in [start, stop) whose digest is <= m, or None.

    Scans in rank order and stops at the first satisfying block, which is the
    early exit the decision form is allowed to take.
    """
    if start >= stop:
        return None
    m_bytes = instance.m_bytes
    if vectorizable(instance):
        layout = uniform_layout(instance)
        mw = _m_words(m_bytes)
        for base, P in perm_blocks(instance.v, start, stop, batch):
            hits = np.flatnonzero(_le_mask(_sha1.sha1_words_batch(messages_for(instance, layout, P)), mw))
            if hits.size:
                return base + int(hits[0])
        return None
    fn = lookup_hash(instance.hash_id)
    use_fast = instance.hash_id == "sha1"
    for route in enumerate_routes(instance.v, start, stop):
        data = encode_route(instance, route).data
        dig = _sha1.sha1_digest(data) if use_fast else fn.digest(data)
        if dig <= m_bytes:
            return route.rank
    return None


def all_digest_words(instance: Instance, batch: int = 16384):
    """(P, words) for the full rank space of a uniform SHA-1 instance.

    P is (v!, v) uint8 in rank order and words the matching (v!, 5) digest
    words; used by the leakage and census experiments, which need every
    digest at once.  Raises for instances the vector path cannot serve.
    """
    if not vectorizable(instance):
        raise ValueError("vector enumeration needs a uniform instance with the sha1 backend")
    v = instance.v
    layout = uniform_layout(instance)
    total = factorial(v)
    P_all = np.empty((total, v), dtype=np.uint8)
    words_all = np.empty((total, 5), dtype=np.uint32)
    for base, P in perm_blocks(v, 0, total, batch):
        n = P.shape[0]
        P_all[base : base + n] = P
        words_all[base : base + n] = _sha1.sha1_words_batch(messages_for(instance, layout, P))
    return P_all, words_all
