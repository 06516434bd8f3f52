"""Certificate checking in time linear in the vertex count.

A certificate claims a visiting order together with the cost of every edge it
uses (closing edge included).  The verifier never enumerates routes and never
parses route strings: the hashed bytes are re-derived from the structured
order via the route codec.  An instrumented step counter ticks once per
vertex touched, once per cost compared, once per hashed input block, and once
per digest byte compared, so the linear-time claim can be exhibited
empirically (see count_verify_steps).
"""

from __future__ import annotations

import json
import random
import statistics
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .errors import InstanceFormatError
from .hashes import block_count, digest as hash_digest
from .instances import Instance, generate_random_instance
from .routes import Digest, Route, encode_order

FAIL_DUPLICATE = "duplicate-vertex"
FAIL_MISSING = "missing-vertex"
FAIL_WRONG_COST = "wrong-cost"
FAIL_DIGEST = "digest-above-m"


@dataclass(frozen=True)
class Certificate:
    """Candidate solution: visiting order plus the claimed cost of each edge.

    claimed_costs[i] asserts the cost of the edge order[i] -> order[(i+1) % v].
    Only shapes are fixed here; whether the content is right is the verifier's
    job, and unknown labels map to index -1 so a malformed certificate is
    still representable (and gets rejected, not raised).
    """

    order: tuple[int, ...]
    claimed_costs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        object.__setattr__(self, "claimed_costs", tuple(self.claimed_costs))

    @classmethod
    def from_labels(cls, instance: Instance, labels: Sequence[str], costs: Sequence[int]):
        index = {lab: i for i, lab in enumerate(instance.labels)}
        return cls(tuple(index.get(lab, -1) for lab in labels), tuple(costs))


@dataclass(frozen=True)
class VerifyReport:
    accepted: bool
    failure_reason: str | None
    digest: Digest | None
    step_count: int


def certificate_for(instance: Instance, route) -> Certificate:
    """The honest certificate for a route (Route or plain order sequence)."""
    order = tuple(route.order) if isinstance(route, Route) else tuple(route)
    v = len(order)
    costs = tuple(instance.cost(order[i], order[(i + 1) % v]) for i in range(v))
    return Certificate(order, costs)


def verify(instance: Instance, certificate: Certificate) -> VerifyReport:
    """Accept iff the order is a permutation, every claimed cost is right, and
    the digest of the re-derived route string is <= m.

    Total function: malformed certificates come back rejected with a reason,
    never as exceptions.  The bound is inclusive (digest == m accepts), so an
    instance whose m equals the minimum digest keeps its optimum as a witness.
    The digest field is filled once the certificate is structurally sound
    (valid permutation, correct costs); it does not depend on claimed costs.
    """
    v = instance.v
    steps = 0

    order = certificate.order
    seen = set()
    for idx in order:
        steps += 1
        if idx in seen:
            return VerifyReport(False, FAIL_DUPLICATE, None, steps)
        seen.add(idx)
    if len(order) != v or seen != set(range(v)):
        return VerifyReport(False, FAIL_MISSING, None, steps)

    claimed = certificate.claimed_costs
    if len(claimed) != v:
        return VerifyReport(False, FAIL_WRONG_COST, None, steps)
    for i in range(v):
        steps += 1
        if claimed[i] != instance.cost(order[i], order[(i + 1) % v]):
            return VerifyReport(False, FAIL_WRONG_COST, None, steps)

    encoded = encode_order(instance, order)
    steps += block_count(instance.hash_id, len(encoded))
    dig = hash_digest(instance.hash_id, encoded)

    m = instance.m_bytes
    verdict = 0  # -1 below, 0 equal so far, 1 above
    for db, mb in zip(dig, m):
        steps += 1
        if db != mb:
            verdict = -1 if db < mb else 1
            break
    if verdict > 0:
        return VerifyReport(False, FAIL_DIGEST, Digest(dig), steps)
    return VerifyReport(True, None, Digest(dig), steps)


def count_verify_steps(
    v_values: Sequence[int], seed: int = 0, trials: int = 5
) -> list[tuple[int, float]]:
    """Mean instrumented step count of verify over random valid certificates.

    For each v, generates `trials` random instances with a random (correct)
    certificate each and averages the verifier's step counter.  Deterministic
    for a fixed seed.  Works for any v >= 3; no route enumeration happens.
    """
    rng = random.Random(seed)
    out = []
    for v in v_values:
        if v < 3:
            raise ValueError(f"v must be at least 3, got {v}")
        counts = []
        for _ in range(trials):
            instance = generate_random_instance(v, (1, 9), seed=rng.randrange(2**32))
            order = rng.sample(range(v), v)
            report = verify(instance, certificate_for(instance, order))
            counts.append(report.step_count)
        out.append((v, statistics.fmean(counts)))
    return out


def linear_fit_r_squared(points: Sequence[tuple[int, float]]) -> float:
    """Coefficient of determination of the least-squares affine fit y ~ a*v + b."""
    import numpy as np

    x = np.array([p[0] for p in points], dtype=float)
    y = np.array([p[1] for p in points], dtype=float)
    a, b = np.polyfit(x, y, 1)
    resid = y - (a * x + b)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    return 1.0 - ss_res / ss_tot if ss_tot else 1.0


# -- certificate files -------------------------------------------------------


def load_certificate(instance: Instance, path) -> Certificate:
    """Read {"order": [labels...], "costs": [ints...]} and map labels to indices."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or set(data) != {"order", "costs"}:
        raise InstanceFormatError("certificate must have exactly the fields 'order' and 'costs'")
    if not isinstance(data["order"], list) or not all(isinstance(x, str) for x in data["order"]):
        raise InstanceFormatError("field 'order' must be an array of labels")
    if not isinstance(data["costs"], list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in data["costs"]
    ):
        raise InstanceFormatError("field 'costs' must be an array of integers")
    return Certificate.from_labels(instance, data["order"], data["costs"])


def save_certificate(instance: Instance, certificate: Certificate, path) -> None:
    doc = {
        "order": [instance.labels[i] for i in certificate.order],
        "costs": list(certificate.claimed_costs),
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
