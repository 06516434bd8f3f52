"""Problem instances: a complete weighted graph, a hash id, and the bound m.

Instances are immutable after construction (frozen dataclass over tuples), so
they can be shared freely across worker processes.  Labels may not contain
decimal digits: the interleaved route string stays readable to a human even
though nothing ever parses it back.

File format (UTF-8 JSON, unknown fields rejected)::

    {
      "labels":   ["A", "B", "C", "D"],
      "costs":    [[0,1,5,4], [1,0,2,6], [5,2,0,3], [4,6,3,0]],
      "hash":     "sha1",
      "m":        "0274a90142fff8495ee8fc6309bbea1abe6fe9db",
      "directed": false
    }
"""

from __future__ import annotations

import json
import random
import string
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .errors import InstanceFormatError, InvalidInstanceError
from .hashes import lookup_hash

MAX_WEIGHT = 10**9

_EXAMPLE_M = "0274a90142fff8495ee8fc6309bbea1abe6fe9db"


@dataclass(frozen=True)
class Instance:
    """A complete weighted graph with a hash choice and decision bound m.

    costs[i][j] is the weight of edge i->j; the diagonal is unused and stored
    as 0.  m is a lowercase hex string exactly as long as the chosen hash's
    digest; a route "satisfies" the instance when its digest is <= m.
    """

    labels: tuple[str, ...]
    costs: tuple[tuple[int, ...], ...]
    hash_id: str = "sha1"
    m: str = ""
    directed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "costs", tuple(tuple(row) for row in self.costs))
        v = len(self.labels)
        if v < 3:
            raise InvalidInstanceError(f"need at least 3 vertices, got {v}")
        if len(set(self.labels)) != v:
            raise InvalidInstanceError("labels must be pairwise distinct")
        for lab in self.labels:
            if not lab or not isinstance(lab, str):
                raise InvalidInstanceError(f"labels must be non-empty strings: {lab!r}")
            if any(ch in string.digits for ch in lab):
                raise InvalidInstanceError(f"label contains a decimal digit: {lab!r}")
        if len(self.costs) != v or any(len(row) != v for row in self.costs):
            raise InvalidInstanceError(f"costs must be a {v}x{v} matrix")
        for i, row in enumerate(self.costs):
            for j, c in enumerate(row):
                if not isinstance(c, int) or isinstance(c, bool):
                    raise InvalidInstanceError(f"costs[{i}][{j}] is not an integer: {c!r}")
                if c < 0:
                    raise InvalidInstanceError(f"costs[{i}][{j}] is negative")
            if row[i] != 0:
                raise InvalidInstanceError(f"costs[{i}][{i}] must be stored as 0")
        if not self.directed:
            for i in range(v):
                for j in range(i + 1, v):
                    if self.costs[i][j] != self.costs[j][i]:
                        raise InvalidInstanceError(
                            f"undirected instance has asymmetric costs at ({i},{j})"
                        )
        digest_len = lookup_hash(self.hash_id).digest_len
        m = self.m if self.m else "f" * (2 * digest_len)
        object.__setattr__(self, "m", m)
        if len(m) != 2 * digest_len:
            raise InvalidInstanceError(
                f"m must be {2 * digest_len} hex chars for {self.hash_id!r}, got {len(m)}"
            )
        if any(ch not in "0123456789abcdef" for ch in m):
            raise InvalidInstanceError("m must be lowercase hexadecimal")

    @property
    def v(self) -> int:
        return len(self.labels)

    @property
    def m_bytes(self) -> bytes:
        return bytes.fromhex(self.m)

    def cost(self, i: int, j: int) -> int:
        return self.costs[i][j]

    def encoding_tables(self):
        """Per-vertex label bytes and per-edge decimal weight bytes (cached)."""
        if "_enc_tables" not in self.__dict__:
            labels = [lab.encode("ascii") for lab in self.labels]
            costs = [
                [str(c).encode("ascii") for c in row] for row in self.costs
            ]
            object.__setattr__(self, "_enc_tables", (labels, costs))
        return self.__dict__["_enc_tables"]

    def replace_m(self, m: str) -> "Instance":
        return Instance(self.labels, self.costs, self.hash_id, m, self.directed)

    def to_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "costs": [list(row) for row in self.costs],
            "hash": self.hash_id,
            "m": self.m,
            "directed": self.directed,
        }


@dataclass(frozen=True)
class TspQuery:
    """The classic decision form: does some tour cost at most k?"""

    instance: Instance
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise InvalidInstanceError(f"cost bound k must be non-negative, got {self.k}")

    def satisfied_by(self, tour_cost: int) -> bool:
        return tour_cost <= self.k


def make_example_instance() -> Instance:
    """The bundled 4-city instance whose reference digests ship in golden.py.

    Undirected weights AB=1, BC=2, CD=3, DA=4, AC=5, BD=6; m is set to the
    known minimum digest so the decision form is satisfiable exactly at the
    optimum.
    """
    costs = (
        (0, 1, 5, 4),
        (1, 0, 2, 6),
        (5, 2, 0, 3),
        (4, 6, 3, 0),
    )
    return Instance(("A", "B", "C", "D"), costs, "sha1", _EXAMPLE_M, directed=False)


@lru_cache(maxsize=8)
def _auto_labels(v: int) -> tuple[str, ...]:
    """A, B, ..., Z, AA, AB, ... -- digit-free and distinct by construction."""
    out = []
    for i in range(v):
        n, s = i, ""
        while True:
            n, r = divmod(n, 26)
            s = chr(ord("A") + r) + s
            if n == 0:
                break
            n -= 1
        out.append(s)
    return tuple(out)


def generate_random_instance(
    v: int,
    weight_range: tuple[int, int] = (1, 9),
    seed: int = 0,
    directed: bool = False,
    hash_id: str = "sha1",
) -> Instance:
    """Uniform random edge weights; deterministic for a fixed seed.

    m defaults to the all-'f' string (every digest satisfies it) until the
    caller overrides it with replace_m.
    """
    if v < 3:
        raise InvalidInstanceError(f"need at least 3 vertices, got {v}")
    lo, hi = weight_range
    if not (0 <= lo <= hi <= MAX_WEIGHT):
        raise InvalidInstanceError(f"weight range must satisfy 0 <= lo <= hi <= {MAX_WEIGHT}")
    rng = random.Random(seed)
    costs = [[0] * v for _ in range(v)]
    if directed:
        for i in range(v):
            for j in range(v):
                if i != j:
                    costs[i][j] = rng.randint(lo, hi)
    else:
        for i in range(v):
            for j in range(i + 1, v):
                costs[i][j] = costs[j][i] = rng.randint(lo, hi)
    return Instance(_auto_labels(v), tuple(tuple(row) for row in costs), hash_id, "", directed)


_REQUIRED_FIELDS = {"labels", "costs", "hash", "m", "directed"}


def instance_from_dict(data: dict) -> Instance:
    """Validate a parsed JSON document and build the instance."""
    if not isinstance(data, dict):
        raise InstanceFormatError("instance document must be a JSON object")
    unknown = set(data) - _REQUIRED_FIELDS
    if unknown:
        raise InstanceFormatError(f"unknown instance fields: {sorted(unknown)}")
    missing = _REQUIRED_FIELDS - set(data)
    if missing:
        raise InstanceFormatError(f"missing instance fields: {sorted(missing)}")
    labels = data["labels"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise InstanceFormatError("field 'labels' must be an array of strings")
    costs = data["costs"]
    if not isinstance(costs, list) or not all(isinstance(row, list) for row in costs):
        raise InstanceFormatError("field 'costs' must be an array of arrays")
    if not isinstance(data["hash"], str):
        raise InstanceFormatError("field 'hash' must be a string")
    if not isinstance(data["m"], str):
        raise InstanceFormatError("field 'm' must be a string")
    if not isinstance(data["directed"], bool):
        raise InstanceFormatError("field 'directed' must be a boolean")
    return Instance(
        tuple(labels),
        tuple(tuple(row) for row in costs),
        data["hash"],
        data["m"],
        data["directed"],
    )


def load_instance(path) -> Instance:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc}") from exc
    return instance_from_dict(data)


def save_instance(instance: Instance, path) -> None:
    path = Path(path)
    path.write_text(json.dumps(instance.to_dict(), indent=2) + "\n", encoding="utf-8")
