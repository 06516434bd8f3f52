"""Hashed-path TSP toolkit.

Model complete weighted graphs, encode visiting orders into interleaved
label/weight strings, hash them, search the full factorial route space for
the lexicographically smallest digest, verify candidate solutions in linear
time, and probe the hash properties (avalanche behaviour, local-information
leakage, length extension) that the construction depends on.
"""

from .errors import (
    CapabilityError,
    CapacityError,
    DigestLengthError,
    FeatureError,
    HashRegistrationError,
    HptspError,
    InstanceFormatError,
    InvalidInstanceError,
    RankRangeError,
    UnknownHashError,
)
from .hashes import (
    HashFunction,
    digest,
    digest_streaming,
    glue_padding,
    length_extend,
    lookup_hash,
    register_hash,
    registered_ids,
)
from .instances import (
    Instance,
    TspQuery,
    generate_random_instance,
    load_instance,
    make_example_instance,
    save_instance,
)
from .routes import (
    Digest,
    EncodedRoute,
    Route,
    compare_digests,
    encode_order,
    encode_route,
    enumerate_routes,
    rank_to_route,
    route_labels,
    route_to_rank,
)
from .search import (
    BenchRecord,
    SolveResult,
    TspResult,
    decide_hptsp,
    first_witness,
    scaling_benchmark,
    solve_hptsp,
    solve_tsp_branch_and_bound,
)
from .verify import (
    Certificate,
    VerifyReport,
    certificate_for,
    count_verify_steps,
    load_certificate,
    save_certificate,
    verify,
)
from .experiments import (
    AvalancheReport,
    CensusReport,
    ExtensionReport,
    LeakReport,
    bucket_census,
    leak_test,
    length_extension_demo,
    sac_test,
)

__version__ = "0.1.0"

__all__ = [
    "AvalancheReport",
    "BenchRecord",
    "CapabilityError",
    "CapacityError",
    "CensusReport",
    "Certificate",
    "Digest",
    "DigestLengthError",
    "EncodedRoute",
    "ExtensionReport",
    "FeatureError",
    "HashFunction",
    "HashRegistrationError",
    "HptspError",
    "Instance",
    "InstanceFormatError",
    "InvalidInstanceError",
    "LeakReport",
    "RankRangeError",
    "Route",
    "SolveResult",
    "TspQuery",
    "TspResult",
    "UnknownHashError",
    "VerifyReport",
    "bucket_census",
    "certificate_for",
    "compare_digests",
    "count_verify_steps",
    "decide_hptsp",
    "digest",
    "digest_streaming",
    "encode_order",
    "encode_route",
    "enumerate_routes",
    "first_witness",
    "generate_random_instance",
    "glue_padding",
    "leak_test",
    "length_extend",
    "length_extension_demo",
    "load_certificate",
    "load_instance",
    "lookup_hash",
    "make_example_instance",
    "rank_to_route",
    "register_hash",
    "registered_ids",
    "route_labels",
    "route_to_rank",
    "sac_test",
    "save_certificate",
    "save_instance",
    "scaling_benchmark",
    "solve_hptsp",
    "solve_tsp_branch_and_bound",
    "verify",
]
