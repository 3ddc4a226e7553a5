"""Debate-grid surrogates for true/false verdicts and hallucination detection.

Per-token, per-layer truth probabilities become an acyclic argument grid;
a gradual semantics propagates strengths to a verdict; region features of
the evaluated grid feed a boosted-tree hallucination detector explained
with exact Shapley attributions.
"""

from .errors import LatentDebateError
from .features import (
    CSV_HEADER,
    FEATURE_NAMES,
    FeatureVector,
    RegionPartition,
    export_table,
    extract_features,
    load_table,
    region_partition,
)
from .grid import (
    Topology,
    build_grid,
    decide,
    evaluate_record,
    initial_strength,
    top_right_argument,
)
from .qbaf import (
    Argument,
    EdgeLabel,
    Qbaf,
    StrengthMap,
    aggregate_energy,
    build_qbaf,
    classify_edges,
    debug_json,
    evaluate,
    influence,
    is_positive,
)
from .records import DebateRecord, Token, load_corpus, parse_record, record_to_json
from .rng import SplitMix64
from .surrogates import (
    Method,
    SurrogateVerdict,
    all_verdicts,
    average_baseline,
    consistency,
    latent_debate_verdict,
    majority_baseline,
    random_baseline,
    top_right_baseline,
)

__version__ = "0.1.0"
