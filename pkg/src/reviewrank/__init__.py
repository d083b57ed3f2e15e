"""Decision-aid engine: rank alternatives from multi-expert reviews.

The pipeline distills per-review opinions into per-expert matrices, combines
them with optional numerical ratings, averages across experts, weights the
criteria by how much evaluation attention they received, and ranks the
alternatives by the resulting preferences.
"""

from .aggregation import (
    AggregationConfig,
    Intermediates,
    RankedResult,
    attention_weights,
    build_ite,
    collective_aggregate,
    compute_ite,
    exploit,
    individual_aggregate,
    rank,
)
from .errors import (
    CompletenessError,
    DuplicateReviewError,
    EngineError,
    ExchangeError,
    MappingError,
    RangeError,
    SchemaError,
    UnknownLabelError,
    UsageError,
    ValidationError,
)
from .ingestion import (
    CategoryMapping,
    Dataset,
    DEFAULT_SEMEVAL_MAPPING,
    build_dataset,
    build_ine,
    load_counts_fixture,
    load_dataset,
    load_matrix_fixture,
    map_categories,
    write_counts_fixture,
    write_matrix_fixture,
)
from .model import (
    Criterion,
    EvalMatrix,
    Opinion,
    Polarity,
    PreferenceVector,
    Review,
    Scale,
    level_to_value,
    matrix_get,
    matrix_set,
    split_sentences,
)
from .scenarios import (
    CorpusInputs,
    FixtureInputs,
    ScenarioReport,
    ScenarioSpec,
    emit_report,
    report_from_dict,
    report_to_dict,
    run_scenario,
)
from .sources import (
    ExternalSource,
    GoldSource,
    collect_opinions,
    count_evaluations,
    read_exchange,
    write_exchange,
)

__version__ = "0.1.0"

__all__ = [
    "AggregationConfig",
    "CategoryMapping",
    "CompletenessError",
    "CorpusInputs",
    "Criterion",
    "Dataset",
    "DEFAULT_SEMEVAL_MAPPING",
    "DuplicateReviewError",
    "EngineError",
    "EvalMatrix",
    "ExchangeError",
    "ExternalSource",
    "FixtureInputs",
    "GoldSource",
    "Intermediates",
    "MappingError",
    "Opinion",
    "Polarity",
    "PreferenceVector",
    "RangeError",
    "RankedResult",
    "Review",
    "Scale",
    "ScenarioReport",
    "ScenarioSpec",
    "SchemaError",
    "UnknownLabelError",
    "UsageError",
    "ValidationError",
    "attention_weights",
    "build_dataset",
    "build_ine",
    "build_ite",
    "collect_opinions",
    "collective_aggregate",
    "compute_ite",
    "count_evaluations",
    "emit_report",
    "exploit",
    "individual_aggregate",
    "level_to_value",
    "load_counts_fixture",
    "load_dataset",
    "load_matrix_fixture",
    "map_categories",
    "matrix_get",
    "matrix_set",
    "rank",
    "read_exchange",
    "report_from_dict",
    "report_to_dict",
    "run_scenario",
    "split_sentences",
    "write_counts_fixture",
    "write_exchange",
    "write_matrix_fixture",
]
