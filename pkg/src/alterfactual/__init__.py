"""Alterfactual explanation engine for black-box text classifiers.

Generates "no matter what" examples: inputs whose irrelevant words are
replaced by same-semantic-field opposites while the classifier's prediction
and confidence stay (nearly) unchanged, plus the evaluation and bias-probing
harness around that search.
"""

from .errors import (
    AlterfactualError,
    ConfigError,
    ContractViolationError,
    EmptyRankingError,
    LlmParseError,
    OracleTransportError,
    ProviderUnavailableError,
    StructuralError,
    SubstitutionError,
    UndefinedSimilarityError,
)
from .evaluation import (
    BiasProbeReport,
    CorpusEvaluation,
    MetricsReport,
    NoiseTradeoffPoint,
    ProbeEntry,
    bias_probe,
    evaluate_corpus,
    input_reduction_baseline,
    metrics_from_results,
    noise_tradeoff_experiment,
    pearson,
    read_results_jsonl,
    render_explanation,
    render_report_table,
    result_from_dict,
    result_to_dict,
    write_results_jsonl,
)
from .generator import (
    AlterfactualResult,
    Backends,
    ImportanceRanking,
    RejectedTrial,
    RunConfig,
    eligible_positions,
    generate,
    generate_targeted,
    importance_scores,
)
from .negation import (
    NegationConfig,
    NegationReport,
    detect_double_negative,
    introduces_double_negative,
)
from .opposites import (
    CachedProvider,
    CacheStore,
    ConceptNetClient,
    ConceptNetProvider,
    LlmClient,
    LlmOppositeMap,
    OppositeCandidate,
    OppositeLexicon,
    OppositeRelation,
    llm_opposites,
)
from .oracles import (
    HttpClassifier,
    HttpEmbeddingSimilarity,
    HttpNegativity,
    HttpPerplexity,
    LexiconNegativity,
    MeanVectorSimilarity,
    NegativityHit,
    OracleStats,
    ToyLinearClassifier,
    UnigramPerplexity,
    Verdict,
    classify,
)
from .textcore import (
    Document,
    PosTagger,
    Substitution,
    Token,
    Tokenizer,
    apply_substitutions,
    detokenize,
    pos_compatible,
    tokenize,
)

__version__ = "0.1.0"
