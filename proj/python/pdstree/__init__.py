"""Parallel single-pass streaming CART."""

from ._core import (
    Concept,
    DecisionTree,
    GeneratorConfig,
    Instance,
    PdstreeError,
    Schema,
    StreamingHistogram,
    evaluate,
    format_instance,
    generate,
    generate_concept,
    gini,
    gini_gain,
    hoeffding_bound,
    parse_instance,
    parse_schema,
    preset,
    preset_names,
    train,
)

__all__ = [
    "Concept",
    "DecisionTree",
    "GeneratorConfig",
    "Instance",
    "PdstreeError",
    "Schema",
    "StreamingHistogram",
    "evaluate",
    "format_instance",
    "generate",
    "generate_concept",
    "gini",
    "gini_gain",
    "hoeffding_bound",
    "parse_instance",
    "parse_schema",
    "preset",
    "preset_names",
    "train",
]
