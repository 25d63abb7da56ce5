"""Tool registry, built-in desk-scale tools, and the bundled dataset."""

from .builtin import DEFAULT_MAX_SITES, build_registry
from .dataset import (
    EmptyFilterError,
    MaterialRecord,
    NotFoundError,
    get_record,
    load_materials,
    query_materials,
)
from .interface import InterfaceMatch, NoMatchWithinToleranceError, best_match, generate_interface
from .predict import TooManySitesError, band_structure, predict_properties
from .registry import (
    DuplicateNameError,
    HandlerFailureError,
    NotEnabledError,
    SchemaViolationError,
    ToolCall,
    ToolDescriptor,
    ToolRegistry,
    UnknownToolError,
    levenshtein,
)
from .relax import RelaxResult, SiteCountOutOfRangeError, relax

__all__ = [
    "DEFAULT_MAX_SITES",
    "DuplicateNameError",
    "EmptyFilterError",
    "HandlerFailureError",
    "InterfaceMatch",
    "MaterialRecord",
    "NoMatchWithinToleranceError",
    "NotEnabledError",
    "NotFoundError",
    "RelaxResult",
    "SchemaViolationError",
    "SiteCountOutOfRangeError",
    "ToolCall",
    "ToolDescriptor",
    "ToolRegistry",
    "TooManySitesError",
    "UnknownToolError",
    "band_structure",
    "best_match",
    "build_registry",
    "generate_interface",
    "get_record",
    "levenshtein",
    "load_materials",
    "predict_properties",
    "query_materials",
    "relax",
]
