"""Exact inference for constellation probabilistic argumentation frameworks."""

from .constellation import (
    ExtensionDistribution,
    PrAAF,
    ProbabilisticElement,
    Stance,
    Violation,
    World,
    WorldMode,
    acceptance_probability,
    enumerate_worlds,
    extension_distribution,
    extension_probability,
    is_induced,
    is_proper_world,
    probabilistic_elements,
    validate,
    world_aaf,
    world_probability,
)
from .core import (
    AAF,
    Semantics,
    characteristic,
    enumerate_extensions,
    is_acceptable,
    is_conflict_free,
    is_extension,
)
from .errors import (
    CapacityError,
    ConfigurationError,
    DomainError,
    MalformedNormalFormError,
    ParseError,
    PraafError,
    UsageError,
    ValidationError,
)
from .io import export_dot, parse_praaf, serialize_praaf
from .normal_form import (
    GroundTruth,
    NormalFormCertificate,
    check_equivalence,
    from_normal_form,
    is_acceptable_extension,
    is_normal_form,
    strip_eta,
    to_normal_form,
)
