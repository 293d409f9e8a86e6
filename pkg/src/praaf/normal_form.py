"""Probabilistic attack normal form via a ground-truth argument.

A probabilistic argument ``a`` with probability ``p`` becomes a certain
argument attacked by the ground truth with probability ``1 - p``. The ground
truth is never attacked, so it sits in every extension worth comparing;
stripping it from those extensions recovers the original distribution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .constellation import (
    DEFAULT_MAX_ELEMENTS,
    ExtensionDistribution,
    PrAAF,
    WorldMode,
    complement,
    extension_distribution,
    require_valid,
)
from .core import AAF, DEFAULT_MAX_ARGS, Semantics, is_valid_id, set_sort_key
from .errors import ConfigurationError, DomainError, MalformedNormalFormError


@dataclass(frozen=True)
class GroundTruth:
    eta_id: str = "eta"

    def __post_init__(self):
        if not is_valid_id(self.eta_id):
            raise ConfigurationError(f"invalid ground-truth id {self.eta_id!r}")

    def __str__(self) -> str:
        return self.eta_id


@dataclass(frozen=True)
class ArgumentMapping:
    argument: str
    original_p: object
    attack: tuple
    attack_p: object


@dataclass(frozen=True)
class NormalFormCertificate:
    original: PrAAF
    transformed: PrAAF
    eta: GroundTruth
    mapping: tuple = field(default=())

    __hash__ = None  # type: ignore[assignment]

    def __post_init__(self):
        # size bound: one extra argument and one attack per probabilistic argument
        n = len(self.mapping)
        grown_args = len(self.transformed.p_args) - len(self.original.p_args)
        grown_atts = len(self.transformed.p_atts) - len(self.original.p_atts)
        if grown_args != (1 if n else 0) or grown_atts != n:
            raise AssertionError(
                f"transformation grew args by {grown_args} and attacks by {grown_atts} for N={n}"
            )
        if not is_normal_form(self.transformed):
            raise AssertionError("transformed PrAAF still has probabilistic arguments")
        if any(dst == self.eta.eta_id for _, dst in self.transformed.p_atts) and n:
            raise AssertionError("ground truth is attacked in the transformed PrAAF")

    def restore(self) -> PrAAF:
        """Invert the transformation (identity when nothing was transformed)."""
        if not self.mapping:
            return self.transformed
        return from_normal_form(self.transformed, self.eta)


def _eta(eta: GroundTruth | str | None) -> GroundTruth:
    if eta is None:
        return GroundTruth()
    return eta if isinstance(eta, GroundTruth) else GroundTruth(eta)


def is_normal_form(praaf: PrAAF) -> bool:
    return all(p >= 1 for p in praaf.p_args.values())


def to_normal_form(praaf: PrAAF, eta: GroundTruth | str | None = None) -> NormalFormCertificate:
    """Replace each probabilistic argument by an attack from the ground truth.

    Runs in one pass over the arguments. With no probabilistic argument the
    PrAAF is returned unchanged and no ground truth is added.
    """
    eta = _eta(eta)
    require_valid(praaf)
    if eta.eta_id in praaf.p_args:
        raise ConfigurationError(
            f"argument {eta.eta_id!r} already exists; choose another ground-truth id (--eta)"
        )
    p_args = dict(praaf.p_args)
    p_atts = dict(praaf.p_atts)
    mapping = []
    for a in sorted(praaf.p_args):
        p = praaf.p_args[a]
        if p >= 1:
            continue
        q = complement(p)
        edge = (eta.eta_id, a)
        p_args[a] = 1
        p_atts[edge] = q
        mapping.append(ArgumentMapping(a, p, edge, q))
    if mapping:
        p_args[eta.eta_id] = 1
    return NormalFormCertificate(praaf, PrAAF(p_args, p_atts), eta, tuple(mapping))


def from_normal_form(praaf: PrAAF, eta: GroundTruth | str | None = None) -> PrAAF:
    """Turn every attack ``eta -> a`` with probability ``q`` back into ``P(a) = 1 - q``."""
    eta = _eta(eta)
    require_valid(praaf)
    if not is_normal_form(praaf):
        raise MalformedNormalFormError("input has probabilistic arguments; not in normal form")
    if eta.eta_id not in praaf.p_args:
        raise MalformedNormalFormError(f"ground truth {eta.eta_id!r} not found")
    attackers = sorted(src for src, dst in praaf.p_atts if dst == eta.eta_id)
    if attackers:
        raise MalformedNormalFormError(
            f"ground truth {eta.eta_id!r} is attacked by {', '.join(attackers)}"
        )
    p_args = {a: p for a, p in praaf.p_args.items() if a != eta.eta_id}
    p_atts = {}
    for (src, dst), q in praaf.p_atts.items():
        if src != eta.eta_id:
            p_atts[(src, dst)] = q
            continue
        if q >= 1:
            raise MalformedNormalFormError(
                f"certain attack {src}->{dst} would give {dst} probability 0"
            )
        p_args[dst] = complement(q)
    return PrAAF(p_args, p_atts)


def is_acceptable_extension(s: Iterable[str], aaf: AAF, eta: GroundTruth | str | None = None) -> bool:
    eta = _eta(eta)
    if eta.eta_id not in aaf.args:
        raise DomainError(f"ground truth {eta.eta_id!r} is not in the framework")
    return eta.eta_id in frozenset(s)


def strip_eta(dist: ExtensionDistribution, eta: GroundTruth | str | None = None) -> ExtensionDistribution:
    """Keep the extensions containing the ground truth, re-keyed without it."""
    eta = _eta(eta)
    entries = {
        s - {eta.eta_id}: p for s, p in dist.entries.items() if eta.eta_id in s
    }
    return ExtensionDistribution(entries, dist.sigma, dist.mode)


@dataclass(frozen=True)
class Discrepancy:
    extension: frozenset
    left: object
    right: object


@dataclass(frozen=True)
class EquivalenceReport:
    passed: bool
    sigma: Semantics
    mode: WorldMode
    tol: float
    left: ExtensionDistribution
    right: ExtensionDistribution  # already stripped of the ground truth
    discrepancies: tuple = ()

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self) -> bool:
        return self.passed


def check_equivalence(
    original: PrAAF,
    transformed: PrAAF,
    eta: GroundTruth | str | None = None,
    sigma: Semantics | str = Semantics.ADMISSIBLE,
    tol: float = 1e-9,
    mode: WorldMode | str = WorldMode.RAW,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    max_args: int = DEFAULT_MAX_ARGS,
) -> EquivalenceReport:
    """Compare ``original`` with the ground-truth-stripped distribution of ``transformed``.

    Passes iff both sides have the same extensions and every probability
    agrees within ``tol``. Extensions present on one side only are reported
    with probability 0 on the other.
    """
    eta = _eta(eta)
    sigma = Semantics.parse(sigma)
    mode = WorldMode.parse(mode)
    if tol <= 0:
        raise ConfigurationError("tolerance must be positive")
    require_valid(original)
    require_valid(transformed)
    if eta.eta_id not in transformed.p_args:
        raise DomainError(f"ground truth {eta.eta_id!r} not found in the transformed PrAAF")
    left = extension_distribution(original, sigma, mode, max_elements, max_args)
    right = strip_eta(
        extension_distribution(transformed, sigma, mode, max_elements, max_args), eta
    )
    bad = []
    for key in sorted(left.entries.keys() | right.entries.keys(), key=set_sort_key):
        lp, rp = left[key], right[key]
        missing = (key in left.entries) != (key in right.entries)
        if missing or abs(lp - rp) > tol:
            bad.append(Discrepancy(key, lp, rp))
    return EquivalenceReport(not bad, sigma, mode, tol, left, right, tuple(bad))
