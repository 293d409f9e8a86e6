"""Constellation PrAAFs: possible worlds and exact extension distributions.

Probabilities may be ``float`` (default) or ``fractions.Fraction`` (exact
mode); arithmetic stays in whichever type the PrAAF was built with.

Worlds are produced by a binary counter over ``probabilistic_elements``:
the first element is the most significant bit, "absent" counts as 0.
"""

from __future__ import annotations

import enum
import math
import numbers
from collections import defaultdict
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .core import (
    AAF,
    DEFAULT_MAX_ARGS,
    Semantics,
    enumerate_extensions,
    format_set,
    is_valid_id,
    set_sort_key,
)
from .errors import CapacityError, DomainError, UsageError, ValidationError

DEFAULT_MAX_ELEMENTS = 20


class WorldMode(str, enum.Enum):
    RAW = "raw"
    INDUCED = "induced"

    @classmethod
    def parse(cls, name: "WorldMode | str") -> "WorldMode":
        if isinstance(name, cls):
            return name
        try:
            return cls(name)
        except ValueError:
            raise UsageError(f"unknown world mode {name!r} (expected raw or induced)") from None

    def __str__(self) -> str:
        return self.value


class Stance(str, enum.Enum):
    CREDULOUS = "credulous"
    SKEPTICAL = "skeptical"

    @classmethod
    def parse(cls, name: "Stance | str") -> "Stance":
        if isinstance(name, cls):
            return name
        try:
            return cls(name)
        except ValueError:
            raise UsageError(f"unknown stance {name!r} (expected credulous or skeptical)") from None


# -- probability arithmetic -------------------------------------------------


def is_number(p: object) -> bool:
    return isinstance(p, numbers.Real) and not isinstance(p, bool)


def complement(p):
    """``1 - p``, decimal-exact for floats.

    For floats the subtraction is done on the shortest decimal repr of ``p``,
    so ``complement(complement(p)) == p`` whenever ``p`` has at most 15
    significant digits (0.1 -> 0.9 -> 0.1 rather than 0.09999999999999998).
    """
    if isinstance(p, float):
        return float(1 - Decimal(repr(p)))
    return 1 - p


def total(values: Iterable):
    """Order-independent sum: exact for rationals, ``math.fsum`` otherwise."""
    values = list(values)
    if all(isinstance(v, (int, Fraction)) for v in values):
        return sum(values, 0)
    return math.fsum(values)


# -- PrAAF ------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    code: str
    location: str
    message: str

    def __str__(self) -> str:
        return f"{self.location}: {self.message}"


@dataclass(frozen=True, eq=True)
class PrAAF:
    """``(Args, P_Args, Atts, P_Atts)`` stored as two probability maps.

    Construction does not check anything; call :func:`validate` or
    :func:`require_valid`.
    """

    p_args: Mapping[str, object]
    p_atts: Mapping[tuple, object] = field(default_factory=dict)

    __hash__ = None  # type: ignore[assignment]

    def __post_init__(self):
        object.__setattr__(self, "p_args", dict(self.p_args))
        object.__setattr__(self, "p_atts", {tuple(k): v for k, v in dict(self.p_atts).items()})

    @property
    def args(self) -> frozenset:
        return frozenset(self.p_args)

    @property
    def atts(self) -> frozenset:
        return frozenset(self.p_atts)

    @classmethod
    def from_aaf(cls, aaf: AAF) -> "PrAAF":
        return cls({a: 1 for a in aaf.args}, {e: 1 for e in aaf.atts})

    def structure(self) -> AAF:
        """The underlying graph with every element present."""
        return AAF(self.args, self.atts)

    def __repr__(self) -> str:
        args = ", ".join(f"{a}:{p}" for a, p in sorted(self.p_args.items()))
        atts = ", ".join(f"{s}->{t}:{p}" for (s, t), p in sorted(self.p_atts.items()))
        return f"PrAAF({{{args}}}, {{{atts}}})"


def _check_probability(p, location: str) -> list[Violation]:
    if not is_number(p) or p != p:
        return [Violation("probability-range", location, f"probability {p!r} is not a number")]
    if p == 0:
        return [Violation("zero-probability", location, "zero probability (redundant element)")]
    if not 0 < p <= 1:
        return [Violation("probability-range", location, f"probability {p} outside (0,1]")]
    return []


def validate(praaf: PrAAF) -> list[Violation]:
    """Every invariant violation of ``praaf``; an empty list means valid."""
    out: list[Violation] = []
    for a in sorted(praaf.p_args, key=str):
        if not is_valid_id(a):
            out.append(Violation("invalid-id", f"arg {a!r}", f"invalid argument id {a!r}"))
        out.extend(_check_probability(praaf.p_args[a], f"arg {a}"))
    for edge in sorted(praaf.p_atts, key=str):
        if len(edge) != 2:
            out.append(Violation("invalid-id", f"att {edge!r}", "attack must be a (source, target) pair"))
            continue
        src, dst = edge
        loc = f"att {src}->{dst}"
        for end in (src, dst):
            if end not in praaf.p_args:
                out.append(Violation("unknown-endpoint", loc, f"unknown endpoint {end!r}"))
        out.extend(_check_probability(praaf.p_atts[edge], loc))
    return out


def require_valid(praaf: PrAAF) -> PrAAF:
    violations = validate(praaf)
    if violations:
        raise ValidationError(violations)
    return praaf


# -- possible worlds -------------------------------------------------------------


@dataclass(frozen=True, order=True)
class ProbabilisticElement:
    kind: str  # "argument" | "attack"
    ref: object  # argument id or (source, target)
    p: object = field(compare=False)

    def literal(self, present: bool) -> str:
        if self.kind == "argument":
            text = self.ref
        else:
            text = f"({self.ref[0]}->{self.ref[1]})"
        return text if present else "!" + text


def probabilistic_elements(praaf: PrAAF) -> list[ProbabilisticElement]:
    """Elements with probability below 1: attacks by (source, target), then arguments."""
    atts = [
        ProbabilisticElement("attack", e, p)
        for e, p in sorted(praaf.p_atts.items())
        if p < 1
    ]
    args = [
        ProbabilisticElement("argument", a, p)
        for a, p in sorted(praaf.p_args.items())
        if p < 1
    ]
    return atts + args


@dataclass(frozen=True)
class World:
    """One possible world: the assignment, its probability and realized AAF.

    ``assignment`` preserves the enumeration order of the elements. In
    induced mode it omits attacks whose endpoints are not both present.
    """

    index: int
    assignment: Mapping[ProbabilisticElement, bool]
    probability: object
    realized: AAF
    proper: bool

    __hash__ = None  # type: ignore[assignment]

    def literals(self) -> list[str]:
        return [e.literal(v) for e, v in self.assignment.items()]


def _lookup(assignment: Mapping[ProbabilisticElement, bool]) -> tuple[dict, dict]:
    args, atts = {}, {}
    for elem, present in assignment.items():
        (args if elem.kind == "argument" else atts)[elem.ref] = bool(present)
    return args, atts


def _present_args(praaf: PrAAF, arg_values: Mapping[str, bool]) -> frozenset:
    out = []
    for a, p in praaf.p_args.items():
        if p >= 1:
            out.append(a)
        else:
            try:
                if arg_values[a]:
                    out.append(a)
            except KeyError:
                raise DomainError(f"assignment does not cover argument {a!r}") from None
    return frozenset(out)


def _realize(praaf: PrAAF, args: frozenset, att_values: Mapping[tuple, bool]) -> AAF:
    atts = []
    for edge, p in praaf.p_atts.items():
        if edge[0] not in args or edge[1] not in args:
            continue
        if p >= 1:
            atts.append(edge)
            continue
        try:
            if att_values[edge]:
                atts.append(edge)
        except KeyError:
            raise DomainError(f"assignment does not cover attack {edge[0]}->{edge[1]}") from None
    return AAF(args, atts)


def world_aaf(assignment: Mapping[ProbabilisticElement, bool], praaf: PrAAF) -> AAF:
    """Realize the AAF of one assignment.

    Present (or certain) arguments are kept; an attack is kept when it is
    present (or certain) and both endpoints survive. Attacks touching an
    absent argument are dropped, so a world with ``c`` absent loses ``c->d``.
    """
    arg_values, att_values = _lookup(assignment)
    return _realize(praaf, _present_args(praaf, arg_values), att_values)


def is_proper_world(assignment: Mapping[ProbabilisticElement, bool], praaf: PrAAF) -> bool:
    """False iff a present or certain attack has an absent endpoint (raw mode)."""
    arg_values, att_values = _lookup(assignment)
    args = _present_args(praaf, arg_values)
    for edge, p in praaf.p_atts.items():
        present = p >= 1 or att_values.get(edge, False)
        if present and (edge[0] not in args or edge[1] not in args):
            return False
    return True


def world_probability(
    assignment: Mapping[ProbabilisticElement, bool],
    praaf: PrAAF,
    mode: WorldMode | str = WorldMode.RAW,
):
    """Product of ``p`` over present and ``1 - p`` over absent elements.

    In induced mode an attack contributes a factor only when both of its
    endpoints are present; it must not appear in the assignment otherwise.
    """
    mode = WorldMode.parse(mode)
    arg_values, att_values = _lookup(assignment)
    args = _present_args(praaf, arg_values)
    factors = []
    for elem in probabilistic_elements(praaf):
        if elem.kind == "attack" and mode is WorldMode.INDUCED:
            active = elem.ref[0] in args and elem.ref[1] in args
            if not active:
                if elem.ref in att_values:
                    raise DomainError(
                        f"attack {elem.ref[0]}->{elem.ref[1]} is conditioned out but assigned"
                    )
                continue
        values = arg_values if elem.kind == "argument" else att_values
        if elem.ref not in values:
            raise DomainError(f"assignment does not cover {elem.literal(True)}")
        factors.append(elem.p if values[elem.ref] else complement(elem.p))
    return math.prod(factors, start=1)


def _bits(index: int, width: int) -> list[bool]:
    return [bool(index >> (width - 1 - k) & 1) for k in range(width)]


def count_elements(praaf: PrAAF) -> int:
    return len(probabilistic_elements(praaf))


def enumerate_worlds(
    praaf: PrAAF,
    mode: WorldMode | str = WorldMode.RAW,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
) -> Iterator[World]:
    """Stream the possible worlds of ``praaf`` in canonical counter order.

    Raw mode yields exactly ``2**N`` worlds. Induced mode counts over the
    probabilistic arguments first and, inside each argument assignment, over
    the probabilistic attacks whose endpoints are both present.
    """
    mode = WorldMode.parse(mode)
    require_valid(praaf)
    elements = probabilistic_elements(praaf)
    if len(elements) > max_elements:
        raise CapacityError(
            f"PrAAF has N={len(elements)} probabilistic elements; world enumeration is capped at {max_elements}"
        )
    if mode is WorldMode.RAW:
        yield from _raw_worlds(praaf, elements)
    else:
        yield from _induced_worlds(praaf, elements)


def _raw_worlds(praaf: PrAAF, elements: list[ProbabilisticElement]) -> Iterator[World]:
    n = len(elements)
    for index in range(1 << n):
        bits = _bits(index, n)
        assignment = dict(zip(elements, bits))
        prob = math.prod(
            (e.p if b else complement(e.p) for e, b in zip(elements, bits)), start=1
        )
        yield World(
            index=index,
            assignment=assignment,
            probability=prob,
            realized=world_aaf(assignment, praaf),
            proper=is_proper_world(assignment, praaf),
        )


def _induced_worlds(praaf: PrAAF, elements: list[ProbabilisticElement]) -> Iterator[World]:
    arg_elems = [e for e in elements if e.kind == "argument"]
    att_elems = [e for e in elements if e.kind == "attack"]
    index = 0
    for arg_index in range(1 << len(arg_elems)):
        arg_bits = _bits(arg_index, len(arg_elems))
        present = {e.ref for e, b in zip(arg_elems, arg_bits) if b}
        present |= {a for a, p in praaf.p_args.items() if p >= 1}
        active = [e for e in att_elems if e.ref[0] in present and e.ref[1] in present]
        arg_prob = math.prod(
            (e.p if b else complement(e.p) for e, b in zip(arg_elems, arg_bits)), start=1
        )
        for att_index in range(1 << len(active)):
            att_bits = _bits(att_index, len(active))
            assignment = dict(zip(arg_elems, arg_bits))
            assignment.update(zip(active, att_bits))
            prob = arg_prob * math.prod(
                (e.p if b else complement(e.p) for e, b in zip(active, att_bits)), start=1
            )
            # dangling attacks are conditioned out, so every induced world is proper
            yield World(index, assignment, prob, world_aaf(assignment, praaf), True)
            index += 1


def is_induced(aaf: AAF, praaf: PrAAF) -> bool:
    """Check the four conditions for ``aaf`` being induced from ``praaf``."""
    if not aaf.args <= praaf.args:
        return False
    if not all(e in praaf.p_atts and e[0] in aaf.args and e[1] in aaf.args for e in aaf.atts):
        return False
    if not all(a in aaf.args for a, p in praaf.p_args.items() if p >= 1):
        return False
    for (src, dst), p in praaf.p_atts.items():
        forced = p >= 1 and praaf.p_args.get(src) == 1 and praaf.p_args.get(dst) == 1
        if forced and (src, dst) not in aaf.atts:
            return False
    return True


# -- distributions ---------------------------------------------------------------


@dataclass(frozen=True)
class ExtensionDistribution:
    """Map from extension to the probability that it is a sigma-extension.

    Entries do not sum to one: a world contributes to each of its extensions.
    """

    entries: Mapping[frozenset, object]
    sigma: Semantics
    mode: WorldMode

    __hash__ = None  # type: ignore[assignment]

    def __getitem__(self, s: Iterable[str]):
        return self.entries.get(frozenset(s), 0)

    def __len__(self) -> int:
        return len(self.entries)

    def items(self) -> list[tuple[frozenset, object]]:
        return sorted(self.entries.items(), key=lambda kv: set_sort_key(kv[0]))

    def __repr__(self) -> str:
        body = ", ".join(f"{format_set(k)}: {v}" for k, v in self.items())
        return f"ExtensionDistribution({self.sigma}, {self.mode}, {{{body}}})"


def extension_distribution(
    praaf: PrAAF,
    sigma: Semantics | str,
    mode: WorldMode | str = WorldMode.RAW,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    max_args: int = DEFAULT_MAX_ARGS,
) -> ExtensionDistribution:
    sigma = Semantics.parse(sigma)
    mode = WorldMode.parse(mode)
    mass = defaultdict(list)
    for world in enumerate_worlds(praaf, mode, max_elements):
        for ext in enumerate_extensions(world.realized, sigma, max_args):
            mass[ext].append(world.probability)
    entries = {k: total(v) for k, v in mass.items()}
    return ExtensionDistribution({k: v for k, v in entries.items() if v != 0}, sigma, mode)


def extension_probability(
    s: Iterable[str],
    sigma: Semantics | str,
    praaf: PrAAF,
    mode: WorldMode | str = WorldMode.RAW,
    **caps,
):
    s = frozenset(s)
    unknown = s - praaf.args
    if unknown:
        raise DomainError(f"unknown argument(s) {format_set(unknown)}")
    return extension_distribution(praaf, sigma, mode, **caps)[s]


@dataclass(frozen=True)
class Acceptance:
    probability: object
    vacuous: object  # skeptical mass from worlds without any extension


def acceptance(
    a: str,
    sigma: Semantics | str,
    stance: Stance | str,
    praaf: PrAAF,
    mode: WorldMode | str = WorldMode.RAW,
    max_elements: int = DEFAULT_MAX_ELEMENTS,
    max_args: int = DEFAULT_MAX_ARGS,
) -> Acceptance:
    stance = Stance.parse(stance)
    if a not in praaf.p_args:
        raise DomainError(f"unknown argument {a!r}")
    hits, vacuous = [], []
    for world in enumerate_worlds(praaf, mode, max_elements):
        if a not in world.realized.args:
            continue
        exts = enumerate_extensions(world.realized, sigma, max_args)
        if stance is Stance.CREDULOUS:
            if any(a in e for e in exts):
                hits.append(world.probability)
        elif not exts:
            hits.append(world.probability)
            vacuous.append(world.probability)
        elif all(a in e for e in exts):
            hits.append(world.probability)
    return Acceptance(total(hits), total(vacuous))


def acceptance_probability(a, sigma, stance, praaf, mode=WorldMode.RAW, **caps):
    """Probability that ``a`` is credulously/skeptically accepted.

    Worlds without ``a`` never count. Under the skeptical stance a world with
    no sigma-extension at all counts vacuously.
    """
    return acceptance(a, sigma, stance, praaf, mode, **caps).probability
