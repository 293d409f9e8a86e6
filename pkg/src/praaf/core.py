"""Concrete argumentation frameworks and exhaustive Dung semantics.

Sets of arguments are handled as bitmasks over the framework's sorted
argument list; the public functions take and return ``frozenset`` of ids.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import CapacityError, DomainError, UsageError

ArgumentSet = frozenset  # frozenset[str]
Attack = tuple  # (source, target)

ID_PATTERN = re.compile(r"[A-Za-z0-9_]+")
DEFAULT_MAX_ARGS = 20


class Semantics(str, enum.Enum):
    CONFLICT_FREE = "conflict-free"
    ADMISSIBLE = "admissible"
    COMPLETE = "complete"
    GROUNDED = "grounded"
    PREFERRED = "preferred"
    STABLE = "stable"

    @classmethod
    def parse(cls, name: "Semantics | str") -> "Semantics":
        if isinstance(name, cls):
            return name
        try:
            return cls(name)
        except ValueError:
            known = ", ".join(s.value for s in cls)
            raise UsageError(f"unknown semantics {name!r} (expected one of: {known})") from None

    def __str__(self) -> str:
        return self.value


def is_valid_id(name: object) -> bool:
    return isinstance(name, str) and ID_PATTERN.fullmatch(name) is not None


def canonical(s: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(s))


def set_sort_key(s: Iterable[str]) -> tuple[int, tuple[str, ...]]:
    """Order sets by size, then lexicographically (the order used in listings)."""
    members = canonical(s)
    return len(members), members


def format_set(s: Iterable[str]) -> str:
    return "{" + ",".join(canonical(s)) + "}"


@dataclass(frozen=True)
class AAF:
    """A finite abstract argumentation framework ``(args, atts)``.

    Self-attacks are allowed. Dangling attack endpoints are rejected.
    """

    args: frozenset
    atts: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "args", frozenset(self.args))
        object.__setattr__(self, "atts", frozenset(tuple(e) for e in self.atts))
        for a in self.args:
            if not is_valid_id(a):
                raise DomainError(f"invalid argument id {a!r}")
        for src, dst in self.atts:
            for end in (src, dst):
                if end not in self.args:
                    raise DomainError(f"attack ({src}->{dst}) has unknown endpoint {end!r}")

    def attackers(self, a: str) -> frozenset:
        return frozenset(src for src, dst in self.atts if dst == a)

    def __repr__(self) -> str:
        atts = ", ".join(f"{s}->{t}" for s, t in sorted(self.atts))
        return f"AAF({format_set(self.args)}, [{atts}])"


class _Encoded:
    """Bitmask view of an AAF: bit ``i`` stands for ``order[i]``."""

    __slots__ = ("order", "index", "attackers", "targets", "full")

    def __init__(self, aaf: AAF):
        self.order = canonical(aaf.args)
        self.index = {a: i for i, a in enumerate(self.order)}
        n = len(self.order)
        self.attackers = [0] * n
        self.targets = [0] * n
        for src, dst in aaf.atts:
            i, j = self.index[src], self.index[dst]
            self.attackers[j] |= 1 << i
            self.targets[i] |= 1 << j
        self.full = (1 << n) - 1

    def mask(self, s: Iterable[str]) -> int:
        m = 0
        for a in s:
            try:
                m |= 1 << self.index[a]
            except KeyError:
                raise DomainError(f"argument {a!r} is not in the framework") from None
        return m

    def members(self, mask: int) -> frozenset:
        return frozenset(a for i, a in enumerate(self.order) if mask >> i & 1)

    def attacked_by(self, mask: int) -> int:
        out = 0
        i = 0
        while mask:
            if mask & 1:
                out |= self.targets[i]
            mask >>= 1
            i += 1
        return out

    def conflict_free(self, mask: int) -> bool:
        return self.attacked_by(mask) & mask == 0

    def characteristic(self, mask: int) -> int:
        defeated = self.attacked_by(mask)
        out = 0
        for i, att in enumerate(self.attackers):
            if att & ~defeated == 0:
                out |= 1 << i
        return out

    def admissible(self, mask: int) -> bool:
        return self.conflict_free(mask) and mask & ~self.characteristic(mask) == 0

    def complete(self, mask: int) -> bool:
        return self.conflict_free(mask) and self.characteristic(mask) == mask

    def stable(self, mask: int) -> bool:
        hit = self.attacked_by(mask)
        return hit & mask == 0 and hit == self.full & ~mask

    def grounded(self) -> int:
        mask = 0
        while True:
            nxt = self.characteristic(mask)
            if nxt == mask:
                return mask
            mask = nxt

    def supersets(self, mask: int) -> Iterator[int]:
        """Strict supersets of ``mask``."""
        rest = self.full & ~mask
        sub = rest
        while sub:
            yield mask | sub
            sub = (sub - 1) & rest


@lru_cache(maxsize=4096)
def _encode(aaf: AAF) -> _Encoded:
    return _Encoded(aaf)


def _check_cap(aaf: AAF, max_args: int) -> None:
    if len(aaf.args) > max_args:
        raise CapacityError(
            f"framework has {len(aaf.args)} arguments; subset enumeration is capped at {max_args}"
        )


def is_conflict_free(s: Iterable[str], aaf: AAF) -> bool:
    enc = _encode(aaf)
    return enc.conflict_free(enc.mask(s))


def is_acceptable(a: str, s: Iterable[str], aaf: AAF) -> bool:
    """True iff every attacker of ``a`` is attacked by some member of ``s``."""
    enc = _encode(aaf)
    bit = enc.mask([a])
    return enc.characteristic(enc.mask(s)) & bit != 0


def characteristic(s: Iterable[str], aaf: AAF) -> frozenset:
    enc = _encode(aaf)
    return enc.members(enc.characteristic(enc.mask(s)))


def grounded_extension(aaf: AAF) -> frozenset:
    return _encode(aaf).members(_encode(aaf).grounded())


def is_extension(s: Iterable[str], sigma: Semantics | str, aaf: AAF) -> bool:
    sigma = Semantics.parse(sigma)
    enc = _encode(aaf)
    mask = enc.mask(s)
    if sigma is Semantics.CONFLICT_FREE:
        return enc.conflict_free(mask)
    if sigma is Semantics.ADMISSIBLE:
        return enc.admissible(mask)
    if sigma is Semantics.COMPLETE:
        return enc.complete(mask)
    if sigma is Semantics.GROUNDED:
        return mask == enc.grounded()
    if sigma is Semantics.STABLE:
        return enc.stable(mask)
    # preferred
    return enc.admissible(mask) and not any(enc.admissible(m) for m in enc.supersets(mask))


def _scan(enc: _Encoded, test) -> list[int]:
    return [m for m in range(enc.full + 1) if test(m)]


def _maximal(masks: list[int]) -> list[int]:
    return [m for m in masks if not any(o != m and o & m == m for o in masks)]


@lru_cache(maxsize=65536)
def _extensions(aaf: AAF, sigma: Semantics) -> frozenset:
    enc = _encode(aaf)
    if sigma is Semantics.GROUNDED:
        masks = [enc.grounded()]
    elif sigma is Semantics.CONFLICT_FREE:
        masks = _scan(enc, enc.conflict_free)
    elif sigma is Semantics.ADMISSIBLE:
        masks = _scan(enc, enc.admissible)
    elif sigma is Semantics.COMPLETE:
        masks = _scan(enc, enc.complete)
    elif sigma is Semantics.STABLE:
        masks = _scan(enc, enc.stable)
    else:
        masks = _maximal(_scan(enc, enc.admissible))
    return frozenset(enc.members(m) for m in masks)


def enumerate_extensions(
    aaf: AAF, sigma: Semantics | str, max_args: int = DEFAULT_MAX_ARGS
) -> frozenset:
    """All sigma-extensions of ``aaf`` as a frozenset of frozensets.

    Every semantics except grounded scans all ``2**len(args)`` subsets and is
    therefore subject to ``max_args``; grounded is a fixed-point iteration.
    """
    sigma = Semantics.parse(sigma)
    if sigma is not Semantics.GROUNDED:
        _check_cap(aaf, max_args)
    return _extensions(aaf, sigma)


def sorted_sets(sets: Iterable[Iterable[str]]) -> list[frozenset]:
    return sorted((frozenset(s) for s in sets), key=set_sort_key)
