"""Ground monoids: additive naturals, naturals modulo l, multiplicative naturals."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class SpecMismatchError(ValueError):
    """Raised when values from two different monoids are combined."""


class MonoidKind(Enum):
    ADDITIVE = "add"
    CYCLIC = "cyclic"
    MULTIPLICATIVE = "mult"


DEFAULT_BITS = 63


@dataclass(frozen=True)
class MonoidSpec:
    """A built-in monoid on nonnegative integers.

    ``bits`` caps the carrier of the two infinite monoids: any product that
    reaches ``2**bits`` raises ``OverflowError`` instead of silently growing.
    """

    kind: MonoidKind
    modulus: int | None = None
    bits: int = DEFAULT_BITS

    def __post_init__(self) -> None:
        if self.kind is MonoidKind.CYCLIC:
            if not isinstance(self.modulus, int) or self.modulus < 1:
                raise ValueError(f"cyclic modulus must be a positive integer, got {self.modulus!r}")
        elif self.modulus is not None:
            raise ValueError(f"{self.kind.value} monoid takes no modulus")
        if self.bits < 2:
            raise ValueError("bits must be at least 2")

    @classmethod
    def additive(cls) -> MonoidSpec:
        return cls(MonoidKind.ADDITIVE)

    @classmethod
    def cyclic(cls, modulus: int) -> MonoidSpec:
        return cls(MonoidKind.CYCLIC, modulus)

    @classmethod
    def multiplicative(cls) -> MonoidSpec:
        return cls(MonoidKind.MULTIPLICATIVE)

    @property
    def name(self) -> str:
        """CLI name: ``add``, ``cyclic:<L>`` or ``mult``."""
        if self.kind is MonoidKind.CYCLIC:
            return f"cyclic:{self.modulus}"
        return self.kind.value

    @property
    def is_finite(self) -> bool:
        return self.kind is MonoidKind.CYCLIC

    @property
    def unit(self) -> int:
        return 1 if self.kind is MonoidKind.MULTIPLICATIVE else 0

    @property
    def limit(self) -> int:
        """Exclusive upper bound of the representable carrier."""
        if self.kind is MonoidKind.CYCLIC:
            return self.modulus  # type: ignore[return-value]
        return 1 << self.bits

    def contains(self, value: int) -> bool:
        return isinstance(value, int) and not isinstance(value, bool) and 0 <= value < self.limit

    def mul(self, a: int, b: int) -> int:
        """Product on raw carrier values (no membership check on the inputs)."""
        if self.kind is MonoidKind.ADDITIVE:
            r = a + b
        elif self.kind is MonoidKind.CYCLIC:
            return (a + b) % self.modulus  # type: ignore[operator]
        else:
            r = a * b
        if r >= self.limit:
            raise OverflowError(f"{self.name} product {a}*{b} exceeds {self.bits} bits")
        return r

    def elements(self, bound: int | None = None) -> range:
        """Carrier enumeration hint: the whole carrier, or ``0..bound`` for infinite ones."""
        if self.is_finite:
            return range(self.limit)
        if bound is None:
            raise ValueError(f"{self.name} is infinite; a bound is required")
        return range(bound + 1)

    def check(self, value: int) -> int:
        if not self.contains(value):
            raise ValueError(f"{value!r} is not an element of {self.name}")
        return value

    def __str__(self) -> str:
        return self.name


ADDITIVE = MonoidSpec.additive()
MULTIPLICATIVE = MonoidSpec.multiplicative()


def parse_monoid(text: str) -> MonoidSpec:
    """Parse ``add``, ``mult`` or ``cyclic:<L>``."""
    text = text.strip()
    if text == "add":
        return ADDITIVE
    if text == "mult":
        return MULTIPLICATIVE
    if text.startswith("cyclic:"):
        try:
            modulus = int(text.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad cyclic modulus in {text!r}") from None
        return MonoidSpec.cyclic(modulus)
    raise ValueError(f"unknown monoid {text!r} (expected add, mult or cyclic:<L>)")


@dataclass(frozen=True)
class MonoidElement:
    value: int
    spec: MonoidSpec

    def __post_init__(self) -> None:
        self.spec.check(self.value)

    def __str__(self) -> str:
        return str(self.value)


def product(a: MonoidElement, b: MonoidElement) -> MonoidElement:
    if a.spec != b.spec:
        raise SpecMismatchError(f"cannot multiply {a.spec} and {b.spec} elements")
    return MonoidElement(a.spec.mul(a.value, b.value), a.spec)


def unit(spec: MonoidSpec) -> MonoidElement:
    return MonoidElement(spec.unit, spec)


# Known answers for the built-in kinds; the bounded probe must agree with them.
RIGHT_REGULAR_FACTS = {
    MonoidKind.ADDITIVE: True,
    MonoidKind.CYCLIC: True,
    MonoidKind.MULTIPLICATIVE: False,
}


def right_regularity_witness(spec: MonoidSpec, probe_bound: int = 20) -> tuple[int, int, int] | None:
    """Return ``(x, y, z)`` with ``y*x == z*x`` and ``y != z``, or None if the probe finds none.

    The search is exhaustive over the full carrier for cyclic monoids and over
    ``0..probe_bound`` otherwise.
    """
    carrier = spec.elements(probe_bound)
    for x in carrier:
        seen: dict[int, int] = {}
        for y in carrier:
            r = spec.mul(y, x)
            if r in seen:
                return x, seen[r], y
            seen[r] = y
    return None


def is_right_regular(spec: MonoidSpec, probe_bound: int = 20) -> bool:
    """Right cancellation ``y*x == z*x => y == z`` on the probed carrier segment.

    Sampling cannot prove regularity of an infinite carrier, so a clean probe
    is combined with the fact table. Multiplicative naturals fail at ``x = 0``.
    """
    if probe_bound < 1:
        raise ValueError("probe_bound must be positive")
    return right_regularity_witness(spec, probe_bound) is None and RIGHT_REGULAR_FACTS[spec.kind]


class MorphismKind(Enum):
    IDENTITY = "identity"
    REDUCE_MOD = "reduce_mod"


@dataclass(frozen=True)
class MonoidMorphism:
    source: MonoidSpec
    target: MonoidSpec
    kind: MorphismKind

    def __post_init__(self) -> None:
        if self.kind is MorphismKind.IDENTITY:
            if self.source != self.target:
                raise ValueError("identity morphism needs equal source and target")
            return
        if self.target.kind is not MonoidKind.CYCLIC:
            raise ValueError("reduction must land in a cyclic monoid")
        if self.source.kind is MonoidKind.ADDITIVE:
            return
        if self.source.kind is MonoidKind.CYCLIC and self.source.modulus % self.target.modulus == 0:  # type: ignore[operator]
            return
        raise ValueError(f"no reduction morphism {self.source} -> {self.target}")

    @classmethod
    def identity(cls, spec: MonoidSpec) -> MonoidMorphism:
        return cls(spec, spec, MorphismKind.IDENTITY)

    @classmethod
    def reduce_mod(cls, modulus: int, source: MonoidSpec = ADDITIVE) -> MonoidMorphism:
        return cls(source, MonoidSpec.cyclic(modulus), MorphismKind.REDUCE_MOD)

    def apply_value(self, value: int) -> int:
        if self.kind is MorphismKind.IDENTITY:
            return value
        return value % self.target.modulus  # type: ignore[operator]


def morphism_apply(theta: MonoidMorphism, a: MonoidElement) -> MonoidElement:
    if a.spec != theta.source:
        raise SpecMismatchError(f"morphism expects {theta.source}, got {a.spec}")
    return MonoidElement(theta.apply_value(a.value), theta.target)

