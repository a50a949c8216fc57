"""Named suboperads of ``T M``: membership, generation, enumeration, dimensions.

Every family uses 0-based ("twisted") letters, so that End, PF, PW and Per are
closed under grafting over the additive naturals.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from itertools import permutations, product

from .monoid import ADDITIVE, MULTIPLICATIVE, MonoidSpec, SpecMismatchError
from .words import Letters, OperadWord, format_letters, graft_letters

FAMILY_NAMES = ("end", "pf", "pw", "per", "prt", "fcat", "schr", "motz", "comp", "da", "scomp", "di", "tr")

_Z2 = MonoidSpec.cyclic(2)
_Z3 = MonoidSpec.cyclic(3)


class NotFinitelyGeneratedError(ValueError):
    """The family has no finite generating set; use ``enumerate_by_membership``."""


@dataclass(frozen=True)
class Family:
    """A family identifier; ``k`` is only used (and required) for ``fcat``."""

    name: str
    k: int | None = None

    def __post_init__(self) -> None:
        if self.name not in FAMILY_NAMES:
            raise ValueError(f"unknown family {self.name!r}; expected one of {', '.join(FAMILY_NAMES)}")
        if self.name == "fcat":
            if not isinstance(self.k, int) or self.k < 0:
                raise ValueError("fcat needs a parameter k >= 0")
        elif self.k is not None:
            raise ValueError(f"family {self.name} takes no parameter")

    def __str__(self) -> str:
        return f"fcat:{self.k}" if self.name == "fcat" else self.name

    @property
    def spec(self) -> MonoidSpec:
        if self.name == "comp":
            return _Z2
        if self.name in ("da", "scomp"):
            return _Z3
        if self.name in ("di", "tr"):
            return MULTIPLICATIVE
        return ADDITIVE

    @property
    def symmetric(self) -> bool:
        return self.name in ("end", "pf", "pw", "per")

    @property
    def generators(self) -> tuple[Letters, ...] | None:
        """Letter tuples of a generating set, or None when there is no finite one."""
        if self.name == "fcat":
            return tuple((0, i) for i in range(self.k + 1))  # type: ignore[operator]
        return _GENERATORS.get(self.name)

    def generator_words(self) -> tuple[OperadWord, ...]:
        gens = self.generators
        if gens is None:
            raise NotFinitelyGeneratedError(f"{self} is not finitely generated")
        return tuple(OperadWord(g, self.spec) for g in gens)


_GENERATORS: dict[str, tuple[Letters, ...]] = {
    "pw": ((0, 0), (0, 1)),
    "prt": ((0, 1),),
    "schr": ((0, 0), (0, 1), (1, 0)),
    "motz": ((0, 0), (0, 1, 0)),
    "comp": ((0, 0), (0, 1)),
    "da": ((0, 0), (0, 1)),
    "scomp": ((0, 0), (0, 1), (0, 2)),
    "di": ((0, 1), (1, 0)),
    "tr": ((0, 1), (1, 0), (1, 1)),
}


def parse_family(text: str) -> Family:
    """Parse a CLI family name such as ``motz`` or ``fcat:2``."""
    text = text.strip().lower()
    if text.startswith("fcat"):
        _, sep, k = text.partition(":")
        if not sep or not k.isdigit():
            raise ValueError("fcat needs a parameter, e.g. fcat:1")
        return Family("fcat", int(k))
    return Family(text)


# ---------------------------------------------------------------------------
# Membership


def _is_endofunction(x: Letters) -> bool:
    n = len(x)
    return all(a < n for a in x)


def _is_parking(x: Letters) -> bool:
    return all(a <= i for i, a in enumerate(sorted(x)))


def _is_packed(x: Letters) -> bool:
    present = set(x)
    return 0 in present and all(a - 1 in present for a in present if a)


def _is_permutation(x: Letters) -> bool:
    return sorted(x) == list(range(len(x)))


def _is_prt(x: Letters) -> bool:
    return x[0] == 0 and all(1 <= b <= a + 1 for a, b in zip(x, x[1:]))


def _is_fcat(k: int) -> Callable[[Letters], bool]:
    def check(x: Letters) -> bool:
        return x[0] == 0 and all(b <= a + k for a, b in zip(x, x[1:]))

    return check


def _is_schroder(x: Letters) -> bool:
    """Each occurrence of ``b >= 1`` reaches a ``b-1`` through a stretch of letters ``>= b``."""
    if 0 not in x:
        return False
    n = len(x)
    for p, b in enumerate(x):
        if not b:
            continue
        for step in (-1, 1):
            j = p + step
            while 0 <= j < n and x[j] >= b:
                j += step
            if 0 <= j < n and x[j] == b - 1:
                break
        else:
            return False
    return True


def _is_motzkin(x: Letters) -> bool:
    return x[0] == 0 and x[-1] == 0 and all(abs(a - b) <= 1 for a, b in zip(x, x[1:]))


def _is_da(x: Letters) -> bool:
    if x[0] != 0:
        return False
    height = 0
    for a, b in zip(x, x[1:]):
        height += _DA_STEP[(b - a) % 3]
        if height < 0:
            return False
    return True


_DA_STEP = {0: 0, 1: 1, 2: -1}


def _starts_with_zero(x: Letters) -> bool:
    return x[0] == 0


def _one_count(pred: Callable[[int], bool]) -> Callable[[Letters], bool]:
    def check(x: Letters) -> bool:
        return all(a in (0, 1) for a in x) and pred(x.count(1))

    return check


def _predicate(f: Family) -> Callable[[Letters], bool]:
    if f.name == "fcat":
        return _is_fcat(f.k)  # type: ignore[arg-type]
    return _PREDICATES[f.name]


_PREDICATES: dict[str, Callable[[Letters], bool]] = {
    "end": _is_endofunction,
    "pf": _is_parking,
    "pw": _is_packed,
    "per": _is_permutation,
    "prt": _is_prt,
    "schr": _is_schroder,
    "motz": _is_motzkin,
    "comp": _starts_with_zero,
    "scomp": _starts_with_zero,
    "da": _is_da,
    "di": _one_count(lambda c: c == 1),
    "tr": _one_count(lambda c: c >= 1),
}


def member(f: Family, x: OperadWord) -> bool:
    """Whether ``x`` belongs to the family (``x`` must be over the family's monoid)."""
    if x.spec != f.spec:
        raise SpecMismatchError(f"{f} lives over {f.spec}, got a word over {x.spec}")
    return _predicate(f)(x.letters)


def member_letters(f: Family, x: Letters) -> bool:
    """``member`` on a raw letter tuple, assumed to be over the family's monoid."""
    return _predicate(f)(x)


# ---------------------------------------------------------------------------
# Enumeration tables


@dataclass(frozen=True)
class EnumerationTable:
    """Per-arity element sets of a family, each sorted lexicographically."""

    family: Family
    levels: tuple[tuple[OperadWord, ...], ...]

    @property
    def max_arity(self) -> int:
        return len(self.levels)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(level) for level in self.levels)

    def elements(self, n: int) -> tuple[OperadWord, ...]:
        return self.levels[n - 1]

    def letter_sets(self) -> list[set[Letters]]:
        return [{w.letters for w in level} for level in self.levels]

    def to_json(self, counts_only: bool = False) -> dict:
        arities = []
        for n, level in enumerate(self.levels, start=1):
            entry: dict = {"n": n, "count": len(level)}
            if not counts_only:
                entry["elements"] = [format_letters(w.letters) for w in level]
            arities.append(entry)
        return {"family": str(self.family), "arities": arities}


def _table(f: Family, sets: Iterable[Iterable[Letters]]) -> EnumerationTable:
    spec = f.spec
    levels = tuple(tuple(OperadWord._trusted(w, spec) for w in sorted(level)) for level in sets)
    return EnumerationTable(f, levels)


def _orbit_closure(level: set[Letters]) -> set[Letters]:
    """Close under the full symmetric group, acting once per orbit representative."""
    closed: set[Letters] = set()
    for rep in {tuple(sorted(w)) for w in level}:
        closed.update(permutations(rep))
    return closed


def generate_by_arity(f: Family, max_arity: int) -> EnumerationTable:
    """Build each arity from smaller ones by grafting generators: ``A(n) = {y o_i g}``."""
    gens = f.generators
    if gens is None:
        raise NotFinitelyGeneratedError(
            f"{f} has no finite generating set; use enumerate_by_membership instead"
        )
    if max_arity < 1:
        raise ValueError("max_arity must be positive")
    spec = f.spec
    levels: list[set[Letters]] = [{(spec.unit,)}]
    for n in range(2, max_arity + 1):
        level: set[Letters] = set()
        for g in gens:
            source = n - len(g) + 1
            if source < 1:
                continue
            for y in levels[source - 1]:
                for i in range(1, source + 1):
                    level.add(graft_letters(spec, y, i, g))
        if f.symmetric:
            level = _orbit_closure(level)
        levels.append(level)
    return _table(f, levels)


def _letter_bound(f: Family, n: int) -> int | None:
    """Exclusive bound on letters of arity-``n`` members, when the family forces one."""
    if f.name in ("end", "pf", "pw", "per", "schr", "prt", "motz"):
        return n
    if f.name == "fcat":
        return f.k * (n - 1) + 1  # type: ignore[operator]
    if f.spec.is_finite:
        return f.spec.limit
    if f.name in ("di", "tr"):
        return 2
    return None


def _step_ok(f: Family, prefix: Letters, a: int, n: int) -> bool:
    """Cheap pruning: can ``prefix + (a,)`` still extend to a member of arity ``n``?"""
    if not prefix:
        return a == 0 or f.name in ("end", "pf", "pw", "per", "schr", "di", "tr")
    b = prefix[-1]
    name = f.name
    if name == "prt":
        return 1 <= a <= b + 1
    if name == "fcat":
        return a <= b + f.k  # type: ignore[operator]
    if name == "motz":
        return abs(a - b) <= 1 and a <= n - 1 - len(prefix)
    if name == "da":
        return _is_da(prefix + (a,))
    if name == "di":
        return a == 0 or 1 not in prefix
    if name == "per":
        return a not in prefix
    return True


_PRUNED = {"prt", "fcat", "motz", "da", "di", "per", "comp", "scomp", "tr"}


def _candidates(f: Family, n: int, bound: int) -> Iterable[Letters]:
    if f.name not in _PRUNED:
        yield from product(range(bound), repeat=n)
        return
    stack: list[Letters] = [()]
    while stack:
        prefix = stack.pop()
        if len(prefix) == n:
            yield prefix
            continue
        for a in range(bound - 1, -1, -1):
            if _step_ok(f, prefix, a, n):
                stack.append(prefix + (a,))


def enumerate_by_membership(f: Family, max_arity: int, letter_cap: int | None = None) -> EnumerationTable:
    """Filter candidate words by ``member``, arity by arity.

    Every built-in family bounds its letters in terms of the arity, so
    ``letter_cap`` is only consulted for a family without such a bound.
    """
    if max_arity < 1:
        raise ValueError("max_arity must be positive")
    pred = _predicate(f)
    levels = []
    for n in range(1, max_arity + 1):
        bound = _letter_bound(f, n)
        if bound is None:
            if letter_cap is None:
                raise ValueError(f"{f} needs a letter_cap")
            bound = letter_cap + 1
        levels.append({w for w in _candidates(f, n, bound) if pred(w)})
    return _table(f, levels)


def enumerate_family(f: Family, max_arity: int) -> EnumerationTable:
    """Generation when a finite generating set exists, membership filtering otherwise."""
    if f.generators is None:
        return enumerate_by_membership(f, max_arity)
    return generate_by_arity(f, max_arity)


# ---------------------------------------------------------------------------
# Dimensions


def fuss_catalan(k: int, n: int) -> int:
    """Number of (k+1)-ary trees with ``n`` internal nodes."""
    return math.comb(k * n + n, n) // (k * n + 1)


def _closed_form(f: Family, n: int) -> int | None:
    name = f.name
    if name == "end":
        return n**n
    if name == "pf":
        return (n + 1) ** (n - 1)
    if name == "per":
        return math.factorial(n)
    if name == "prt":
        return math.comb(2 * n - 2, n - 1) // n
    if name == "fcat":
        return fuss_catalan(f.k, n)  # type: ignore[arg-type]
    if name == "comp":
        return 2 ** (n - 1)
    if name == "scomp":
        return 3 ** (n - 1)
    if name == "di":
        return n
    if name == "tr":
        return 2**n - 1
    return None


def hilbert_prefix(f: Family, max_arity: int) -> tuple[int, ...]:
    """First ``max_arity`` coefficients of the Hilbert series (arities 1..max_arity)."""
    if f.name in ("schr", "motz", "da", "pw"):
        return enumerate_family(f, max_arity).counts
    return tuple(_closed_form(f, n) for n in range(1, max_arity + 1))  # type: ignore[misc]


# ---------------------------------------------------------------------------
# The permutation quotient: a partial graft with an absorbing zero


class _Zero:
    """The absorbing zero of the permutation quotient; not a word."""

    _instance: _Zero | None = None

    def __new__(cls) -> _Zero:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Zero"

    __str__ = __repr__


Zero = _Zero()
PER = Family("per")


def per_partial_graft(x: OperadWord | _Zero, i: int, y: OperadWord | _Zero) -> OperadWord | _Zero:
    """Graft kept only when ``x_i`` is the greatest letter of ``x``; otherwise ``Zero``."""
    if x is Zero or y is Zero:
        return Zero
    assert isinstance(x, OperadWord) and isinstance(y, OperadWord)
    for w in (x, y):
        if w.spec != ADDITIVE or not _is_permutation(w.letters):
            raise ValueError(f"{w} is not a twisted permutation")
    if not 1 <= i <= x.arity:
        raise IndexError(f"graft position {i} out of range for arity {x.arity}")
    if x.letters[i - 1] != x.arity - 1:
        return Zero
    return OperadWord._trusted(graft_letters(ADDITIVE, x.letters, i, y.letters), ADDITIVE)
