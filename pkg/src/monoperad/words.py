"""Words over a monoid and their operad structure.

Positions (``i`` in ``graft``) and permutation images are 1-based throughout,
so formulas transcribe directly; conversion to Python indexing happens only
inside the helpers below.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from functools import partial
from itertools import permutations, product

from .monoid import ADDITIVE, MonoidElement, MonoidMorphism, MonoidSpec, SpecMismatchError

Letters = tuple[int, ...]


@dataclass(frozen=True, order=False)
class OperadWord:
    """A nonempty word ``x_1 ... x_n`` over a monoid; its arity is ``n``."""

    letters: Letters
    spec: MonoidSpec = ADDITIVE

    def __post_init__(self) -> None:
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise ValueError("words must be nonempty")
        for a in letters:
            self.spec.check(a)

    @classmethod
    def _trusted(cls, letters: Letters, spec: MonoidSpec) -> OperadWord:
        # Skips validation; only for letters produced by monoid arithmetic.
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        object.__setattr__(w, "spec", spec)
        return w

    @property
    def arity(self) -> int:
        return len(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def letter(self, i: int) -> int:
        """The 1-based ``i``-th letter."""
        if not 1 <= i <= len(self.letters):
            raise IndexError(f"position {i} out of range for arity {len(self.letters)}")
        return self.letters[i - 1]

    def elements(self) -> tuple[MonoidElement, ...]:
        return tuple(MonoidElement(a, self.spec) for a in self.letters)

    def __str__(self) -> str:
        return format_letters(self.letters)

    def __repr__(self) -> str:
        return f"OperadWord({format_letters(self.letters)!r}, {self.spec.name})"


def format_letters(letters: Iterable[int]) -> str:
    """Digit string when every letter is below 10, comma-separated otherwise."""
    letters = tuple(letters)
    if all(0 <= a < 10 for a in letters):
        return "".join(map(str, letters))
    return ",".join(map(str, letters))


def parse_letters(text: str) -> Letters:
    text = text.strip()
    if not text:
        raise ValueError("empty word literal")
    try:
        if "," in text:
            return tuple(int(t) for t in text.split(","))
        return tuple(int(c) for c in text)
    except ValueError:
        raise ValueError(f"bad word literal {text!r}") from None


def parse_word(text: str, spec: MonoidSpec = ADDITIVE) -> OperadWord:
    """Parse ``0112`` or ``0,11,2``."""
    return OperadWord(parse_letters(text), spec)


def unit_word(spec: MonoidSpec = ADDITIVE) -> OperadWord:
    return OperadWord._trusted((spec.unit,), spec)


def graft_letters(spec: MonoidSpec, x: Letters, i: int, y: Letters) -> Letters:
    """Raw graft on letter tuples; ``i`` is 1-based and assumed valid."""
    a = x[i - 1]
    mul = spec.mul
    return x[: i - 1] + tuple(mul(a, b) for b in y) + x[i:]


def _same_spec(x: OperadWord, y: OperadWord) -> None:
    if x.spec != y.spec:
        raise SpecMismatchError(f"words over {x.spec} and {y.spec} cannot be grafted")


def graft(x: OperadWord, i: int, y: OperadWord) -> OperadWord:
    """``x o_i y``: replace ``x_i`` by ``x_i*y_1 ... x_i*y_m``."""
    _same_spec(x, y)
    if not 1 <= i <= x.arity:
        raise IndexError(f"graft position {i} out of range for arity {x.arity}")
    return OperadWord._trusted(graft_letters(x.spec, x.letters, i, y.letters), x.spec)


def complete_graft(x: OperadWord, ys: Sequence[OperadWord]) -> OperadWord:
    """``x o [y_1, ..., y_n]``, grafting from the last position down to the first."""
    if len(ys) != x.arity:
        raise ValueError(f"complete graft needs {x.arity} words, got {len(ys)}")
    for y in ys:
        _same_spec(x, y)
    letters: list[int] = []
    mul = x.spec.mul
    for a, y in zip(x.letters, ys):
        letters.extend(mul(a, b) for b in y.letters)
    return OperadWord._trusted(tuple(letters), x.spec)


@dataclass(frozen=True)
class Permutation:
    """A permutation of ``{1..n}`` in one-line notation."""

    images: tuple[int, ...]
    _check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self) -> None:
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if self._check and sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)), _check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for pos, img in enumerate(self.images, start=1):
            inv[img - 1] = pos
        return Permutation(tuple(inv), _check=False)

    def __str__(self) -> str:
        return format_letters(self.images)


def parse_permutation(text: str) -> Permutation:
    return Permutation(parse_letters(text))


def act(x: OperadWord, sigma: Permutation) -> OperadWord:
    """Right action ``x . sigma = (x_{sigma_1}, ..., x_{sigma_n})``."""
    if sigma.degree != x.arity:
        raise ValueError(f"permutation of degree {sigma.degree} cannot act on arity {x.arity}")
    return OperadWord._trusted(tuple(x.letters[s - 1] for s in sigma.images), x.spec)


def pm_graft(sigma: Permutation, i: int, nu: Permutation) -> Permutation:
    """Graft in the permutation operad: ``nu`` is shifted into the value slot of ``sigma_i``."""
    if not 1 <= i <= sigma.degree:
        raise IndexError(f"graft position {i} out of range for degree {sigma.degree}")
    pivot = sigma(i)
    m = nu.degree
    head = tuple(s if s < pivot else s + m - 1 for s in sigma.images)
    middle = tuple(v + pivot - 1 for v in nu.images)
    return Permutation(head[: i - 1] + middle + head[i:], _check=False)


def lift_morphism(theta: MonoidMorphism, x: OperadWord) -> OperadWord:
    """Apply a monoid morphism letterwise."""
    if x.spec != theta.source:
        raise SpecMismatchError(f"morphism expects words over {theta.source}, got {x.spec}")
    return OperadWord._trusted(tuple(theta.apply_value(a) for a in x.letters), theta.target)


def all_words(spec: MonoidSpec, arity: int, value_cap: int) -> Iterable[OperadWord]:
    """Every word of the given arity with letters in ``0..value_cap`` (clipped to the carrier)."""
    alphabet = [a for a in range(value_cap + 1) if spec.contains(a)]
    for letters in product(alphabet, repeat=arity):
        yield OperadWord._trusted(letters, spec)


def _compositions(total: int, parts: int) -> Iterable[tuple[int, ...]]:
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def basic_witness(
    spec: MonoidSpec, arity_cap: int, value_cap: int
) -> tuple[tuple[OperadWord, ...], OperadWord, OperadWord] | None:
    """Search for ``ys`` and ``x != x'`` with ``x o [ys] == x' o [ys]``.

    ``x`` ranges over arities up to ``arity_cap`` and the ``ys`` over tuples whose
    total arity is also at most ``arity_cap``; letters stay in ``0..value_cap``.
    """
    words_by_arity = {n: list(all_words(spec, n, value_cap)) for n in range(1, arity_cap + 1)}
    for n in range(1, arity_cap + 1):
        xs = words_by_arity[n]
        for total in range(n, arity_cap + 1):
            for shape in _compositions(total, n):
                for ys in product(*(words_by_arity[m] for m in shape)):
                    seen: dict[Letters, OperadWord] = {}
                    for x in xs:
                        image = complete_graft(x, ys).letters
                        other = seen.get(image)
                        if other is not None:
                            return ys, other, x
                        seen[image] = x
    return None


def check_basic_probe(spec: MonoidSpec, arity_cap: int, value_cap: int) -> bool:
    """True iff every probed complete-graft map ``x -> x o [ys]`` is injective."""
    return basic_witness(spec, arity_cap, value_cap) is None


# ---------------------------------------------------------------------------
# Operad axioms


@dataclass(frozen=True)
class AxiomFailure:
    law: str
    detail: str


@dataclass(frozen=True)
class AxiomReport:
    spec: MonoidSpec
    cases: dict[str, int]
    failures: tuple[AxiomFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def _sequential(x: OperadWord, i: int, y: OperadWord, j: int, z: OperadWord) -> AxiomFailure | None:
    lhs = graft(graft(x, i, y), i + j - 1, z)
    rhs = graft(x, i, graft(y, j, z))
    if lhs != rhs:
        return AxiomFailure("sequential", f"x={x} i={i} y={y} j={j} z={z}: {lhs} != {rhs}")
    return None


def _parallel(x: OperadWord, i: int, y: OperadWord, j: int, z: OperadWord) -> AxiomFailure | None:
    lhs = graft(graft(x, i, y), j + y.arity - 1, z)
    rhs = graft(graft(x, j, z), i, y)
    if lhs != rhs:
        return AxiomFailure("parallel", f"x={x} i={i} y={y} j={j} z={z}: {lhs} != {rhs}")
    return None


def _unit(x: OperadWord) -> AxiomFailure | None:
    one = unit_word(x.spec)
    if graft(one, 1, x) != x:
        return AxiomFailure("unit", f"1 o_1 {x} != {x}")
    for i in range(1, x.arity + 1):
        if graft(x, i, one) != x:
            return AxiomFailure("unit", f"{x} o_{i} 1 != {x}")
    return None


def _equivariance(
    x: OperadWord, sigma: Permutation, i: int, y: OperadWord, nu: Permutation
) -> AxiomFailure | None:
    lhs = graft(act(x, sigma), i, act(y, nu))
    rhs = act(graft(x, sigma(i), y), pm_graft(sigma, i, nu))
    if lhs != rhs:
        return AxiomFailure("equivariance", f"x={x} s={sigma} i={i} y={y} v={nu}: {lhs} != {rhs}")
    return None


def _pm_sequential(sigma: Permutation, i: int, nu: Permutation, j: int, tau: Permutation) -> AxiomFailure | None:
    if pm_graft(pm_graft(sigma, i, nu), i + j - 1, tau) != pm_graft(sigma, i, pm_graft(nu, j, tau)):
        return AxiomFailure("pm-sequential", f"{sigma} o_{i} {nu} o_{j} {tau}")
    return None


def _pm_parallel(sigma: Permutation, i: int, nu: Permutation, j: int, tau: Permutation) -> AxiomFailure | None:
    lhs = pm_graft(pm_graft(sigma, i, nu), j + nu.degree - 1, tau)
    rhs = pm_graft(pm_graft(sigma, j, tau), i, nu)
    if lhs != rhs:
        return AxiomFailure("pm-parallel", f"{sigma} {i} {nu} {j} {tau}")
    return None


def _pm_unit(sigma: Permutation) -> AxiomFailure | None:
    one = Permutation.identity(1)
    if pm_graft(one, 1, sigma) != sigma:
        return AxiomFailure("pm-unit", f"1 o_1 {sigma}")
    for i in range(1, sigma.degree + 1):
        if pm_graft(sigma, i, one) != sigma:
            return AxiomFailure("pm-unit", f"{sigma} o_{i} 1")
    return None


def _random_word(rng: random.Random, spec: MonoidSpec, arity_cap: int, value_cap: int) -> OperadWord:
    n = rng.randint(1, arity_cap)
    top = min(value_cap, spec.limit - 1)
    return OperadWord._trusted(tuple(rng.randint(0, top) for _ in range(n)), spec)


def _random_perm(rng: random.Random, n: int) -> Permutation:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Permutation(tuple(images), _check=False)


def _exhaustive_word_laws(
    spec: MonoidSpec,
    domain: list[Letters],
    perms: dict[int, list[Permutation]],
    record: Callable[[str, AxiomFailure | None], None],
) -> None:
    """Every law on every word triple of ``domain``, working on raw letter tuples.

    Grafts of two domain words are tabulated once, so each case costs one
    fresh graft per side.
    """
    g = partial(graft_letters, spec)
    pair = {(x, i, y): g(x, i, y) for x in domain for y in domain for i in range(1, len(x) + 1)}
    unit = (spec.unit,)

    def fail(law: str, x: Letters, i: int, y: Letters, j: int, z: Letters) -> AxiomFailure:
        return AxiomFailure(law, f"x={format_letters(x)} i={i} y={format_letters(y)} j={j} z={format_letters(z)}")

    for x in domain:
        ok = g(unit, 1, x) == x and all(g(x, i, unit) == x for i in range(1, len(x) + 1))
        record("unit", None if ok else AxiomFailure("unit", format_letters(x)))
    for x in domain:
        n = len(x)
        for y in domain:
            m = len(y)
            for z in domain:
                for i in range(1, n + 1):
                    xy = pair[x, i, y]
                    for j in range(1, m + 1):
                        ok = g(xy, i + j - 1, z) == g(x, i, pair[y, j, z])
                        record("sequential", None if ok else fail("sequential", x, i, y, j, z))
                    for j in range(i + 1, n + 1):
                        ok = g(xy, j + m - 1, z) == g(pair[x, j, z], i, y)
                        record("parallel", None if ok else fail("parallel", x, i, y, j, z))
    for x in domain:
        n = len(x)
        for sigma in perms[n]:
            xs = tuple(x[s - 1] for s in sigma.images)
            for y in domain:
                for nu in perms[len(y)]:
                    ys = tuple(y[v - 1] for v in nu.images)
                    for i in range(1, n + 1):
                        lhs = pair[xs, i, ys]
                        tau = pm_graft(sigma, i, nu).images
                        base = pair[x, sigma.images[i - 1], y]
                        ok = lhs == tuple(base[t - 1] for t in tau)
                        record("equivariance", None if ok else AxiomFailure(
                            "equivariance", f"x={format_letters(x)} s={sigma} i={i} y={format_letters(y)} v={nu}"))


def check_axioms(
    spec: MonoidSpec,
    arity_cap: int = 3,
    value_cap: int = 2,
    samples: int = 10_000,
    seed: int = 0,
    random_arity_cap: int = 6,
    random_value_cap: int = 9,
) -> AxiomReport:
    """Check the operad laws on ``T M``: exhaustively on a small domain, then on random cases.

    The exhaustive part covers every word with arity at most ``arity_cap`` and
    letters at most ``value_cap``; the random part draws ``samples`` cases per law.
    """
    cases = {"sequential": 0, "parallel": 0, "unit": 0, "equivariance": 0, "pm": 0}
    failures: list[AxiomFailure] = []

    def record(law: str, failure: AxiomFailure | None) -> None:
        cases[law] += 1
        if failure is not None:
            failures.append(failure)

    domain = [w.letters for n in range(1, arity_cap + 1) for w in all_words(spec, n, value_cap)]
    perms = {n: [Permutation(p, _check=False) for p in permutations(range(1, n + 1))] for n in range(1, arity_cap + 1)}
    _exhaustive_word_laws(spec, domain, perms, record)
    all_perms = [p for n in perms for p in perms[n]]
    for sigma in all_perms:
        record("pm", _pm_unit(sigma))
        for nu in all_perms:
            for tau in all_perms:
                for i in range(1, sigma.degree + 1):
                    for j in range(1, nu.degree + 1):
                        record("pm", _pm_sequential(sigma, i, nu, j, tau))
                    for j in range(i + 1, sigma.degree + 1):
                        record("pm", _pm_parallel(sigma, i, nu, j, tau))

    rng = random.Random(seed)
    for _ in range(samples):
        x, y, z = (_random_word(rng, spec, random_arity_cap, random_value_cap) for _ in range(3))
        i = rng.randint(1, x.arity)
        record("sequential", _sequential(x, i, y, rng.randint(1, y.arity), z))
        if x.arity >= 2:
            i = rng.randint(1, x.arity - 1)
            record("parallel", _parallel(x, i, y, rng.randint(i + 1, x.arity), z))
        record("unit", _unit(x))
        sigma, nu = _random_perm(rng, x.arity), _random_perm(rng, y.arity)
        record("equivariance", _equivariance(x, sigma, rng.randint(1, x.arity), y, nu))
        tau = _random_perm(rng, z.arity)
        i, j = rng.randint(1, x.arity), rng.randint(1, y.arity)
        record("pm", _pm_sequential(sigma, i, nu, j, tau))
        record("pm", _pm_unit(tau))
        if x.arity >= 2:
            i = rng.randint(1, x.arity - 1)
            record("pm", _pm_parallel(sigma, i, nu, rng.randint(i + 1, x.arity), tau))
    return AxiomReport(spec, cases, tuple(failures))
