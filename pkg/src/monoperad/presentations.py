"""Presentations by generators and relations, and their bounded verification.

A presentation of a family ``P`` is checked by three facts: each relation
holds after evaluation in ``P``; an orientation of the relations terminates;
and the orientation has exactly ``#P(n)`` normal forms with ``n`` leaves.
Together these show the quotient of the free operad is ``P`` up to that arity.
Dias and Trias come without an orientation; they are checked by counting
congruence classes directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from time import perf_counter

from .families import Family, hilbert_prefix
from .monoid import ADDITIVE, MULTIPLICATIVE, MonoidSpec
from .rewriting import (
    WEIGHT_INCREASES,
    LabelCount,
    RewriteGraph,
    RewriteRule,
    RewriteSystem,
    RightSubtreeSum,
    TerminationCertificate,
    check_measure_on,
    congruence_classes,
    lex_pair,
)
from .trees import (
    LEAF,
    EvaluationAssignment,
    GradedSymbol,
    Node,
    SyntaxTree,
    evaluate,
    format_tree,
    graft_tree,
)
from .words import OperadWord, format_letters

PRESENTATION_NAMES = ("prt", "fcat", "schr", "motz", "comp", "da", "scomp", "dias", "trias")

Relation = tuple[SyntaxTree, SyntaxTree]


@dataclass(frozen=True)
class Presentation:
    """Generators, relations and (optionally) an orientation with a termination measure.

    ``directions[r]`` is +1 when relation ``r`` is oriented left to right and -1
    for right to left; ``None`` means no orientation is known.
    """

    name: str
    alphabet: tuple[GradedSymbol, ...]
    relations: tuple[Relation, ...]
    directions: tuple[int, ...] | None
    certificate: TerminationCertificate | None
    assignment: EvaluationAssignment
    target: Family
    notes: str = ""

    def __post_init__(self) -> None:
        for lhs, rhs in self.relations:
            if lhs.leaves != rhs.leaves:
                raise ValueError(f"relation sides differ in leaf count: {format_tree(lhs)} / {format_tree(rhs)}")
        if self.directions is not None and len(self.directions) != len(self.relations):
            raise ValueError("one direction per relation is required")

    @property
    def orientation(self) -> RewriteSystem | None:
        if self.directions is None:
            return None
        rules = []
        for (lhs, rhs), d in zip(self.relations, self.directions):
            rules.append(RewriteRule(lhs, rhs) if d == 1 else RewriteRule(rhs, lhs))
        return RewriteSystem(tuple(rules))


def _sym(name: str, arity: int = 2) -> GradedSymbol:
    return GradedSymbol(name, arity)


def _corolla(s: GradedSymbol) -> Node:
    return Node(s, [LEAF] * s.arity)


def _g(outer: GradedSymbol, i: int, inner: GradedSymbol) -> SyntaxTree:
    """The two-node tree ``outer o_i inner``."""
    return graft_tree(_corolla(outer), i, _corolla(inner))


def _word_symbol(letters: str, prefix: str = "g") -> GradedSymbol:
    return _sym(prefix + letters, len(letters))


def _assignment(symbols: dict[GradedSymbol, str], spec: MonoidSpec) -> EvaluationAssignment:
    return EvaluationAssignment.of({s: OperadWord(tuple(int(c) for c in w), spec) for s, w in symbols.items()}, spec)


def _fcat(k: int) -> Presentation:
    a = [_sym(f"a{i}") for i in range(k + 1)]
    relations, directions = [], []
    for i in range(k + 1):
        for j in range(k + 1 - i):
            relations.append((_g(a[i + j], 1, a[i]), _g(a[i], 2, a[j])))
            directions.append(1)
    spec = ADDITIVE
    return Presentation(
        name=f"fcat:{k}",
        alphabet=tuple(a),
        relations=tuple(relations),
        directions=tuple(directions),
        certificate=WEIGHT_INCREASES,
        assignment=_assignment({a[i]: f"0{i}" for i in range(k + 1)}, spec),
        target=Family("fcat", k),
    )


def _schr() -> Presentation:
    A, B, C = _word_symbol("00"), _word_symbol("01"), _word_symbol("10")
    rel = [
        (_g(A, 1, A), _g(A, 2, A), 1),
        (_g(B, 1, C), _g(C, 2, B), 1),
        (_g(A, 1, B), _g(A, 2, C), 1),
        (_g(B, 1, A), _g(A, 2, B), 1),
        (_g(A, 1, C), _g(C, 2, A), 1),
        (_g(B, 1, B), _g(B, 2, A), 1),
        (_g(C, 1, A), _g(C, 2, C), -1),
    ]
    return Presentation(
        name="schr",
        alphabet=(A, B, C),
        relations=tuple((l, r) for l, r, _ in rel),
        directions=tuple(d for *_, d in rel),
        certificate=lex_pair(LabelCount(A)),
        assignment=_assignment({A: "00", B: "01", C: "10"}, ADDITIVE),
        target=Family("schr"),
    )


def _motz() -> Presentation:
    b, c = _word_symbol("00"), _word_symbol("010")
    rel = [
        (_g(b, 1, b), _g(b, 2, b)),
        (_g(c, 1, b), _g(b, 2, c)),
        (_g(b, 1, c), _g(c, 3, b)),
        (_g(c, 1, c), _g(c, 3, c)),
    ]
    return Presentation(
        name="motz",
        alphabet=(b, c),
        relations=tuple(rel),
        directions=(1, 1, 1, 1),
        certificate=WEIGHT_INCREASES,
        assignment=_assignment({b: "00", c: "010"}, ADDITIVE),
        target=Family("motz"),
    )


def _comp() -> Presentation:
    A, B = _word_symbol("00"), _word_symbol("01")
    rel = [
        (_g(A, 1, A), _g(A, 2, A)),
        (_g(B, 1, A), _g(A, 2, B)),
        (_g(B, 1, B), _g(B, 2, A)),
        (_g(A, 1, B), _g(B, 2, B)),
    ]
    return Presentation(
        name="comp",
        alphabet=(A, B),
        relations=tuple(rel),
        directions=(1, 1, 1, 1),
        certificate=WEIGHT_INCREASES,
        assignment=_assignment({A: "00", B: "01"}, MonoidSpec.cyclic(2)),
        target=Family("comp"),
    )


def _da() -> Presentation:
    A, B = _word_symbol("00"), _word_symbol("01")
    cubic_lhs = graft_tree(_g(A, 1, B), 2, _corolla(B))
    cubic_rhs = graft_tree(_g(B, 2, B), 3, _corolla(B))
    rel = [
        (_g(A, 1, A), _g(A, 2, A), 1),
        (_g(B, 1, A), _g(A, 2, B), 1),
        (_g(B, 1, B), _g(B, 2, A), -1),
        (cubic_lhs, cubic_rhs, -1),
    ]
    return Presentation(
        name="da",
        alphabet=(A, B),
        relations=tuple((l, r) for l, r, _ in rel),
        directions=tuple(d for *_, d in rel),
        certificate=lex_pair(RightSubtreeSum(B, negated=True)),
        assignment=_assignment({A: "00", B: "01"}, MonoidSpec.cyclic(3)),
        target=Family("da"),
        notes="the last relation has degree 3; the operad is not quadratic",
    )


def _scomp() -> Presentation:
    S, A, B = _word_symbol("00"), _word_symbol("01"), _word_symbol("02")
    rel = [
        (_g(S, 1, S), _g(S, 2, S)),
        (_g(A, 1, S), _g(S, 2, A)),
        (_g(A, 1, A), _g(A, 2, S)),
        (_g(S, 1, A), _g(A, 2, B)),
        (_g(A, 1, B), _g(B, 2, B)),
        (_g(S, 1, B), _g(B, 2, A)),
        (_g(B, 1, S), _g(S, 2, B)),
        (_g(B, 1, A), _g(A, 2, A)),
        (_g(B, 1, B), _g(B, 2, S)),
    ]
    return Presentation(
        name="scomp",
        alphabet=(S, A, B),
        relations=tuple(rel),
        directions=(1,) * 9,
        certificate=WEIGHT_INCREASES,
        assignment=_assignment({S: "00", A: "01", B: "02"}, MonoidSpec.cyclic(3)),
        target=Family("scomp"),
    )


def _chain(*trees: SyntaxTree) -> list[Relation]:
    """A chain ``t1 <-> t2 <-> ... <-> tk`` stored as consecutive pairs."""
    return list(zip(trees, trees[1:]))


def _dias() -> Presentation:
    left, right = _word_symbol("10"), _word_symbol("01")
    rel = (
        _chain(_g(left, 1, left), _g(left, 2, left), _g(left, 2, right))
        + _chain(_g(right, 2, right), _g(right, 1, right), _g(right, 1, left))
        + [(_g(left, 1, right), _g(right, 2, left))]
    )
    return Presentation(
        name="dias",
        alphabet=(right, left),
        relations=tuple(rel),
        directions=None,
        certificate=None,
        assignment=_assignment({left: "10", right: "01"}, MULTIPLICATIVE),
        target=Family("di"),
        notes="no orientation known; verified by congruence-class counting",
    )


def _trias() -> Presentation:
    left, right, mid = _word_symbol("10"), _word_symbol("01"), _word_symbol("11")
    rel = (
        [
            (_g(left, 1, right), _g(right, 2, left)),
            (_g(mid, 1, mid), _g(mid, 2, mid)),
            (_g(left, 1, mid), _g(mid, 2, left)),
            (_g(mid, 1, left), _g(mid, 2, right)),
            (_g(mid, 1, right), _g(right, 2, mid)),
        ]
        + _chain(_g(left, 1, left), _g(left, 2, left), _g(left, 2, right), _g(left, 2, mid))
        + _chain(_g(right, 2, right), _g(right, 1, right), _g(right, 1, left), _g(right, 1, mid))
    )
    return Presentation(
        name="trias",
        alphabet=(right, left, mid),
        relations=tuple(rel),
        directions=None,
        certificate=None,
        assignment=_assignment({left: "10", right: "01", mid: "11"}, MULTIPLICATIVE),
        target=Family("tr"),
        notes="no orientation known; verified by congruence-class counting",
    )


def _prt() -> Presentation:
    g = _word_symbol("01")
    return Presentation(
        name="prt",
        alphabet=(g,),
        relations=(),
        directions=(),
        certificate=WEIGHT_INCREASES,
        assignment=_assignment({g: "01"}, ADDITIVE),
        target=Family("prt"),
        notes="free on one binary generator",
    )


def catalog(name: str, k: int | None = None) -> Presentation:
    """A cataloged presentation; ``k`` is required for ``fcat`` and forbidden otherwise."""
    name = name.strip().lower()
    if name.startswith("fcat:"):
        name, k = "fcat", int(name.split(":", 1)[1])
    if name not in PRESENTATION_NAMES:
        raise ValueError(f"unknown presentation {name!r}; expected one of {', '.join(PRESENTATION_NAMES)}")
    if name == "fcat":
        if k is None or k < 0:
            raise ValueError("fcat needs k >= 0")
        return _fcat(k)
    if k is not None:
        raise ValueError(f"presentation {name} takes no k")
    return {
        "prt": _prt,
        "schr": _schr,
        "motz": _motz,
        "comp": _comp,
        "da": _da,
        "scomp": _scomp,
        "dias": _dias,
        "trias": _trias,
    }[name]()


def drop_relation(p: Presentation, index: int) -> Presentation:
    """The same presentation without relation ``index`` (0-based)."""
    keep = [r for r in range(len(p.relations)) if r != index]
    if len(keep) == len(p.relations):
        raise IndexError(f"no relation {index}")
    return replace(
        p,
        name=f"{p.name}-without-{index + 1}",
        relations=tuple(p.relations[r] for r in keep),
        directions=None if p.directions is None else tuple(p.directions[r] for r in keep),
    )


def with_rules(p: Presentation, system: RewriteSystem) -> Presentation:
    """Replace relations and orientation by the given rules (each oriented left to right)."""
    return replace(
        p,
        name=f"{p.name}-custom",
        relations=tuple((r.lhs, r.rhs) for r in system.rules),
        directions=(1,) * len(system.rules),
    )


def with_assignment(p: Presentation, images: dict[str, str]) -> Presentation:
    """Re-evaluate generators: ``images`` maps symbol names to word literals."""
    by_name = {s.name: s for s in p.alphabet}
    mapping = {by_name[n]: w for n, w in images.items()}
    return replace(p, assignment=_assignment(mapping, p.assignment.spec))


# ---------------------------------------------------------------------------
# Verification


@dataclass(frozen=True)
class SoundnessResult:
    ok: bool
    evaluations: tuple[tuple[str, str], ...]
    failing: Relation | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_relation_soundness(p: Presentation) -> SoundnessResult:
    """Both sides of every relation must evaluate to the same word."""
    evaluations = []
    for lhs, rhs in p.relations:
        left, right = evaluate(lhs, p.assignment), evaluate(rhs, p.assignment)
        evaluations.append((format_letters(left.letters), format_letters(right.letters)))
        if left != right:
            return SoundnessResult(False, tuple(evaluations), (lhs, rhs))
    return SoundnessResult(True, tuple(evaluations))


@dataclass(frozen=True)
class ArityCount:
    n: int
    found: int
    expected: int

    @property
    def match(self) -> bool:
        return self.found == self.expected


@dataclass(frozen=True)
class PresentationReport:
    """Outcome of ``verify_presentation``.

    ``termination_bounded`` and ``measure_ok`` are None when the presentation
    has no orientation (congruence-class counting is used instead).
    """

    name: str
    max_arity: int
    method: str
    soundness: SoundnessResult
    termination_bounded: bool | None
    measure_ok: bool | None
    counts: tuple[ArityCount, ...]
    cycle: tuple[SyntaxTree, ...] | None = None
    measure_counterexample: tuple[SyntaxTree, SyntaxTree] | None = None
    assignment: tuple[tuple[str, str], ...] = ()
    notes: str = ""
    seconds: float = field(default=0.0, compare=False)

    @property
    def counts_match(self) -> bool:
        return all(c.match for c in self.counts)

    @property
    def verified(self) -> bool:
        return (
            self.soundness.ok
            and self.termination_bounded is not False
            and self.measure_ok is not False
            and self.counts_match
        )

    def to_json(self) -> dict:
        out: dict = {
            "name": self.name,
            "max_arity": self.max_arity,
            "method": self.method,
            "verified": self.verified,
            "soundness": self.soundness.ok,
            "termination_bounded": self.termination_bounded,
            "measure": self.measure_ok,
            "counts_match": self.counts_match,
            "counts": [{"n": c.n, "found": c.found, "expected": c.expected} for c in self.counts],
            "assignment": dict(self.assignment),
            "relation_evaluations": [list(e) for e in self.soundness.evaluations],
        }
        if self.soundness.failing is not None:
            out["failing_relation"] = [format_tree(t) for t in self.soundness.failing]
        if self.cycle is not None:
            out["cycle"] = [format_tree(t) for t in self.cycle]
        if self.measure_counterexample is not None:
            out["measure_counterexample"] = [format_tree(t) for t in self.measure_counterexample]
        if self.notes:
            out["notes"] = self.notes
        return out


def verify_presentation(p: Presentation, max_arity: int = 6) -> PresentationReport:
    """Check soundness, bounded termination, the measure and normal-form counts up to ``max_arity``."""
    if max_arity < 1:
        raise ValueError("max_arity must be positive")
    start = perf_counter()
    soundness = check_relation_soundness(p)
    expected = hilbert_prefix(p.target, max_arity)
    assignment = tuple((s.name, format_letters(w.letters)) for s, w in p.assignment.images)
    system = p.orientation
    if system is None:
        counts = tuple(
            ArityCount(n, len(congruence_classes(p.relations, p.alphabet, n)), expected[n - 1])
            for n in range(1, max_arity + 1)
        )
        return PresentationReport(
            p.name, max_arity, "congruence-classes", soundness, None, None, counts,
            assignment=assignment, notes=p.notes, seconds=perf_counter() - start,
        )
    cycle = None
    counterexample = None
    measure_ok = True if p.certificate is not None else None
    counts_list = []
    for n in range(1, max_arity + 1):
        graph = RewriteGraph(system, p.alphabet, n)
        if cycle is None:
            found = graph.find_cycle()
            cycle = tuple(found) if found is not None else None
        if measure_ok and p.certificate is not None:
            m = check_measure_on([graph], p.certificate)
            if not m.ok:
                measure_ok, counterexample = False, m.counterexample
        counts_list.append(ArityCount(n, len(graph.normal_forms()), expected[n - 1]))
        del graph
    return PresentationReport(
        p.name, max_arity, "normal-forms", soundness, cycle is None, measure_ok, tuple(counts_list),
        cycle=cycle, measure_counterexample=counterexample, assignment=assignment,
        notes=p.notes, seconds=perf_counter() - start,
    )


@dataclass(frozen=True)
class IsomorphismResult:
    dias: PresentationReport
    trias: PresentationReport

    @property
    def ok(self) -> bool:
        return self.dias.verified and self.trias.verified

    def __bool__(self) -> bool:
        return self.ok


def check_isomorphism_dias_trias(max_arity: int = 6) -> IsomorphismResult:
    """Dias against Di and Trias against Tr: soundness plus class counts ``n`` and ``2^n - 1``."""
    return IsomorphismResult(
        verify_presentation(catalog("dias"), max_arity),
        verify_presentation(catalog("trias"), max_arity),
    )
