"""Tree rewriting: one-step rewrites, normalization, bounded termination and measure checks.

A rewrite graph at a fixed leaf count is finite (rules preserve leaf count),
so termination up to a size bound is decided by cycle detection, and a
termination measure is checked edge by edge.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property

from .trees import (
    GradedSymbol,
    Leaf,
    Node,
    SyntaxTree,
    enumerate_trees,
    format_tree,
    internal_nodes,
    parse_tree,
    symbols_of,
)


class StepCapExceeded(RuntimeError):
    """``normalize`` ran out of steps; the system may not terminate."""


@dataclass(frozen=True)
class RewriteRule:
    lhs: SyntaxTree
    rhs: SyntaxTree

    def __post_init__(self) -> None:
        if self.lhs.leaves != self.rhs.leaves:
            raise ValueError(
                f"rule sides differ in leaf count: {format_tree(self.lhs)} -> {format_tree(self.rhs)}"
            )
        if isinstance(self.lhs, Leaf):
            raise ValueError("the left-hand side of a rule must have an internal node")

    def __str__(self) -> str:
        return f"{format_tree(self.lhs)} -> {format_tree(self.rhs)}"


@dataclass(frozen=True)
class RewriteSystem:
    rules: tuple[RewriteRule, ...] = ()

    @cached_property
    def alphabet(self) -> frozenset[GradedSymbol]:
        out: set[GradedSymbol] = set()
        for r in self.rules:
            out |= symbols_of(r.lhs) | symbols_of(r.rhs)
        return frozenset(out)

    @cached_property
    def _by_root(self) -> dict[GradedSymbol, tuple[RewriteRule, ...]]:
        index: dict[GradedSymbol, list[RewriteRule]] = {}
        for r in self.rules:
            assert isinstance(r.lhs, Node)
            index.setdefault(r.lhs.symbol, []).append(r)
        return {k: tuple(v) for k, v in index.items()}


def parse_rules(text: str) -> RewriteSystem:
    """Read ``<lhs> -> <rhs>`` lines; blank lines and ``#`` comments are skipped."""
    rules = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = re.split(r"\s*->\s*", line)
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<lhs> -> <rhs>'")
        rules.append(RewriteRule(parse_tree(parts[0]), parse_tree(parts[1])))
    return RewriteSystem(tuple(rules))


# ---------------------------------------------------------------------------
# Matching and one-step rewriting


def _match(pattern: SyntaxTree, t: SyntaxTree, bound: list[SyntaxTree]) -> bool:
    """Match ``pattern`` at the root of ``t``, collecting the subtrees under its leaves."""
    if isinstance(pattern, Leaf):
        bound.append(t)
        return True
    if not isinstance(t, Node) or t.symbol != pattern.symbol:
        return False
    for p, c in zip(pattern.children, t.children):
        if not _match(p, c, bound):
            return False
    return True


def _instantiate(template: SyntaxTree, subtrees: Iterator[SyntaxTree]) -> SyntaxTree:
    if isinstance(template, Leaf):
        return next(subtrees)
    return Node(template.symbol, [_instantiate(c, subtrees) for c in template.children])


def _rewrites(t: SyntaxTree, by_root: dict[GradedSymbol, tuple[RewriteRule, ...]]) -> Iterator[SyntaxTree]:
    # Depth-first over positions, rules in declaration order at each position.
    if isinstance(t, Leaf):
        return
    for rule in by_root.get(t.symbol, ()):
        bound: list[SyntaxTree] = []
        if _match(rule.lhs, t, bound):
            yield _instantiate(rule.rhs, iter(bound))
    children = t.children
    for idx, child in enumerate(children):
        if isinstance(child, Node):
            for new in _rewrites(child, by_root):
                yield Node(t.symbol, children[:idx] + (new,) + children[idx + 1 :])


def rewrite_step_all(t: SyntaxTree, system: RewriteSystem) -> list[SyntaxTree]:
    """Every tree reachable in one step, ordered by position then rule (duplicates kept)."""
    return list(_rewrites(t, system._by_root))


def is_normal_form(t: SyntaxTree, system: RewriteSystem) -> bool:
    return next(_rewrites(t, system._by_root), None) is None


def normalize_trace(t: SyntaxTree, system: RewriteSystem, step_cap: int = 10_000) -> list[SyntaxTree]:
    """The sequence of trees visited by ``normalize``, starting with ``t``."""
    trace = [t]
    by_root = system._by_root
    for _ in range(step_cap):
        nxt = next(_rewrites(trace[-1], by_root), None)
        if nxt is None:
            return trace
        trace.append(nxt)
    if is_normal_form(trace[-1], system):
        return trace
    raise StepCapExceeded(f"no normal form within {step_cap} steps from {format_tree(t)}")


def normalize(t: SyntaxTree, system: RewriteSystem, step_cap: int = 10_000) -> SyntaxTree:
    """Rewrite at the smallest depth-first position with the first matching rule until stuck."""
    return normalize_trace(t, system, step_cap)[-1]


# ---------------------------------------------------------------------------
# Rewrite graphs


class RewriteGraph:
    """All trees with a given leaf count over an alphabet, with their one-step successors."""

    def __init__(self, system: RewriteSystem, alphabet: Iterable[GradedSymbol], n_leaves: int) -> None:
        self.n_leaves = n_leaves
        self.trees: list[SyntaxTree] = enumerate_trees(alphabet, n_leaves)
        index = {t: i for i, t in enumerate(self.trees)}
        by_root = system._by_root
        self.successors: list[tuple[int, ...]] = []
        for t in self.trees:
            succ = []
            for s in _rewrites(t, by_root):
                j = index.get(s)
                if j is None:
                    raise ValueError(f"rewriting {format_tree(t)} leaves the alphabet or changes leaf count")
                succ.append(j)
            self.successors.append(tuple(dict.fromkeys(succ)))

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.successors)

    def normal_forms(self) -> list[SyntaxTree]:
        return [t for t, s in zip(self.trees, self.successors) if not s]

    def find_cycle(self) -> list[SyntaxTree] | None:
        """A rewriting cycle ``t_0 -> ... -> t_0`` if one exists (iterative three-colour DFS)."""
        WHITE, GREY, BLACK = 0, 1, 2
        colour = [WHITE] * len(self.trees)
        succ = self.successors
        for root in range(len(self.trees)):
            if colour[root] != WHITE:
                continue
            path = [root]
            cursor = [0]
            colour[root] = GREY
            while path:
                v = path[-1]
                k = cursor[-1]
                if k < len(succ[v]):
                    cursor[-1] = k + 1
                    w = succ[v][k]
                    if colour[w] == GREY:
                        start = path.index(w)
                        return [self.trees[i] for i in path[start:]] + [self.trees[w]]
                    if colour[w] == WHITE:
                        colour[w] = GREY
                        path.append(w)
                        cursor.append(0)
                else:
                    colour[v] = BLACK
                    path.pop()
                    cursor.pop()
        return None

    def edges(self) -> Iterator[tuple[SyntaxTree, SyntaxTree]]:
        for t, succ in zip(self.trees, self.successors):
            for j in succ:
                yield t, self.trees[j]


def _alphabet(system: RewriteSystem, alphabet: Iterable[GradedSymbol] | None) -> frozenset[GradedSymbol]:
    return frozenset(alphabet) if alphabet is not None else system.alphabet


@dataclass(frozen=True)
class NormalForms:
    n_leaves: int
    count: int
    trees: tuple[SyntaxTree, ...] | None = None


def enumerate_normal_forms(
    alphabet: Iterable[GradedSymbol], system: RewriteSystem, n_leaves: int, keep: bool = False
) -> NormalForms:
    """Count (and optionally list) trees with ``n_leaves`` leaves to which no rule applies."""
    found = [t for t in enumerate_trees(alphabet, n_leaves) if is_normal_form(t, system)]
    return NormalForms(n_leaves, len(found), tuple(found) if keep else None)


@dataclass(frozen=True)
class TerminationResult:
    ok: bool
    max_leaves: int
    cycle: tuple[SyntaxTree, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_termination_bounded(
    system: RewriteSystem, max_leaves: int, alphabet: Iterable[GradedSymbol] | None = None
) -> TerminationResult:
    """Acyclicity of the rewrite graph for every leaf count up to ``max_leaves``.

    Trees range over ``alphabet`` (default: the symbols used by the rules).
    """
    symbols = _alphabet(system, alphabet)
    for n in range(1, max_leaves + 1):
        cycle = RewriteGraph(system, symbols, n).find_cycle()
        if cycle is not None:
            return TerminationResult(False, max_leaves, tuple(cycle))
    return TerminationResult(True, max_leaves)


# ---------------------------------------------------------------------------
# Termination measures


@dataclass(frozen=True)
class LabelCount:
    """Number of internal nodes labeled ``symbol``."""

    symbol: GradedSymbol

    def __call__(self, t: SyntaxTree) -> int:
        return sum(1 for s in internal_nodes(t) if s.symbol == self.symbol)

    def __str__(self) -> str:
        return f"count({self.symbol.name})"


@dataclass(frozen=True)
class RightSubtreeSum:
    """Sum, over nodes labeled ``symbol``, of the internal-node count of the rightmost subtree."""

    symbol: GradedSymbol
    negated: bool = False

    def __call__(self, t: SyntaxTree) -> int:
        total = sum(s.children[-1].degree for s in internal_nodes(t) if s.symbol == self.symbol)
        return -total if self.negated else total

    def __str__(self) -> str:
        body = f"rightsum({self.symbol.name})"
        return f"-{body}" if self.negated else body


NodeFunction = LabelCount | RightSubtreeSum


@dataclass(frozen=True)
class TerminationCertificate:
    """A measure that must strictly increase (lexicographically) along every rewriting.

    ``primary`` is optional; ``weight_direction`` is +1 for increasing weight
    and -1 for decreasing weight. Both components are bounded for a fixed leaf
    count, so a strict increase on every edge rules out infinite chains.
    """

    primary: NodeFunction | None = None
    weight_direction: int = 1

    def __post_init__(self) -> None:
        if self.weight_direction not in (1, -1):
            raise ValueError("weight_direction must be +1 or -1")

    def key(self, t: SyntaxTree) -> tuple[int, ...]:
        w = t.weight * self.weight_direction
        if self.primary is None:
            return (w,)
        return (self.primary(t), w)

    def __str__(self) -> str:
        w = "weight increases" if self.weight_direction == 1 else "weight decreases"
        if self.primary is None:
            return w
        return f"lex({self.primary} increases, {w})"


WEIGHT_INCREASES = TerminationCertificate()
WEIGHT_DECREASES = TerminationCertificate(weight_direction=-1)


def lex_pair(primary: NodeFunction, weight_direction: int = 1) -> TerminationCertificate:
    return TerminationCertificate(primary, weight_direction)


@dataclass(frozen=True)
class MeasureResult:
    ok: bool
    max_leaves: int
    edges_checked: int
    counterexample: tuple[SyntaxTree, SyntaxTree] | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_measure_on(graphs: Sequence[RewriteGraph], cert: TerminationCertificate) -> MeasureResult:
    checked = 0
    max_leaves = max((g.n_leaves for g in graphs), default=0)
    for g in graphs:
        keys = [cert.key(t) for t in g.trees]
        for i, succ in enumerate(g.successors):
            for j in succ:
                checked += 1
                if not keys[i] < keys[j]:
                    return MeasureResult(False, max_leaves, checked, (g.trees[i], g.trees[j]))
    return MeasureResult(True, max_leaves, checked)


def check_measure(
    system: RewriteSystem,
    cert: TerminationCertificate,
    max_leaves: int,
    alphabet: Iterable[GradedSymbol] | None = None,
) -> MeasureResult:
    """Check that ``cert.key`` strictly increases on every edge, up to ``max_leaves`` leaves."""
    symbols = _alphabet(system, alphabet)
    checked = 0
    for n in range(1, max_leaves + 1):
        r = check_measure_on([RewriteGraph(system, symbols, n)], cert)
        checked += r.edges_checked
        if not r.ok:
            return MeasureResult(False, max_leaves, checked, r.counterexample)
    return MeasureResult(True, max_leaves, checked)


# ---------------------------------------------------------------------------
# Congruence classes (two-way rewriting)


def congruence_classes(
    relations: Sequence[tuple[SyntaxTree, SyntaxTree]],
    alphabet: Iterable[GradedSymbol],
    n_leaves: int,
) -> list[list[SyntaxTree]]:
    """Classes of trees with ``n_leaves`` leaves under the congruence generated by ``relations``.

    Each relation is applied in both directions at every position, and the
    resulting graph's connected components are returned (union-find).
    """
    rules = []
    for a, b in relations:
        rules.append(RewriteRule(a, b))
        rules.append(RewriteRule(b, a))
    graph = RewriteGraph(RewriteSystem(tuple(rules)), alphabet, n_leaves)
    parent = list(range(len(graph.trees)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, succ in enumerate(graph.successors):
        for j in succ:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[SyntaxTree]] = {}
    for i, t in enumerate(graph.trees):
        groups.setdefault(find(i), []).append(t)
    return list(groups.values())

