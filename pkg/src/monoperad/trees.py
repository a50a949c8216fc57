"""Syntax trees over a graded alphabet: the free operad.

Trees are immutable and hashable. Leaf count, internal-node count and weight
are computed once at construction because the rewriting code queries them on
hundreds of thousands of trees.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from functools import total_ordering
from itertools import product

from .monoid import MonoidSpec
from .words import OperadWord, complete_graft, unit_word


@total_ordering
@dataclass(frozen=True)
class GradedSymbol:
    name: str
    arity: int

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise ValueError(f"symbol {self.name!r} must have arity >= 1")
        if not re.fullmatch(r"[A-Za-z0-9_]+", self.name) or self.name == "L":
            raise ValueError(f"bad symbol name {self.name!r}")

    def __lt__(self, other: GradedSymbol) -> bool:
        return (self.name, self.arity) < (other.name, other.arity)

    def __str__(self) -> str:
        return self.name


class Leaf:
    """The tree with one leaf and no internal node (the unit of the free operad)."""

    __slots__ = ()
    _instance: Leaf | None = None
    leaves = 1
    degree = 0
    weight = 0
    is_leaf = True

    def __new__(cls) -> Leaf:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "L"

    def __reduce__(self) -> tuple:
        return (Leaf, ())


LEAF = Leaf()


class Node:
    """An internal node labeled by a graded symbol."""

    __slots__ = ("symbol", "children", "leaves", "degree", "weight", "_hash")
    is_leaf = False

    def __init__(self, symbol: GradedSymbol, children: Sequence[SyntaxTree]) -> None:
        children = tuple(children)
        if len(children) != symbol.arity:
            raise ValueError(f"{symbol.name} has arity {symbol.arity} but got {len(children)} children")
        self.symbol = symbol
        self.children = children
        self.leaves = sum(c.leaves for c in children)
        self.degree = 1 + sum(c.degree for c in children)
        self.weight = sum(c.weight for c in children) + children[-1].degree
        self._hash = hash((symbol, children))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Node):
            return NotImplemented
        return self._hash == other._hash and self.symbol == other.symbol and self.children == other.children

    def __repr__(self) -> str:
        return format_tree(self)

    def __reduce__(self) -> tuple:
        return (Node, (self.symbol, self.children))


SyntaxTree = Leaf | Node


def node(symbol: GradedSymbol, *children: SyntaxTree) -> Node:
    return Node(symbol, children)


# ---------------------------------------------------------------------------
# Term syntax and JSON


_TOKEN = re.compile(r"\s*([A-Za-z0-9_]+|[(),])")


def parse_tree(text: str, symbols: Iterable[GradedSymbol] | None = None) -> SyntaxTree:
    """Parse ``name(child,...)`` with ``L`` for a leaf.

    Arities are read off the child counts. When ``symbols`` is given, every
    ``(name, arity)`` must be one of them.
    """
    tokens: list[str] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected character at {pos} in {text!r}")
        tokens.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    allowed = None if symbols is None else set(symbols)
    tree, end = _parse_at(tokens, 0, allowed, text)
    if end != len(tokens):
        raise ValueError(f"trailing input in tree term {text!r}")
    return tree


def _parse_at(tokens: list[str], i: int, allowed: set[GradedSymbol] | None, text: str) -> tuple[SyntaxTree, int]:
    if i >= len(tokens) or tokens[i] in "(),":
        raise ValueError(f"expected a symbol in tree term {text!r}")
    name = tokens[i]
    if name == "L":
        return LEAF, i + 1
    if i + 1 >= len(tokens) or tokens[i + 1] != "(":
        raise ValueError(f"symbol {name!r} needs children in {text!r}")
    children: list[SyntaxTree] = []
    i += 2
    while True:
        child, i = _parse_at(tokens, i, allowed, text)
        children.append(child)
        if i >= len(tokens):
            raise ValueError(f"unbalanced parentheses in {text!r}")
        if tokens[i] == ")":
            i += 1
            break
        if tokens[i] != ",":
            raise ValueError(f"expected ',' or ')' in {text!r}")
        i += 1
    symbol = GradedSymbol(name, len(children))
    if allowed is not None and symbol not in allowed:
        raise ValueError(f"symbol {name}/{len(children)} is not in the alphabet")
    return Node(symbol, children), i


def format_tree(t: SyntaxTree) -> str:
    if t.is_leaf:
        return "L"
    assert isinstance(t, Node)
    return f"{t.symbol.name}({','.join(format_tree(c) for c in t.children)})"


def tree_to_json(t: SyntaxTree) -> dict | None:
    """``{"sym": name, "children": [...]}`` with leaves rendered as ``None``."""
    if t.is_leaf:
        return None
    assert isinstance(t, Node)
    return {"sym": t.symbol.name, "children": [tree_to_json(c) for c in t.children]}


def tree_from_json(data: dict | None) -> SyntaxTree:
    if data is None:
        return LEAF
    children = [tree_from_json(c) for c in data["children"]]
    return Node(GradedSymbol(data["sym"], len(children)), children)


# ---------------------------------------------------------------------------
# Traversal


def internal_nodes(t: SyntaxTree) -> Iterator[Node]:
    """Internal nodes in depth-first (prefix) order; the i-th one has index i."""
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Node):
            yield s
            stack.extend(reversed(s.children))


def labels(t: SyntaxTree) -> list[str]:
    return [n.symbol.name for n in internal_nodes(t)]


def symbols_of(t: SyntaxTree) -> set[GradedSymbol]:
    return {n.symbol for n in internal_nodes(t)}


def weight(t: SyntaxTree) -> int:
    """Sum over internal nodes of the internal-node count of their rightmost subtree."""
    return t.weight


def graft_tree(x: SyntaxTree, i: int, y: SyntaxTree) -> SyntaxTree:
    """Graft the root of ``y`` on the ``i``-th leaf (depth-first order) of ``x``."""
    if not 1 <= i <= x.leaves:
        raise IndexError(f"leaf {i} out of range for a tree with {x.leaves} leaves")
    return _graft(x, i, y)


def _graft(x: SyntaxTree, i: int, y: SyntaxTree) -> SyntaxTree:
    if isinstance(x, Leaf):
        return y
    offset = 0
    for idx, c in enumerate(x.children):
        if i <= offset + c.leaves:
            new = _graft(c, i - offset, y)
            return Node(x.symbol, x.children[:idx] + (new,) + x.children[idx + 1 :])
        offset += c.leaves
    raise AssertionError("unreachable")


def admits_occurrence_at_root(t: SyntaxTree, pattern: SyntaxTree) -> bool:
    if isinstance(pattern, Leaf):
        return True
    if not isinstance(t, Node) or t.symbol != pattern.symbol:
        return False
    return all(admits_occurrence_at_root(c, p) for c, p in zip(t.children, pattern.children))


def find_occurrences(t: SyntaxTree, pattern: SyntaxTree) -> list[int]:
    """1-based depth-first indices of the internal nodes where ``pattern`` occurs.

    A leaf pattern occurs everywhere; only internal positions are reported.
    """
    return [i for i, s in enumerate(internal_nodes(t), start=1) if admits_occurrence_at_root(s, pattern)]


# ---------------------------------------------------------------------------
# Evaluation


@dataclass(frozen=True)
class EvaluationAssignment:
    """Sends each generator to a word of the same arity over one monoid."""

    images: tuple[tuple[GradedSymbol, OperadWord], ...]
    spec: MonoidSpec

    def __post_init__(self) -> None:
        seen = set()
        for sym, word in self.images:
            if sym in seen:
                raise ValueError(f"symbol {sym.name} assigned twice")
            seen.add(sym)
            if word.arity != sym.arity:
                raise ValueError(f"{sym.name} has arity {sym.arity} but {word} has arity {word.arity}")
            if word.spec != self.spec:
                raise ValueError(f"{word} is not over {self.spec}")

    @classmethod
    def of(cls, mapping: Mapping[GradedSymbol, OperadWord], spec: MonoidSpec) -> EvaluationAssignment:
        return cls(tuple(sorted(mapping.items())), spec)

    def as_dict(self) -> dict[GradedSymbol, OperadWord]:
        return dict(self.images)

    def __getitem__(self, sym: GradedSymbol) -> OperadWord:
        for s, w in self.images:
            if s == sym:
                return w
        raise KeyError(f"symbol {sym.name}/{sym.arity} is not assigned")


def evaluate(t: SyntaxTree, assignment: EvaluationAssignment) -> OperadWord:
    """Morphism from the free operad: each node becomes a complete graft of its image."""
    table = assignment.as_dict()
    spec = assignment.spec

    def ev(s: SyntaxTree) -> OperadWord:
        if isinstance(s, Leaf):
            return unit_word(spec)
        try:
            image = table[s.symbol]
        except KeyError:
            raise KeyError(f"symbol {s.symbol.name}/{s.symbol.arity} is not assigned") from None
        return complete_graft(image, [ev(c) for c in s.children])

    return ev(t)


# ---------------------------------------------------------------------------
# Enumeration


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_trees(alphabet: Iterable[GradedSymbol], n_leaves: int) -> list[SyntaxTree]:
    """All trees with exactly ``n_leaves`` leaves, in a fixed order.

    Unary symbols would make the set infinite, so they are rejected.
    """
    symbols = sorted(set(alphabet))
    if any(s.arity == 1 for s in symbols):
        raise ValueError("enumeration needs every symbol to have arity >= 2")
    if n_leaves < 1:
        raise ValueError("n_leaves must be positive")
    memo: dict[int, list[SyntaxTree]] = {1: [LEAF]}

    def level(n: int) -> list[SyntaxTree]:
        if n not in memo:
            out: list[SyntaxTree] = []
            for sym in symbols:
                if sym.arity > n:
                    continue
                for shape in _compositions(n, sym.arity):
                    for children in product(*(level(m) for m in shape)):
                        out.append(Node(sym, children))
            memo[n] = out
        return memo[n]

    return list(level(n_leaves))
