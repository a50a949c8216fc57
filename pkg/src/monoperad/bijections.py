"""Bijections between family elements and classical combinatorial objects.

Each family comes with a forward map ``phi_*``, its inverse ``phi_*_inv`` and,
where the structure allows it, a graft operation on the objects that mirrors
the word graft.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .families import Family, member
from .monoid import ADDITIVE, MonoidSpec
from .words import OperadWord

_Z2 = MonoidSpec.cyclic(2)
_Z3 = MonoidSpec.cyclic(3)


def _require(f: Family, x: OperadWord) -> None:
    if x.spec != f.spec or not member(f, x):
        raise ValueError(f"{x} is not an element of {f}")


def _word(letters: Sequence[int], spec: MonoidSpec) -> OperadWord:
    return OperadWord(tuple(letters), spec)


# ---------------------------------------------------------------------------
# Planar rooted trees


@dataclass(frozen=True)
class PlanarRootedTree:
    """An ordered tree; its size is its number of nodes."""

    children: tuple[PlanarRootedTree, ...] = ()

    @property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children)

    def nodes(self) -> Iterator[PlanarRootedTree]:
        """Nodes in depth-first order."""
        yield self
        for c in self.children:
            yield from c.nodes()

    def to_json(self) -> list:
        return [c.to_json() for c in self.children]

    @classmethod
    def from_json(cls, data: list) -> PlanarRootedTree:
        if not isinstance(data, list):
            raise ValueError("a planar rooted tree is a nested list")
        return cls(tuple(cls.from_json(c) for c in data))


def _freeze_plane(children: dict[int, list[int]], v: int) -> PlanarRootedTree:
    return PlanarRootedTree(tuple(_freeze_plane(children, c) for c in children[v]))


def phi_prt(x: OperadWord) -> PlanarRootedTree:
    """Each letter ``a`` becomes the rightmost child of the last node of depth ``a-1``."""
    _require(Family("prt"), x)
    depth = [0]
    children: dict[int, list[int]] = {0: []}
    for a in x.letters[1:]:
        parent = max(v for v in range(len(depth)) if depth[v] == a - 1)
        v = len(depth)
        depth.append(a)
        children[v] = []
        children[parent].append(v)
    return _freeze_plane(children, 0)


def phi_prt_inv(t: PlanarRootedTree) -> OperadWord:
    """Node depths read in depth-first order."""
    out: list[int] = []

    def walk(s: PlanarRootedTree, d: int) -> None:
        out.append(d)
        for c in s.children:
            walk(c, d + 1)

    walk(t, 0)
    return _word(out, ADDITIVE)


def prt_graft(s: PlanarRootedTree, i: int, t: PlanarRootedTree) -> PlanarRootedTree:
    """Replace the ``i``-th node by the root of ``t``; its children follow those of ``t``'s root."""
    if not 1 <= i <= s.size:
        raise IndexError(f"node {i} out of range for a tree with {s.size} nodes")
    counter = [0]

    def walk(u: PlanarRootedTree) -> PlanarRootedTree:
        counter[0] += 1
        if counter[0] == i:
            kids = tuple(walk(c) for c in u.children)
            return PlanarRootedTree(t.children + kids)
        return PlanarRootedTree(tuple(walk(c) for c in u.children))

    return walk(s)


# ---------------------------------------------------------------------------
# k-leafy trees


@dataclass(frozen=True)
class KLeafyTree:
    """An internal node with ``k+1`` slots, each empty (``None``, a leaf) or a subtree."""

    k: int
    slots: tuple[KLeafyTree | None, ...]

    def __post_init__(self) -> None:
        if len(self.slots) != self.k + 1:
            raise ValueError(f"a node of a {self.k}-leafy tree has {self.k + 1} slots")
        for c in self.slots:
            if c is not None and c.k != self.k:
                raise ValueError("mixed k in a leafy tree")

    @property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.slots if c is not None)

    def nodes(self) -> Iterator[KLeafyTree]:
        yield self
        for c in self.slots:
            if c is not None:
                yield from c.nodes()

    def to_json(self) -> list:
        return [None if c is None else c.to_json() for c in self.slots]

    @classmethod
    def from_json(cls, k: int, data: list) -> KLeafyTree:
        if not isinstance(data, list):
            raise ValueError("a leafy tree is a nested list with null leaves")
        return cls(k, tuple(None if c is None else cls.from_json(k, c) for c in data))


def phi_fcat(k: int, x: OperadWord) -> KLeafyTree:
    """Insert letters one by one under the latest node that keeps the tree well labeled.

    Slot ``j`` of a node labeled ``b`` carries the label ``b + k - j``.
    """
    _require(Family("fcat", k), x)
    labels = [0]
    slots: list[list[int | None]] = [[None] * (k + 1)]
    for a in x.letters[1:]:
        for v in range(len(labels) - 1, -1, -1):
            b = labels[v]
            if b <= a <= b + k and slots[v][b + k - a] is None:
                slots[v][b + k - a] = len(labels)
                break
        else:  # pragma: no cover - excluded by membership
            raise AssertionError(f"no slot for letter {a}")
        labels.append(a)
        slots.append([None] * (k + 1))

    def freeze(v: int) -> KLeafyTree:
        return KLeafyTree(k, tuple(None if c is None else freeze(c) for c in slots[v]))

    return freeze(0)


def phi_fcat_inv(k: int, t: KLeafyTree) -> OperadWord:
    """Labels in depth-first order (root 0, slot ``j`` adds ``k - j``)."""
    if t.k != k:
        raise ValueError(f"expected a {k}-leafy tree")
    out: list[int] = []

    def walk(s: KLeafyTree, label: int) -> None:
        out.append(label)
        for j, c in enumerate(s.slots):
            if c is not None:
                walk(c, label + k - j)

    walk(t, 0)
    return _word(out, ADDITIVE)


def kleafy_graft(k: int, s: KLeafyTree, i: int, t: KLeafyTree) -> KLeafyTree:
    """Replace the ``i``-th node by ``t``, hanging its slots right to left on ``t``'s rightmost leaves."""
    if s.k != k or t.k != k:
        raise ValueError(f"expected {k}-leafy trees")
    if not 1 <= i <= s.size:
        raise IndexError(f"node {i} out of range for a tree with {s.size} nodes")
    counter = [0]

    def substitute(target: KLeafyTree, hung: tuple[KLeafyTree | None, ...]) -> KLeafyTree:
        total = target.size * k + 1
        first = total - (k + 1)
        leaf = [0]

        def fill(u: KLeafyTree) -> KLeafyTree:
            out: list[KLeafyTree | None] = []
            for c in u.slots:
                if c is None:
                    idx = leaf[0]
                    leaf[0] += 1
                    out.append(hung[idx - first] if idx >= first else None)
                else:
                    out.append(fill(c))
            return KLeafyTree(k, tuple(out))

        return fill(target)

    def walk(u: KLeafyTree) -> KLeafyTree:
        counter[0] += 1
        if counter[0] == i:
            kids = tuple(None if c is None else walk(c) for c in u.slots)
            return substitute(t, kids)
        return KLeafyTree(k, tuple(None if c is None else walk(c) for c in u.slots))

    return walk(s)


# ---------------------------------------------------------------------------
# Schroeder trees


@dataclass(frozen=True)
class SchroderTree:
    """A planar tree with leaves (``None``) where every internal node has at least two children."""

    children: tuple[SchroderTree | None, ...]

    def __post_init__(self) -> None:
        if len(self.children) < 2:
            raise ValueError("Schroeder tree nodes need at least two children")

    @property
    def leaves(self) -> int:
        return sum(1 if c is None else c.leaves for c in self.children)

    def to_json(self) -> list:
        return [None if c is None else c.to_json() for c in self.children]

    @classmethod
    def from_json(cls, data: list) -> SchroderTree:
        if not isinstance(data, list):
            raise ValueError("a Schroeder tree is a nested list with null leaves")
        return cls(tuple(None if c is None else cls.from_json(c) for c in data))


def _split_at_min(letters: tuple[int, ...]) -> SchroderTree:
    low = min(letters)
    blocks: list[list[int]] = [[]]
    for a in letters:
        if a == low:
            blocks.append([])
        else:
            blocks[-1].append(a)
    return SchroderTree(tuple(_split_at_min(tuple(b)) if b else None for b in blocks))


def phi_schr(x: OperadWord) -> SchroderTree:
    """Cut at the occurrences of the smallest letter and recurse; empty pieces are leaves.

    An arity-``n`` word gives a tree with ``n + 1`` leaves.
    """
    _require(Family("schr"), x)
    return _split_at_min(x.letters)


def phi_schr_inv(t: SchroderTree) -> OperadWord:
    """Read children left to right, writing a node's depth between consecutive children."""
    out: list[int] = []

    def walk(s: SchroderTree, d: int) -> None:
        for j, c in enumerate(s.children):
            if j:
                out.append(d)
            if c is not None:
                walk(c, d + 1)

    walk(t, 0)
    return _word(out, ADDITIVE)


# ---------------------------------------------------------------------------
# Motzkin words and prefixes


def _steps_ok(steps: Sequence[int]) -> bool:
    h = 0
    for s in steps:
        if s not in (-1, 0, 1):
            return False
        h += s
        if h < 0:
            return False
    return True


@dataclass(frozen=True)
class MotzkinPrefix:
    """Steps in {-1, 0, 1} whose partial sums never go negative."""

    steps: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))
        if not _steps_ok(self.steps):
            raise ValueError(f"{self.steps} is not a Motzkin prefix")

    def to_json(self) -> list[int]:
        return list(self.steps)


@dataclass(frozen=True)
class MotzkinWord:
    """A Motzkin prefix that returns to height 0; its size is its length plus one."""

    steps: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))
        if not _steps_ok(self.steps) or sum(self.steps) != 0:
            raise ValueError(f"{self.steps} is not a Motzkin word")

    @property
    def size(self) -> int:
        return len(self.steps) + 1

    def to_json(self) -> list[int]:
        return list(self.steps)


def phi_motz(x: OperadWord) -> MotzkinWord:
    """Consecutive differences."""
    _require(Family("motz"), x)
    letters = x.letters
    return MotzkinWord(tuple(b - a for a, b in zip(letters, letters[1:])))


def phi_motz_inv(u: MotzkinWord) -> OperadWord:
    """Prefix sums starting from 0."""
    out = [0]
    for s in u.steps:
        out.append(out[-1] + s)
    return _word(out, ADDITIVE)


def motzkin_graft(u: MotzkinWord, i: int, v: MotzkinWord) -> MotzkinWord:
    """Splice ``v`` between the ``(i-1)``-st and ``i``-th steps of ``u``."""
    if not 1 <= i <= u.size:
        raise IndexError(f"position {i} out of range for size {u.size}")
    return MotzkinWord(u.steps[: i - 1] + v.steps + u.steps[i - 1 :])


_DA_DISPLAY = {0: 0, 1: 1, 2: -1}


def phi_da(x: OperadWord) -> MotzkinPrefix:
    """Differences modulo 3, with residue 2 shown as -1."""
    _require(Family("da"), x)
    letters = x.letters
    return MotzkinPrefix(tuple(_DA_DISPLAY[(b - a) % 3] for a, b in zip(letters, letters[1:])))


def phi_da_inv(u: MotzkinPrefix) -> OperadWord:
    out = [0]
    for s in u.steps:
        out.append((out[-1] + s) % 3)
    return _word(out, _Z3)


# ---------------------------------------------------------------------------
# Ribbon diagrams and segmented compositions


@dataclass(frozen=True)
class RibbonDiagram:
    """An integer composition drawn as columns of boxes.

    Column ``j`` holds ``parts[j]`` boxes and starts on the row where column
    ``j-1`` ends. Boxes are read column by column, top to bottom.
    """

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts or any(p < 1 for p in self.parts):
            raise ValueError(f"{self.parts} is not a composition")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def boxes(self) -> list[tuple[int, int]]:
        """``(column, row)`` of each box in reading order; rows grow downward."""
        out = []
        row = 0
        for col, p in enumerate(self.parts):
            for r in range(p):
                out.append((col, row + r))
            row += p - 1
        return out

    def to_json(self) -> list[int]:
        return list(self.parts)


def phi_comp(x: OperadWord) -> RibbonDiagram:
    """Letter 1 puts the next box below the previous one, letter 0 starts a new column."""
    _require(Family("comp"), x)
    parts = [1]
    for a in x.letters[1:]:
        if a:
            parts[-1] += 1
        else:
            parts.append(1)
    return RibbonDiagram(tuple(parts))


def phi_comp_inv(d: RibbonDiagram) -> OperadWord:
    out: list[int] = []
    for p in d.parts:
        out.append(0)
        out.extend([1] * (p - 1))
    return _word(out, _Z2)


def ribbon_transpose(d: RibbonDiagram) -> RibbonDiagram:
    """Mirror image through the line joining the first and last boxes (swap every step after the first)."""
    letters = phi_comp_inv(d).letters
    return phi_comp(_word((0,) + tuple(1 - a for a in letters[1:]), _Z2))


def ribbon_graft(c: RibbonDiagram, i: int, d: RibbonDiagram) -> RibbonDiagram:
    """Replace the ``i``-th box by ``d``, or by its transpose when that box is not at the top of its column."""
    if not 1 <= i <= c.size:
        raise IndexError(f"box {i} out of range for size {c.size}")
    col, above = 0, i - 1
    while above >= c.parts[col]:
        above -= c.parts[col]
        col += 1
    inserted = list((d if above == 0 else ribbon_transpose(d)).parts)
    below = c.parts[col] - above - 1
    inserted[0] += above
    inserted[-1] += below
    return RibbonDiagram(c.parts[:col] + tuple(inserted) + c.parts[col + 1 :])


@dataclass(frozen=True)
class SegmentedComposition:
    segments: tuple[RibbonDiagram, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "segments", tuple(self.segments))
        if not self.segments:
            raise ValueError("a segmented composition has at least one segment")

    @property
    def size(self) -> int:
        return sum(s.size for s in self.segments)

    def to_json(self) -> list[list[int]]:
        return [s.to_json() for s in self.segments]

    @classmethod
    def from_json(cls, data: list) -> SegmentedComposition:
        return cls(tuple(RibbonDiagram(tuple(s)) for s in data))


def phi_scomp(x: OperadWord) -> SegmentedComposition:
    """Cut before each 0; every block ``0 w`` becomes the ribbon of ``0`` followed by ``w`` decremented."""
    _require(Family("scomp"), x)
    blocks: list[list[int]] = []
    for a in x.letters:
        if a == 0:
            blocks.append([0])
        else:
            blocks[-1].append(a - 1)
    return SegmentedComposition(tuple(phi_comp(_word(b, _Z2)) for b in blocks))


def phi_scomp_inv(s: SegmentedComposition) -> OperadWord:
    out: list[int] = []
    for seg in s.segments:
        letters = phi_comp_inv(seg).letters
        out.append(0)
        out.extend(a + 1 for a in letters[1:])
    return _word(out, _Z3)


# ---------------------------------------------------------------------------
# Dispatch by family

BIJECTION_FAMILIES = ("prt", "fcat", "schr", "motz", "comp", "da", "scomp")


def _check_family(f: Family) -> None:
    if f.name not in BIJECTION_FAMILIES:
        raise ValueError(f"no bijection for {f}; expected one of {', '.join(BIJECTION_FAMILIES)}")


def word_to_object(f: Family, x: OperadWord) -> object:
    """The combinatorial object of ``x`` under the family's bijection."""
    _check_family(f)
    if f.name == "fcat":
        assert f.k is not None
        return phi_fcat(f.k, x)
    forward = {
        "prt": phi_prt,
        "schr": phi_schr,
        "motz": phi_motz,
        "comp": phi_comp,
        "da": phi_da,
        "scomp": phi_scomp,
    }
    return forward[f.name](x)


def object_from_json(f: Family, data: object) -> object:
    """Rebuild an object from its JSON rendering, validating its invariants."""
    _check_family(f)
    if not isinstance(data, list):
        raise ValueError("objects are rendered as JSON arrays")
    if f.name == "prt":
        return PlanarRootedTree.from_json(data)
    if f.name == "fcat":
        assert f.k is not None
        return KLeafyTree.from_json(f.k, data)
    if f.name == "schr":
        return SchroderTree.from_json(data)
    if f.name == "motz":
        return MotzkinWord(tuple(data))
    if f.name == "da":
        return MotzkinPrefix(tuple(data))
    if f.name == "comp":
        return RibbonDiagram(tuple(data))
    return SegmentedComposition.from_json(data)


def object_to_word(f: Family, obj: object) -> OperadWord:
    """Inverse of ``word_to_object``."""
    _check_family(f)
    if f.name == "fcat":
        assert f.k is not None and isinstance(obj, KLeafyTree)
        return phi_fcat_inv(f.k, obj)
    backward = {
        "prt": (PlanarRootedTree, phi_prt_inv),
        "schr": (SchroderTree, phi_schr_inv),
        "motz": (MotzkinWord, phi_motz_inv),
        "comp": (RibbonDiagram, phi_comp_inv),
        "da": (MotzkinPrefix, phi_da_inv),
        "scomp": (SegmentedComposition, phi_scomp_inv),
    }
    cls, inverse = backward[f.name]
    if not isinstance(obj, cls):
        raise TypeError(f"expected a {cls.__name__} for {f}")
    return inverse(obj)  # type: ignore[operator]
