import itertools
import json

import pytest

from monoperad.bijections import (
    KLeafyTree,
    MotzkinPrefix,
    MotzkinWord,
    PlanarRootedTree,
    RibbonDiagram,
    SchroderTree,
    SegmentedComposition,
    kleafy_graft,
    motzkin_graft,
    object_from_json,
    object_to_word,
    phi_comp,
    phi_comp_inv,
    phi_da,
    phi_da_inv,
    phi_fcat,
    phi_fcat_inv,
    phi_motz,
    phi_motz_inv,
    phi_prt,
    phi_prt_inv,
    phi_schr,
    phi_schr_inv,
    phi_scomp,
    phi_scomp_inv,
    prt_graft,
    ribbon_graft,
    ribbon_transpose,
    word_to_object,
)
from monoperad.families import Family, enumerate_family, parse_family
from monoperad.monoid import MonoidSpec
from monoperad.words import graft, parse_word

Z2, Z3 = MonoidSpec.cyclic(2), MonoidSpec.cyclic(3)

# ---------------------------------------------------------------------------
# Worked examples


def test_prt_worked_example():
    x = parse_word("0112333212")
    t = phi_prt(x)
    assert t.to_json() == [[], [[[], [], []], []], [[]]]
    assert t.size == 10 and phi_prt_inv(t) == x
    assert phi_prt(parse_word("0")) == PlanarRootedTree()


def test_prt_graft_worked_example():
    s, t = phi_prt(parse_word("0121")), phi_prt(parse_word("01121"))
    assert s.to_json() == [[[]], []] and t.to_json() == [[], [[]], []]
    got = prt_graft(s, 2, t)
    assert got.to_json() == [[[], [[]], [], []], []]
    assert phi_prt_inv(got) == parse_word("01223221")


def test_fcat_worked_example():
    x = parse_word("024021121")
    t = phi_fcat(2, x)
    n = None
    leaf3 = [n, n, n]
    expected = [[leaf3, n, n], n, [[n, n, n], [n, n, [n, leaf3, leaf3]], n]]
    assert t.to_json() == expected
    assert t.size == 9 and phi_fcat_inv(2, t) == x


def test_fcat_graft_worked_example():
    n = None
    s = KLeafyTree.from_json(2, [[n, n, n], n, [[n, n, n], n, n]])
    t = KLeafyTree.from_json(2, [[n, n, n], [n, n, n], n])
    got = kleafy_graft(2, s, 1, t)
    assert got.to_json() == [[n, n, n], [n, [n, n, n], n], [[n, n, n], n, n]]


def test_schr_worked_example():
    x = parse_word("1132002122")
    t = phi_schr(x)
    n = None
    assert t.to_json() == [[n, n, [[n, n], n]], n, [[n, n], [n, n, n]]]
    assert t.leaves == 11 and phi_schr_inv(t) == x
    assert phi_schr(parse_word("0")).to_json() == [n, n]


def test_motz_worked_examples():
    x = parse_word("001123221010")
    assert phi_motz(x).steps == (0, 1, 0, 1, 1, -1, 0, -1, -1, 1, -1)
    u, v = MotzkinWord((1, 0, 1, 1, -1, -1, -1)), MotzkinWord((1, 1, 0, -1, 0, -1))
    assert (u.size, v.size) == (8, 7)
    got = motzkin_graft(u, 4, v)
    assert got.steps == (1, 0, 1, 1, 1, 0, -1, 0, -1, 1, -1, -1, -1) and got.size == 14
    assert phi_motz(parse_word("0")).steps == ()


def test_comp_worked_examples():
    x = parse_word("0100001011011010", Z2)
    assert phi_comp(x).parts == (2, 1, 1, 1, 2, 3, 3, 2, 1)
    c, d = RibbonDiagram((2, 1, 3, 2, 1)), RibbonDiagram((1, 1, 2, 3, 1))
    assert phi_comp_inv(c) == parse_word("010011010", Z2)
    assert phi_comp_inv(d) == parse_word("00010110", Z2)
    assert ribbon_graft(c, 4, d).parts == (2, 1, 1, 1, 2, 3, 3, 2, 1)
    assert ribbon_graft(c, 5, d).parts == (2, 1, 4, 2, 1, 3, 2, 1)


def test_box_reading_order():
    assert RibbonDiagram((2, 1, 3)).boxes() == [(0, 0), (0, 1), (1, 1), (2, 1), (2, 2), (2, 3)]


def test_scomp_worked_example():
    x = parse_word("0102012210", Z3)
    s = phi_scomp(x)
    assert s.to_json() == [[1, 1], [2], [1, 3, 1], [1]]
    assert phi_scomp_inv(s) == x
    assert phi_scomp(parse_word("0", Z3)).to_json() == [[1]]


def test_da_examples():
    assert phi_da(parse_word("011220201", Z3)).steps == (1, 0, 1, 0, 1, -1, 1, 1)
    assert phi_da(parse_word("01001010121", Z3)).steps == (1, -1, 0, 1, -1, 1, -1, 1, 1, -1)
    assert phi_da(parse_word("0", Z3)).steps == ()


# ---------------------------------------------------------------------------
# Independent object enumerators


def compositions(total, parts=None):
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


def plane_trees(n):
    if n == 1:
        yield PlanarRootedTree()
        return
    for sizes in compositions(n - 1):
        for kids in itertools.product(*(list(plane_trees(m)) for m in sizes)):
            yield PlanarRootedTree(tuple(kids))


def kleafy_trees(k, n):
    if n == 0:
        yield None
        return
    for sizes in itertools.product(range(n), repeat=k + 1):
        if sum(sizes) == n - 1:
            for kids in itertools.product(*(list(kleafy_trees(k, m)) for m in sizes)):
                yield KLeafyTree(k, tuple(kids))


def schroder_trees(leaves):
    if leaves == 1:
        yield None
        return
    for shape in compositions(leaves):
        if len(shape) >= 2:
            for kids in itertools.product(*(list(schroder_trees(m)) for m in shape)):
                yield SchroderTree(tuple(kids))


def step_words(length, closed):
    for steps in itertools.product((-1, 0, 1), repeat=length):
        sums = list(itertools.accumulate(steps))
        if all(h >= 0 for h in sums) and (not closed or not sums or sums[-1] == 0):
            yield steps


def segmented(n):
    for sizes in compositions(n):
        for segs in itertools.product(*(list(compositions(m)) for m in sizes)):
            yield SegmentedComposition(tuple(RibbonDiagram(s) for s in segs))


OBJECTS = {
    "prt": lambda n: plane_trees(n),
    "fcat:1": lambda n: kleafy_trees(1, n),
    "fcat:2": lambda n: kleafy_trees(2, n),
    "fcat:3": lambda n: kleafy_trees(3, n),
    "schr": lambda n: schroder_trees(n + 1),
    "motz": lambda n: (MotzkinWord(s) for s in step_words(n - 1, True)),
    "comp": lambda n: (RibbonDiagram(c) for c in compositions(n)),
    "da": lambda n: (MotzkinPrefix(s) for s in step_words(n - 1, False)),
    "scomp": lambda n: segmented(n),
}

ROUND_TRIP_ARITY = {"prt": 7, "fcat:1": 6, "fcat:2": 6, "fcat:3": 6, "schr": 6, "motz": 9, "comp": 8, "da": 8, "scomp": 7}


@pytest.mark.parametrize("name", sorted(ROUND_TRIP_ARITY))
def test_round_trips_and_images(name):
    f = parse_family(name)
    cap = ROUND_TRIP_ARITY[name]
    table = enumerate_family(f, cap)
    for n in range(1, cap + 1):
        words = table.elements(n)
        images = [word_to_object(f, x) for x in words]
        assert [object_to_word(f, o) for o in images] == list(words)
        if n <= 5 or name in ("motz", "comp", "da"):
            expected = set(OBJECTS[name](n))
            assert set(images) == expected and len(expected) == len(words)
        for o in images:
            assert object_from_json(f, json.loads(json.dumps(o.to_json()))) == o


# ---------------------------------------------------------------------------
# Graft interpretations


def pairs(f, cap):
    table = enumerate_family(f, cap)
    for a in range(1, cap + 1):
        for b in range(1, cap + 2 - a):
            for x in table.elements(a):
                for y in table.elements(b):
                    yield x, y


def test_prt_graft_commutes():
    for x, y in pairs(Family("prt"), 5):
        for i in range(1, x.arity + 1):
            assert prt_graft(phi_prt(x), i, phi_prt(y)) == phi_prt(graft(x, i, y))


@pytest.mark.parametrize("k", [0, 1, 2])
def test_kleafy_graft_commutes(k):
    for x, y in pairs(Family("fcat", k), 5):
        for i in range(1, x.arity + 1):
            assert kleafy_graft(k, phi_fcat(k, x), i, phi_fcat(k, y)) == phi_fcat(k, graft(x, i, y))


def test_motzkin_graft_commutes():
    for x, y in pairs(Family("motz"), 6):
        for i in range(1, x.arity + 1):
            got = motzkin_graft(phi_motz(x), i, phi_motz(y))
            assert got == phi_motz(graft(x, i, y))
            assert got.size == x.arity + y.arity - 1


def test_ribbon_graft_commutes():
    for x, y in pairs(Family("comp"), 6):
        for i in range(1, x.arity + 1):
            got = ribbon_graft(phi_comp(x), i, phi_comp(y))
            assert got == phi_comp(graft(x, i, y))
            assert got.size == x.arity + y.arity - 1


def test_unit_grafts():
    one = PlanarRootedTree()
    s = phi_prt(parse_word("0121"))
    assert all(prt_graft(s, i, one) == s for i in range(1, 5))
    u = MotzkinWord((1, 0, -1))
    assert all(motzkin_graft(u, i, MotzkinWord(())) == u for i in range(1, 5))
    t = phi_fcat(1, parse_word("0101"))
    single = KLeafyTree(1, (None, None))
    assert all(kleafy_graft(1, t, i, single) == t for i in range(1, 5))


def test_transpose():
    for n in range(1, 9):
        for c in compositions(n):
            d = RibbonDiagram(c)
            t = ribbon_transpose(d)
            assert ribbon_transpose(t) == d and t.size == d.size
    assert ribbon_transpose(RibbonDiagram((1,))) == RibbonDiagram((1,))
    assert ribbon_transpose(RibbonDiagram((4,))) == RibbonDiagram((1, 1, 1, 1))


def test_transpose_swaps_rows_and_columns():
    for n in range(1, 8):
        for c in compositions(n):
            d = RibbonDiagram(c)
            assert set(ribbon_transpose(d).boxes()) == {(row, col) for col, row in d.boxes()}


# ---------------------------------------------------------------------------
# Validation and errors


@pytest.mark.parametrize("factory", [
    lambda: MotzkinWord((1, 0)),
    lambda: MotzkinWord((-1, 1)),
    lambda: MotzkinPrefix((0, 2)),
    lambda: RibbonDiagram(()),
    lambda: RibbonDiagram((1, 0)),
    lambda: SchroderTree((None,)),
    lambda: KLeafyTree(2, (None, None)),
    lambda: SegmentedComposition(()),
])
def test_invalid_objects(factory):
    with pytest.raises(ValueError):
        factory()


def test_non_members_rejected():
    with pytest.raises(ValueError):
        phi_prt(parse_word("02"))
    with pytest.raises(ValueError):
        phi_motz(parse_word("01"))
    with pytest.raises(ValueError):
        phi_fcat(1, parse_word("02"))
    with pytest.raises(ValueError):
        word_to_object(Family("end"), parse_word("0"))


def test_graft_index_errors():
    with pytest.raises(IndexError):
        prt_graft(PlanarRootedTree(), 2, PlanarRootedTree())
    with pytest.raises(IndexError):
        motzkin_graft(MotzkinWord(()), 2, MotzkinWord(()))
    with pytest.raises(IndexError):
        ribbon_graft(RibbonDiagram((1,)), 2, RibbonDiagram((1,)))
    with pytest.raises(IndexError):
        kleafy_graft(1, KLeafyTree(1, (None, None)), 2, KLeafyTree(1, (None, None)))


def test_inverse_maps():
    assert phi_da_inv(MotzkinPrefix((1, 0, 1, 0, 1, -1, 1, 1))) == parse_word("011220201", Z3)
    assert phi_motz_inv(MotzkinWord((0, 1, 0, 1, 1, -1, 0, -1, -1, 1, -1))) == parse_word("001123221010")
    with pytest.raises(TypeError):
        object_to_word(Family("motz"), RibbonDiagram((1,)))
