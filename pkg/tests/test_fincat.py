import pytest

from gs_cohomlab import corpus
from gs_cohomlab.errors import InvalidStructure, NotLoopFree
from gs_cohomlab.fincat import (FinCategory, FinPoset, is_free, longest_chain, nerve, one_object_category,
                                poset_from_json, poset_to_category, twisted_arrow)


def morphism_count(c):
    return len(c.morphisms)


def test_poset_categories():
    c1 = poset_to_category(FinPoset.chain(1))
    assert (len(c1.objects), morphism_count(c1)) == (2, 3)
    anti = poset_to_category(FinPoset.antichain(["a", "b"]))
    assert (len(anti.objects), morphism_count(anti)) == (2, 2)
    c2 = poset_to_category(FinPoset.chain(2))
    assert (len(c2.objects), morphism_count(c2)) == (3, 6)


def test_nerve_counts():
    assert [len(lv) for lv in nerve(poset_to_category(FinPoset.chain(1)), 3)] == [2, 1, 0, 0]
    assert [len(lv) for lv in nerve(poset_to_category(FinPoset.chain(2)), 3)] == [3, 3, 1, 0]
    assert [len(lv) for lv in nerve(one_object_category(), 2)] == [1, 0, 0]


def test_unnormalized_nerve_counts():
    # all composable strings in [1]: 2 objects, then (#morphisms composable) strings
    lv = nerve(poset_to_category(FinPoset.chain(1)), 2, normalized=False)
    assert [len(x) for x in lv] == [2, 3, 4]


def test_chain_faces():
    c = poset_to_category(FinPoset.chain(2))
    (top,) = nerve(c, 2)[2]
    assert top.composite(c) == (0, 2)
    assert [top.face(r, c).degree for r in range(3)] == [1, 1, 1]
    assert top.face(1, c).arrows == ((0, 2),)


def test_twisted_arrow():
    tw = twisted_arrow(poset_to_category(FinPoset.chain(1)))
    assert len(tw.objects) == 3
    ids = [tw.source(f) for f in tw.non_identities()]
    assert sorted(map(str, ids)) == sorted(map(str, [(0, 0), (1, 1)]))
    assert all(tw.target(f) == (0, 1) for f in tw.non_identities())
    assert len(twisted_arrow(one_object_category()).objects) == 1
    assert len(twisted_arrow(one_object_category()).morphisms) == 1
    assert len(twisted_arrow(poset_to_category(FinPoset.chain(2))).objects) == 6


def test_is_free():
    for n in range(4):
        assert is_free(poset_to_category(FinPoset.chain(n)))
    assert not is_free(poset_to_category(corpus.grid()))
    assert is_free(poset_to_category(FinPoset.antichain([1, 2, 3])))
    assert is_free(poset_to_category(corpus.crown()))


def test_poset_validation():
    with pytest.raises(InvalidStructure):
        FinPoset.from_covers([1, 2], [(1, 2), (2, 1)])
    with pytest.raises(InvalidStructure):
        poset_from_json({"covers": []})


def test_category_validation():
    # composition table missing a composite
    with pytest.raises(InvalidStructure):
        FinCategory(["a"], {"1": ("a", "a"), "f": ("a", "a")}, {"a": "1"},
                    {("1", "1"): "1", ("f", "1"): "f", ("1", "f"): "f"})


def test_loop_free():
    c = FinCategory(["a"], {"1": ("a", "a"), "f": ("a", "a")}, {"a": "1"},
                    {("1", "1"): "1", ("f", "1"): "f", ("1", "f"): "f", ("f", "f"): "1"})
    assert not c.is_loop_free()
    with pytest.raises(NotLoopFree):
        longest_chain(c)
    assert longest_chain(poset_to_category(FinPoset.chain(3))) == 3


def test_terminal_initial():
    c = poset_to_category(corpus.crown_with_top())
    assert c.terminal_object() == 5
    assert c.initial_object() is None
