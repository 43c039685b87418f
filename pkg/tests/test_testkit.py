import pytest

from kbranching import Digraph, PackingInstance
from kbranching.errors import BudgetExceededError
from kbranching.testkit import (EnumerationBudget, _is_branching, brute_function_table,
                                brute_packing_exists, enumerate_k_branchings, find_decomposition)


def test_enumerate_examples(P1, P2):
    assert [F.ids for F in enumerate_k_branchings(P2, 1)] == [(), (1,), (2,)]
    assert [F.ids for F in enumerate_k_branchings(P2, 2)] == [(), (1,), (2,), (1, 2)]
    assert [F.ids for F in enumerate_k_branchings(P1, 1)] == [(), (1,)]


def test_packing_examples(D2, P1, C3):
    assert brute_packing_exists(PackingInstance(D2, 1, ((1, 0), (1, 0))))
    assert not brute_packing_exists(PackingInstance(P1, 1, ((0, 1),)))
    assert brute_packing_exists(PackingInstance(C3, 2, ((2, 2, 2),) * 3))


def test_table_examples(P1, P2, C3):
    assert brute_function_table(P2, 1).entries == {(1, 1): 0, (1, 0): 3, (0, 1): 5}
    assert brute_function_table(C3, 1, "fA").entries == {(1, 0, 0): 2, (0, 1, 0): 2, (0, 0, 1): 2}
    assert brute_function_table(P1, 1, "fA").entries == {(1, 0): 3}
    assert brute_function_table(P2, 1, costs=[-1, -1]).entries[(1, 0)] == -1
    with pytest.raises(ValueError):
        brute_function_table(P1, 1, "fX")


def test_budget_enforced():
    big = Digraph(2, [(1, 2)] * 11)
    with pytest.raises(BudgetExceededError):
        enumerate_k_branchings(big, 1)
    small = EnumerationBudget(max_arcs=0)
    with pytest.raises(BudgetExceededError):
        enumerate_k_branchings(Digraph(2, [(1, 2)]), 1, small)
    with pytest.raises(BudgetExceededError):
        enumerate_k_branchings(Digraph(2), 4)


def test_branching_helpers():
    D = Digraph(3, [(1, 2), (1, 3), (2, 3)])
    assert _is_branching(D, [1, 2]) and not _is_branching(D, [2, 3])
    assert not _is_branching(D, [1, 2, 3])
    assert find_decomposition(D, [1, 2, 3], 2) is not None
    assert find_decomposition(D, [1, 2, 3], 1) is None
