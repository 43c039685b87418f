import random
from itertools import product

import pytest

from kbranching import (Digraph, PackingInstance, constrained_deficiency_min, g_value,
                        in_cut_count, is_packing_feasible, packing_deficiency,
                        root_vector_feasible)
from kbranching.errors import InstanceError


def _random_instance(rng, n_max=5, p_max=3, k_max=3, m_max=8):
    n = rng.randint(1, n_max)
    k = rng.randint(1, k_max)
    p = rng.randint(1, p_max)
    arcs = []
    if n > 1:
        for _ in range(rng.randint(0, m_max)):
            t, h = rng.sample(range(1, n + 1), 2)
            arcs.append((t, h))
    qs = []
    while len(qs) < p:
        q = tuple(rng.randint(0, k) for _ in range(n))
        if sum(q) >= k:
            qs.append(q)
    return PackingInstance(Digraph(n, arcs), k, qs)


def _all_values(inst):
    D = inst.digraph
    F = D.all_arcs()
    return {D.mask_vertices(X): in_cut_count(F, D.mask_vertices(X)) - g_value(inst, D.mask_vertices(X))
            for X in range(1, 1 << D.n)}


def test_g_value_examples(P1, D2):
    inst = PackingInstance(P1, 1, ((0, 1),))
    assert g_value(inst, {1}) == 1
    assert g_value(inst, {1, 2}) == 0
    assert g_value(inst, set()) == 1
    assert g_value(PackingInstance(D2, 2, ((2, 1), (1, 1))), {2}) == 2


def test_deficiency_examples(P1, P2, D2):
    rep = packing_deficiency(PackingInstance(P1, 1, ((0, 1),)))
    assert (rep.min_value, rep.minimal_minimizer, rep.feasible) == (-1, frozenset({1}), False)
    rep = packing_deficiency(PackingInstance(P2, 1, ((1, 0),)))
    assert (rep.min_value, rep.minimal_minimizer) == (0, frozenset({2}))
    rep = packing_deficiency(PackingInstance(D2, 2, ((0, 2),)))
    assert (rep.min_value, rep.minimal_minimizer) == (-1, frozenset({1}))


def test_feasible_examples(P1, D2):
    assert is_packing_feasible(PackingInstance(D2, 2, ((2, 1),)))
    assert not is_packing_feasible(PackingInstance(P1, 1, ((0, 1),)))
    assert is_packing_feasible(PackingInstance(D2, 1, ((1, 0), (1, 0))))


def test_constrained_examples(P1, P2):
    rep = constrained_deficiency_min(PackingInstance(P2, 1, ((1, 0),)), forced_in={1})
    assert (rep.min_value, rep.minimal_minimizer) == (0, frozenset({1, 2}))
    rep = constrained_deficiency_min(PackingInstance(P1, 1, ((0, 1),)), forced_in={2})
    assert (rep.min_value, rep.minimal_minimizer) == (0, frozenset({1, 2}))
    with pytest.raises(InstanceError):
        constrained_deficiency_min(PackingInstance(P1, 1, ((0, 1),)), forced_out={1, 2})
    with pytest.raises(InstanceError):
        constrained_deficiency_min(PackingInstance(P1, 1, ((0, 1),)), {1}, {1})


@pytest.mark.parametrize("k, q", [(0, ((1, 1),)), (1, ()), (1, ((1,),)), (1, ((2, 0),)),
                                  (2, ((1, 0),)), (1, ((-1, 1),))])
def test_instance_validation(P1, k, q):
    with pytest.raises(InstanceError):
        PackingInstance(P1, k, q)


def test_unknown_engine(P1):
    with pytest.raises(InstanceError):
        packing_deficiency(PackingInstance(P1, 1, ((1, 1),)), engine="magic")


def test_engines_agree_and_match_enumeration():
    rng = random.Random(5)
    for _ in range(400):
        inst = _random_instance(rng)
        vals = _all_values(inst)
        best = min(vals.values())
        brute = packing_deficiency(inst, "brute")
        cut = packing_deficiency(inst, "mincut")
        assert brute == cut
        assert brute.min_value == best
        assert vals[brute.minimal_minimizer] == best
        # no minimizer is strictly inside the reported one
        assert not any(v == best and X < brute.minimal_minimizer for X, v in vals.items())


def test_constrained_engines_agree():
    rng = random.Random(6)
    for _ in range(300):
        inst = _random_instance(rng)
        V = list(inst.digraph.vertices)
        fin = {v for v in V if rng.random() < 0.3}
        fout = {v for v in V if v not in fin and rng.random() < 0.3}
        if len(fout) == len(V):
            continue
        brute = constrained_deficiency_min(inst, fin, fout, "brute")
        assert brute == constrained_deficiency_min(inst, fin, fout, "mincut")
        adm = {X: v for X, v in _all_values(inst).items() if fin <= X and not X & fout}
        assert brute.min_value == min(adm.values())
        if fin:
            # with a forced vertex the minimal minimizer is unique
            mins = [X for X, v in adm.items() if v == brute.min_value]
            assert brute.minimal_minimizer == frozenset.intersection(*mins)


def test_minimizer_lattice():
    rng = random.Random(7)
    for _ in range(200):
        inst = _random_instance(rng, n_max=4)
        vals = _all_values(inst)
        best = min(vals.values())
        mins = [X for X, v in vals.items() if v == best]
        # submodular on intersecting pairs only: g(empty) = p*k breaks the disjoint case
        for X, Y in product(mins, repeat=2):
            if X & Y:
                assert vals[X | Y] == best
                assert vals[X & Y] == best
        common = frozenset.intersection(*mins)
        if common:
            assert packing_deficiency(inst).minimal_minimizer == common


def test_two_vector_form_and_edmonds_spot_check():
    rng = random.Random(8)
    for _ in range(300):
        inst = _random_instance(rng, n_max=4, p_max=2, k_max=2)
        D = inst.digraph
        F = D.all_arcs()
        feas = is_packing_feasible(inst)
        sets = [D.mask_vertices(X) for X in range(1, 1 << D.n)]
        qsum = [[sum(q[v - 1] for v in X) for X in sets] for q in inst.q]
        rho = [in_cut_count(F, X) for X in sets]
        if inst.k == 1:
            assert feas == all(r >= sum(s[j] == 0 for s in qsum) for j, r in enumerate(rho))
        if inst.p == 2:
            k = inst.k
            two = all(qsum[0][j] + qsum[1][j] >= 2 * k - r and qsum[0][j] >= k - r
                      and qsum[1][j] >= k - r for j, r in enumerate(rho))
            assert feas == two


def test_root_vector_feasible(P1, C3):
    assert root_vector_feasible(P1, 1, (1, 0))
    assert not root_vector_feasible(P1, 1, (0, 1))
    assert not root_vector_feasible(P1, 1, (0, 0))
    assert not root_vector_feasible(P1, 1, (2, 0))
    assert root_vector_feasible(C3, 2, (1, 1, 0))
    with pytest.raises(InstanceError):
        root_vector_feasible(P1, 1, (1,))


def test_large_instance_uses_cut_engine():
    # 18 vertices is past the enumeration limit
    n = 18
    D = Digraph(n, [(v, v + 1) for v in range(1, n)])
    root_only = tuple([1] + [0] * (n - 1))
    assert is_packing_feasible(PackingInstance(D, 1, (root_only,)))
    late = tuple([0] * (n - 1) + [1])
    rep = packing_deficiency(PackingInstance(D, 1, (late,)))
    assert rep.min_value == -1 and rep.minimal_minimizer == frozenset({1})
