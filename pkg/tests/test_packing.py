import random

import pytest

from kbranching import (Digraph, PackingInstance, decompose_k_branching, is_k_branching,
                        is_packing_feasible, pack_disjoint_branchings, pack_k_branchings,
                        root_vector)
from kbranching.errors import InfeasibleError, InstanceError
from kbranching.packing import PackingCertificate, decomposition_problems
from kbranching.testkit import brute_packing_exists, enumerate_k_branchings


def _random_instance(rng, n_max=5, m_max=8, k_max=2, p_max=2):
    n = rng.randint(2, n_max)
    k = rng.randint(1, k_max)
    arcs = [tuple(rng.sample(range(1, n + 1), 2)) for _ in range(rng.randint(0, m_max))]
    p = rng.randint(1, p_max)
    qs = []
    while len(qs) < p:
        q = tuple(rng.randint(0, k) for _ in range(n))
        if sum(q) >= k:
            qs.append(q)
    return PackingInstance(Digraph(n, arcs), k, qs)


def test_pack_examples(D2, P2):
    cert = pack_k_branchings(PackingInstance(D2, 2, ((2, 1),)))
    assert cert.branchings[0].ids in ((1,), (2,))
    cert = pack_k_branchings(PackingInstance(D2, 1, ((1, 0), (1, 0))))
    assert [F.ids for F in cert.branchings] == [(1,), (2,)]
    cert = pack_k_branchings(PackingInstance(P2, 1, ((1, 1),)))
    assert cert.branchings[0].ids == ()


def test_pack_infeasible(P1):
    with pytest.raises(InfeasibleError):
        pack_k_branchings(PackingInstance(P1, 1, ((0, 1),)))


def test_pack_unknown_engine(D2):
    with pytest.raises(InstanceError):
        pack_k_branchings(PackingInstance(D2, 2, ((2, 1),)), engine="greedy")


def test_feasibility_alone_would_pick_a_cycle():
    # accepting 2->3 then 3->2 keeps the residual packable but closes a 2-cycle
    D = Digraph(3, [(2, 3), (3, 2), (1, 2)])
    cert = pack_k_branchings(PackingInstance(D, 1, ((1, 0, 0),)))
    assert cert.branchings[0].ids == (1, 3)


def test_tight_set_order_alone_is_not_enough():
    D = Digraph(3, [(3, 2), (2, 3), (1, 2), (1, 2), (2, 3)])
    inst = PackingInstance(D, 2, ((2, 1, 0),))
    for engine in ("probe", "guided"):
        cert = pack_k_branchings(inst, engine)
        assert cert.is_valid
        assert is_k_branching(cert.branchings[0], 2)


@pytest.mark.parametrize("engine", ["probe", "guided"])
def test_random_packings_are_valid_and_complete(engine):
    rng = random.Random(11 if engine == "probe" else 12)
    packed = 0
    for _ in range(300 if engine == "probe" else 120):
        inst = _random_instance(rng)
        feasible = is_packing_feasible(inst)
        assert feasible == brute_packing_exists(inst)
        if not feasible:
            continue
        cert = pack_k_branchings(inst, engine, decompose=True)
        assert cert.problems() == []
        for F, q in zip(cert.branchings, inst.q):
            # one arc per unit of missing root
            assert len(F) == sum(inst.k - v for v in q)
        packed += 1
    assert packed > 20


def test_python_search_matches_kernel(monkeypatch):
    from kbranching import kernels

    rng = random.Random(13)
    cases = [_random_instance(rng) for _ in range(80)]
    expect = [pack_k_branchings(i).branchings if is_packing_feasible(i) else None for i in cases]
    monkeypatch.setattr(kernels, "fits", lambda n, m, max_vertices=0: False)
    for inst, want in zip(cases, expect):
        if want is None:
            continue
        assert pack_k_branchings(inst).branchings == want


def test_large_instance_packs_with_cut_engine():
    n = 17
    arcs = [(v, v + 1) for v in range(1, n)] + [(1, v) for v in range(3, n + 1, 4)]
    D = Digraph(n, arcs)
    inst = PackingInstance(D, 1, (tuple([1] + [0] * (n - 1)),))
    cert = pack_k_branchings(inst)
    assert cert.is_valid and len(cert.branchings[0]) == n - 1


def test_certificate_reports_problems(D2):
    inst = PackingInstance(D2, 1, ((1, 0), (1, 0)))
    bad = PackingCertificate(inst, (D2.subset([1]), D2.subset([1])))
    assert any("shares" in msg for msg in bad.problems())
    wrong_root = PackingCertificate(inst, (D2.subset([1]), D2.subset([3])))
    assert any("root vector" in msg for msg in wrong_root.problems())
    assert not PackingCertificate(inst, (D2.subset([1]),)).is_valid


def test_decompose_examples(C3, P2):
    parts = decompose_k_branching(C3.all_arcs(), 2)
    assert decomposition_problems(C3.all_arcs(), parts, 2) == []
    assert [B.ids for B in decompose_k_branching(P2.subset([1]), 1)] == [(1,)]
    assert sorted(B.ids for B in decompose_k_branching(P2.subset([1, 2]), 2)) == [(1,), (2,)]
    with pytest.raises(InstanceError):
        decompose_k_branching(P2.subset([1, 2]), 1)


def test_decompose_every_small_k_branching():
    rng = random.Random(14)
    for _ in range(40):
        n = rng.randint(2, 4)
        D = Digraph(n, [tuple(rng.sample(range(1, n + 1), 2)) for _ in range(rng.randint(0, 7))])
        for k in (1, 2, 3):
            for F in enumerate_k_branchings(D, k):
                assert decomposition_problems(F, decompose_k_branching(F, k), k) == []


def test_pack_disjoint_branchings_examples(D2, P2, P1):
    assert [B.ids for B in pack_disjoint_branchings(D2, [(1, 0), (1, 0)])] == [(1,), (2,)]
    B = pack_disjoint_branchings(P2, [(1, 0), (0, 1)])
    assert [b.ids for b in B] == [(1,), (2,)]
    assert [root_vector(b, 1) for b in B] == [(1, 0), (0, 1)]
    with pytest.raises(InfeasibleError):
        pack_disjoint_branchings(P1, [(0, 1)])
    with pytest.raises(InstanceError):
        pack_disjoint_branchings(P1, [(2, 0)])
