import math
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from boolcs import BoolPoly, BranchOrder, ChooseStrategy, PolySystem, SolverConfig, bcs, gen_random, tree_stats
from boolcs.backend import HAVE_COMPILED, kernel_for
from boolcs.analysis import enumerate_solutions

from conftest import naive_zeros, systems

needs_compiled = pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernel not built")


def S(n, *texts):
    return PolySystem(n, [BoolPoly.parse(t, n) for t in texts])


def test_bcs_examples():
    r = bcs(S(2, "x1*x2 + 1"))
    assert [list(a) for a in r.trisets] == [[BoolPoly.parse("x1 + 1", 2), BoolPoly.parse("x2 + 1", 2)]]
    assert r.branch_count == 2 and r.solution_count == 1
    r = bcs(S(2, "x1 + x2"))
    assert [str(p) for a in r.trisets for p in a] == ["x2 + x1"]
    assert r.solution_count == 2
    r = bcs(S(2, "x1", "x1 + 1"))
    assert r.trisets == [] and r.solution_count == 0


def test_tree_stats_examples():
    st_ = tree_stats(bcs(S(2, "x1 + 1")))
    assert (st_.branch_count, st_.average_depth) == (1, 0)
    st_ = tree_stats(bcs(S(2, "x1*x2 + 1")))
    assert st_.branch_count == 2 and st_.depth_histogram == {1: 2}


def test_tree_export():
    r = bcs(S(2, "x1*x2 + 1"), SolverConfig(record_tree=True))
    assert [n.line() for n in r.tree] == [
        "node 0 parent - side root depth 0",
        "node 1 parent 0 side R depth 1",
        "node 2 parent 0 side L depth 1",
    ]


def test_config_validation():
    for bad in (0, -1, 2.5):
        with pytest.raises(ValueError):
            SolverConfig(threshold=bad)
    SolverConfig(threshold=math.inf)
    with pytest.raises(ValueError):
        SolverConfig(branch_limit=0)
    with pytest.raises(ValueError):
        SolverConfig(threads=0)


def _solutions(report):
    out = Counter()
    for a in report.trisets:
        out.update(enumerate_solutions(a, report.n).points)
    return out


CONFIGS = [SolverConfig(choose=c, threshold=t) for c in ChooseStrategy for t in (1, 4, math.inf)]


@settings(max_examples=60)
@given(systems(n_range=(1, 7)), st.sampled_from(CONFIGS))
def test_soundness_against_oracle(s, cfg):
    r = bcs(s, cfg)
    sols = _solutions(r)
    assert all(c == 1 for c in sols.values())
    assert set(sols) == naive_zeros(s, s.n)
    assert r.solution_count == len(sols)


@settings(max_examples=40)
@given(systems(n_range=(1, 6)), st.sampled_from(CONFIGS))
def test_debug_index_check_full_solve(s, cfg):
    import dataclasses
    r = bcs(s, dataclasses.replace(cfg, debug=True))
    assert r.backend == "python"


def _tree_consistent(r):
    nodes = {n.id: n for n in r.tree}
    for n in r.tree:
        if n.parent is not None:
            assert n.depth == nodes[n.parent].depth + 1
    kids = Counter(n.parent for n in r.tree if n.parent is not None)
    assert all(v == 2 for v in kids.values())
    # leaves of the tree are exactly the branch end points
    assert len(nodes) - len(kids) == r.branch_count


@pytest.mark.parametrize("seed", range(4))
def test_tree_shape_and_initial_depth_bound(seed):
    r = bcs(gen_random(9, 9, 2, seed), SolverConfig(record_tree=True))
    _tree_consistent(r)
    init = tree_stats(r).initial_depth_counts
    for d0, count in init.items():
        assert count <= max(1, 2 ** (d0 - 1))
    assert r.max_depth <= r.n


@needs_compiled
@pytest.mark.parametrize("cfg", CONFIGS, ids=lambda c: f"{c.choose.value}-t{c.threshold}")
@pytest.mark.parametrize("shape", [(8, 8, 2), (8, 12, 1), (6, 8, 3)], ids=str)
def test_backends_agree(cfg, shape):
    s = gen_random(*shape, seed=sum(shape))
    import dataclasses
    rp = bcs(s, dataclasses.replace(cfg, backend="python", record_tree=True))
    rc = bcs(s, dataclasses.replace(cfg, backend="compiled", record_tree=True))
    assert rp.trisets == rc.trisets
    assert rp.tree == rc.tree
    assert [(b.initial_depth, b.depth, b.found) for b in rp.branches] == \
        [(b.initial_depth, b.depth, b.found) for b in rc.branches]


@needs_compiled
@settings(max_examples=60)
@given(systems(n_range=(1, 8)), st.sampled_from(CONFIGS))
def test_backends_agree_property(s, cfg):
    import dataclasses
    rp = bcs(s, dataclasses.replace(cfg, backend="python"))
    rc = bcs(s, dataclasses.replace(cfg, backend="compiled"))
    assert rp.trisets == rc.trisets and rp.branch_count == rc.branch_count


def test_wide_system_uses_python_kernel():
    assert kernel_for(70).name == "python"
    s = PolySystem(70, [BoolPoly.parse("x70*x1 + x2 + 1", 70), BoolPoly.parse("x69 + x70", 70)])
    r = bcs(s)
    assert r.backend == "python"
    # x1*x70 + x2 + 1 has 4 zeros over (x1, x2, x70), x69 follows x70, 66 free
    assert r.solution_count == 4 * 2 ** 66
    with pytest.raises(ValueError):
        kernel_for(70, "compiled")


@pytest.mark.parametrize("order", list(BranchOrder))
def test_branch_orders_same_decomposition(order):
    s = gen_random(10, 10, 2, 7)
    base = bcs(s)
    r = bcs(s, SolverConfig(branch_order=order))
    assert sorted(map(str, r.trisets)) == sorted(map(str, base.trisets))
    assert r.branch_count == base.branch_count


def test_priority_orders_pick_by_initial_depth():
    s = gen_random(10, 10, 2, 3)
    low = bcs(s, SolverConfig(branch_order=BranchOrder.LOW_FIRST, branch_limit=20))
    high = bcs(s, SolverConfig(branch_order=BranchOrder.HIGH_FIRST, branch_limit=20))
    assert low.partial and high.partial and low.branch_count == high.branch_count == 20
    mean = lambda r: sum(b.initial_depth for b in r.branches) / r.branch_count
    assert mean(low) < mean(high)


def test_branch_limit_marks_partial():
    r = bcs(gen_random(10, 10, 2, 0), SolverConfig(branch_limit=3))
    assert r.partial and r.branch_count == 3


def test_determinism_single_thread():
    s = gen_random(10, 12, 2, 11)
    a = bcs(s, SolverConfig(record_tree=True))
    b = bcs(s, SolverConfig(record_tree=True))
    assert a.trisets == b.trisets and a.tree == b.tree
    assert [(x.initial_depth, x.depth) for x in a.branches] == [(x.initial_depth, x.depth) for x in b.branches]


@pytest.mark.parametrize("threads", [2, 4])
def test_threaded_matches_sequential(threads):
    s = gen_random(11, 11, 2, 5)
    seq = bcs(s)
    par = bcs(s, SolverConfig(threads=threads))
    assert sorted(map(str, par.trisets)) == sorted(map(str, seq.trisets))
    assert par.branch_count == seq.branch_count
    assert sorted(b.depth for b in par.branches) == sorted(b.depth for b in seq.branches)
    assert par.trisets == bcs(s, SolverConfig(threads=threads)).trisets


def test_branch_times_cover_wall_time():
    r = bcs(gen_random(12, 12, 2, 1))
    total = sum(b.seconds for b in r.branches)
    assert 0 < total <= r.wall_seconds
