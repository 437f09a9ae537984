import itertools
import random

import pytest

from selfsim.action import (ActionError, RestrictionTable, SelfSimilarAction, axioms_report,
                            exhausting_witness, is_exhausting, is_pseudo_free, odometer_order)
from selfsim.fixtures import FIXTURES, odometer, two_vertex_swap, z2_trivial, z_static
from selfsim.graph import BoundaryPoint, Graph
from selfsim.groups import Integers
from selfsim.verdict import Status


def test_odometer_single_edges():
    for n in (2, 3, 4):
        a = odometer(n)
        top = a.graph.path([n - 1])
        assert a.act(1, top).edges == (0,)
        assert a.restrict(1, top) == 1
        for i in range(n - 1):
            assert a.act(1, a.graph.path([i])).edges == (i + 1,)
            assert a.restrict(1, a.graph.path([i])) == 0


def test_odometer_two_letters(odo2):
    p = odo2.graph.parse_path("11")
    assert odo2.act(1, p).edges == (0, 0)
    assert odo2.restrict(1, p) == 1


def test_vertex_restriction_is_g(fixture_action):
    a = fixture_action
    for g in a.group.ball(2):
        for v in range(a.graph.num_vertices):
            assert a.restrict(g, a.graph.vertex_path(v)) == g


def test_identity_acts_trivially(fixture_action):
    a = fixture_action
    one = a.group.identity
    for p in a.graph.paths_upto(3):
        assert a.act(one, p) == p
        assert a.restrict(one, p) == one


def test_act_prefix(odo2):
    assert odo2.act_prefix(1, BoundaryPoint((), (1,)), 3) == (0, 0, 0)
    assert odo2.act_prefix(1, BoundaryPoint((0,), (1,)), 3) == (1, 1, 1)
    x = BoundaryPoint((0, 1), (1, 0))
    assert odo2.act_prefix(0, x, 5) == x.prefix(5)


def test_act_prefix_monotone(odo3):
    x = BoundaryPoint((2, 2), (2, 1))
    for g in odo3.group.ball(5):
        prev = ()
        for k in range(8):
            cur = odo3.act_prefix(g, x, k)
            assert cur[:len(prev)] == prev
            prev = cur


def test_act_point_matches_prefix(odo3):
    x = BoundaryPoint((2,), (2, 0))
    for g in odo3.group.ball(6):
        assert odo3.act_point(g, x).prefix(10) == odo3.act_prefix(g, x, 10)


def test_action_is_bijective_on_levels(fixture_action):
    a = fixture_action
    for g in a.group.ball(2):
        for k in range(4):
            paths = list(a.graph.paths(k))
            assert len({a.act(g, p) for p in paths}) == len(paths)


def test_range_and_source_equivariance(fixture_action):
    a = fixture_action
    for g in a.group.ball(2):
        for p in a.graph.paths_upto(3):
            gp = a.act(g, p)
            assert gp.r == a.vertex_act(g, p.r)
            assert gp.d == a.vertex_act(g, p.d)


def test_cocycle_identity_exhaustive(fixture_action):
    a = fixture_action
    grp = a.group
    ball = grp.ball(2)
    for g, h in itertools.product(ball, repeat=2):
        for p in a.graph.paths_upto(3):
            assert a.act(grp.mul(g, h), p) == a.act(g, a.act(h, p))
            assert a.restrict(grp.mul(g, h), p) == grp.mul(a.restrict(g, a.act(h, p)),
                                                          a.restrict(h, p))


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_axioms_ok_on_fixtures(name):
    assert axioms_report(FIXTURES[name](), depth=4, radius=3).ok


def corrupt(action, table, rng, ball):
    g = rng.choice(ball)
    e = rng.randrange(action.graph.num_edges)
    s = table.state(g)
    if rng.random() < 0.5:
        cur = table.img[s][e]
        table.set_edge(g, e, image=rng.choice([x for x in range(action.graph.num_edges) if x != cur]))
    else:
        cur = table.states[table.nxt[s][e]]
        table.set_edge(g, e, cocycle=rng.choice([x for x in ball if x != cur]))


@pytest.mark.parametrize("make", [lambda: odometer(2), two_vertex_swap])
def test_corrupted_table_detected(make):
    a = make()
    ball = a.group.ball(6)
    rng = random.Random(1)
    for _ in range(20):
        t = RestrictionTable.materialize(a, ball)
        corrupt(a, t, rng, ball)
        v = axioms_report(a, depth=4, radius=3, table=t)
        assert v.violated
        assert v.witness["axiom"].startswith(("E", "SS", "bijective"))


def test_generator_table_must_be_consistent():
    g = Graph.from_edges(["v", "w"], {"a": ("v", "v"), "b": ("w", "w")})
    with pytest.raises(ActionError):
        # swaps the edges but leaves the vertices fixed
        SelfSimilarAction(g, Integers("z"), [(0, 1)], [(1, 0)], [(0, 0)])


def test_alternate_cocycle_is_still_an_action():
    # φ(z,0) := z on R_2 gives z·w = flipped w, which is again self-similar
    a = odometer(2).with_tables(cocycles=[(1, 1)])
    assert axioms_report(a, depth=4, radius=3).ok


def test_pseudo_free_verdicts():
    assert is_pseudo_free(odometer(2), radius=6).ok
    v = is_pseudo_free(z2_trivial())
    assert v.violated and v.witness == {"g": "t", "edge": "0"}
    assert is_pseudo_free(two_vertex_swap()).ok


def test_pseudo_free_invariant_under_collapse(fixture_action):
    a = fixture_action
    assert is_pseudo_free(a).status == is_pseudo_free(a.collapse()).status


def test_exhausting(odo2):
    assert exhausting_witness(odo2, 1, 4).edges == (0,)
    assert exhausting_witness(odo2, 0, 4).edges == ()
    v = is_exhausting(odo2)
    assert v.ok and v.witness["z"] == "0"
    zs = is_exhausting(z_static(), radius=2, path_len=6)
    assert zs.status is Status.UNRESOLVED and "z" in zs.witness


def test_odometer_order():
    assert odometer_order(odometer(3)) == 3
    assert odometer_order(z_static()) is None
