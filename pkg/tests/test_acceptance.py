"""Acceptance criteria 1-8, one pass/fail line per criterion on the terminal."""
import itertools
import random

import pytest

from selfsim.action import RestrictionTable, axioms_report, is_pseudo_free
from selfsim.fixtures import FIXTURES, free_cuntz, odometer, two_vertex_swap, z2_trivial
from selfsim.germs import (germ_iso_check, groupoid_axioms_check, phi_iso_check, sample_chains,
                           universal_groupoid)
from selfsim.graph import BoundaryPoint, Graph, sample_points
from selfsim.isg import is_cancellative, is_estar_unitary
from selfsim.paction import (ClopenSet, UniversalAction, bs_shape_value, induced_action, lam,
                             maps_agree, odometer_action)
from selfsim.ugroup import (check_idempotent_pure, check_prehomomorphism, odometer_presentation_check,
                            sigma_bs, sigma_collapsing, sigma_for)

R2 = Graph.rose(2)


@pytest.fixture
def report(request, capsys):
    """Run the body, then print ``criterion N: PASS|FAIL`` regardless of capture."""
    def run(n, title, body):
        try:
            detail = body()
        except AssertionError as exc:
            with capsys.disabled():
                print(f"\ncriterion {n}: FAIL  {title}  ({exc})")
            raise
        with capsys.disabled():
            print(f"\ncriterion {n}: PASS  {title}" + (f"  ({detail})" if detail else ""))
    return run


def _corrupt(action, table, rng, ball):
    g = rng.choice(ball)
    e = rng.randrange(action.graph.num_edges)
    s = table.state(g)
    if rng.random() < 0.5:
        cur = table.img[s][e]
        table.set_edge(g, e, image=rng.choice([x for x in range(action.graph.num_edges) if x != cur]))
    else:
        cur = table.states[table.nxt[s][e]]
        table.set_edge(g, e, cocycle=rng.choice([x for x in ball if x != cur]))


def test_criterion_1_axioms(report):
    def body():
        fixtures = [odometer(2), odometer(3), two_vertex_swap()]
        for a in fixtures:
            v = axioms_report(a, depth=4, radius=3)
            assert v.ok, (a.name, v.witness)
        rng = random.Random(0)
        caught = 0
        for a in fixtures:
            ball = a.group.ball(6)
            for _ in range(30):
                t = RestrictionTable.materialize(a, ball)
                _corrupt(a, t, rng, ball)
                v = axioms_report(a, depth=4, radius=3, table=t)
                assert v.violated, f"corruption missed on {a.name}"
                caught += 1
        return f"3 fixtures clean, {caught}/{caught} corruptions caught"
    report(1, "axiom suite", body)


def test_criterion_2_triangle(report):
    def body():
        rows = []
        for name, make in sorted(FIXTURES.items()):
            a = make()
            vs = [is_pseudo_free(a, 4, 4), is_cancellative(a, 4, 4), is_estar_unitary(a, 4, 4)]
            flags = {v.violated for v in vs}
            assert len(flags) == 1, (name, [v.status.value for v in vs])
            if name.startswith("odometer"):
                assert all(v.ok for v in vs), name
            if name == "z2-trivial":
                assert all(v.violated for v in vs)
            rows.append(f"{name}={vs[0].status.value}")
        return ", ".join(rows)
    report(2, "equivalence triangle", body)


def test_criterion_3_purity(report):
    def body():
        for n in (2, 3):
            a = odometer(n)
            v = check_idempotent_pure(a, sigma_bs(a), path_len=4, radius=16)
            assert v.ok, (n, v.witness)
        return "n=2,3 at |α|,|β| ≤ 4, |m| ≤ 16"
    report(3, "idempotent purity", body)


def test_criterion_4_presentation(report):
    def body():
        for n in (2, 3, 4):
            v = odometer_presentation_check(n)
            assert v.ok, (n, v.witness)
            assert v.info["reduced_relation"] and v.info["wraparound"]
        return "n=2,3,4"
    report(4, "BS presentation", body)


def _digits(n, x, power, k):
    v = sum(d * n ** j for j, d in enumerate(x.prefix(k))) + power
    v %= n ** k
    return tuple((v // n ** j) % n for j in range(k))


def test_criterion_5_odometer_dynamics(report):
    def body():
        a = odometer(2)
        ua = UniversalAction(a, sigma_bs(a), path_len=4, radius=16, depth=8)
        pts = sample_points(R2, 8)
        seen = set()
        for la, lb in itertools.product(range(5), repeat=2):
            for al in itertools.product(range(2), repeat=la):
                for be in itertools.product(range(2), repeat=lb):
                    g = bs_shape_value(2, al, be)
                    if g in seen:
                        continue
                    seen.add(g)
                    u, o = ua.theta(g), odometer_action(2, g)
                    assert u.domain == o.domain, g
                    assert maps_agree(u, o, pts) is None, g
        ones = BoundaryPoint((), (1,))
        assert lam(2, ones) == BoundaryPoint((), (0,))
        for head in itertools.product(range(2), repeat=8):
            x = BoundaryPoint(head, (0, 1))
            y = lam(2, x)
            assert y.prefix(8) == _digits(2, x, 1, 8)
            if 0 in head:
                k = head.index(0)
                assert y.prefix(8) == (0,) * k + (1,) + head[k + 1:]
        return f"{len(seen)} group elements, {len(pts)} points, 256 λ prefixes"
    report(5, "odometer dynamics", body)


def test_criterion_6_induced(report):
    def body():
        a = odometer(2)
        sig = sigma_bs(a)
        bs = sig.target
        ba = bs.mul(bs.make(1, 0, 1), bs.inv(bs.make(0, 0, 1)))
        for k in range(1, 7):
            r = induced_action(a, sig, ba, 2 * k)
            assert r.domain == ClopenSet(R2, [R2.parse_path("1" * k)]).complement(), k
        for make, radius in [(lambda: odometer(2), 8), (lambda: odometer(3), 6),
                             (two_vertex_swap, 3), (free_cuntz, 2)]:
            f = make()
            assert is_pseudo_free(f, 4, 4).ok
            ua = UniversalAction(f, sigma_for(f), path_len=3, radius=radius, depth=8)
            for g in ua.index:
                ua.theta(g)  # raises Conflict on overlapping incompatible pieces
        for n in (2, 3):
            f = odometer(n)
            v = phi_iso_check(f, sigma_bs(f), bound=6, depth=8, samples=500, seed=0)
            assert v.ok, (n, v.witness)
        return "E_{ba⁻¹} for k ≤ 6, no conflicts, Φ on R_2 and R_3"
    report(6, "induced action", body)


def test_criterion_7_germs(report):
    def body():
        for make in (lambda: odometer(2), lambda: odometer(3), two_vertex_swap, free_cuntz):
            a = make()
            sig = sigma_for(a)
            radius = 16 if a.name.startswith("odometer") else 3
            ua = UniversalAction(a, sig, path_len=4, radius=radius, depth=8)
            v = groupoid_axioms_check(universal_groupoid(ua), sample_chains(ua, 500, 8, seed=0))
            assert v.ok, (a.name, v.witness)
            v = germ_iso_check(a, sig, samples=500, depth=8, seed=0, ua=ua,
                               path_len=4, radius=radius)
            assert v.ok, (a.name, v.witness)
        z = z2_trivial()
        v = germ_iso_check(z, sigma_collapsing(z), samples=500, path_len=2, radius=1)
        assert v.violated and v.witness["law"] == "injective"
        return "4 fixtures, collapsing σ on z2-trivial fails injectivity"
    report(7, "germ layer", body)


def test_criterion_8_prehomomorphism(report):
    def body():
        for n in (2, 3):
            a = odometer(n)
            v = check_prehomomorphism(a, sigma_bs(a), path_len=4, radius=16)
            assert v.ok, (n, v.witness)
        return "n=2,3"
    report(8, "prehomomorphism law", body)
