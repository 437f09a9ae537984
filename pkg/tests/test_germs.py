import pytest

from selfsim.fixtures import free_cuntz, odometer, two_vertex_swap, z2_trivial
from selfsim.germs import (Germ, SGerm, TransformationGroupoid, germ_compose, germ_iso_check,
                           groupoid_axioms_check, phi_iso_check, sample_chains, sgerm_compose,
                           sgerm_equal, sgerm_inverse, slice_check, universal_groupoid)
from selfsim.graph import BoundaryPoint
from selfsim.isg import InverseSemigroup
from selfsim.paction import UniversalAction, lam
from selfsim.ugroup import sigma_bs, sigma_collapsing, sigma_for


@pytest.fixture(scope="module")
def ua2():
    a = odometer(2)
    return UniversalAction(a, sigma_bs(a), path_len=3, radius=8)


def test_odometer_germ_composition(ua2):
    G = universal_groupoid(ua2)
    bs = ua2.sigma.target
    U = bs.make(1, 0, 0)
    zero = BoundaryPoint((), (0,))
    y = lam(2, zero, -1)
    assert y == BoundaryPoint((), (1,))
    pq = germ_compose(G, Germ(U, zero), Germ(U, y))
    assert pq == Germ(bs.mul(U, U), y)
    assert G.r(pq) == BoundaryPoint((1,), (0,))


def test_units_and_inverses(ua2):
    G = universal_groupoid(ua2)
    bs = ua2.sigma.target
    x = BoundaryPoint((0, 1), (1, 0))
    p = Germ(bs.make(0, 0, 1), x)
    assert G.compose(G.unit(G.r(p)), p) == p
    assert G.compose(p, G.unit(x)) == p
    assert G.compose(p, G.inverse(p)) == G.unit(G.r(p))
    assert G.compose(G.inverse(p), p) == G.unit(x)
    assert G.compose(p, Germ(bs.identity, BoundaryPoint((), (1,)))) is None


def test_groupoid_axioms_on_chains(ua2):
    G = universal_groupoid(ua2)
    chains = sample_chains(ua2, 100, 8, seed=3)
    v = groupoid_axioms_check(G, chains)
    assert v.ok
    for a, b, c in chains:
        ab = G.compose(a, b)
        assert G.r(ab) == G.r(a) and G.d(ab) == G.d(b)


def test_transformation_groupoid_of_free_action():
    from selfsim.groups import Integers
    G = TransformationGroupoid(Integers("z"), lambda g, x: x.shift(0) if g == 0 else None)
    x = BoundaryPoint((), (0,))
    assert G.valid(G.unit(x)) and not G.valid(Germ(1, x))


def test_sgerm_equal(odo2):
    S = InverseSemigroup(odo2)
    x = BoundaryPoint((0, 1), (1, 0))
    s = S.parse("(∅, z, ∅)")
    e = S.point_idempotent(x, 2)
    assert sgerm_equal(S, SGerm(s, x), SGerm(S.multiply(s, e), x)).status == "equal"
    assert sgerm_equal(S, SGerm(S.parse("(0, 1, 0)"), BoundaryPoint((), (0,))),
                       SGerm(S.parse("(1, 1, 1)"), BoundaryPoint((), (1,)))).status == "distinct"
    r = sgerm_equal(S, SGerm(s, x), SGerm(S.parse("(1, 1, 0)"), x))
    assert r.status == "equal" and r.witness == "(0, 1, 0)"


def test_sgerm_compose_inverse(odo2):
    S = InverseSemigroup(odo2)
    x = BoundaryPoint((0,), (1,))
    p = SGerm(S.parse("(1, z, 0)"), x)
    inv = sgerm_inverse(S, p)
    unit = sgerm_compose(S, inv, p)
    assert unit.x == x and S.is_idempotent(unit.s)


@pytest.mark.parametrize("make", [lambda: odometer(2), two_vertex_swap, free_cuntz])
def test_germ_iso_small(make):
    a = make()
    sig = sigma_for(a)
    radius = 8 if a.name.startswith("odometer") else 3
    v = germ_iso_check(a, sig, samples=80, depth=6, path_len=3, radius=radius)
    assert v.ok, v.witness


def test_germ_iso_detects_collapsing_sigma():
    z = z2_trivial()
    v = germ_iso_check(z, sigma_collapsing(z), samples=50, path_len=2, radius=1)
    assert v.violated and v.witness["law"] == "injective"


def test_phi_iso_small(odo2):
    v = phi_iso_check(odo2, sigma_bs(odo2), bound=4, depth=6, samples=80)
    assert v.ok, v.witness
    assert v.info["unitaries_in_image"] == 5


def test_phi_identity_on_free_fixture():
    a = free_cuntz()
    v = phi_iso_check(a, sigma_for(a), bound=4, depth=6, samples=60)
    assert v.ok


def test_slices(ua2):
    bs = ua2.sigma.target
    maps = {g: ua2.theta(g) for g in [bs.make(1, 0, 0), bs.make(0, 0, 1), bs.make(3, 0, -1)]}
    assert slice_check(ua2.action, maps, depth=6).ok
