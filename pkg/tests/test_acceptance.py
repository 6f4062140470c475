"""Top-level acceptance suite.

Each test covers one numbered criterion, prints a single PASS line with
its measured runtime, and pins its tolerance explicitly.  All algebraic
checks are exact (rational arithmetic); only the numeric Bethe solver
uses floating point, with the tolerances stated inline.
"""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction

from soper.grassmann import GrassmannScalar
from soper.poly import GrPoly
from soper.ratfunc import RationalFunction
from soper.superfield import (Superfield, SuperconformalMap, spl2_map,
                              super_schwarzian,
                              transform_projective_connection)
from soper.osp import SuperMatrix, basis_e, basis_E, exp_nilpotent
from soper.superoper import (CanonicalOper, canonicalize, gauge_transform,
                             square_connection, change_coordinates,
                             transform_to_infinity)
from soper.gaudin import (BetheSystem, Site, Root, SolverConfig,
                          build_gaudin_connection, bethe_residuals,
                          solve_bethe, apparent_singularity_check,
                          body_oper_potential, simple_pole_coefficient,
                          l_infinity_read)

N = 4


def _report(num, label, t0):
    print("criterion %2d PASS: %s (%.2fs)" % (num, label, time.time() - t0))


# -- light exact random data (integer coefficients keep the Fraction
# -- arithmetic fast enough for the stated runtime budgets) ------------

def _int_scalar(rng, parity):
    if parity == "even":
        return (GrassmannScalar.const(N, rng.randint(-2, 2))
                + GrassmannScalar.monomial(N, (0, 1)) * rng.randint(-1, 1))
    return (GrassmannScalar.generator(N, rng.randint(0, 3))
            * rng.randint(-1, 1)
            + GrassmannScalar.monomial(N, (0, 1, 2)) * rng.randint(-1, 1))


def _sf(rng, parity, deg=1):
    other = "odd" if parity == "even" else "even"
    one = GrPoly.one(N)
    f0 = RationalFunction(
        GrPoly(N, [_int_scalar(rng, parity) for _ in range(deg + 1)]), one)
    f1 = RationalFunction(
        GrPoly(N, [_int_scalar(rng, other) for _ in range(deg + 1)]), one)
    return Superfield(f0, f1, parity)


def _spl2(rng):
    while True:
        a = _int_scalar(rng, "even")
        if a.body() != 0:
            break
    b = _int_scalar(rng, "even")
    c = _int_scalar(rng, "even")
    d = (GrassmannScalar.one(N) + b * c) * a.inverse()
    return spl2_map(a, b, c, d, _int_scalar(rng, "odd"),
                    _int_scalar(rng, "odd"))


def _scmap(rng):
    psi = GrPoly(N, [_int_scalar(rng, "odd") for _ in range(2)])
    g = GrPoly(N, [_int_scalar(rng, "even") for _ in range(2)])
    if g.body_part().is_zero():
        g = g + GrPoly.one(N)
    integrand = g * g - psi * psi.derivative()
    coeffs = [GrassmannScalar.zero(N)]
    for k, c in enumerate(integrand.coeffs):
        coeffs.append(c * Fraction(1, k + 1))
    one = GrPoly.one(N)
    zc = Superfield(RationalFunction(GrPoly(N, coeffs), one),
                    RationalFunction(psi * g, one), "even")
    theta = Superfield(RationalFunction(psi, one),
                       RationalFunction(g, one), "odd")
    m = SuperconformalMap(zc, theta)
    assert m.is_superconformal()
    return m


def _bgauge(rng):
    kappa = _sf(rng, "odd")
    s = _sf(rng, "even")
    t = _sf(rng, "even")
    if t.f0.num.body_part().is_zero():
        t = t + Superfield.one(N)
    uni = exp_nilpotent(basis_e(N) * kappa + basis_E(N) * s)
    return uni * SuperMatrix.diag(t, Superfield.one(N), t.inverse())


def test_criterion_01_spl2_schwarzian_vanishes():
    """200 random unit-determinant SPL2 maps: S(m) = 0 exactly."""
    t0 = time.time()
    rng = random.Random(101)
    for _ in range(200):
        assert super_schwarzian(_spl2(rng)).is_zero()
    assert time.time() - t0 < 10
    _report(1, "200 SPL2 maps have exactly zero super Schwarzian", t0)


def test_criterion_02_cocycle_law():
    """S(m2 o m1) = (S(m2) o m1)(D Theta_1)^3 + S(m1) on 100 pairs."""
    t0 = time.time()
    rng = random.Random(102)
    for _ in range(100):
        m1, m2 = _scmap(rng), _scmap(rng)
        comp = m2.compose(m1)
        dt1 = m1.theta.d_theta()
        rhs = (super_schwarzian(m2).substitute(m1) * (dt1 * dt1 * dt1)
               + super_schwarzian(m1))
        assert (super_schwarzian(comp) - rhs).is_zero()
    assert time.time() - t0 < 30
    _report(2, "cocycle law holds exactly on 100 random pairs", t0)


def test_criterion_03_gauge_retraction():
    """canonicalize is a retraction of the B-gauge action: 200 gauges on
    20 random opers give identical omega exactly."""
    t0 = time.time()
    rng = random.Random(103)
    for _ in range(20):
        omega = _sf(rng, "odd")
        conn = CanonicalOper(omega).connection()
        for _ in range(10):
            moved = gauge_transform(conn, _bgauge(rng))
            out, _ = canonicalize(moved)
            assert out.omega == omega
    assert time.time() - t0 < 60
    _report(3, "200 B-gauge retractions recover omega exactly", t0)


def test_criterion_04_square_matches_scalar_elimination():
    """Body potential of the squared canonical superoper equals the
    scalar elimination oracle of (D^3 - omega) psi = 0 at theta = 0.

    Oracle (independent derivation): psi = p + theta q gives
    D^3 psi = q' + theta p'', so q' = omega_0 p and
    p'' = flip(omega_0) q + omega_1 p.  At the body level omega_0 is odd
    (body zero), leaving p'' = body(omega_1) p: the potential is
    body(omega.f1).  Exact equality on 50 instances."""
    t0 = time.time()
    rng = random.Random(104)
    for _ in range(50):
        omega = _sf(rng, "odd", deg=2)
        _, potential = square_connection(CanonicalOper(omega).connection())
        assert potential is not None
        assert potential == omega.f1.body()
    assert time.time() - t0 < 60
    _report(4, "50 squared superopers match the elimination oracle", t0)


def test_criterion_05_commuting_square():
    """canonicalize o change_coordinates = transform_projective_connection
    o canonicalize, exactly, on 50 (omega, map) pairs including SC*."""
    t0 = time.time()
    rng = random.Random(105)
    maps = [SuperconformalMap.sc_transition(N)]
    while len(maps) < 50:
        maps.append(_scmap(rng) if len(maps) % 2 else _spl2(rng))
    for m in maps:
        omega = _sf(rng, "odd")
        conn = CanonicalOper(omega).connection()
        lhs, _ = canonicalize(change_coordinates(conn, m))
        rhs = transform_projective_connection(omega, m)
        assert lhs.omega == rhs
    assert time.time() - t0 < 60
    _report(5, "coordinate-change square commutes on 50 pairs", t0)


def test_criterion_06_bethe_midpoint():
    """z = (-1, 1), l = (1, 1), m = 1: root 0 with float residual
    < 1e-12 and exact residual 0."""
    t0 = time.time()
    sols = solve_bethe([-1.0, 1.0], [1, 1], 1)
    assert len(sols) == 1 and abs(sols[0][0]) < 1e-10
    res = bethe_residuals([-1.0, 1.0], [1, 1], list(sols[0]))
    assert abs(res[0]) < 1e-12
    exact = bethe_residuals([Fraction(-1), Fraction(1)], [1, 1],
                            [Fraction(0)])
    assert exact == [0]
    assert time.time() - t0 < 1
    _report(6, "midpoint system solves to w = 0 with exact residual 0", t0)


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def test_criterion_07_bethe_complex_pair():
    """z = (-1, 1), l = (1, 1), m = 2: the solver's roots satisfy
    3w^2 + 1 = 0 to < 1e-10, and the identity is verified exactly: for
    the root pair (w, -w) the residual numerator over Q[w] is 3w^2 + 1."""
    t0 = time.time()
    sols = solve_bethe([-1.0, 1.0], [1, 1], 2)
    assert len(sols) == 1
    pair = sols[0]
    assert abs(pair[0] + pair[1]) < 1e-10        # roots are (w, -w)
    for w in pair:
        assert abs(3 * w * w + 1) < 1e-10
    # exact verification: r_1(w, -w) = 2/(w+1) + 2/(w-1) - 2/(2w) has
    # numerator 2w(w-1) + 2w(w+1) - (w+1)(w-1) over w(w^2-1)
    num = [Fraction(0)] * 3
    for term in (_poly_mul([0, 2], [-1, 1]),     # 2w (w-1)
                 _poly_mul([0, 2], [1, 1]),      # 2w (w+1)
                 [Fraction(1), Fraction(0), Fraction(-1)]):  # -(w^2-1)
        for k, c in enumerate(term):
            num[k] += c
    assert num == [Fraction(1), Fraction(0), Fraction(3)]   # 3w^2 + 1
    assert time.time() - t0 < 5
    _report(7, "complex pair satisfies 3w^2+1 = 0, verified exactly", t0)


def _random_system(rng):
    while True:
        n_sites = rng.randint(1, 3)
        pts = set()
        while len(pts) < n_sites:
            pts.add(Fraction(rng.randint(-6, 6), rng.randint(1, 3)))
        sites = tuple(Site(z, rng.randint(1, 2)) for z in sorted(pts))
        m = rng.randint(1, 3)
        roots = set()
        tries = 0
        while len(roots) < m and tries < 50:
            tries += 1
            w = Fraction(rng.randint(-8, 8), rng.randint(1, 3))
            if all(w != s.z for s in sites):
                roots.add(w)
        if len(roots) == m:
            return BetheSystem(sites, tuple(Root(w) for w in sorted(roots)))


def _exact_one_root_system(rng):
    z1 = Fraction(rng.randint(-4, 0))
    z2 = Fraction(rng.randint(1, 5))
    l1, l2 = rng.randint(1, 2), rng.randint(1, 2)
    w = (l1 * z2 + l2 * z1) / (l1 + l2)
    return BetheSystem((Site(z1, l1), Site(z2, l2)), (Root(w),))


def test_criterion_08_prop_equivalence():
    """Three per-root criteria agree case-by-case on 50 systems (sites
    <= 3, l_i <= 2, m <= 3): exact residual vanishing, regularity after
    the unipotent root gauge exp(theta/(z-w_j) e - 1/(z-w_j) E), and
    vanishing simple-pole coefficient of the body oper potential."""
    t0 = time.time()
    rng = random.Random(108)
    systems = []
    for i in range(50):
        if i % 5 == 0:
            systems.append(_exact_one_root_system(rng))
        elif i == 1:
            systems.append(BetheSystem(
                (Site(Fraction(-1), 1), Site(Fraction(1), 1)),
                (Root(Fraction(0)),)))
        else:
            systems.append(_random_system(rng))
    agree_true = agree_false = 0
    for system in systems:
        z = [s.z for s in system.sites]
        l = system.weights()
        w = [r.w for r in system.roots]
        residuals = bethe_residuals(z, l, w)
        reports = apparent_singularity_check(system, N)
        pot = body_oper_potential(system, N)
        for j, root in enumerate(system.roots):
            exact_zero = residuals[j] == 0
            gauge_ok = reports[j].gauge_regular
            pole_ok = simple_pole_coefficient(pot, root.w) == 0
            assert exact_zero == gauge_ok == pole_ok, \
                (system, root.w, exact_zero, gauge_ok, pole_ok)
            if exact_zero:
                agree_true += 1
            else:
                agree_false += 1
    assert agree_true >= 10 and agree_false >= 10   # both branches hit
    assert time.time() - t0 < 300
    _report(8, "three apparent-singularity criteria agree on 50 systems"
            " (%d vanish / %d do not)" % (agree_true, agree_false), t0)


def test_criterion_09_infinity_bookkeeping():
    """The eta/u coefficient at infinity reproduces sum(l_i) - m = l_inf
    exactly for 20 random systems."""
    t0 = time.time()
    rng = random.Random(109)
    for _ in range(20):
        system = _random_system(rng)
        h = build_gaudin_connection(system, N)
        read = l_infinity_read(transform_to_infinity(h.connection()))
        assert read == sum(system.weights()) - system.m
    assert time.time() - t0 < 30
    _report(9, "l_inf bookkeeping at infinity is exact on 20 systems", t0)


def test_criterion_10_solver_determinism(tmp_path):
    """`soper bethe solve` output is byte-identical across 3 runs and
    across --threads 1 vs default."""
    t0 = time.time()
    payload = json.dumps(
        {"system": {"sites": [{"z": "-1", "l": 1}, {"z": "1", "l": 1}],
                    "roots": [], "l_inf": 0,
                    "solver": {"seed": 11, "starts": 32}}, "m": 2})
    outs = []
    for args in (["bethe", "solve", "-"],
                 ["bethe", "solve", "-"],
                 ["bethe", "solve", "-"],
                 ["bethe", "solve", "--threads", "1", "-"],
                 ["bethe", "solve", "--threads", "4", "-"]):
        proc = subprocess.run([sys.executable, "-m", "soper.cli"] + args,
                              input=payload, capture_output=True,
                              text=True, check=True)
        outs.append(proc.stdout)
    assert len(set(outs)) == 1
    assert json.loads(outs[0])["count"] >= 1
    assert time.time() - t0 < 10
    _report(10, "solver output byte-identical across runs and threads", t0)
