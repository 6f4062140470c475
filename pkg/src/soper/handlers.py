"""Operation handlers shared by the HTTP service and the CLI.

Each handler takes a decoded JSON payload (dict) and returns a
JSON-serializable dict tagged with {"schema": "soper/1"}.  Domain
failures raise DomainError; malformed payloads raise
serialize.ParseError.  The CLI calls these in-process; the FastAPI app
exposes them over HTTP — no numeric logic lives in either wrapper.
"""

from __future__ import annotations

from fractions import Fraction

from .grassmann import GrassmannError
from .ratfunc import TruncationUnderflow
from .osp import SuperMatrixError
from .superfield import SuperconformalError, super_schwarzian
from .superoper import (OperError, canonicalize, square_connection,
                        change_coordinates, transform_to_infinity,
                        residue_data, gauge_transform)
from .gaudin import (GaudinError, build_gaudin_connection, miura_superoper,
                     bethe_residuals, solve_bethe, infinity_constraint,
                     apparent_singularity_check, body_oper_potential,
                     simple_pole_coefficient, l_infinity_read)
from . import serialize
from .serialize import ParseError

SCHEMA = "soper/1"


class DomainError(Exception):
    pass


_DOMAIN_EXC = (GrassmannError, TruncationUnderflow, SuperMatrixError,
               SuperconformalError, OperError, GaudinError,
               ZeroDivisionError)


def _run(fn):
    try:
        return fn()
    except ParseError:
        raise
    except _DOMAIN_EXC as exc:
        raise DomainError(str(exc))


def _tag(obj):
    obj["schema"] = SCHEMA
    return obj


def _n_of(payload):
    n = payload.get("n", 4)
    if not isinstance(n, int) or not 1 <= n <= 63:
        raise ParseError("generator count n must be an integer in 1..63")
    return n


def handle_schwarzian(payload):
    n = _n_of(payload)
    m = serialize.map_from_json(payload["map"], n)
    return _tag({"superfield": _run(lambda: super_schwarzian(m)).to_json()})


def handle_canonicalize(payload):
    n = _n_of(payload)
    conn = serialize.connection_from_json(payload["connection"], n)
    can, gauge = _run(lambda: canonicalize(conn))
    return _tag({"omega": can.omega.to_json(), "chart": can.chart,
                 "gauge": gauge.to_json()})


def handle_square(payload):
    n = _n_of(payload)
    conn = serialize.connection_from_json(payload["connection"], n)
    a_z, potential = _run(lambda: square_connection(conn))
    return _tag({"square": a_z.to_json(),
                 "potential": potential.to_json()
                 if potential is not None else None})


def handle_coords(payload):
    n = _n_of(payload)
    conn = serialize.connection_from_json(payload["connection"], n)
    if payload.get("to_infinity"):
        out = _run(lambda: transform_to_infinity(conn))
    else:
        m = serialize.map_from_json(payload["map"], n)
        out = _run(lambda: change_coordinates(conn, m))
    return _tag({"connection": out.to_json()})


def handle_gauge(payload):
    n = _n_of(payload)
    conn = serialize.connection_from_json(payload["connection"], n)
    g = serialize.supermatrix_from_json(payload["gauge"], n)
    out = _run(lambda: gauge_transform(conn, g))
    return _tag({"connection": out.to_json()})


def handle_gaudin_build(payload):
    n = _n_of(payload)
    system = _run(lambda: serialize.bethe_system_from_json(
        payload["system"], n))
    h = _run(lambda: build_gaudin_connection(system, n))
    conn = miura_superoper(h)
    residues = []
    for site in system.sites:
        if isinstance(site.z, Fraction):
            rd = _run(lambda: residue_data(h.connection(), site.z))
            residues.append({"z": serialize.number_to_json(site.z),
                             "coweight": rd.coweight.to_json(),
                             "position": rd.position})
    return _tag({"u": h.u.to_json(), "connection": conn.to_json(),
                 "residues": residues})


def handle_bethe_solve(payload, threads=None):
    n = _n_of(payload)
    system = _run(lambda: serialize.bethe_system_from_json(
        payload["system"], n, threads=threads))
    z = [complex(s.z) for s in system.sites]
    l = system.weights()
    m = payload.get("m")
    if m is None:
        m = system.m
    if not isinstance(m, int) or m < 0:
        raise ParseError("root count m must be a nonnegative integer")
    if system.l_inf is not None and sum(l) - m != system.l_inf:
        raise DomainError("constraint violated: sum(l) - m != l_inf")
    sols = _run(lambda: solve_bethe(z, l, m, system.config))
    out = []
    for sol in sols:
        res = bethe_residuals(z, l, list(sol)) if sol else []
        out.append({"roots": [[w.real, w.imag] for w in sol],
                    "residual_magnitudes": [abs(r) for r in res]})
    return _tag({"solutions": out, "count": len(out)})


def handle_bethe_check(payload):
    n = _n_of(payload)
    system = _run(lambda: serialize.bethe_system_from_json(
        payload["system"], n))
    reports = _run(lambda: apparent_singularity_check(system, n))
    out = []
    for rep in reports:
        out.append({"w": serialize.number_to_json(rep.w),
                    "pairing": serialize.number_to_json(rep.pairing),
                    "residual_magnitude": float(abs(rep.pairing)),
                    "gauge_regular": rep.gauge_regular,
                    "pass": rep.passes})
    result = {
        "reports": out,
        "all_pass": all(r["pass"] for r in out),
    }
    if system.l_inf is not None:
        result["infinity_constraint"] = infinity_constraint(system)
    return _tag(result)


def handle_bethe_potential(payload):
    n = _n_of(payload)
    system = _run(lambda: serialize.bethe_system_from_json(
        payload["system"], n))
    pot = _run(lambda: body_oper_potential(system, n))
    poles = []
    for root in system.roots:
        if isinstance(root.w, Fraction):
            c = simple_pole_coefficient(pot, root.w)
            poles.append({"w": serialize.number_to_json(root.w),
                          "coefficient": c.to_json(),
                          "vanishes": c.is_zero()})
    return _tag({"potential": pot.to_json(), "simple_poles": poles})


def handle_infinity(payload):
    n = _n_of(payload)
    system = _run(lambda: serialize.bethe_system_from_json(
        payload["system"], n))
    h = _run(lambda: build_gaudin_connection(system, n))
    conn_inf = _run(lambda: transform_to_infinity(h.connection()))
    l_inf = _run(lambda: l_infinity_read(conn_inf))
    result = {"l_inf_read": serialize.number_to_json(l_inf),
              "constraint_ok": (system.l_inf is not None
                                and l_inf == system.l_inf)}
    return _tag(result)


HANDLERS = {
    "schwarzian": handle_schwarzian,
    "canonicalize": handle_canonicalize,
    "square": handle_square,
    "coords": handle_coords,
    "gauge": handle_gauge,
    "gaudin_build": handle_gaudin_build,
    "bethe_solve": handle_bethe_solve,
    "bethe_check": handle_bethe_check,
    "bethe_potential": handle_bethe_potential,
    "infinity": handle_infinity,
}
