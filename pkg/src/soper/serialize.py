"""JSON (de)serialization for the algebraic value types.

All payloads are versioned with a top-level {"schema": "soper/1"} by the
service/CLI layer; this module handles the bare value encodings:

  GrassmannScalar  {"n": N, "terms": [[[i, ...], "p/q"], ...]}
  ScalarFunction   {"rational": {"num": [...], "den": [...]}}
                 | {"laurent": {"kmin": k, "order": o, "coeffs": [...]}}
  Superfield       {"f0": ..., "f1": ..., "parity": "even"|"odd"|null}
  SuperMatrix      {"entries": 3x3 nest, "parity": ...}
  SuperconformalMap {"Z": Superfield, "Theta": Superfield}
  SuperConnection  {"matrix": SuperMatrix, "chart": str}
  BetheSystem      {"sites": [...], "roots": [...], "l_inf": k, "solver": {...}}
"""

from __future__ import annotations

from fractions import Fraction

from .grassmann import GrassmannScalar
from .poly import GrPoly
from .ratfunc import RationalFunction, TruncatedLaurent
from .superfield import Superfield, SuperconformalMap
from .osp import SuperMatrix
from .superoper import SuperConnection
from .gaudin import BetheSystem, Site, Root, SolverConfig


class ParseError(Exception):
    pass


def _require(cond, msg):
    if not cond:
        raise ParseError(msg)


def number_from_json(obj):
    """Exact rational from "p/q"/int, complex from [re, im], float as-is."""
    if isinstance(obj, str):
        try:
            return Fraction(obj)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError("bad rational %r: %s" % (obj, exc))
    if isinstance(obj, bool):
        raise ParseError("booleans are not numbers")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return complex(obj[0], obj[1])
    raise ParseError("unrecognized number encoding: %r" % (obj,))


def number_to_json(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


def grassmann_from_json(obj, n=None):
    _require(isinstance(obj, dict) and "terms" in obj,
             "GrassmannScalar object expected")
    if n is not None:
        _require(obj.get("n", n) == n, "generator count mismatch")
    try:
        return GrassmannScalar.from_json(obj)
    except Exception as exc:
        raise ParseError("bad GrassmannScalar: %s" % exc)


def scalar_function_from_json(obj, n):
    _require(isinstance(obj, dict), "ScalarFunction object expected")
    if "rational" in obj:
        body = obj["rational"]
        num = GrPoly(n, [grassmann_from_json(c, n) for c in body["num"]])
        den = GrPoly(n, [grassmann_from_json(c, n) for c in body["den"]])
        try:
            return RationalFunction(num, den)
        except Exception as exc:
            raise ParseError("bad rational function: %s" % exc)
    if "laurent" in obj:
        body = obj["laurent"]
        coeffs = [grassmann_from_json(c, n) for c in body["coeffs"]]
        return TruncatedLaurent(n, body["kmin"], coeffs,
                                body.get("order", body["kmin"]
                                         + len(coeffs) - 1))
    raise ParseError("ScalarFunction needs a 'rational' or 'laurent' tag")


def superfield_from_json(obj, n):
    _require(isinstance(obj, dict) and "f0" in obj and "f1" in obj,
             "Superfield object expected")
    f0 = scalar_function_from_json(obj["f0"], n)
    f1 = scalar_function_from_json(obj["f1"], n)
    parity = obj.get("parity")
    _require(parity in (None, "even", "odd"), "bad parity tag")
    return Superfield(f0, f1, parity)


def supermatrix_from_json(obj, n):
    _require(isinstance(obj, dict) and "entries" in obj,
             "SuperMatrix object expected")
    rows = obj["entries"]
    _require(isinstance(rows, list) and len(rows) == 3
             and all(isinstance(r, list) and len(r) == 3 for r in rows),
             "matrix entries must be a 3x3 nest")
    return SuperMatrix([[superfield_from_json(e, n) for e in r]
                        for r in rows])


def map_from_json(obj, n):
    _require(isinstance(obj, dict) and "Z" in obj and "Theta" in obj,
             "SuperconformalMap object expected")
    return SuperconformalMap(superfield_from_json(obj["Z"], n),
                             superfield_from_json(obj["Theta"], n))


def connection_from_json(obj, n):
    _require(isinstance(obj, dict) and "matrix" in obj,
             "SuperConnection object expected")
    return SuperConnection(supermatrix_from_json(obj["matrix"], n),
                           chart=obj.get("chart", "z"))


def solver_config_from_json(obj, threads=None):
    obj = obj or {}
    _require(isinstance(obj, dict), "solver config must be an object")
    cfg = SolverConfig(
        tolerance=float(obj.get("tol", 1e-10)),
        max_iterations=int(obj.get("max_iter", 200)),
        starts=int(obj.get("starts", 64)),
        seed=int(obj.get("seed", 0)),
        damping=float(obj.get("damping", 0.5)),
        collision_eps=float(obj.get("collision_eps", 1e-6)),
        threads=threads,
    )
    _require(cfg.tolerance > 0, "tolerance must be positive")
    return cfg


def bethe_system_from_json(obj, n=4, threads=None):
    _require(isinstance(obj, dict) and "sites" in obj,
             "BetheSystem object expected")
    sites = []
    for s in obj["sites"]:
        theta = s.get("theta")
        sites.append(Site(z=number_from_json(s["z"]), l=int(s["l"]),
                          theta=grassmann_from_json(theta, n)
                          if theta is not None else None))
    roots = []
    for r in obj.get("roots", []):
        xi = r.get("xi")
        roots.append(Root(w=number_from_json(r["w"]),
                          xi=grassmann_from_json(xi, n)
                          if xi is not None else None))
    # coincident-pole violations are domain errors and propagate as such
    return BetheSystem(sites=tuple(sites), roots=tuple(roots),
                       l_inf=obj.get("l_inf"),
                       config=solver_config_from_json(
                           obj.get("solver"), threads=threads))
