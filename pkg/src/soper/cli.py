"""Command-line surface: thin client over the shared handlers.

By default every verb runs in-process; with --url the same JSON payload
is POSTed to a running service instead.  Output is deterministic
(sorted keys, fixed separators) and byte-identical across runs for a
fixed input and seed.  Exit codes: 0 ok, 2 domain error, 3 I/O or parse
error.
"""

from __future__ import annotations

import json
import sys

import click

from . import handlers
from .handlers import DomainError
from .serialize import ParseError

EXIT_DOMAIN = 2
EXIT_PARSE = 3


def _read_payload(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(str(exc))


def _emit(obj, output):
    text = json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
    if output and output != "-":
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dispatch(name, payload, url=None, **kw):
    try:
        if url:
            import httpx
            route = {
                "schwarzian": "/v1/schwarzian",
                "canonicalize": "/v1/canonicalize",
                "square": "/v1/square",
                "coords": "/v1/coords",
                "gauge": "/v1/gauge",
                "gaudin_build": "/v1/gaudin/build",
                "infinity": "/v1/gaudin/infinity",
                "bethe_solve": "/v1/bethe/solve",
                "bethe_check": "/v1/bethe/check",
                "bethe_potential": "/v1/bethe/potential",
            }[name]
            body = dict(payload)
            body.update({k: v for k, v in kw.items() if v is not None})
            resp = httpx.post(url.rstrip("/") + route, json=body,
                              timeout=300.0)
            if resp.status_code == 400:
                raise DomainError(resp.json().get("detail", "domain error"))
            if resp.status_code == 422:
                raise ParseError(resp.json().get("detail", "parse error"))
            resp.raise_for_status()
            return resp.json()
        return handlers.HANDLERS[name](payload, **kw)
    except (KeyError, TypeError) as exc:
        raise ParseError("missing or malformed field: %s" % exc)


def _run(name, path, output, url=None, **kw):
    try:
        payload = _read_payload(path)
        if not isinstance(payload, dict):
            raise ParseError("top-level JSON object expected")
        result = _dispatch(name, payload, url=url, **kw)
    except ParseError as exc:
        click.echo("parse error: %s" % exc, err=True)
        sys.exit(EXIT_PARSE)
    except DomainError as exc:
        click.echo("error: %s" % exc, err=True)
        sys.exit(EXIT_DOMAIN)
    _emit(result, output)


@click.group()
@click.option("--url", default=None,
              help="base URL of a running service; default is in-process")
@click.option("--output", "-o", default="-", help="output path or '-'")
@click.pass_context
def main(ctx, url, output):
    """Exact superconformal calculus, superoper canonicalization, and the
    osp(2|1) Gaudin Bethe system."""
    ctx.ensure_object(dict)
    ctx.obj["url"] = url
    ctx.obj["output"] = output


@main.command()
@click.argument("input", default="-")
@click.pass_context
def schwarzian(ctx, input):
    """Super Schwarzian derivative of a superconformal map."""
    _run("schwarzian", input, ctx.obj["output"], ctx.obj["url"])


@main.command()
@click.argument("input", default="-")
@click.pass_context
def canonicalize(ctx, input):
    """Canonical form D + f + omega E of an oper-shaped connection."""
    _run("canonicalize", input, ctx.obj["output"], ctx.obj["url"])


@main.command()
@click.argument("input", default="-")
@click.pass_context
def square(ctx, input):
    """Even square D A + A^2 and the body oper potential."""
    _run("square", input, ctx.obj["output"], ctx.obj["url"])


@main.command()
@click.argument("input", default="-")
@click.pass_context
def coords(ctx, input):
    """Superconformal change of coordinates of a connection."""
    _run("coords", input, ctx.obj["output"], ctx.obj["url"])


@main.command()
@click.argument("action", type=click.Choice(["solve", "check", "potential"]))
@click.argument("input", default="-")
@click.option("--threads", type=int, default=None,
              help="solver parallelism; 1 = strictly sequential")
@click.pass_context
def bethe(ctx, action, input, threads):
    """Bethe system: solve, verify roots, or extract the body potential."""
    name = "bethe_" + action
    kw = {"threads": threads} if action == "solve" else {}
    _run(name, input, ctx.obj["output"], ctx.obj["url"], **kw)


@main.command()
@click.argument("action", type=click.Choice(["build", "infinity"]))
@click.argument("input", default="-")
@click.pass_context
def gaudin(ctx, action, input):
    """Build the Gaudin connection or check the chart at infinity."""
    name = "gaudin_build" if action == "build" else "infinity"
    _run(name, input, ctx.obj["output"], ctx.obj["url"])


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn
    uvicorn.run("soper.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
