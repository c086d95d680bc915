"""Command-line client for the loopwalk service.

Every subcommand builds a request, sends it to the HTTP service (in-process
by default, or a remote instance via ``--server``) and renders the response
as text, JSON or CSV.  Exit codes: 0 when all checks pass, 1 when a check
found a mismatch, 2 on usage errors.

Exact inputs are rational strings ("3/7"); floats are accepted only by
``simulate``.  The default truncation order is 30 and can be overridden by
the ``LOOPWALK_ORDER`` environment variable.
"""

from __future__ import annotations

import csv
import io
import json
import sys

import click
import httpx

ORDER_OPTION = click.option(
    "--order",
    type=int,
    default=30,
    show_default=True,
    envvar="LOOPWALK_ORDER",
    help="truncation order (env: LOOPWALK_ORDER)",
)
OUTPUT_OPTION = click.option(
    "--output",
    type=click.Choice(["text", "json", "csv"]),
    default="text",
    show_default=True,
)


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=None)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DeprecationWarning)
        from starlette.testclient import TestClient

    from .service import app

    return TestClient(app, raise_server_exceptions=False)


def _post(ctx: click.Context, path: str, payload: dict) -> dict:
    with _client(ctx.obj.get("server")) as client:
        response = client.post(path, json=payload)
    if response.status_code == 422:
        raise click.UsageError(f"invalid request: {response.text}")
    if response.status_code >= 400:
        detail = response.json().get("detail", response.text)
        raise click.UsageError(str(detail))
    return response.json()


def _parse_json_list(value: str | None, flag: str) -> list[str] | None:
    if value is None:
        return None
    try:
        parsed = json.loads(value)
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"{flag} must be a JSON array of rational strings: {exc}")
    if not isinstance(parsed, list) or not all(isinstance(v, str) for v in parsed):
        raise click.UsageError(f"{flag} must be a JSON array of rational strings")
    return parsed


def _emit_report(data: dict, output: str) -> None:
    if output == "json":
        click.echo(json.dumps(data, indent=2))
    elif output == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(data.keys())
        writer.writerow(data.values())
        click.echo(buf.getvalue().rstrip("\n"))
    else:
        status = "PASS" if data["pass"] else "FAIL"
        line = f"{status} {data['identity']} (order {data['order']})"
        if not data["pass"]:
            line += f": {data['details']}"
        click.echo(line)


def _exit_by_pass(ctx: click.Context, passed: bool) -> None:
    ctx.exit(0 if passed else 1)


@click.group()
@click.option("--server", default=None, envvar="LOOPWALK_SERVER",
              help="base URL of a running service; defaults to in-process")
@click.version_option(package_name="loopwalk")
@click.pass_context
def main(ctx: click.Context, server: str | None) -> None:
    """Exact verification of loop decompositions and polynomial identities."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


@main.command()
@click.option("--kind", type=click.Choice(["bernoulli", "euler", "euler-number", "bernoulli-number"]),
              required=True)
@click.option("--n", type=int, required=True)
@click.option("--p", type=int, default=1, show_default=True)
@click.option("--x", default="0", show_default=True, help="rational evaluation point")
@click.option("--at", type=click.Choice(["0", "1"]), default="1", show_default=True,
              help="endpoint convention for bernoulli-number")
@OUTPUT_OPTION
@click.pass_context
def poly(ctx, kind, n, p, x, at, output):
    """Bernoulli/Euler polynomial and number values."""
    if kind.endswith("-number"):
        data = _post(ctx, "/poly/number", {"kind": kind.split("-")[0], "n": n, "at": int(at)})
    else:
        data = _post(ctx, "/poly", {"kind": kind, "n": n, "p": p, "x": x})
    click.echo(json.dumps(data) if output == "json" else data["value"])


@main.command()
@click.option("--combo", default=None, help="combo string, e.g. 'x + 2*B^1 + E^3'")
@click.option("--n", type=int, default=None, help="moment degree")
@click.option("--lhs", default=None, help="left combo of an identity check")
@click.option("--rhs", default=None, help="right combo of an identity check")
@click.option("--x", default="0", show_default=True)
@ORDER_OPTION
@OUTPUT_OPTION
@click.pass_context
def umbral(ctx, combo, n, lhs, rhs, x, order, output):
    """Moments of symbol combos, or EGF equality between two combos."""
    if combo is not None:
        if n is None:
            raise click.UsageError("--combo needs --n for the moment degree")
        data = _post(ctx, "/umbral/moment", {"combo": combo, "x": x, "n": n})
        click.echo(json.dumps(data) if output == "json" else data["value"])
        return
    if lhs is None or rhs is None:
        raise click.UsageError("provide either --combo/--n or --lhs/--rhs")
    data = _post(ctx, "/umbral/verify", {"lhs": lhs, "rhs": rhs, "x": x, "order": order})
    _emit_report(data, output)
    _exit_by_pass(ctx, data["pass"])


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--l", type=int, required=True)
@click.option("--initial", type=int, default=None, help="restrict to a smallest index")
@click.option("--list", "list_subsets", is_flag=True, help="also list the subsets")
@OUTPUT_OPTION
@click.pass_context
def count(ctx, n, l, initial, list_subsets, output):
    """Count (or list) nonadjacent index subsets."""
    data = _post(ctx, "/count", {"n": n, "l": l, "initial": initial, "list_subsets": list_subsets})
    if output == "json":
        click.echo(json.dumps(data))
        return
    click.echo(str(data["count"]))
    if list_subsets and data.get("subsets"):
        for subset in data["subsets"]:
            click.echo("{" + ",".join(map(str, subset)) + "}")


@main.command()
@click.option("--n", type=int, required=True)
@OUTPUT_OPTION
@click.pass_context
def denominator(ctx, n, output):
    """Signed monomial terms of the loop denominator."""
    data = _post(ctx, "/denominator", {"n": n})
    click.echo(json.dumps(data) if output == "json" else data["terms"])


@main.command(name="verify-loop")
@click.option("--model", type=click.Choice(["bm", "bessel", "bd"]), required=True)
@click.option("--loops", type=int, default=None, help="unit-spaced site shorthand")
@click.option("--sites", default=None, help='JSON array of rational sites, e.g. \'["0","1/2","2"]\'')
@click.option("--chain", default=None, help="JSON array of interior up-probabilities")
@ORDER_OPTION
@OUTPUT_OPTION
@click.pass_context
def verify_loop_cmd(ctx, model, loops, sites, chain, order, output):
    """Verify the loop decomposition for a model instance."""
    payload = {
        "model": model,
        "loops": loops,
        "sites": _parse_json_list(sites, "--sites"),
        "chain": _parse_json_list(chain, "--chain"),
        "order": order,
    }
    data = _post(ctx, "/verify/loop", payload)
    _emit_report(data, output)
    _exit_by_pass(ctx, data["pass"])


@main.command(name="verify-identity")
@click.option("--model", type=click.Choice(["bm", "bessel", "egf"]), required=True)
@click.option("--m", type=int, default=None, help="loop count (bm/bessel)")
@click.option("--x", default="0", show_default=True, help="evaluation point (egf)")
@ORDER_OPTION
@OUTPUT_OPTION
@click.pass_context
def verify_identity_cmd(ctx, model, m, x, order, output):
    """Verify a closed-form master identity exactly."""
    data = _post(ctx, "/verify/identity", {"model": model, "m": m, "x": x, "order": order})
    _emit_report(data, output)
    _exit_by_pass(ctx, data["pass"])


@main.command()
@click.option("--model", type=click.Choice(["bm", "bessel"]), required=True)
@click.option("--m", type=int, required=True)
@click.option("--k", type=int, default=200, show_default=True, help="geometric sum cap")
@ORDER_OPTION
@OUTPUT_OPTION
@click.pass_context
def tail(ctx, model, m, k, order, output):
    """Per-coefficient truncation error of the capped geometric sum."""
    data = _post(ctx, "/tail", {"model": model, "m": m, "order": order, "k": k})
    if output == "json":
        click.echo(json.dumps(data))
    elif output == "csv":
        click.echo("coefficient,error")
        for j, err in enumerate(data["errors"]):
            click.echo(f"{j},{err}")
    else:
        click.echo(f"max |error| = {data['max_abs_error']:.3e} over {len(data['errors'])} coefficients")


@main.command()
@click.option("--model", type=click.Choice(["bm", "bessel"]), required=True)
@click.option("--m", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--x", default="0", show_default=True)
@click.option("--k", type=int, default=20, show_default=True, help="outer summation cap")
@click.option("--printed-order", is_flag=True,
              help="bm only: use the alternative Euler-order variant")
@OUTPUT_OPTION
@click.pass_context
def partial(ctx, model, m, n, x, k, printed_order, output):
    """Partial-sum convergence diagnostic for the rearranged identities."""
    data = _post(ctx, "/partial", {"model": model, "m": m, "n": n, "x": x, "k": k,
                                   "printed_order": printed_order})
    if output == "json":
        click.echo(json.dumps(data))
        return
    click.echo("k,partial_sum,target,abs_error")
    for row in data["rows"]:
        click.echo(f"{row['k']},{row['partial_sum']},{data['target']},{row['abs_error']}")


@main.command()
@click.option("--model", type=click.Choice(["bm", "bessel", "bd"]), required=True)
@click.option("--level", default="1", show_default=True, help="rational crossing level")
@click.option("--w", type=float, default=0.5, show_default=True)
@click.option("--paths", type=int, default=100_000, show_default=True)
@click.option("--dt", type=float, default=1e-3, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--z", type=float, default=0.5, show_default=True, help="PGF argument (bd)")
@click.option("--chain", default=None, help="JSON array of interior up-probabilities (bd)")
@click.option("--start", type=int, default=0, show_default=True)
@click.option("--target", type=int, default=None, help="target site (bd); default top site")
@click.option("--taboo", type=int, default=None)
@OUTPUT_OPTION
@click.pass_context
def simulate(ctx, model, level, w, paths, dt, seed, z, chain, start, target, taboo, output):
    """Monte Carlo estimate against the closed-form target."""
    payload = {
        "model": model, "level": level, "w": w, "paths": paths, "dt": dt,
        "seed": seed, "z": z, "chain": _parse_json_list(chain, "--chain"),
        "start": start, "target": target, "taboo": taboo,
    }
    data = _post(ctx, "/simulate", payload)
    if output == "json":
        click.echo(json.dumps(data, indent=2))
    elif output == "csv":
        keys = ["estimate", "std_error", "target", "paths", "dt", "seed", "pass"]
        click.echo(",".join(keys))
        click.echo(",".join(str(data[k]) for k in keys))
    else:
        status = "PASS" if data["pass"] else "FAIL"
        click.echo(
            f"{status} estimate={data['estimate']:.6f} target={data['target']:.6f} "
            f"std_error={data['std_error']:.2e} paths={data['paths']}"
        )
    _exit_by_pass(ctx, data["pass"])


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main(sys.argv[1:])
