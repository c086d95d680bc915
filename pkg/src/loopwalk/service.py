"""HTTP facade over the exact core: one POST endpoint per operation.

Mismatches found by a verification are reported in the response body
(``pass: false``), never as HTTP errors; HTTP 400 is reserved for invalid
domain inputs (degenerate sites, bad combo strings, ...).
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, HTTPException

from . import __version__
from .exceptions import LoopwalkError
from .identities import (
    bernoulli_diff_gf_check,
    bessel_bracket_poly,
    bessel_identity_partial,
    bessel_master_check,
    bm_bracket_poly,
    bm_master_check,
    euler_identity_partial,
    geometric_tail_report,
)
from .loops import (
    count_nonadjacent,
    count_with_min_index,
    denominator_terms,
    format_denominator_terms,
    nonadjacent_subsets,
    verify_loop,
)
from .models import (
    BirthDeathChain,
    SiteConfig,
    bd_system,
    bessel_system,
    bm_system,
    unit_sites,
)
from .montecarlo import simulate_bd, simulate_bessel_hit, simulate_bm_hit
from .polynomials import bernoulli_number_at, bernoulli_poly, euler_number, euler_poly
from .schemas import (
    CountRequest,
    CountResponse,
    DenominatorRequest,
    DenominatorResponse,
    PartialRequest,
    PartialResponse,
    PartialRow,
    PolyNumberRequest,
    PolyRequest,
    SimulateRequest,
    SimulateResponse,
    TailRequest,
    TailResponse,
    UmbralMomentRequest,
    UmbralVerifyRequest,
    ValueResponse,
    VerifyIdentityRequest,
    VerifyLoopRequest,
    VerifyResponse,
)
from .series import VerificationReport, as_rational
from .umbral import combo_moment, parse_combo, verify_symbol_identity

app = FastAPI(title="loopwalk", version=__version__)


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise HTTPException(status_code=400, detail=f"bad rational {text!r}: {exc}")


def _report_response(identity: str, report: VerificationReport, m: int | None = None) -> VerifyResponse:
    if report.equal:
        details = f"all {report.order + 1} coefficients agree exactly"
    else:
        details = (
            f"first mismatch at coefficient {report.first_mismatch}: "
            f"difference {report.diffs[report.first_mismatch]}"
        )
    return VerifyResponse(
        identity=identity,
        m=m,
        order=report.order,
        passed=report.equal,
        first_mismatch=report.first_mismatch,
        details=details,
    )


@app.get("/")
def info() -> dict:
    endpoints = sorted(
        route.path
        for route in app.routes
        if "POST" in (getattr(route, "methods", None) or ())
    )
    return {"name": "loopwalk", "version": __version__, "endpoints": endpoints}


@app.post("/poly", response_model=ValueResponse)
def poly(req: PolyRequest) -> ValueResponse:
    x = _rational(req.x)
    fn = bernoulli_poly if req.kind == "bernoulli" else euler_poly
    return ValueResponse(value=str(fn(req.n, req.p, x)))


@app.post("/poly/number", response_model=ValueResponse)
def poly_number(req: PolyNumberRequest) -> ValueResponse:
    if req.kind == "euler":
        return ValueResponse(value=str(euler_number(req.n)))
    return ValueResponse(value=str(bernoulli_number_at(req.n, req.at)))


@app.post("/umbral/moment", response_model=ValueResponse)
def umbral_moment(req: UmbralMomentRequest) -> ValueResponse:
    try:
        combo = parse_combo(req.combo, x=_rational(req.x))
        return ValueResponse(value=str(combo_moment(combo, req.n)))
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


@app.post("/umbral/verify", response_model=VerifyResponse)
def umbral_verify(req: UmbralVerifyRequest) -> VerifyResponse:
    try:
        x = _rational(req.x)
        lhs = parse_combo(req.lhs, x=x)
        rhs = parse_combo(req.rhs, x=x)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    report = verify_symbol_identity(lhs, rhs, req.order)
    return _report_response(f"umbral:{req.lhs}=={req.rhs}", report)


@app.post("/count", response_model=CountResponse)
def count(req: CountRequest) -> CountResponse:
    if req.initial is not None:
        value = count_with_min_index(req.n, req.l, req.initial)
    else:
        value = count_nonadjacent(req.n, req.l)
    subsets = None
    if req.list_subsets:
        subsets = [list(s) for s in nonadjacent_subsets(req.n, req.l)]
        if req.initial is not None:
            subsets = [s for s in subsets if s and s[-1] == req.initial]
    return CountResponse(count=value, subsets=subsets)


@app.post("/denominator", response_model=DenominatorResponse)
def denominator(req: DenominatorRequest) -> DenominatorResponse:
    terms = denominator_terms(req.n)
    return DenominatorResponse(terms=format_denominator_terms(terms), count=len(terms))


def _build_system(req: VerifyLoopRequest):
    if req.model == "bd":
        if not req.chain:
            raise HTTPException(status_code=400, detail="bd model needs a chain")
        return bd_system(BirthDeathChain.from_strings(req.chain), req.order)
    if req.sites is not None:
        config = SiteConfig.from_strings(req.sites)
    elif req.loops is not None:
        last = req.loops + 1 if req.model == "bm" else req.loops + 2
        config = unit_sites(last)
    else:
        raise HTTPException(status_code=400, detail="need either sites or loops")
    builder = bm_system if req.model == "bm" else bessel_system
    return builder(config, req.order)


@app.post("/verify/loop", response_model=VerifyResponse)
def verify_loop_endpoint(req: VerifyLoopRequest) -> VerifyResponse:
    try:
        system = _build_system(req)
        report = verify_loop(system)
    except LoopwalkError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return _report_response(f"loop:{req.model}", report, m=len(system.loops))


@app.post("/verify/identity", response_model=VerifyResponse)
def verify_identity(req: VerifyIdentityRequest) -> VerifyResponse:
    try:
        if req.model == "egf":
            report = bernoulli_diff_gf_check(_rational(req.x), req.order)
            return _report_response("identity:bernoulli-diff-gf", report)
        if req.m is None:
            raise HTTPException(status_code=400, detail="bm/bessel identities need m")
        if req.model == "bm":
            report = bm_master_check(req.m, req.order)
        else:
            report = bessel_master_check(req.m, req.order)
    except (LoopwalkError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return _report_response(f"identity:{req.model}-master", report, m=req.m)


@app.post("/tail", response_model=TailResponse)
def tail(req: TailRequest) -> TailResponse:
    poly_fn = bm_bracket_poly if req.model == "bm" else bessel_bracket_poly
    try:
        diffs = geometric_tail_report(poly_fn(req.m), req.order, req.k)
    except (LoopwalkError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return TailResponse(
        errors=[str(d) for d in diffs],
        max_abs_error=max(abs(float(d)) for d in diffs),
    )


@app.post("/partial", response_model=PartialResponse)
def partial(req: PartialRequest) -> PartialResponse:
    try:
        x = _rational(req.x)
        if req.model == "bm":
            table = euler_identity_partial(req.m, req.n, x, req.k, req.printed_order)
        else:
            table = bessel_identity_partial(req.m, req.n, x, req.k)
    except (LoopwalkError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    rows = [
        PartialRow(k=k, partial_sum=str(s), abs_error=str(abs(s - table.target)))
        for k, s in enumerate(table.partial_sums)
    ]
    return PartialResponse(target=str(table.target), rows=rows)


@app.post("/simulate", response_model=SimulateResponse)
def simulate(req: SimulateRequest) -> SimulateResponse:
    try:
        if req.model == "bm":
            report = simulate_bm_hit(
                _rational(req.level), req.w, req.paths, req.dt, req.seed
            )
        elif req.model == "bessel":
            report = simulate_bessel_hit(
                _rational(req.level), req.w, req.paths, req.dt, req.seed
            )
        else:
            if not req.chain:
                raise HTTPException(status_code=400, detail="bd model needs a chain")
            chain = BirthDeathChain.from_strings(req.chain)
            target = req.target if req.target is not None else chain.n_sites - 1
            report = simulate_bd(
                chain, req.start, target, req.z, req.paths, req.seed, req.taboo
            )
    except (LoopwalkError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return SimulateResponse(
        estimate=report.estimate,
        std_error=report.std_error,
        target=report.target,
        paths=report.paths,
        dt=report.dt,
        seed=report.seed,
        passed=report.passed,
    )
