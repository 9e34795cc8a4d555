"""FastAPI application wrapping the condition-number library.

Every endpoint is a stateless POST taking and returning JSON; mathematical
inapplicability is part of the response body, while malformed inputs and
exceeded enumeration caps map to HTTP 400.
"""

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..config import DEFAULT_TOLS
from ..errors import AvecondError
from . import handlers
from . import schemas as sc

app = FastAPI(
    title="avecond",
    description=(
        "Condition numbers and certified error bounds for absolute value "
        "equations Ax - b = |x|, with a linear-complementarity bridge."
    ),
    version=__version__,
)


def _run(handler, *args):
    try:
        return handler(*args)
    except (AvecondError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/health", response_model=sc.HealthResponse)
def health() -> sc.HealthResponse:
    return sc.HealthResponse(version=__version__)


@app.post("/condnum", response_model=sc.CondnumResponse)
def condnum(req: sc.CondnumRequest) -> sc.CondnumResponse:
    return _run(handlers.handle_condnum, req, DEFAULT_TOLS)


@app.post("/certify", response_model=sc.CertifyResponse)
def certify(req: sc.CertifyRequest) -> sc.CertifyResponse:
    return _run(handlers.handle_certify, req, DEFAULT_TOLS)


@app.post("/regularity", response_model=sc.RegularityResponse)
def regularity(req: sc.RegularityRequest) -> sc.RegularityResponse:
    return _run(handlers.handle_regularity, req, DEFAULT_TOLS)


@app.post("/solve", response_model=sc.SolveResponse)
def solve(req: sc.SolveRequest) -> sc.SolveResponse:
    return _run(handlers.handle_solve, req, DEFAULT_TOLS)


@app.post("/lcp", response_model=sc.LcpResponse)
def lcp(req: sc.LcpRequest) -> sc.LcpResponse:
    return _run(handlers.handle_lcp, req, DEFAULT_TOLS)


@app.post("/selftest", response_model=sc.SelftestResponse)
def selftest() -> sc.SelftestResponse:
    return _run(handlers.handle_selftest, DEFAULT_TOLS)
