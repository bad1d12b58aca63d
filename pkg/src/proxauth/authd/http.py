"""JSON-over-HTTP face of the authentication service.

Bodies are parsed by hand rather than through a schema layer so that every
failure, including malformed input, comes back in the one error shape:

    {"error": "<code>", "message": "<human text>"}

Denied logins answer with the same bytes whether the overlap or the
proximity check failed; which one is in the service audit log, not on the
wire.
"""

from __future__ import annotations

import numbers

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import (
    AuthFailed,
    Conflict,
    ConfigError,
    Expired,
    Incomplete,
    InvalidState,
    ProxauthError,
    TooManyRequests,
    ValidationError,
)
from ..rfsim.environment import BeaconObservation, ScanReport
from .core import AuthService, _DENIED

# most specific first; the first isinstance hit decides status and code
_STATUS_MAP = (
    (Incomplete, 400, "incomplete"),
    (ValidationError, 400, "validation_error"),
    (AuthFailed, 401, "auth_failed"),
    (Conflict, 409, "conflict"),
    (InvalidState, 409, "invalid_state"),
    (Expired, 410, "expired"),
    (TooManyRequests, 429, "too_many_requests"),
    (ConfigError, 500, "config_error"),
)


def _error_response(exc: ProxauthError) -> JSONResponse:
    for klass, status, code in _STATUS_MAP:
        if isinstance(exc, klass):
            return JSONResponse(status_code=status,
                                content={"error": code, "message": str(exc)})
    return JSONResponse(status_code=400,
                        content={"error": "bad_request", "message": str(exc)})


async def _json_body(request: Request) -> dict:
    try:
        doc = await request.json()
    except Exception as exc:
        raise ValidationError("request body must be valid JSON") from exc
    if not isinstance(doc, dict):
        raise ValidationError("request body must be a JSON object")
    return doc


def _need(doc: dict, key: str, kind=None):
    if key not in doc:
        raise ValidationError(f"missing field {key!r}")
    value = doc[key]
    if kind is not None and not isinstance(value, kind):
        raise ValidationError(f"field {key!r} has the wrong type")
    return value


def parse_scan(doc) -> ScanReport:
    """Build a ScanReport from its wire form.

    Observations carry only what a scanner can know: ssid, bssid,
    frequency_mhz, rssi_dbm. The AP's internal id and the observing
    device's zone are unknown over the wire and default to 0 / absent.
    """
    if not isinstance(doc, dict):
        raise ValidationError("scan report must be a JSON object")
    device_id = str(_need(doc, "device_id"))
    role = str(_need(doc, "role"))
    t = _need(doc, "t", numbers.Real)
    obs_docs = _need(doc, "observations", list)
    observations = []
    for ob in obs_docs:
        if not isinstance(ob, dict):
            raise ValidationError("each observation must be a JSON object")
        observations.append(BeaconObservation(
            ap_id=int(ob.get("ap_id", 0)),
            ssid=str(_need(ob, "ssid")),
            bssid=str(_need(ob, "bssid")),
            frequency_mhz=int(_need(ob, "frequency_mhz", numbers.Real)),
            rssi_dbm=float(_need(ob, "rssi_dbm", numbers.Real)),
            observer=device_id,
            t=float(t),
        ))
    zone = doc.get("zone")
    return ScanReport(device_id=device_id, role=role, t=float(t),
                      observations=tuple(observations),
                      zone=None if zone is None else int(zone))


def create_app(service: AuthService) -> FastAPI:
    app = FastAPI(title="proxauth", docs_url=None, redoc_url=None,
                  openapi_url=None)

    @app.exception_handler(ProxauthError)
    async def _domain_error(request: Request, exc: ProxauthError):
        return _error_response(exc)

    @app.exception_handler(KeyError)
    async def _not_found(request: Request, exc: KeyError):
        return JSONResponse(status_code=404,
                            content={"error": "not_found",
                                     "message": "no such resource"})

    @app.post("/register", status_code=201)
    async def register(request: Request):
        doc = await _json_body(request)
        devices = _need(doc, "devices", dict)
        profile = service.register(
            username=str(_need(doc, "username")),
            password=str(_need(doc, "password")),
            security_question=str(_need(doc, "security_question")),
            security_answer=str(_need(doc, "security_answer")),
            email=str(_need(doc, "email")),
            login_device=str(_need(devices, "login")),
            mobile_device=str(_need(devices, "mobile")),
        )
        return {"username": profile.username, "created_at": profile.created_at}

    @app.post("/login")
    async def login(request: Request):
        doc = await _json_body(request)
        pending = service.login_step1(str(_need(doc, "username")),
                                      str(_need(doc, "password")))
        return {"pending_id": pending.pending_id,
                "expires_at": pending.expires_at,
                "scan_request": dict(pending.requested_devices)}

    @app.post("/auth/{pending_id}/scans")
    async def submit_scans(pending_id: str, request: Request):
        doc = await _json_body(request)
        login_scan = parse_scan(_need(doc, "login"))
        mobile_scan = parse_scan(_need(doc, "mobile"))
        decision = service.submit_scans(pending_id, login_scan, mobile_scan)
        if not decision.granted:
            # overlap and proximity denials are indistinguishable on the wire
            return JSONResponse(status_code=401,
                                content={"error": "auth_failed",
                                         "message": _DENIED})
        sess = decision.session
        return {"granted": True, "session_id": sess.session_id,
                "next_check_at": sess.next_check_at}

    @app.get("/session/{session_id}")
    async def get_session(session_id: str):
        return service.get_session(session_id).to_dict()

    @app.post("/session/{session_id}/tick")
    async def tick(session_id: str, request: Request):
        doc = await _json_body(request)
        login_scan = parse_scan(_need(doc, "login"))
        mobile_scan = parse_scan(_need(doc, "mobile"))
        result = service.continuous_tick(session_id, login_scan, mobile_scan)
        sess = service.get_session(session_id)
        return {"result": result, "status": sess.status,
                "next_check_at": sess.next_check_at,
                "termination_reason": sess.termination_reason}

    @app.post("/otp/request")
    async def otp_request(request: Request):
        doc = await _json_body(request)
        return service.request_otp(str(_need(doc, "username")),
                                   str(_need(doc, "security_answer")))

    @app.post("/otp/verify")
    async def otp_verify(request: Request):
        doc = await _json_body(request)
        sess = service.verify_otp(str(_need(doc, "username")),
                                  str(_need(doc, "code")))
        return {"session_id": sess.session_id, "status": sess.status,
                "otp_fallback": True}

    return app
