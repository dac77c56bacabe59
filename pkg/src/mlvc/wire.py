"""Canonical JSON encodings for keys, queries and responses.

Big integers are always decimal strings.  Secret-key files carry a hash of
the group parameters so they cannot be paired with a foreign public key.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Collection

import jsonschema

from mlvc.bgn import BgnPublicKey, MessageDomain
from mlvc.mgroup import GroupElement, MlmParams
from mlvc.polyarith import Polynomial
from mlvc.prfcfe import PrfKey
from mlvc.vcmm import MmPublicKey, MmResponse, MmSecretKey
from mlvc.vcpe import PePublicKey, PeResponse, PeSecretKey

SCHEMES = ("pe", "pe-fp", "mm", "mm-fp")
KINDS = ("query", "response")


class WireError(ValueError):
    """A file or message does not match its expected format."""


def _int(s: Any) -> int:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise WireError(f"expected a decimal string, got {s!r}")
    try:
        return int(s)
    except ValueError:
        raise WireError(f"not a decimal integer: {s!r}") from None


# -- group objects ---------------------------------------------------------

def encode_params(params: MlmParams) -> dict:
    return {
        "lambda_bits": params.lambda_bits,
        "k": params.k,
        "p": str(params.p),
        "q": str(params.q),
        "backend": params.backend_id,
    }


def decode_params(obj: dict) -> MlmParams:
    try:
        return MlmParams(
            lambda_bits=int(obj["lambda_bits"]),
            k=int(obj["k"]),
            p=_int(obj["p"]),
            q=_int(obj["q"]),
            backend_id=obj.get("backend", "transparent"),
        )
    except (KeyError, TypeError) as exc:
        raise WireError(f"bad params object: {exc}") from None


def params_hash(params: MlmParams) -> str:
    canon = json.dumps(encode_params(params), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def encode_element(x: GroupElement) -> dict:
    return {"level": x.level, "exp": str(x.exp)}


def decode_element(obj: dict, params: MlmParams) -> GroupElement:
    try:
        level, exp = int(obj["level"]), _int(obj["exp"])
    except (KeyError, TypeError) as exc:
        raise WireError(f"bad group element: {exc}") from None
    if not 1 <= level <= params.k:
        raise WireError(f"element level {level} outside [1, {params.k}]")
    if not 0 <= exp < params.N:
        raise WireError("element exponent out of range")
    return GroupElement(params, level, exp)


def encode_elements(xs) -> list:
    return [encode_element(x) for x in xs]


def decode_elements(objs, params: MlmParams) -> tuple[GroupElement, ...]:
    if not isinstance(objs, list):
        raise WireError("expected a list of group elements")
    return tuple(decode_element(o, params) for o in objs)


def encode_polynomial(f: Polynomial) -> dict:
    return {"q": str(f.modulus), "coeffs": [str(c) for c in f.coeffs]}


def decode_polynomial(obj: dict) -> Polynomial:
    return Polynomial(_int(obj["q"]), [_int(c) for c in obj["coeffs"]])


def encode_bgn_pk(pk: BgnPublicKey) -> dict:
    return {"params": encode_params(pk.params), "h": encode_element(pk.h)}


def decode_bgn_pk(obj: dict) -> BgnPublicKey:
    params = decode_params(obj["params"])
    return BgnPublicKey(params, decode_element(obj["h"], params))


def encode_inputs(inputs: Collection[int]) -> dict | list:
    if isinstance(inputs, range) and inputs.step == 1:
        return {"start": inputs.start, "stop": inputs.stop}
    return sorted(int(v) for v in inputs)


def decode_inputs(obj) -> Collection[int]:
    if isinstance(obj, dict):
        return range(int(obj["start"]), int(obj["stop"]))
    return frozenset(int(v) for v in obj)


def encode_prf_key(key: PrfKey) -> dict:
    return {
        "alphas": [str(a) for a in key.alphas],
        "betas": [str(b) for b in key.betas],
        "As": encode_elements(key.As),
        "Bs": encode_elements(key.Bs),
    }


def decode_prf_key(obj: dict, params: MlmParams) -> PrfKey:
    return PrfKey(
        tuple(_int(a) for a in obj["alphas"]),
        tuple(_int(b) for b in obj["betas"]),
        decode_elements(obj["As"], params),
        decode_elements(obj["Bs"], params),
    )


def _check_binding(obj: dict, params: MlmParams) -> None:
    if obj.get("params_hash") != params_hash(params):
        raise WireError("secret key does not belong to this public key")


# -- polynomial evaluation -------------------------------------------------

def encode_pe_pk(pk: PePublicKey) -> dict:
    return {
        "bgn": encode_bgn_pk(pk.bgn),
        "n": pk.n,
        "mode": pk.mode,
        "tower": encode_elements(pk.tower),
        "f": encode_polynomial(pk.f) if pk.f is not None else None,
        "gamma": encode_elements(pk.gamma) if pk.gamma is not None else None,
    }


def decode_pe_pk(obj: dict) -> PePublicKey:
    bpk = decode_bgn_pk(obj["bgn"])
    params = bpk.params
    return PePublicKey(
        bgn=bpk,
        tower=decode_elements(obj["tower"], params),
        n=int(obj["n"]),
        mode=obj["mode"],
        f=decode_polynomial(obj["f"]) if obj.get("f") is not None else None,
        gamma=decode_elements(obj["gamma"], params) if obj.get("gamma") is not None else None,
    )


def encode_pe_sk(sk: PeSecretKey, params: MlmParams) -> dict:
    return {
        "p": str(sk.p),
        "q": str(sk.q),
        "s": str(sk.s),
        "t": encode_element(sk.t),
        "mode": sk.mode,
        "domain_bound": sk.domain.bound,
        "inputs": encode_inputs(sk.inputs),
        "params_hash": params_hash(params),
    }


def decode_pe_sk(obj: dict, params: MlmParams) -> PeSecretKey:
    _check_binding(obj, params)
    return PeSecretKey(
        p=_int(obj["p"]),
        q=_int(obj["q"]),
        s=_int(obj["s"]),
        t=decode_element(obj["t"], params),
        mode=obj["mode"],
        domain=MessageDomain(int(obj["domain_bound"])),
        inputs=decode_inputs(obj["inputs"]),
    )


def encode_pe_response(resp: PeResponse) -> dict:
    return {"rho": encode_element(resp.rho), "pi": encode_element(resp.pi)}


def decode_pe_response(obj: dict, params: MlmParams) -> PeResponse:
    return PeResponse(decode_element(obj["rho"], params), decode_element(obj["pi"], params))


# -- matrix-vector ---------------------------------------------------------

def encode_mm_pk(pk: MmPublicKey) -> dict:
    return {
        "bgn": encode_bgn_pk(pk.bgn),
        "mode": pk.mode,
        "T": [encode_elements(row) for row in pk.T],
        "M": [[str(v) for v in row] for row in pk.M] if pk.M is not None else None,
        "gamma": [encode_elements(row) for row in pk.gamma] if pk.gamma is not None else None,
    }


def decode_mm_pk(obj: dict) -> MmPublicKey:
    bpk = decode_bgn_pk(obj["bgn"])
    params = bpk.params
    M = obj.get("M")
    gamma = obj.get("gamma")
    return MmPublicKey(
        bgn=bpk,
        T=tuple(decode_elements(row, params) for row in obj["T"]),
        mode=obj["mode"],
        M=tuple(tuple(_int(v) for v in row) for row in M) if M is not None else None,
        gamma=tuple(decode_elements(row, params) for row in gamma) if gamma is not None else None,
    )


def encode_mm_sk(sk: MmSecretKey, params: MlmParams) -> dict:
    return {
        "p": str(sk.p),
        "q": str(sk.q),
        "prf_key": encode_prf_key(sk.prf_key),
        "a": str(sk.a),
        "eta": encode_element(sk.eta),
        "mode": sk.mode,
        "domain_bound": sk.domain.bound,
        "inputs": encode_inputs(sk.inputs),
        "params_hash": params_hash(params),
    }


def decode_mm_sk(obj: dict, params: MlmParams) -> MmSecretKey:
    _check_binding(obj, params)
    return MmSecretKey(
        p=_int(obj["p"]),
        q=_int(obj["q"]),
        prf_key=decode_prf_key(obj["prf_key"], params),
        a=_int(obj["a"]),
        eta=decode_element(obj["eta"], params),
        mode=obj["mode"],
        domain=MessageDomain(int(obj["domain_bound"])),
        inputs=decode_inputs(obj["inputs"]),
    )


def encode_mm_response(resp: MmResponse) -> dict:
    return {"rho": encode_elements(resp.rho), "pi": encode_elements(resp.pi)}


def decode_mm_response(obj: dict, params: MlmParams) -> MmResponse:
    return MmResponse(decode_elements(obj["rho"], params), decode_elements(obj["pi"], params))


# -- messages --------------------------------------------------------------

_ELEMENT = {
    "type": "object",
    "required": ["level", "exp"],
    "properties": {
        "level": {"type": "integer", "minimum": 1},
        "exp": {"type": "string", "pattern": "^[0-9]+$"},
    },
}
_ELEMENTS = {"type": "array", "items": _ELEMENT}
_QUERY_BODY = {"type": "object", "required": ["sigma"], "properties": {"sigma": _ELEMENTS}}
_PE_RESPONSE_BODY = {
    "type": "object",
    "required": ["rho", "pi"],
    "properties": {"rho": _ELEMENT, "pi": _ELEMENT},
}
_MM_RESPONSE_BODY = {
    "type": "object",
    "required": ["rho", "pi"],
    "properties": {"rho": _ELEMENTS, "pi": _ELEMENTS},
}


def _instances(item: dict) -> dict:
    return {
        "type": "object",
        "required": ["instances"],
        "properties": {"instances": {"type": "array", "minItems": 1, "items": item}},
    }


BODY_SCHEMAS = {
    ("query", "pe"): _instances(_QUERY_BODY),
    ("response", "pe"): _instances(_PE_RESPONSE_BODY),
    ("query", "mm"): _QUERY_BODY,
    ("response", "mm"): _MM_RESPONSE_BODY,
}


@dataclass(frozen=True)
class WireMessage:
    """What travels between client and server.

    Polynomial-evaluation bodies wrap a list of per-instance payloads under
    ``"instances"`` so repetition runs share the format.
    """

    kind: str
    scheme: str
    query_id: str
    body: dict

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise WireError(f"unknown message kind {self.kind!r}")
        if self.scheme not in SCHEMES:
            raise WireError(f"unknown scheme {self.scheme!r}")
        schema = BODY_SCHEMAS[(self.kind, self.scheme.split("-")[0])]
        try:
            jsonschema.validate(self.body, schema)
        except jsonschema.ValidationError as exc:
            raise WireError(f"invalid {self.kind} body: {exc.message}") from None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "scheme": self.scheme,
            "query_id": self.query_id,
            "body": self.body,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "WireMessage":
        try:
            return cls(obj["kind"], obj["scheme"], str(obj["query_id"]), obj["body"])
        except (KeyError, TypeError) as exc:
            raise WireError(f"bad message envelope: {exc}") from None


def scheme_tag(base: str, mode: str) -> str:
    return base if mode == "plain" else f"{base}-fp"


def write_json(path: str | Path, obj: Any) -> None:
    Path(path).write_text(json.dumps(obj, indent=1) + "\n")


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise WireError(f"{path}: invalid JSON ({exc})") from None
