"""``vc``: run the client and server roles as separate invocations.

Exit status: 0 on accept, 2 when the client rejects a response, 1 on usage
errors or malformed files.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from mlvc.bgn import MessageDomain
from mlvc.errors import DomainError, MlvcError, Reject
from mlvc.mgroup import statistical_distance_closed_form, statistical_distance_pxy
from mlvc.pir import pir_mm_retrieve_index, pir_mm_setup, pir_pe_retrieve, pir_pe_setup
from mlvc.stats import client_ops, measure_mm, measure_pe, server_ops
from mlvc.tamper import STRATEGIES, tamper_mm, tamper_pe
from mlvc import wire
from mlvc.vcmm import mm_compute, mm_keygen, mm_probgen, mm_verify
from mlvc.vcpe import FUNCTION_PRIVATE, PLAIN, pe_compute, pe_keygen, pe_probgen, pe_verify

EXIT_OK, EXIT_USAGE, EXIT_REJECT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}")


def _matrix(text: str) -> list[list[int]]:
    return [_ints(row) for row in text.split(";") if row.strip()]


def _query_id(rng: random.Random) -> str:
    return f"{rng.getrandbits(64):016x}"


def _path(args, name: str, override: str | None) -> Path:
    return Path(override) if override else Path(args.dir) / name


# -- polynomial evaluation ---------------------------------------------------

def _load_pe_pks(args):
    obj = wire.read_json(_path(args, "pe_pk.json", None))
    return obj["scheme"], [wire.decode_pe_pk(o) for o in obj["instances"]]


def _load_pe_keys(args):
    scheme, pks = _load_pe_pks(args)
    sk_obj = wire.read_json(_path(args, "pe_sk.json", None))
    sks = [wire.decode_pe_sk(o, pk.params) for o, pk in zip(sk_obj["instances"], pks, strict=True)]
    return scheme, pks, sks


def pe_keygen_cmd(args) -> int:
    rng = random.Random(args.seed)
    coeffs = args.coeffs
    if len(coeffs) < 2:
        raise UsageError("need at least two coefficients (degree >= 1)")
    keys = [
        pe_keygen(coeffs, rng, lambda_bits=args.lambda_bits, mode=args.mode,
                  domain=MessageDomain(args.domain_bound), inputs=range(args.input_bound))
        for _ in range(args.reps)
    ]
    Path(args.dir).mkdir(parents=True, exist_ok=True)
    scheme = wire.scheme_tag("pe", args.mode)
    wire.write_json(Path(args.dir) / "pe_pk.json", {
        "scheme": scheme, "instances": [wire.encode_pe_pk(pk) for pk, _ in keys]})
    wire.write_json(Path(args.dir) / "pe_sk.json", {
        "scheme": scheme,
        "instances": [wire.encode_pe_sk(sk, pk.params) for pk, sk in keys]})
    print(f"wrote {scheme} keys ({args.reps} instance(s), k={keys[0][0].k}) to {args.dir}")
    return EXIT_OK


def pe_probgen_cmd(args) -> int:
    rng = random.Random(args.seed)
    scheme, pks, sks = _load_pe_keys(args)
    queries = [pe_probgen(sk, pk, args.alpha, rng) for pk, sk in zip(pks, sks)]
    qid = args.query_id or _query_id(rng)
    msg = wire.WireMessage("query", scheme, qid, {
        "instances": [{"sigma": wire.encode_elements(qu.sigma)} for qu in queries]})
    wire.write_json(_path(args, "query.json", args.query), msg.to_json())
    wire.write_json(_path(args, "vkey.json", args.vkey), {"query_id": qid, "alpha": args.alpha})
    print(f"query {qid}: {sum(len(qu.sigma) for qu in queries)} group elements")
    return EXIT_OK


def _read_query(path):
    msg = wire.WireMessage.from_json(wire.read_json(path))
    if msg.kind != "query":
        raise wire.WireError(f"{path} is not a query")
    return msg


def pe_compute_cmd(args) -> int:
    # server role: public key and query only
    rng = random.Random(args.seed)
    scheme, pks = _load_pe_pks(args)
    msg = _read_query(_path(args, "query.json", args.query))
    bodies = msg.body["instances"]
    if len(bodies) != len(pks):
        raise wire.WireError("query instance count does not match the public key")
    sigmas = [wire.decode_elements(b["sigma"], pk.params) for b, pk in zip(bodies, pks)]
    replay = None
    if args.tamper == "replay":
        if not args.replay_query:
            raise UsageError("--tamper replay needs --replay-query")
        other = _read_query(args.replay_query).body["instances"]
        replay = [wire.decode_elements(b["sigma"], pk.params) for b, pk in zip(other, pks)]
    responses = []
    for idx, (pk, sigma) in enumerate(zip(pks, sigmas)):
        if args.tamper and idx in args.tamper_instances:
            responses.append(tamper_pe(pk, sigma, args.tamper, rng,
                                       replay[idx] if replay else None))
        else:
            responses.append(pe_compute(pk, sigma))
    out = wire.WireMessage("response", scheme, msg.query_id, {
        "instances": [wire.encode_pe_response(r) for r in responses]})
    wire.write_json(_path(args, "response.json", args.out), out.to_json())
    print(f"response for query {msg.query_id} written")
    return EXIT_OK


def pe_verify_cmd(args) -> int:
    scheme, pks, sks = _load_pe_keys(args)
    vkey = wire.read_json(_path(args, "vkey.json", args.vkey))
    msg = wire.WireMessage.from_json(wire.read_json(_path(args, "response.json", args.response)))
    if msg.kind != "response":
        raise wire.WireError("not a response message")
    if msg.query_id != vkey["query_id"]:
        raise Reject("malformed", "response answers a different query")
    bodies = msg.body["instances"]
    if len(bodies) != len(pks):
        raise Reject("malformed", "instance count mismatch")
    ys = {
        pe_verify(sk, pk, int(vkey["alpha"]), wire.decode_pe_response(b, pk.params))
        for pk, sk, b in zip(pks, sks, bodies)
    }
    if len(ys) != 1:
        raise Reject("disagree", f"instances returned {sorted(ys)}")
    print(ys.pop())
    return EXIT_OK


# -- matrix-vector -----------------------------------------------------------

def _load_mm_pk(args):
    obj = wire.read_json(_path(args, "mm_pk.json", None))
    return obj["scheme"], wire.decode_mm_pk(obj["key"])


def _load_mm_keys(args):
    scheme, pk = _load_mm_pk(args)
    sk = wire.decode_mm_sk(wire.read_json(_path(args, "mm_sk.json", None))["key"], pk.params)
    return scheme, pk, sk


def mm_keygen_cmd(args) -> int:
    rng = random.Random(args.seed)
    pk, sk = mm_keygen(args.matrix, rng, lambda_bits=args.lambda_bits, mode=args.mode,
                       domain=MessageDomain(args.domain_bound), inputs=range(args.input_bound))
    Path(args.dir).mkdir(parents=True, exist_ok=True)
    scheme = wire.scheme_tag("mm", args.mode)
    wire.write_json(Path(args.dir) / "mm_pk.json", {"scheme": scheme, "key": wire.encode_mm_pk(pk)})
    wire.write_json(Path(args.dir) / "mm_sk.json",
                    {"scheme": scheme, "key": wire.encode_mm_sk(sk, pk.params)})
    print(f"wrote {scheme} keys (n={pk.n}) to {args.dir}")
    return EXIT_OK


def mm_probgen_cmd(args) -> int:
    rng = random.Random(args.seed)
    scheme, pk, sk = _load_mm_keys(args)
    query = mm_probgen(sk, pk, args.x, rng)
    qid = args.query_id or _query_id(rng)
    msg = wire.WireMessage("query", scheme, qid, {"sigma": wire.encode_elements(query.sigma)})
    wire.write_json(_path(args, "query.json", args.query), msg.to_json())
    wire.write_json(_path(args, "tau.json", args.vkey),
                    {"query_id": qid, "tau": wire.encode_elements(query.tau)})
    print(f"query {qid}: {len(query.sigma)} group elements")
    return EXIT_OK


def mm_compute_cmd(args) -> int:
    rng = random.Random(args.seed)
    scheme, pk = _load_mm_pk(args)
    msg = _read_query(_path(args, "query.json", args.query))
    sigma = wire.decode_elements(msg.body["sigma"], pk.params)
    if args.tamper:
        replay = None
        if args.tamper == "replay":
            if not args.replay_query:
                raise UsageError("--tamper replay needs --replay-query")
            other = _read_query(args.replay_query)
            replay = wire.decode_elements(other.body["sigma"], pk.params)
        response = tamper_mm(pk, sigma, args.tamper, rng, replay)
    else:
        response = mm_compute(pk, sigma)
    out = wire.WireMessage("response", scheme, msg.query_id, wire.encode_mm_response(response))
    wire.write_json(_path(args, "response.json", args.out), out.to_json())
    print(f"response for query {msg.query_id} written")
    return EXIT_OK


def mm_verify_cmd(args) -> int:
    scheme, pk, sk = _load_mm_keys(args)
    vkey = wire.read_json(_path(args, "tau.json", args.vkey))
    msg = wire.WireMessage.from_json(wire.read_json(_path(args, "response.json", args.response)))
    if msg.kind != "response":
        raise wire.WireError("not a response message")
    if msg.query_id != vkey["query_id"]:
        raise Reject("malformed", "response answers a different query")
    tau = wire.decode_elements(vkey["tau"], pk.params)
    ys = mm_verify(sk, pk, tau, wire.decode_mm_response(msg.body, pk.params))
    print(",".join(map(str, ys)))
    return EXIT_OK


# -- applications and diagnostics --------------------------------------------

def pir_cmd(args) -> int:
    rng = random.Random(args.seed)
    if args.scheme == "pe":
        state = pir_pe_setup(args.db, rng, lambda_bits=args.lambda_bits, mode=args.mode)
        if not 1 <= args.index <= len(state.db):
            raise UsageError(f"index must lie in [1, {len(state.db)}]")
        bit = pir_pe_retrieve(state, args.index, args.tamper)
    else:
        state = pir_mm_setup(args.db, rng, lambda_bits=args.lambda_bits, mode=args.mode)
        if not 1 <= args.index <= len(state.db):
            raise UsageError(f"index must lie in [1, {len(state.db)}]")
        bit = pir_mm_retrieve_index(state, args.index, args.tamper)
    print(bit)
    return EXIT_OK


def stats_cmd(args) -> int:
    measure = measure_pe if args.scheme == "pe" else measure_mm
    report = {}
    for n in args.n or ([15, 255] if args.scheme == "pe" else [8, 32]):
        counter = measure(n, seed=args.seed or 0, lambda_bits=args.lambda_bits, mode=args.mode)
        report[str(n)] = {
            "phases": counter.as_dict(),
            "client": client_ops(counter),
            "server": server_ops(counter),
        }
    print(json.dumps(report, indent=1))
    return EXIT_OK


def lemma22_cmd(args) -> int:
    exact = statistical_distance_pxy(args.p, args.q)
    print(exact)
    if args.check and exact != statistical_distance_closed_form(args.q):
        print(f"closed form gives {statistical_distance_closed_form(args.q)}", file=sys.stderr)
        return EXIT_REJECT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vc", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, keygen=False):
        p.add_argument("--dir", default=".", help="directory holding key and message files")
        p.add_argument("--seed", type=int, default=None)
        if keygen:
            p.add_argument("--lambda-bits", type=int, default=16)
            p.add_argument("--mode", default=PLAIN, choices=[PLAIN, FUNCTION_PRIVATE])
            p.add_argument("--domain-bound", type=int, default=1 << 16,
                           help="decryptable results lie in [0, BOUND)")
            p.add_argument("--input-bound", type=int, default=256,
                           help="client inputs lie in [0, BOUND)")

    for scheme in ("pe", "mm"):
        sp = top.add_parser(scheme, help=f"{'polynomial evaluation' if scheme == 'pe' else 'matrix-vector'} scheme")
        sub = sp.add_subparsers(dest="action", required=True, parser_class=_Parser)

        kg = sub.add_parser("keygen")
        common(kg, keygen=True)
        if scheme == "pe":
            kg.add_argument("--coeffs", type=_ints, required=True, help="f_0,f_1,...,f_n")
            kg.add_argument("--reps", type=int, default=1, help="independent instances")
            kg.set_defaults(func=pe_keygen_cmd)
        else:
            kg.add_argument("--matrix", type=_matrix, required=True, help='rows as "1,2;3,4"')
            kg.set_defaults(func=mm_keygen_cmd)

        pg = sub.add_parser("probgen")
        common(pg)
        if scheme == "pe":
            pg.add_argument("--alpha", type=int, required=True)
        else:
            pg.add_argument("--x", type=_ints, required=True)
        pg.add_argument("--query", help="output query file")
        pg.add_argument("--vkey", help="output client-retained verification key file")
        pg.add_argument("--query-id")
        pg.set_defaults(func=pe_probgen_cmd if scheme == "pe" else mm_probgen_cmd)

        cp = sub.add_parser("compute")
        common(cp)
        cp.add_argument("--query")
        cp.add_argument("--out")
        cp.add_argument("--tamper", choices=STRATEGIES)
        cp.add_argument("--replay-query", help="query to answer instead (with --tamper replay)")
        if scheme == "pe":
            cp.add_argument("--tamper-instances", type=_ints, default=[0],
                            help="which repetition instances to tamper with")
        cp.set_defaults(func=pe_compute_cmd if scheme == "pe" else mm_compute_cmd)

        vf = sub.add_parser("verify")
        common(vf)
        vf.add_argument("--response")
        vf.add_argument("--vkey")
        vf.set_defaults(func=pe_verify_cmd if scheme == "pe" else mm_verify_cmd)

    pir = top.add_parser("pir", help="retrieve one bit of an outsourced database")
    pir.add_argument("--scheme", choices=["pe", "mm"], default="pe")
    pir.add_argument("--db", required=True, help="bit string, e.g. 1011")
    pir.add_argument("--index", type=int, required=True, help="1-based bit position")
    pir.add_argument("--lambda-bits", type=int, default=16)
    pir.add_argument("--mode", default=PLAIN, choices=[PLAIN, FUNCTION_PRIVATE])
    pir.add_argument("--tamper", choices=STRATEGIES)
    pir.add_argument("--seed", type=int, default=None)
    pir.set_defaults(func=pir_cmd)

    st = top.add_parser("stats", help="group-operation counts per phase")
    st.add_argument("--scheme", choices=["pe", "mm"], default="pe")
    st.add_argument("--n", type=int, action="append")
    st.add_argument("--lambda-bits", type=int, default=16)
    st.add_argument("--mode", default=PLAIN, choices=[PLAIN, FUNCTION_PRIVATE])
    st.add_argument("--seed", type=int, default=0)
    st.set_defaults(func=stats_cmd)

    lm = top.add_parser("lemma22", help="exact statistical distance of p*X*Y mod q from uniform")
    lm.add_argument("--p", type=int, required=True)
    lm.add_argument("--q", type=int, required=True)
    lm.add_argument("--check", action="store_true", help="compare with 2(q-1)/q^2")
    lm.set_defaults(func=lemma22_cmd)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Reject as exc:
        print(f"REJECT ({exc})", file=sys.stderr)
        return EXIT_REJECT
    except (UsageError, wire.WireError, DomainError, MlvcError, ValueError,
            KeyError, OSError, IndexError) as exc:
        print(f"vc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
