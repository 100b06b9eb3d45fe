"""Command line entry point.

Exit codes: 0 accepted (or command succeeded), 1 rejected, 2 usage or input error.
The interactive verifier seed comes from --seed, else LINCERT_SEED, else 0.
"""

from __future__ import annotations

import argparse
import os
import shlex
import subprocess
import sys

from . import oracle
from .adversary import ATTACKS, BY_ATTACK, run_attack
from .errors import BadCertificate, LincertError
from .fiat_shamir import CertificateFile, fs_prove, fs_verify
from .matrix_io import format_matrix, read_matrix
from .protocols import BY_ID, NAMES, Instance, get, run
from .wire import ProverServer, remote_verify, serve_prover_stream, verify_stream

EXIT_OK, EXIT_REJECT, EXIT_ERROR = 0, 1, 2


def _parse_claim(name: str, text: str | None):
    if text is None:
        return None
    if name == "rank_upper":
        return int(text)
    if name == "rank_lower":
        return [int(j) for j in text.split(",") if j.strip()]
    return text


def _instance(name: str, args) -> Instance:
    A = read_matrix(args.matrix)
    B = read_matrix(args.b) if getattr(args, "b", None) else None
    if get(name).needs_b and B is None:
        raise LincertError(f"{name} needs a second matrix (--b)")
    return Instance(A, B, _parse_claim(name, getattr(args, "claim", None)))


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("LINCERT_SEED", "0"))


def _host_port(text: str) -> tuple:
    host, _, port = text.rpartition(":")
    return host or "127.0.0.1", int(port)


def _format_value(value) -> str:
    if hasattr(value, "rows"):
        return format_matrix(value).rstrip()
    if isinstance(value, tuple) and value and hasattr(value[0], "images"):
        return "P = " + " ".join(map(str, value[0].images)) + "\nD = " + " ".join(map(str, value[1]))
    return str(value)


def _report(verdict, stats=None) -> int:
    if verdict.accepted:
        print("ACCEPT")
        if verdict.value is not None:
            print(_format_value(verdict.value))
    else:
        print(f"REJECT: {verdict.reason}")
    if stats is not None:
        print(
            f"# items {stats.elements} (sent {stats.elements_sent}, received {stats.elements_received}),"
            f" rounds {stats.rounds}, matrix-vector products {stats.mu_count}",
            file=sys.stderr,
        )
    return EXIT_OK if verdict.accepted else EXIT_REJECT


# ---------------------------------------------------------------- commands


def cmd_certify(args) -> int:
    inst = _instance(args.protocol, args)
    result = run(args.protocol, inst, seed=_seed(args))
    return _report(result.verdict, result.stats)


def cmd_prove(args) -> int:
    inst = _instance(args.protocol, args)
    if args.stdio:
        serve_prover_stream(args.protocol, inst, sys.stdin.buffer, sys.stdout.buffer)
        return EXIT_OK
    host, port = _host_port(args.listen)
    server = ProverServer(args.protocol, inst, host, port)
    print(f"listening on {server.address[0]}:{server.address[1]}", file=sys.stderr, flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _instance(args.protocol, args)
    if args.exec:
        proc = subprocess.Popen(shlex.split(args.exec), stdin=subprocess.PIPE, stdout=subprocess.PIPE)
        try:
            result = verify_stream(args.protocol, inst, proc.stdout, proc.stdin, seed=_seed(args))
        finally:
            proc.stdin.close()
            proc.wait()
    else:
        host, port = _host_port(args.connect)
        result = remote_verify(args.protocol, inst, host, port, seed=_seed(args))
    return _report(result.verdict, result.stats)


def cmd_fs_prove(args) -> int:
    inst = _instance(args.protocol, args)
    cert = fs_prove(args.protocol, inst)
    data = cert.to_bytes()
    with open(args.output, "wb") as f:
        f.write(data)
    print(f"wrote {len(data)} bytes to {args.output}", file=sys.stderr)
    return EXIT_OK


def cmd_fs_verify(args) -> int:
    with open(args.certificate, "rb") as f:
        data = f.read()
    try:
        cert = CertificateFile.from_bytes(data)
    except BadCertificate as e:
        print(f"REJECT: {e}")
        return EXIT_REJECT
    inst = _instance(BY_ID[cert.protocol_id].name, args)
    try:
        verdict = fs_verify(cert, inst)
    except BadCertificate as e:
        print(f"REJECT: {e}")
        return EXIT_REJECT
    return _report(verdict)


def cmd_oracle(args) -> int:
    A = read_matrix(args.matrix)
    funcs = {
        "rank": oracle.oracle_rank,
        "crp": oracle.oracle_crp,
        "rrp": oracle.oracle_rrp,
        "rpm": oracle.oracle_rpm,
        "det": oracle.oracle_det,
        "signature": oracle.oracle_signature,
    }
    print(_format_value(funcs[args.query](A)))
    return EXIT_OK


def cmd_soundness(args) -> int:
    attacks = [BY_ATTACK[a] for a in args.attack] if args.attack else ATTACKS
    print(f"{'attack':<26} {'protocol':<16} {'trials':>6} {'rate':>8} {'bound':>8}    {'stated':>8}")
    ok = True
    for a in attacks:
        rep = run_attack(a, trials=args.trials, p=args.p, seed=_seed(args))
        print(rep.row())
        ok &= rep.passes
    return EXIT_OK if ok else EXIT_REJECT


# ---------------------------------------------------------------- parser


def _add_input(sp) -> None:
    sp.add_argument("protocol", choices=NAMES)
    sp.add_argument("matrix", help="matrix file for A")
    sp.add_argument("--b", help="matrix file for B (freivalds, tri_equiv, tri_equiv_const)")
    sp.add_argument("--claim", help="rank bound, comma-separated columns, or lower/upper")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lincert", description="Interactive certificates for linear algebra.")
    ap.add_argument("--seed", type=int, default=None, help="interactive verifier seed")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("certify", help="run prover and verifier in process")
    _add_input(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("prove", help="serve the prover over TCP or stdio")
    _add_input(sp)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--listen", metavar="HOST:PORT")
    g.add_argument("--stdio", action="store_true")
    sp.set_defaults(func=cmd_prove)

    sp = sub.add_parser("verify", help="verify against a remote prover")
    _add_input(sp)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--connect", metavar="HOST:PORT")
    g.add_argument("--exec", metavar="COMMAND", help="spawn a prover speaking on stdio")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("fs-prove", help="write a non-interactive certificate")
    _add_input(sp)
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_fs_prove)

    sp = sub.add_parser("fs-verify", help="check a non-interactive certificate")
    sp.add_argument("certificate")
    sp.add_argument("matrix")
    sp.add_argument("--b")
    sp.add_argument("--claim")
    sp.set_defaults(func=cmd_fs_verify)

    sp = sub.add_parser("oracle", help="compute a property directly")
    sp.add_argument("query", choices=["rank", "crp", "rrp", "rpm", "det", "signature"])
    sp.add_argument("matrix")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("soundness", help="measure detection rates of cheating provers")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--p", type=int, default=101)
    sp.add_argument("--attack", action="append", choices=list(BY_ATTACK))
    sp.set_defaults(func=cmd_soundness)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (LincertError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
