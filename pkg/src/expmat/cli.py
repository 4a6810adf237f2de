"""``expmat`` command line: verify, classify, equiv, witness, exp, log, action, enumerate.

Every command prints one JSON report (``enumerate`` prints JSON lines).
Exit status: 0 success, 1 negative verdict, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence, TextIO

from .birat import verify_chain
from .classify import classify, equiv_bir
from .errors import ExpmatError, InputError, NotExponential
from .families import FAMILIES, build
from .field import FieldCtx, field_from_string
from .matrix import action_of, as_exponential, exp_nilpotent, is_exponential, log_exponential
from .oracle import EnumSpec, enumerate_params
from .serialize import (SCHEMA, dumps, load_file, matrix_from_json, nil_from_json,
                        witness_from_json, witnesses_in)

OK, NEGATIVE, BAD_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise InputError(message)


def _parser() -> argparse.ArgumentParser:
    # shared flags are accepted before or after the subcommand
    common = _Parser(add_help=False)
    common.add_argument("--field", default=argparse.SUPPRESS,
                        help="coefficient field: 0 (or QQ), p, or p^m")
    common.add_argument("--no-witness-verify", action="store_true", default=argparse.SUPPRESS,
                        help="skip re-verification of produced witness chains")
    p = _Parser(prog="expmat", parents=[common],
                description="Exponential matrices and their birational classes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, nargs, text in (
            ("verify", 1, "check the exponential axioms"),
            ("classify", 1, "birational class with witness chain"),
            ("equiv", 2, "decide birational equivalence of two matrices"),
            ("witness", 1, "re-verify stored witness chains"),
            ("exp", 1, "Exp of a nilpotent matrix (characteristic 0)"),
            ("log", 1, "nilpotent logarithm of an exponential matrix (characteristic 0)"),
            ("action", 1, "the induced action on projective space")):
        sp = sub.add_parser(name, help=text, parents=[common])
        sp.add_argument("files", nargs=nargs, metavar="FILE")
    en = sub.add_parser("enumerate", help="stream family matrices over a small finite field",
                        parents=[common])
    en.add_argument("--n", type=int, default=2, choices=(2, 3))
    en.add_argument("--family", choices=FAMILIES)
    en.add_argument("--degree-bound", type=int, default=1)
    return p


def _report(command: str, body: dict) -> dict:
    return {"schema": SCHEMA, "command": command, **body}


def _verify(args) -> bool:
    return not getattr(args, "no_witness_verify", False)


def _matrix(path: str, field: Optional[FieldCtx]):
    return matrix_from_json(load_file(path), field)


def _cmd_verify(args, field, out) -> tuple[int, dict]:
    chk = is_exponential(_matrix(args.files[0], field))
    return (OK if chk.valid else NEGATIVE), _report("verify", chk.report())


def _cmd_classify(args, field, out):
    res = classify(_matrix(args.files[0], field), verify=_verify(args))
    return OK, _report("classify", res.to_json())


def _cmd_equiv(args, field, out):
    a, b = (_matrix(f, field) for f in args.files)
    res = equiv_bir(a, b, verify=_verify(args))
    return (OK if res.equivalent else NEGATIVE), _report("equiv", res.to_json())


def _cmd_witness(args, field, out):
    chains = []
    for doc in witnesses_in(load_file(args.files[0])):
        rep = verify_chain(witness_from_json(doc))
        chains.append({**rep.to_json(), "steps": len(doc["steps"])})
    ok = all(c["verified"] for c in chains)
    return (OK if ok else NEGATIVE), _report("witness", {"verified": ok, "chains": chains})


def _cmd_exp(args, field, out):
    m = exp_nilpotent(nil_from_json(load_file(args.files[0]), field))
    return OK, _report("exp", {"matrix": m.to_json()})


def _cmd_log(args, field, out):
    a = _matrix(args.files[0], field)
    chk = is_exponential(a)
    if not chk.valid:
        return NEGATIVE, _report("log", {"valid": False, "check": chk.report()})
    return OK, _report("log", {"valid": True, "nilpotent": log_exponential(chk.matrix).to_json()})


def _cmd_action(args, field, out):
    a = _matrix(args.files[0], field)
    chk = is_exponential(a)
    body = {"valid": chk.valid, "action": action_of(a).to_json()}
    if not chk.valid:
        body["check"] = chk.report()
    return (OK if chk.valid else NEGATIVE), _report("action", body)


def _cmd_enumerate(args, field, out):
    if field is None:
        raise InputError("enumerate needs --field")
    spec = EnumSpec(field, args.n, args.family, args.degree_bound)
    for fam, params in enumerate_params(spec):
        m = as_exponential(build(fam, params))
        line = {"schema": SCHEMA, "family": fam, "params": [a.to_json()["ppoly"] for a in params],
                "matrix": m.to_json()}
        out.write(dumps(line, compact=True) + "\n")
    return OK, None


COMMANDS = {"verify": _cmd_verify, "classify": _cmd_classify, "equiv": _cmd_equiv,
            "witness": _cmd_witness, "exp": _cmd_exp, "log": _cmd_log,
            "action": _cmd_action, "enumerate": _cmd_enumerate}


def run(argv: Sequence[str], out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    command = None
    try:
        args = _parser().parse_args(list(argv))
        command = args.command
        spec = getattr(args, "field", None)
        field = field_from_string(spec) if spec else None
        code, report = COMMANDS[command](args, field, out)
    except (ExpmatError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        # a non-exponential input to classify/equiv is a negative verdict, not bad syntax
        code = NEGATIVE if isinstance(exc, NotExponential) else BAD_INPUT
        report = {"schema": SCHEMA, "command": command,
                  "error": {"type": type(exc).__name__, "message": str(exc)}}
    if report is not None:
        out.write(dumps(report) + "\n")
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
