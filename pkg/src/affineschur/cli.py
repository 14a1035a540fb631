"""Batch command line front end.

Elements travel as JSON on stdin and stdout in the same shapes the
library's ``to_obj``/``from_obj`` pairs use, so any output can be piped
straight back in.  Verification verbs emit a report whose bytes depend
only on the flags and seed; timing goes to stderr.  Exit codes: 0 all
good, 1 at least one failed check, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from affineschur.hecke import HeckeElement, KLTable, kl_extended, x_lambda
from affineschur.verify import DEFAULT_SEED, SUITES, SuiteReport, run_all, run_suite
from affineschur.weyl import ParabolicIndex, WindowPerm, coset_decompose

__all__ = ["main", "run"]

THETA_NOTE = (
    "The canonical element for (lambda, mu, d) sums over the double "
    "cosets whose longest element u lies below the longest element d+ of "
    "d's coset: each contributes the Kazhdan-Lusztig polynomial attached "
    "to the pair (u, d+), shifted by v^(l(w_mu) - l(d+)), times the "
    "projection-basis element phi^z for the shortest representative z of "
    "u's coset."
)


class InputError(ValueError):
    """Bad JSON or a value out of domain; maps to exit code 2."""


def _read_payload(stream) -> object:
    text = stream.read()
    if not text.strip():
        raise InputError("expected a JSON payload on stdin")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"stdin is not valid JSON: {exc}") from exc


def _emit(obj, args, text: str | None = None) -> None:
    if getattr(args, "json", False) or text is None:
        sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text + "\n")


def _as_list(payload, what: str, least: int = 2) -> list:
    if not isinstance(payload, list) or len(payload) < least:
        raise InputError(f"{what} expects a JSON array of at least {least} elements")
    return payload


# ---------------------------------------------------------------------------
# element verbs


def _cmd_weyl(args) -> int:
    payload = _read_payload(sys.stdin)
    if args.verb == "compose":
        parts = [WindowPerm.from_obj(o) for o in _as_list(payload, "weyl compose")]
        out = parts[0]
        for p in parts[1:]:
            out = out * p
        _emit(out.to_obj(), args, repr(out))
        return 0
    if args.verb == "coset":
        if not isinstance(payload, dict) or "w" not in payload or "members" not in payload:
            raise InputError('weyl coset expects {"w": …, "members": […], "shift": 0}')
        w = WindowPerm.from_obj(payload["w"])
        pi = ParabolicIndex(w.r, payload["members"], int(payload.get("shift", 0)))
        u, d = coset_decompose(w, pi)
        obj = {"u": u.to_obj(), "d": d.to_obj()}
        _emit(obj, args, f"u = {u!r}\nd = {d!r}")
        return 0
    w = WindowPerm.from_obj(payload)
    if args.verb == "length":
        obj = {"length": w.length(), "rho_power": w.rho_power()}
        _emit(obj, args, f"length {w.length()}, shift part {w.rho_power()}")
        return 0
    z, word = w.reduced_word()
    obj = {"rho_power": z, "word": list(word)}
    _emit(obj, args, f"shift^{z} * s_{list(word)}")
    return 0


def _cmd_hecke(args) -> int:
    payload = _read_payload(sys.stdin)
    if args.verb == "mul":
        parts = [HeckeElement.from_obj(o) for o in _as_list(payload, "hecke mul")]
        out = parts[0]
        for p in parts[1:]:
            out = out * p
        _emit(out.to_obj(), args, repr(out))
        return 0
    if args.verb == "xlambda":
        pi = ParabolicIndex.from_obj(payload)
        out = x_lambda(pi)
        _emit(out.to_obj(), args, repr(out))
        return 0
    if not isinstance(payload, dict) or "y" not in payload or "w" not in payload:
        raise InputError('hecke kl expects {"y": …, "w": …}')
    y = WindowPerm.from_obj(payload["y"])
    w = WindowPerm.from_obj(payload["w"])
    if y.r != w.r:
        raise InputError("y and w have different periods")
    table = KLTable(y.r)
    p = kl_extended(table, y, w)
    obj = {"polynomial": p.to_obj()}
    if not y.rho_power() and not w.rho_power():
        obj["mu"] = table.mu(y, w)
    _emit(obj, args, repr(p))
    return 0


def _cmd_schur(args) -> int:
    from affineschur.schur import SchurElement, Weight, phi, theta

    if args.verb == "verify":
        return _run_reports([run_suite("schur-core", seed=args.seed)], args)
    payload = _read_payload(sys.stdin)
    if args.verb == "mul":
        parts = [SchurElement.from_obj(o) for o in _as_list(payload, "schur mul")]
        out = parts[0]
        for p in parts[1:]:
            out = out * p
        _emit(out.to_obj(), args, repr(out))
        return 0
    # phi and theta share the input shape
    need = {"n", "r", "lambda", "mu", "d"}
    if not isinstance(payload, dict) or not need <= set(payload):
        raise InputError(f'schur {args.verb} expects keys {sorted(need)}')
    n, r = int(payload["n"]), int(payload["r"])
    lam = Weight(n, r, payload["lambda"])
    mu = Weight(n, r, payload["mu"])
    d = WindowPerm.from_obj({"r": r, **dict(payload["d"])})
    if args.verb == "phi":
        out = phi(lam, mu, d)
    else:
        out = theta(lam, mu, d, KLTable(r))
    _emit(out.to_obj(), args, repr(out))
    return 0


def _cmd_quantum(args) -> int:
    from affineschur.quantum import TensorVector, UElement, act_tensor, kappa, kappa_exponents, tau
    from affineschur.schur import SchurElement, Weight

    if args.verb == "verify-hopf":
        return _run_reports([run_suite("hopf", n=args.n, r=args.r, window=args.window)], args)
    if args.verb == "verify-duality":
        rep = run_suite(
            "duality", n=args.n, r=args.r, length=args.len, window=args.window, seed=args.seed
        )
        return _run_reports([rep], args)
    payload = _read_payload(sys.stdin)
    if args.verb == "act":
        if not isinstance(payload, dict) or "element" not in payload or "vector" not in payload:
            raise InputError('quantum act expects {"element": …, "vector": …}')
        u = UElement.from_obj(payload["element"])
        x = TensorVector.from_obj(payload["vector"])
        out = act_tensor(u, x)
        _emit(out.to_obj(), args, repr(out))
        return 0
    if args.verb == "tau":
        if not isinstance(payload, dict) or "w" not in payload or "vector" not in payload:
            raise InputError('quantum tau expects {"w": …, "vector": …}')
        w = WindowPerm.from_obj(payload["w"])
        x = TensorVector.from_obj(payload["vector"])
        out = tau(x.n, x.r, w)(x)
        _emit(out.to_obj(), args, repr(out))
        return 0
    # kappa: report the normalization exponents for every weight the
    # element touches, and apply the operator when a vector is supplied
    body = payload.get("element", payload) if isinstance(payload, dict) else payload
    s = SchurElement.from_obj(body)
    weights = sorted({lam.parts for lam, _, _, _ in s.items()} | {mu.parts for _, mu, _, _ in s.items()})
    table = []
    for parts in weights:
        f, g = kappa_exponents(s.n, s.r, Weight(s.n, s.r, parts))
        table.append({"lambda": list(parts), "f": f, "g": g})
    obj: dict = {"exponents": table}
    lines = [f"lambda {row['lambda']}: f = {row['f']}, g = {row['g']}" for row in table]
    if isinstance(payload, dict) and "vector" in payload:
        x = TensorVector.from_obj(payload["vector"])
        out = kappa(s)(x)
        obj["result"] = out.to_obj()
        lines.append(repr(out))
    _emit(obj, args, "\n".join(lines))
    return 0


# ---------------------------------------------------------------------------
# verification verbs


def _suite_params(name: str, args) -> dict:
    if name == "weyl-core":
        return {"r": args.r, "length": args.len if args.len is not None else 8}
    if name == "hecke-core":
        return {"r": args.r, "seed": args.seed}
    if name == "kl":
        return {}
    if name == "schur-core":
        return {"n": args.n, "r": args.r, "seed": args.seed}
    if name == "hopf":
        return {"n": args.n, "r": min(args.r, 3), "window": args.window}
    return {
        "n": args.n,
        "r": args.r,
        "length": args.len if args.len is not None else 3,
        "window": args.window,
        "seed": args.seed,
    }


def _run_reports(reports: list[SuiteReport], args) -> int:
    for rep in reports:
        sys.stderr.write(f"[{rep.suite}] {rep.wall_time:.2f}s\n")
    if len(reports) == 1:
        rep = reports[0]
        _emit(rep.to_obj(), args, rep.render())
    else:
        obj = {
            "suite": "all",
            "reports": [rep.to_obj() for rep in reports],
            "failed": sum(len(rep.failures()) for rep in reports),
        }
        _emit(obj, args, "\n".join(rep.render() for rep in reports))
    return 0 if all(rep.ok() for rep in reports) else 1


def _cmd_verify(args) -> int:
    if args.suite == "all":
        return _run_reports(run_all(seed=args.seed), args)
    return _run_reports([run_suite(args.suite, **_suite_params(args.suite, args))], args)


# ---------------------------------------------------------------------------
# parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=3, help="number of index residues (rows)")
    p.add_argument("--r", type=int, default=3, help="period / number of tensor slots")
    p.add_argument(
        "--len", "--len-bound", dest="len", type=int, default=None, help="length bound for sweeps"
    )
    p.add_argument("--window", type=int, default=None, help="index window half-width")
    p.add_argument("--rho-bound", dest="rho_bound", type=int, default=1, help="shift-power bound")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="PRNG seed for sampled checks")
    p.add_argument("--json", action="store_true", help="emit canonical JSON on stdout")


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="affineschur", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    weyl = sub.add_parser("weyl", help="window permutation operations")
    weyl.add_argument("verb", choices=["length", "word", "compose", "coset"])
    _add_common(weyl)
    weyl.set_defaults(fn=_cmd_weyl)

    hecke = sub.add_parser("hecke", help="Hecke algebra operations")
    hecke.add_argument("verb", choices=["mul", "xlambda", "kl"])
    _add_common(hecke)
    hecke.set_defaults(fn=_cmd_hecke)

    schur = sub.add_parser(
        "schur",
        help="endomorphism algebra operations",
        epilog="theta: " + THETA_NOTE,
    )
    schur.add_argument("verb", choices=["mul", "phi", "theta", "verify"])
    _add_common(schur)
    schur.set_defaults(fn=_cmd_schur)

    quantum = sub.add_parser("quantum", help="tensor space actions and sweeps")
    quantum.add_argument("verb", choices=["act", "tau", "kappa", "verify-hopf", "verify-duality"])
    _add_common(quantum)
    quantum.set_defaults(fn=_cmd_quantum)

    verify = sub.add_parser("verify", help="run a named verification suite")
    verify.add_argument("suite", choices=sorted(SUITES) + ["all"])
    _add_common(verify)
    verify.set_defaults(fn=_cmd_verify)

    return top


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on bad flags already
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
