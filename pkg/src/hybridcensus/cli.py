"""Command-line front end.

Commands emit a single machine-readable payload (JSON, or CSV where
supported) on stdout; human diagnostics go to stderr.  Exit codes:
0 success or witness found, 1 no witness within budget, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import census as census_mod
from . import gluing, quadform

__all__ = ["CommandResult", "entry", "main"]


@dataclass
class CommandResult:
    status: str  # "ok" | "no-witness" | "error"
    payload: object  # JSON document, or a CSV string
    is_csv: bool = False

    @property
    def exit_code(self) -> int:
        return {"ok": 0, "no-witness": 1, "error": 2}[self.status]


def _diag(message: str) -> None:
    print(message, file=sys.stderr)


def _parse_fraction(text: str) -> Fraction:
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"malformed rational {text!r}: expected 'p' or 'p/q'")


def _load_volumes(path: str, r: int) -> dict[int, Fraction]:
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    volumes = {int(k): _parse_fraction(str(v)) for k, v in raw.items()}
    for k in range(1, r + 1):
        if k not in volumes:
            raise ValueError(f"volume file {path} is missing piece {k}")
        if volumes[k] <= 0:
            raise ValueError(f"piece volume v{k} must be positive")
    return volumes


def _check_thread_cap() -> None:
    # All library code is sequential and deterministic; a positive cap is
    # always satisfied, anything else is a configuration error.
    raw = os.environ.get("HYBRID_CENSUS_THREADS")
    if raw is None:
        return
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"HYBRID_CENSUS_THREADS must be a positive integer, got {raw!r}")
    if cap < 1:
        raise ValueError(f"HYBRID_CENSUS_THREADS must be a positive integer, got {cap}")


# ---------------------------------------------------------------- handlers


def _cmd_forms_family(args: argparse.Namespace) -> CommandResult:
    if args.n < 2:
        raise ValueError("n must be >= 2")
    forms = quadform.generate_family(args.n, args.count)
    entries = []
    for idx, form in enumerate(forms):
        sig = quadform.signatures(form)
        entries.append(
            {
                "index": idx,
                "form": form.to_json(),
                "admissible": quadform.is_admissible(form),
                "anisotropic": quadform.is_anisotropic_certified(form),
                "signatures": list(sig),
            }
        )
    if args.format == "csv":
        lines = ["index,n,a_u,a_v,admissible,anisotropic,sig_plus,sig_minus"]
        for e in entries:
            a = e["form"]["coeffs"][0]
            lines.append(
                f"{e['index']},{args.n},{a['u']},{a['v']},"
                f"{str(e['admissible']).lower()},{str(e['anisotropic']).lower()},"
                f"{e['signatures'][0]},{e['signatures'][1]}"
            )
        return CommandResult("ok", "\n".join(lines) + "\n", is_csv=True)
    return CommandResult("ok", {"status": "ok", "n": args.n, "forms": entries})


def _cmd_forms_certify(args: argparse.Namespace) -> CommandResult:
    if args.n < 2:
        raise ValueError("n must be >= 2")
    if args.a < 1 or args.a_prime < 1:
        raise ValueError("leading coefficients must be positive integers")
    q_a = quadform.DiagonalForm.standard(args.a, args.n)
    q_a2 = quadform.DiagonalForm.standard(args.a_prime, args.n)
    cert = quadform.certify_noncommensurable(q_a, q_a2, args.n, args.max_prime)
    if cert is None:
        _diag(f"no witness for a={args.a}, a'={args.a_prime} within prime budget {args.max_prime}")
        return CommandResult(
            "no-witness",
            {
                "status": "no-witness",
                "n": args.n,
                "a": args.a,
                "a_prime": args.a_prime,
                "max_prime": args.max_prime,
            },
        )
    if cert.kind == "LocalWitness":
        _diag(f"LocalWitness at p={cert.witness['p']}")
    else:
        _diag("OddDiscWitness via nonsquare discriminant ratio")
    return CommandResult("ok", {"status": "ok", "certificate": cert.to_json()})


def _cmd_forms_verify(args: argparse.Namespace) -> CommandResult:
    with open(args.cert, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if "certificate" in doc:
        doc = doc["certificate"]
    cert = quadform.NoncommCertificate.from_json(doc)
    if quadform.verify_certificate(cert):
        _diag("certificate re-verified from scratch")
        return CommandResult("ok", {"status": "ok", "valid": True, "kind": cert.kind})
    raise ValueError("certificate did not re-verify")


def _cmd_words_canon(args: argparse.Namespace) -> CommandResult:
    w = gluing.CyclicWord.parse(args.word, args.r)
    canon, shift = gluing.canonical_rotation(w)
    return CommandResult(
        "ok",
        {
            "status": "ok",
            "word": list(w.letters),
            "canonical": list(canon.letters),
            "shift": shift,
        },
    )


def _cmd_words_commensurable(args: argparse.Namespace) -> CommandResult:
    r = args.r
    if r is None:
        r = max(
            max(int(x) for x in args.alpha.split(",")),
            max(int(x) for x in args.beta.split(",")),
        )
    alpha = gluing.CyclicWord.parse(args.alpha, r)
    beta = gluing.CyclicWord.parse(args.beta, r)
    ok, shift = gluing.same_class(alpha, beta)
    if ok:
        _diag(f"same rotation orbit, witness shift p={shift}")
    return CommandResult(
        "ok",
        {
            "status": "ok",
            "alpha": list(alpha.letters),
            "beta": list(beta.letters),
            "commensurable": ok,
            "shift": shift,
        },
    )


def _cmd_words_stabilizer(args: argparse.Namespace) -> CommandResult:
    w = gluing.CyclicWord.parse(args.word, args.r)
    report = gluing.dihedral_stabilizer(w)
    return CommandResult(
        "ok",
        {
            "status": "ok",
            "word": list(w.letters),
            "rotation_order": report.rotation_order,
            "reflection_exists": report.reflection_exists,
            "dihedral_order": report.dihedral_order,
        },
    )


def _cmd_words_enumerate(args: argparse.Namespace) -> CommandResult:
    classes = gluing.enumerate_classes(args.r, args.m, args.cap)
    return CommandResult(
        "ok",
        {
            "status": "ok",
            "r": args.r,
            "m": args.m,
            "count": len(classes),
            "classes": [list(w.letters) for w in classes],
        },
    )


def _cmd_census(args: argparse.Namespace) -> CommandResult:
    if args.r < 1:
        raise ValueError("r must be >= 1")
    if args.m_max < 0:
        raise ValueError("m-max must be >= 0")
    volumes = _load_volumes(args.volumes, args.r) if args.volumes else None
    rows = census_mod.theorem_table(args.r, args.m_max, volumes)
    _diag(
        "note: asymptotic column is m^-1 (2*pi*m)^-((r-1)/2) r^(rm-1); "
        "exact counts run a factor sqrt(r) above it (see ratio column)"
    )
    if args.format == "csv":
        if volumes and rows:
            _diag(f"liminf quotient: {census_mod.liminf_check(rows)}")
        return CommandResult("ok", census_mod.table_to_csv(rows), is_csv=True)
    payload: dict = {
        "status": "ok",
        "r": args.r,
        "m_max": args.m_max,
        "rows": [row.to_json() for row in rows],
    }
    if volumes and rows:
        liminf = census_mod.liminf_check(rows)
        payload["liminf"] = f"{liminf.numerator}/{liminf.denominator}"
        if args.K is not None and args.V is not None:
            K, V = _parse_fraction(args.K), _parse_fraction(args.V)
            payload["lcom"] = [
                {
                    "m": row.m,
                    "volume": row.volume.to_json()["total"],
                    "lower_bound": str(
                        census_mod.lcom_lower_bound(row.volume.numeric_total, K, V)
                    ),
                }
                for row in rows
            ]
    return CommandResult("ok", payload)


# ------------------------------------------------------------------ parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hybrid-census",
        description="Exact certificates for form noncommensurability, cyclic gluing "
        "words, and equal-volume census tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    forms = sub.add_parser("forms", help="quadratic-form families and certificates")
    forms_sub = forms.add_subparsers(dest="subcommand", required=True)

    family = forms_sub.add_parser("family", help="generate the standard family")
    family.add_argument("--n", type=int, required=True, help="hyperbolic dimension (>= 2)")
    family.add_argument("--count", type=int, required=True, help="number of forms")
    family.add_argument("--format", choices=("json", "csv"), default="json")
    family.set_defaults(handler=_cmd_forms_family)

    certify = forms_sub.add_parser("certify", help="certify two family forms noncommensurable")
    certify.add_argument("--n", type=int, required=True)
    certify.add_argument("--a", type=int, required=True, help="leading coefficient of the first form")
    certify.add_argument("--a-prime", type=int, required=True, dest="a_prime")
    certify.add_argument("--max-prime", type=int, default=1000, dest="max_prime")
    certify.set_defaults(handler=_cmd_forms_certify)

    verify = forms_sub.add_parser("verify", help="re-verify a certificate file from scratch")
    verify.add_argument("--cert", required=True, help="path to a certificate JSON file")
    verify.set_defaults(handler=_cmd_forms_verify)

    words = sub.add_parser("words", help="cyclic gluing words")
    words_sub = words.add_subparsers(dest="subcommand", required=True)

    canon = words_sub.add_parser("canon", help="canonical rotation of a word")
    canon.add_argument("--word", required=True, help='comma-separated letters, e.g. "2,1,1"')
    canon.add_argument("--r", type=int, default=None, help="alphabet size (default: largest letter)")
    canon.set_defaults(handler=_cmd_words_canon)

    comm = words_sub.add_parser("commensurable", help="rotation-orbit test with witness shift")
    comm.add_argument("--alpha", required=True)
    comm.add_argument("--beta", required=True)
    comm.add_argument("--r", type=int, default=None)
    comm.set_defaults(handler=_cmd_words_commensurable)

    stab = words_sub.add_parser("stabilizer", help="dihedral stabilizer of a word")
    stab.add_argument("--word", required=True)
    stab.add_argument("--r", type=int, default=None)
    stab.set_defaults(handler=_cmd_words_stabilizer)

    enum = words_sub.add_parser("enumerate", help="canonical class representatives, fixed content")
    enum.add_argument("--r", type=int, required=True)
    enum.add_argument("--m", type=int, required=True)
    enum.add_argument("--cap", type=int, default=20, help="maximum word length r*m")
    enum.set_defaults(handler=_cmd_words_enumerate)

    census = sub.add_parser("census", help="exact count table with bounds and asymptotics")
    census.add_argument("--r", type=int, required=True)
    census.add_argument("--m-max", type=int, required=True, dest="m_max")
    census.add_argument("--volumes", default=None, help='JSON file {"1": "p/q", ...}')
    census.add_argument("--K", default=None, help="volume-per-step constant, as p/q")
    census.add_argument("--V", default=None, help="volume threshold, as p/q")
    census.add_argument("--format", choices=("json", "csv"), default="json")
    census.set_defaults(handler=_cmd_census)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _check_thread_cap()
        result = args.handler(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        _diag(f"error: {exc}")
        print(json.dumps({"status": "error", "message": str(exc)}, sort_keys=True))
        return 2
    if result.is_csv:
        sys.stdout.write(result.payload)
    else:
        print(json.dumps(result.payload, sort_keys=True))
    return result.exit_code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
