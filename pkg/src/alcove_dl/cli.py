"""Command-line surface.

Every engine operation is exposed as a subcommand with machine-readable
output (JSON by default, TSV on request).  Exit codes: 0 success, 2
precondition violation, 3 parse error, 1 internal error or verifier
violation.  Nothing is written to disk unless --out is given.
"""

from __future__ import annotations

import argparse
import json
import sys

from .affine_weyl import elt_str, parse_weyl, restricted_transversal, weyl_str
from .affine_weyl import enumerate_restricted
from .dl_decomposition import (
    DLPresentation,
    admissible_pair,
    covering_types,
    eliminate,
    jh_factors,
    presentation_equivalent,
    w_question,
)
from .errors import (
    AlcoveDLError,
    ParseError,
    PreconditionError,
)
from .oracles import VERIFIERS
from .root_datum import format_weight, gl, parse_weight


def _parse_group(spec: str):
    parts = spec.strip().split(":")
    if len(parts) != 3 or parts[0] != "gl":
        raise ParseError(f"group must look like gl:n:f, got {spec!r}")
    try:
        n, f = int(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ParseError(f"bad group {spec!r}") from exc
    if n < 1 or f < 1:
        raise ParseError(f"group sizes must be positive in {spec!r}")
    return gl(n, f)


def _parse_prime(value: str) -> int:
    try:
        p = int(value)
    except ValueError as exc:
        raise ParseError(f"p must be an integer, got {value!r}") from exc
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ParseError(f"p must be prime, got {p}")
    return p


def _require_weight(datum, value, flag):
    if value is None:
        raise ParseError(f"missing required flag {flag}")
    w = parse_weight(datum, value)
    for c in w:
        if not isinstance(c, int):
            raise ParseError(f"{flag} must be integral, got {value!r}")
    return w


def _require(value, flag):
    if value is None:
        raise ParseError(f"missing required flag {flag}")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we map to 3
        raise ParseError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="alcove-dl", description=__doc__)
    sub = parser.add_subparsers(dest="command")
    for name in ("jh", "wq", "cover", "adm", "equiv", "depth",
                 "eliminate", "enumerate", "verify"):
        sp = sub.add_parser(name, add_help=True)
        sp.add_argument("--group", required=True, help="datum, e.g. gl:2:1")
        sp.add_argument("--p", help="prime")
        sp.add_argument("--s", help="Weyl element: e, w0, or one-line 2,1;...")
        sp.add_argument("--mu", help="weight, e.g. 3,0;1,1")
        sp.add_argument("--lambda", dest="lam", help="weight")
        sp.add_argument("--type-w", dest="type_w", help="Weyl element of a type")
        sp.add_argument("--type-nu", dest="type_nu", help="weight of a type")
        sp.add_argument("--format", choices=("json", "tsv"), default="json")
        sp.add_argument("--trials", type=int, default=1000)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--lemma", default="all")
        sp.add_argument("--out", help="write output here instead of stdout")
    return parser


def _factor_json(datum, fac) -> dict:
    return {
        "lambda": format_weight(datum, fac.lam),
        "w_tilde": elt_str(fac.w_tilde),
        "w_lambda": elt_str(fac.w_lambda),
        "bv_param": format_weight(datum, fac.bv_param),
    }


def _cmd_jh(args):
    datum = _parse_group(args.group)
    p = _parse_prime(_require(args.p, "--p"))
    s = parse_weyl(datum, _require(args.s, "--s"))
    mu = _require_weight(datum, args.mu, "--mu")
    factors = jh_factors(DLPresentation(datum, s, mu, p))
    doc = {
        "datum": {"n": datum.n, "f": datum.f},
        "p": p,
        "s": weyl_str(datum, s),
        "mu": format_weight(datum, mu),
        "eta": format_weight(datum, datum.eta),
        "factors": [_factor_json(datum, fac) for fac in factors],
    }
    if args.format == "tsv":
        rows = ["lambda\tw_tilde\tw_lambda\tbv_param"]
        for fac in factors:
            fj = _factor_json(datum, fac)
            rows.append("\t".join(
                fj[k] for k in ("lambda", "w_tilde", "w_lambda", "bv_param")))
        return "\n".join(rows), 0
    return json.dumps(doc, indent=2), 0


def _cmd_wq(args):
    datum = _parse_group(args.group)
    p = _parse_prime(_require(args.p, "--p"))
    s = parse_weyl(datum, _require(args.s, "--s"))
    mu = _require_weight(datum, args.mu, "--mu")
    classes = w_question(DLPresentation(datum, s, mu, p))
    strs = [format_weight(datum, wc.rep) for wc in classes]
    if args.format == "tsv":
        return "\n".join(strs), 0
    doc = {
        "datum": {"n": datum.n, "f": datum.f},
        "p": p,
        "s": weyl_str(datum, s),
        "mu": format_weight(datum, mu),
        "eta": format_weight(datum, datum.eta),
        "classes": strs,
    }
    return json.dumps(doc, indent=2), 0


def _cmd_cover(args):
    datum = _parse_group(args.group)
    p = _parse_prime(_require(args.p, "--p"))
    lam = _require_weight(datum, args.lam, "--lambda")
    entries = covering_types(datum, lam, p)
    rows = [
        {"s": weyl_str(datum, s), "mu": format_weight(datum, mu), "hypothesis": tag}
        for s, mu, tag in entries
    ]
    if args.format == "tsv":
        lines = ["s\tmu\thypothesis"]
        lines.extend(f"{r['s']}\t{r['mu']}\t{r['hypothesis']}" for r in rows)
        return "\n".join(lines), 0
    doc = {"lambda": format_weight(datum, lam), "p": p, "entries": rows}
    return json.dumps(doc, indent=2), 0


def _cmd_adm(args):
    datum = _parse_group(args.group)
    p = _parse_prime(_require(args.p, "--p"))
    tw = parse_weyl(datum, _require(args.type_w, "--type-w"))
    tnu = _require_weight(datum, args.type_nu, "--type-nu")
    s = parse_weyl(datum, _require(args.s, "--s"))
    mu = _require_weight(datum, args.mu, "--mu")
    res = admissible_pair(datum, tw, tnu, s, mu, p)
    if args.format == "tsv":
        return f"admissible\t{str(res).lower()}", 0
    return json.dumps({"admissible": res}, indent=2), 0


def _cmd_equiv(args):
    datum = _parse_group(args.group)
    p = _parse_prime(_require(args.p, "--p"))
    a = DLPresentation(datum, parse_weyl(datum, _require(args.s, "--s")),
                       _require_weight(datum, args.mu, "--mu"), p)
    b = DLPresentation(datum, parse_weyl(datum, _require(args.type_w, "--type-w")),
                       _require_weight(datum, args.type_nu, "--type-nu"), p)
    res = presentation_equivalent(a, b)
    if args.format == "tsv":
        return f"equivalent\t{str(res).lower()}", 0
    return json.dumps({"equivalent": res}, indent=2), 0


def _cmd_depth(args):
    datum = _parse_group(args.group)
    p = _parse_prime(_require(args.p, "--p"))
    lam = _require_weight(datum, args.lam, "--lambda")
    d = datum.depth_in(lam, datum.base_key(), p)
    return json.dumps(d), 0


def _cmd_eliminate(args):
    datum = _parse_group(args.group)
    p = _parse_prime(_require(args.p, "--p"))
    s = parse_weyl(datum, _require(args.s, "--s"))
    mu = _require_weight(datum, args.mu, "--mu")
    lam = _require_weight(datum, args.lam, "--lambda")
    report = eliminate(DLPresentation(datum, s, mu, p), lam)
    rows = [
        {
            "s": weyl_str(datum, r.s),
            "mu": format_weight(datum, r.mu),
            "hypothesis": r.hypothesis,
            "admissible": r.admissible,
        }
        for r in report.rows
    ]
    doc = {
        "lambda": format_weight(datum, report.lam),
        "class": format_weight(datum, report.lam_class),
        "in_w_question": report.in_w_question,
        "covering": rows,
    }
    if args.format == "tsv":
        lines = [
            f"in_w_question\t{str(report.in_w_question).lower()}",
            "s\tmu\thypothesis\tadmissible",
        ]
        lines.extend(
            f"{r['s']}\t{r['mu']}\t{r['hypothesis']}\t{str(r['admissible']).lower()}"
            for r in rows
        )
        return "\n".join(lines), 0
    return json.dumps(doc, indent=2), 0


def _cmd_enumerate(args):
    datum = _parse_group(args.group)
    reps = [elt_str(e) for e in enumerate_restricted(datum)]
    trans = [elt_str(e) for e in restricted_transversal(datum)]
    if args.format == "tsv":
        lines = [f"restricted_alcove_rep\t{r}" for r in reps]
        lines.extend(f"transversal\t{t}" for t in trans)
        return "\n".join(lines), 0
    return json.dumps(
        {"restricted_alcove_reps": reps, "transversal": trans}, indent=2), 0


def _cmd_verify(args):
    datum = _parse_group(args.group)
    p = _parse_prime(_require(args.p, "--p"))
    names = list(VERIFIERS) if args.lemma == "all" else [args.lemma]
    for name in names:
        if name not in VERIFIERS:
            raise ParseError(f"unknown lemma {name!r}; choose from "
                             f"{', '.join(VERIFIERS)} or all")
    reports = [VERIFIERS[name](datum, p, args.trials, args.seed)
               for name in names]
    code = 0 if all(r.ok() for r in reports) else 1
    if args.format == "tsv":
        lines = ["lemma\ttrials\tviolations\thits"]
        lines.extend(
            f"{r.lemma}\t{r.trials}\t{r.violations}\t{r.hits}" for r in reports)
        return "\n".join(lines), code
    docs = []
    for r in reports:
        doc = r.to_json()
        doc.pop("elapsed_ms")  # keep CLI output byte-deterministic per seed
        docs.append(doc)
    return json.dumps({"reports": docs}, indent=2), code


_COMMANDS = {
    "jh": _cmd_jh,
    "wq": _cmd_wq,
    "cover": _cmd_cover,
    "adm": _cmd_adm,
    "equiv": _cmd_equiv,
    "depth": _cmd_depth,
    "eliminate": _cmd_eliminate,
    "enumerate": _cmd_enumerate,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise ParseError("a subcommand is required; see --help")
        output, code = _COMMANDS[args.command](args)
    except ParseError as exc:
        print(str(exc), file=sys.stderr)
        return 3
    except PreconditionError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except AlcoveDLError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(output + "\n")
    else:
        print(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
