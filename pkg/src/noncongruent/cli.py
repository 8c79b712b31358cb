"""Command-line front end: ``noncongruent {report,scan,tables,density,selftest}``."""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from typing import Any, Sequence

from . import kernels
from ._accel import BACKEND, HAVE_NUMBA
from .arith import factor_squarefree
from .classgroup import H_BUDGET, class_number, eight_rank_waterhouse, redei
from .descent import WITNESS_BOUND, monsky, witness_search, z_set
from .errors import BudgetExceeded, NonCongruentError
from .fixtures import check_row, load_rows
from .quant import DEFAULT_SEED, empirical_scan
from .scan import scan_certificates
from .theorems import Certificate, Family, certify, tunnell_check

CSV_COLUMNS = ["n", "t", "q", "P", "rank_ok", "qr_ok", "selmer_rank", "h_n", "v2_h_n",
               "h_P", "quartic_qP", "r8_n", "r8_P", "verdict"]


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def certificate_csv_row(cert: Certificate) -> dict[str, str]:
    fam = cert.family
    applicable = fam.kind is not Family.NOT_APPLICABLE
    vals = {
        "n": cert.n, "t": fam.t if applicable else None, "q": fam.q,
        "P": fam.P if applicable else None,
        "rank_ok": cert.hyp_rank_ok, "qr_ok": cert.hyp_qr_ok, "selmer_rank": cert.selmer_rank,
        "h_n": cert.h_n, "v2_h_n": cert.v2_h_n, "h_P": cert.h_P, "quartic_qP": cert.quartic_qP,
        "r8_n": cert.eight_rank_n, "r8_P": cert.eight_rank_P, "verdict": cert.verdict.value,
    }
    return {k: _cell(v) for k, v in vals.items()}


def _write_csv(rows: Sequence[dict[str, str]], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _text_block(d: dict[str, Any], indent: str = "") -> str:
    lines = []
    for k, v in d.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_text_block(v, indent + "  "))
        else:
            lines.append(f"{indent}{k}: {_cell(v) if not isinstance(v, list) else v}")
    return "\n".join(lines)


# ------------------------------------------------------------------ report


def build_report(n: int, args: argparse.Namespace) -> dict[str, Any]:
    f = factor_squarefree(n)
    cert = certify(f, budget_h=args.budget_h)
    md = monsky(f)
    pairs = z_set(f, data=md)
    selmer = {
        "primes": list(f.primes),
        "monsky_rank": 2 * len(f.primes) - md.selmer_rank,
        "selmer_rank": md.selmer_rank,
        "z_set": [list(p) for p in pairs],
    }
    if args.witness_bound:
        wits = {}
        for p in pairs:
            hit = witness_search(p, f, args.witness_bound)
            wits[f"{p.u},{p.u_prime}"] = None if hit is None else [hit.x, hit.y, hit.z, hit.w]
        selmer["witnesses"] = wits
    out: dict[str, Any] = {"certificate": cert.to_dict(), "selmer": selmer}
    if cert.family.kind is not Family.NOT_APPLICABLE and cert.hyp_rank_ok and cert.hyp_qr_ok:
        try:
            rd = redei(f)
            out["waterhouse_r8"] = eight_rank_waterhouse(rd, cap=args.ternary_cap)
        except NonCongruentError as exc:
            out["waterhouse_r8"] = f"unavailable: {exc}"
    if args.tunnell:
        try:
            tr = tunnell_check(f)
            out["tunnell"] = {"A": tr.A, "B": tr.B, "status": tr.status.value}
        except BudgetExceeded as exc:
            out["tunnell"] = f"skipped: {exc}"
    return out


def cmd_report(args: argparse.Namespace) -> int:
    try:
        rep = build_report(args.n, args)
    except (NonCongruentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    cert = Certificate.from_dict(rep["certificate"])
    if args.format == "json":
        print(json.dumps(rep, indent=2))
    elif args.format == "csv":
        print(_write_csv([certificate_csv_row(cert)], CSV_COLUMNS), end="")
    else:
        print(_text_block(rep))
    return cert.exit_code


# -------------------------------------------------------------------- scan


def cmd_scan(args: argparse.Namespace) -> int:
    try:
        rows = scan_certificates(args.family, args.t, args.max, jobs=args.jobs, budget_h=args.budget_h)
    except (NonCongruentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    recs = []
    for r in rows:
        if r.certificate is None:
            rec = {c: "" for c in CSV_COLUMNS}
            rec.update(n=str(r.n), t=str(args.t), q=str(r.q), P=str(r.n // r.q), verdict="SKIPPED")
        else:
            rec = certificate_csv_row(r.certificate)
        recs.append((r, rec))
    if args.format == "csv":
        print(_write_csv([rec for _, rec in recs], CSV_COLUMNS), end="")
    elif args.format == "json":
        out = [r.certificate.to_dict() if r.certificate else {"n": r.n, "skipped": r.skipped}
               for r, _ in recs]
        print(json.dumps(out, indent=2))
    else:
        width = {c: max([len(c)] + [len(rec[c]) for _, rec in recs]) for c in CSV_COLUMNS}
        print("  ".join(c.rjust(width[c]) for c in CSV_COLUMNS))
        for _, rec in recs:
            print("  ".join(rec[c].rjust(width[c]) for c in CSV_COLUMNS))
    return 0


# ------------------------------------------------------------------ tables


def cmd_tables(args: argparse.Namespace) -> int:
    failures = 0
    out = []
    for row in load_rows():
        rep = check_row(row)
        checks = dict(rep.checks)
        if args.tunnell:
            try:
                tr = tunnell_check(row.n)
                checks["tunnell"] = (tr.A == 2 * tr.B) == row.expected_congruent
            except BudgetExceeded:
                pass
        ok = all(checks.values())
        failures += not ok
        out.append({
            "table": row.table_id, "n": row.n, "h_n": rep.h_n, "h_P": rep.h_P,
            "verdict": rep.certificate.verdict.value if rep.certificate else None,
            "status": "PASS" if ok else "FAIL",
            "failed": [k for k, v in checks.items() if not v],
        })
    if args.format == "json":
        print(json.dumps(out, indent=2))
    elif args.format == "csv":
        cols = ["table", "n", "h_n", "h_P", "verdict", "status"]
        print(_write_csv([{c: _cell(o[c]) for c in cols} for o in out], cols), end="")
    else:
        for o in out:
            extra = f" ({', '.join(o['failed'])})" if o["failed"] else ""
            hp = f" h_P={o['h_P']}" if o["h_P"] is not None else ""
            print(f"{o['status']} table {o['table']:>4} n={o['n']} h_n={o['h_n']}{hp} "
                  f"{o['verdict']}{extra}")
        print(f"{len(out) - failures}/{len(out)} rows pass")
    return 1 if failures else 0


# ----------------------------------------------------------------- density


def cmd_density(args: argparse.Namespace) -> int:
    try:
        rep = empirical_scan(args.t, args.max, jobs=args.jobs, seed=args.seed)
    except (NonCongruentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    d = dataclasses.asdict(rep)
    if args.format == "json":
        print(json.dumps(d, indent=2))
    elif args.format == "csv":
        print(_write_csv([{k: _cell(v) for k, v in d.items()}], list(d)), end="")
    else:
        print(_text_block(d))
    return 0


# ---------------------------------------------------------------- selftest


def _selftest_checks() -> list[tuple[str, bool]]:
    checks = [
        ("h(-20) = 2", class_number(5).h == 2),
        ("h(-3789955) = 224", class_number(3789955).h == 224),
        ("2445755 certified", certify(2445755).verdict.value == "NonCongruent"),
        ("2915 conditional", certify(2915).verdict.value == "NonCongruentConditionalSha"),
        ("Tunnell 11", kernels.tunnell_counts(11) == (12, 4)),
    ]
    if HAVE_NUMBA:
        checks.append(("backends agree on h(-70115)",
                       kernels.class_number_count(70115, "numba")
                       == kernels.class_number_count(70115, "numpy")))
    return checks


def cmd_selftest(args: argparse.Namespace) -> int:
    checks = _selftest_checks()
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    print(f"backend: {BACKEND}")
    return 0 if all(ok for _, ok in checks) else 1


# ------------------------------------------------------------------ parser


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="text")
    common.add_argument("--jobs", type=_positive, default=1)
    common.add_argument("--tunnell", action="store_true", help="add the Tunnell count check")
    common.add_argument("--witness-bound", type=int, default=0,
                        help=f"search Z-set pairs for global points up to this height "
                             f"(0 = off; library default {WITNESS_BOUND})")
    common.add_argument("--ternary-cap", type=int, default=None)
    common.add_argument("--budget-h", type=int, default=H_BUDGET, help="largest |D| for class numbers")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = argparse.ArgumentParser(prog="noncongruent", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("report", parents=[common], help="certificate for one n")
    r.add_argument("n", type=int)
    s = sub.add_parser("scan", parents=[common], help="certificates for a family range")
    s.add_argument("--family", choices=["5557", "553"], required=True)
    s.add_argument("--t", type=_positive, required=True)
    s.add_argument("--max", type=_positive, required=True)
    sub.add_parser("tables", parents=[common], help="recompute the embedded example rows")
    d = sub.add_parser("density", parents=[common], help="empirical vs predicted counts")
    d.add_argument("--t", type=_positive, required=True)
    d.add_argument("--max", type=_positive, required=True)
    sub.add_parser("selftest", parents=[common], help="quick sanity checks")
    return p


COMMANDS = {"report": cmd_report, "scan": cmd_scan, "tables": cmd_tables,
            "density": cmd_density, "selftest": cmd_selftest}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
