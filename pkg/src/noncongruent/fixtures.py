"""Embedded example rows and their recomputation."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from importlib import resources

from .arith import Factored, legendre
from .classgroup import class_number, discriminant
from .theorems import Certificate, Family, Verdict, certify, check_hypotheses, detect_family


@dataclass(frozen=True)
class FixtureRow:
    table_id: str
    n: int
    q: int
    P_primes: tuple[int, ...]
    expected_h_n: int
    expected_h_P: int | None
    symbols: tuple[int, ...]
    expected_congruent: bool

    @property
    def family(self) -> Family:
        return Family.F5557 if self.q % 8 == 7 else Family.F553

    @property
    def expected_verdict(self) -> Verdict:
        if self.table_id == "2":
            return Verdict.NON_CONGRUENT
        if self.table_id == "4":
            return Verdict.CONDITIONAL
        return Verdict.INCONCLUSIVE


def load_rows() -> list[FixtureRow]:
    text = resources.files("noncongruent").joinpath("data/example_tables.csv").read_text()
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    rows = []
    for rec in csv.DictReader(io.StringIO("\n".join(lines))):
        rows.append(FixtureRow(
            table_id=rec["table_id"],
            n=int(rec["n"]),
            q=int(rec["q"]),
            P_primes=tuple(int(p) for p in rec["P_primes"].split()),
            expected_h_n=int(rec["expected_h_n"]),
            expected_h_P=int(rec["expected_h_P"]) if rec["expected_h_P"] else None,
            symbols=tuple(int(s) for s in rec["symbols"].split()),
            expected_congruent=rec["expected_congruent"] == "true",
        ))
    return rows


def symbol_columns(row: FixtureRow) -> tuple[int, ...]:
    """The Legendre-symbol columns as printed for the row's family."""
    ps, q = row.P_primes, row.q
    if row.family is Family.F5557:
        p1, p2, p3 = ps
        qp = {legendre(q, p) for p in ps}
        return (legendre(p1, p2), legendre(p2, p3), legendre(p3, p1),
                qp.pop() if len(qp) == 1 else 0)
    p1, p2 = ps
    return legendre(p1, p2), legendre(p1, q), legendre(p2, q)


@dataclass
class RowReport:
    row: FixtureRow
    checks: dict[str, bool]
    certificate: Certificate | None
    h_n: int
    h_P: int | None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def check_row(row: FixtureRow, backend: str | None = None) -> RowReport:
    """Recompute class numbers, hypotheses, symbols and verdict for a row."""
    f = Factored.from_primes(row.P_primes + (row.q,))
    checks = {"n = P q": f.n == row.n == math.prod(row.P_primes) * row.q}
    h_n = class_number(discriminant(f), backend=backend).h
    checks["h(-n)"] = h_n == row.expected_h_n
    h_P = None
    if row.expected_h_P is not None:
        h_P = class_number(discriminant(Factored.from_primes(row.P_primes)), backend=backend).h
        checks["h(-P)"] = h_P == row.expected_h_P
    fam = detect_family(f)
    checks["family"] = fam.kind is row.family
    rank_ok, qr_ok = check_hypotheses(fam)
    checks["hypotheses"] = rank_ok and qr_ok
    if row.symbols:
        checks["symbols"] = symbol_columns(row) == row.symbols
    cert = certify(f, backend=backend)
    checks["verdict"] = cert.verdict is row.expected_verdict
    return RowReport(row, checks, cert, h_n, h_P)
