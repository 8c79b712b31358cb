"""Family detection and non-congruence certificates.

Two families of odd square-free n = P q, with P a product of t primes that
are 5 mod 8:

* ``F5557``: q = 7 mod 8 and t odd. If the hypotheses hold and 2^(t+2) does
  not divide h(-n), n is not congruent (unconditional).
* ``F553``: q = 3 mod 8 and t even. If the hypotheses hold and
  h(-n) is not h(-P) + 2^(t+1) mod 2^(t+2), n is not congruent provided the
  2-part of Sha is as required; that condition cannot be checked here, so the
  verdict is recorded as conditional.

The theorems give necessary conditions only, so no verdict ever claims that n
is congruent.
"""
from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass
from typing import Any

from . import kernels
from .arith import Factored, factor_squarefree, legendre, quartic, v2
from .classgroup import (
    H_BUDGET,
    class_number,
    discriminant,
    eight_rank_jung_yue,
    eight_rank_quartic_553,
    eight_rank_quartic_5557,
)
from .descent import build_A, monsky
from .errors import BadResidue, BudgetExceeded, NonCongruentError
from .gf2 import rank

TUNNELL_BUDGET = 5_000_000_000
SHA_HYPOTHESIS = "the 2-torsion subgroup Sha(E_n/Q)[2] is finite"


class Family(str, enum.Enum):
    F5557 = "F5557"
    F553 = "F553"
    NOT_APPLICABLE = "NotApplicable"


class Verdict(str, enum.Enum):
    NON_CONGRUENT = "NonCongruent"
    CONDITIONAL = "NonCongruentConditionalSha"
    INCONCLUSIVE = "Inconclusive"
    NOT_APPLICABLE = "NotApplicable"


class Method(str, enum.Enum):
    CLASS_NUMBER = "ClassNumber"
    QUARTIC = "QuarticFastPath"
    BOTH = "Both"


EXIT_CODES = {
    Verdict.NON_CONGRUENT: 0,
    Verdict.CONDITIONAL: 10,
    Verdict.INCONCLUSIVE: 20,
    Verdict.NOT_APPLICABLE: 30,
}


class InconsistentCertificate(NonCongruentError):
    """The class-number and quartic routes disagreed; indicates a bug."""


@dataclass(frozen=True)
class FamilyInfo:
    kind: Family
    t: int = 0
    P_primes: tuple[int, ...] = ()
    q: int | None = None

    @property
    def P(self) -> int:
        out = 1
        for p in self.P_primes:
            out *= p
        return out


@dataclass(frozen=True)
class Certificate:
    n: int
    family: FamilyInfo
    hyp_rank_ok: bool | None
    hyp_qr_ok: bool | None
    selmer_rank: int
    h_n: int | None
    v2_h_n: int | None
    h_P: int | None
    eight_rank_n: int | None
    eight_rank_P: int | None
    quartic_qP: int | None
    verdict: Verdict
    method: Method
    root_number: int
    sha_hypothesis: str | None = None

    def to_dict(self) -> dict[str, Any]:
        d = dataclasses.asdict(self)
        d["family"]["kind"] = self.family.kind.value
        d["family"]["P_primes"] = list(self.family.P_primes)
        d["verdict"] = self.verdict.value
        d["method"] = self.method.value
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Certificate":
        fam = d["family"]
        d = dict(d)
        d["family"] = FamilyInfo(Family(fam["kind"]), fam["t"], tuple(fam["P_primes"]), fam["q"])
        d["verdict"] = Verdict(d["verdict"])
        d["method"] = Method(d["method"])
        return cls(**d)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]


def _factored(n: int | Factored) -> Factored:
    return n if isinstance(n, Factored) else factor_squarefree(n)


def detect_family(n: int | Factored) -> FamilyInfo:
    f = _factored(n)
    fives = tuple(p for p in f.primes if p % 8 == 5)
    others = [p for p in f.primes if p % 8 != 5]
    t = len(fives)
    if len(others) != 1 or t == 0:
        return FamilyInfo(Family.NOT_APPLICABLE)
    q = others[0]
    if q % 8 == 7 and t % 2 == 1:
        return FamilyInfo(Family.F5557, t, fives, q)
    if q % 8 == 3 and t % 2 == 0:
        return FamilyInfo(Family.F553, t, fives, q)
    return FamilyInfo(Family.NOT_APPLICABLE)


def check_hypotheses(fam: FamilyInfo) -> tuple[bool, bool]:
    """(rank A_P == t - 1, (p_i / q) == 1 for every i)."""
    if fam.kind is Family.NOT_APPLICABLE:
        raise ValueError("no hypotheses to check outside the two families")
    rank_ok = rank(build_A(fam.P_primes)) == fam.t - 1
    qr_ok = all(legendre(p, fam.q) == 1 for p in fam.P_primes)
    return rank_ok, qr_ok


def root_number(n: int) -> int:
    r = n % 8
    if r in (1, 2, 3):
        return 1
    if r in (5, 6, 7):
        return -1
    raise BadResidue(f"n = {r} mod 8 is not square-free")


def certify(n: int | Factored, method: Method | str = Method.BOTH,
            budget_h: int = H_BUDGET, backend: str | None = None) -> Certificate:
    """Run the applicable criterion and return the full evidence trail."""
    method = Method(method)
    f = _factored(n)
    fam = detect_family(f)
    base = dict(n=f.n, family=fam, selmer_rank=monsky(f).selmer_rank,
                root_number=root_number(f.n), method=method)
    empty = dict(h_n=None, v2_h_n=None, h_P=None, eight_rank_n=None,
                 eight_rank_P=None, quartic_qP=None)
    if fam.kind is Family.NOT_APPLICABLE:
        return Certificate(hyp_rank_ok=None, hyp_qr_ok=None, verdict=Verdict.NOT_APPLICABLE,
                           **base, **empty)

    rank_ok, qr_ok = check_hypotheses(fam)
    t, P, q = fam.t, fam.P, fam.q
    sha = SHA_HYPOTHESIS if fam.kind is Family.F553 else None
    fields = dict(empty)
    use_h = method in (Method.CLASS_NUMBER, Method.BOTH)
    use_quartic = method in (Method.QUARTIC, Method.BOTH)

    if use_h:
        hn = class_number(discriminant(f), budget_h, backend)
        fields.update(h_n=hn.h, v2_h_n=hn.v2)
        if fam.kind is Family.F553:
            fields["h_P"] = class_number(discriminant(Factored(P, fam.P_primes)), budget_h, backend).h

    if not (rank_ok and qr_ok):
        return Certificate(hyp_rank_ok=rank_ok, hyp_qr_ok=qr_ok, verdict=Verdict.NOT_APPLICABLE,
                           sha_hypothesis=sha, **base, **fields)

    h_verdict = q_verdict = None
    top = 1 << (t + 2)
    if fam.kind is Family.F5557:
        target = Verdict.NON_CONGRUENT
        if use_h:
            h_verdict = target if fields["h_n"] % top else Verdict.INCONCLUSIVE
            fields["eight_rank_n"] = 1 if fields["v2_h_n"] >= t + 2 else 0
        if use_quartic:
            fields["quartic_qP"] = quartic(q, fam.P_primes)
            r8 = eight_rank_quartic_5557(fam.P_primes, q)
            fields["eight_rank_n"] = r8
            q_verdict = target if r8 == 0 else Verdict.INCONCLUSIVE
    else:
        target = Verdict.CONDITIONAL
        if use_h:
            holds = (fields["h_n"] - fields["h_P"] - (top >> 1)) % top == 0
            h_verdict = Verdict.INCONCLUSIVE if holds else target
            fields["eight_rank_n"] = 1 if fields["v2_h_n"] >= t + 2 else 0
            fields["eight_rank_P"] = 1 if v2(fields["h_P"]) >= t + 2 else 0
        if use_quartic:
            fields["quartic_qP"] = quartic(q, fam.P_primes)
            r8n = eight_rank_quartic_553(fam.P_primes, q)
            r8p = eight_rank_jung_yue(fam.P_primes)
            if use_h and (r8n, r8p) != (fields["eight_rank_n"], fields["eight_rank_P"]):
                raise InconsistentCertificate(f"n={f.n}: 8-ranks from h and quartic symbols differ")
            fields.update(eight_rank_n=r8n, eight_rank_P=r8p)
            q_verdict = target if r8n == r8p else Verdict.INCONCLUSIVE

    if h_verdict is not None and q_verdict is not None and h_verdict != q_verdict:
        raise InconsistentCertificate(f"n={f.n}: class-number route says {h_verdict.value}, "
                                      f"quartic route says {q_verdict.value}")
    verdict = h_verdict if h_verdict is not None else q_verdict
    return Certificate(hyp_rank_ok=rank_ok, hyp_qr_ok=qr_ok, verdict=verdict,
                       sha_hypothesis=sha, **base, **fields)


class TunnellStatus(str, enum.Enum):
    CONSISTENT = "ConsistentWithCongruent"
    NOT_CONGRUENT = "NotCongruentByTunnell"


@dataclass(frozen=True)
class TunnellResult:
    n: int
    A: int
    B: int
    status: TunnellStatus


def tunnell_check(n: int | Factored, budget: int | None = TUNNELL_BUDGET,
                  backend: str | None = None) -> TunnellResult:
    """A = #{x^2+2y^2+8z^2 = n}, B = #{x^2+2y^2+32z^2 = n}; A != 2B rules out
    congruence for odd square-free n."""
    nn = n.n if isinstance(n, Factored) else int(n)
    if budget is not None and nn > budget:
        raise BudgetExceeded(f"n = {nn} above the Tunnell budget {budget}")
    A, B = kernels.tunnell_counts(nn, backend=backend)
    status = TunnellStatus.CONSISTENT if A == 2 * B else TunnellStatus.NOT_CONGRUENT
    return TunnellResult(nn, A, B, status)
