"""Invariant suites behind ``thuefund verify``.

Each suite yields one record per check: a dict with at least ``suite``,
``check`` and ``passed``.  Randomised suites take a seed so reruns are
reproducible.
"""

from __future__ import annotations

import math
import random
from typing import Iterator

import mpmath

from .bounds import mu_bound_scan, poly_bound_check, remainder_bound_check, table_certificate
from .bruteforce import validate_result
from .errors import NotApplicable
from .exact import QQ, Field, QuadPolynomial, qe
from .measures import build_sequence, consecutive_distinct, corollary1, corollary1_setup, fit_rates
from .numeric import DEFAULT_PREC, working_precision
from .thue import ThueSetup, s_r, scaled_recurrence, thue_pq_closed

SUITES = ("divisibility", "recurrence", "bounds", "mu", "table", "sequence", "bruteforce")


def rational_root_setup() -> ThueSetup:
    """n = 3, F(x) = -8x^3 + (x - 1)^3, which vanishes at x = -1."""
    return ThueSetup(qe(0), qe(1), qe(-8), qe(1), 3)


def divisibility(r_max: int = 6) -> Iterator[dict]:
    setup = rational_root_setup()
    for r in range(r_max + 1):
        S = s_r(setup, r, -1)
        divisor = QuadPolynomial.linear_power(qe(-1), 2 * r + 1)
        _, rem = S.divmod(divisor)
        yield {"suite": "divisibility", "check": f"(x+1)^{2 * r + 1} | S_{r}", "r": r, "passed": rem.is_zero()}


def random_setup(rng: random.Random, n_max: int = 6) -> ThueSetup:
    """Small random parameters, rational or Gaussian, with beta1 != beta2."""
    n = rng.randint(3, n_max)
    field = rng.choice([QQ, Field(-1)])

    def elem(nonzero: bool = False):
        while True:
            a, b = rng.randint(-4, 4), (rng.randint(-3, 3) if field.t else 0)
            z = field.element(a, b) if field.t else qe(a)
            if not nonzero or not z.is_zero():
                return z

    b1 = elem()
    while True:
        b2 = elem()
        if b2 != b1:
            break
    return ThueSetup(b1, b2, elem(True), elem(True), n, base=field)


def recurrence(r_max: int = 10, setups: int = 5, seed: int = 1) -> Iterator[dict]:
    rng = random.Random(seed)
    for k in range(setups):
        setup = random_setup(rng)
        rec = scaled_recurrence(setup, r_max)
        for r in range(r_max + 1):
            ok = thue_pq_closed(setup, r) == rec[r]
            yield {"suite": "recurrence", "check": f"setup {k} r={r}", "setup": _setup_text(setup),
                   "r": r, "passed": ok}


def _setup_text(s: ThueSetup) -> str:
    return f"n={s.n} beta=({s.beta1}, {s.beta2}) gamma=({s.gamma1}, {s.gamma2})"


def random_pair(rng: random.Random, case: str) -> tuple[mpmath.mpc, mpmath.mpc]:
    """(u, z) drawn for a bound case, at the current working precision."""
    mag = mpmath.mpf(rng.uniform(0.2, 20))
    u = mag * mpmath.expj(rng.uniform(-math.pi, math.pi)) if case != "a_real" else mag
    if case == "a_real":
        while True:
            z = mpmath.mpf(rng.uniform(0.2, 20))
            if z != u:
                return mpmath.mpc(u), mpmath.mpc(z)
    if case == "a_circle":
        # z/u = e^(i phi) with phi away from pi
        phi = rng.uniform(-3.0, 3.0)
        return mpmath.mpc(u), u * mpmath.expj(phi)
    # w = z/u inside both unit disks around 1
    while True:
        w = mpmath.mpc(rng.uniform(0.2, 2.0), rng.uniform(-1, 1))
        if abs(1 - w) < 1 and abs(1 - 1 / w) < 1:
            return mpmath.mpc(u), u * w


def bounds(instances: int = 100, n_max: int = 8, r_max: int = 20, seed: int = 1,
           prec: int = DEFAULT_PREC) -> Iterator[dict]:
    rng = random.Random(seed)
    for case in ("a_real", "a_circle", "b_disk"):
        for k in range(instances):
            n = rng.randint(3, n_max)
            m = rng.choice([j for j in range(1, n) if math.gcd(j, n) == 1])
            r = rng.randint(0, r_max)
            with working_precision(prec):
                u, z = random_pair(rng, case)
            rem = remainder_bound_check(m, n, r, u, z, case, prec)
            poly = poly_bound_check(m, n, r, u, z, "b" if case == "b_disk" else "a", prec)
            yield {"suite": "bounds", "check": f"{case} #{k}", "case": case, "m": m, "n": n, "r": r,
                   "remainder_ratio": float(rem.lhs / rem.rhs) if rem.rhs else None,
                   "poly_ratio": float(max(poly.lhs, poly.lhs_other) / poly.rhs),
                   "passed": rem.passed and poly.passed}


def mu(n_max: int = 100_000) -> Iterator[dict]:
    scan = mu_bound_scan(n_max)
    yield {"suite": "mu", "check": "mu_n < 1.94 log n on [3, n_max]", "violations": scan.violations_194,
           "passed": not scan.violations_194}
    yield {"suite": "mu", "check": "mu_n < 1.18 log n on (420, n_max]", "violations": scan.violations_118,
           "passed": not scan.violations_118}
    yield {"suite": "mu", "check": "exceptions to 1.18 log n below 2310",
           "exceptions": scan.exceptions_118_below_2310, "passed": True}


def table(n: int = 3, r_max: int = 400, which: str = "table1", m: int = 1, workers: int = 1) -> Iterator[dict]:
    cert = table_certificate(n, which, r_max=r_max, m=m, workers=workers)
    yield {"suite": "table", "check": f"n={n} {which}", "certificate": cert.to_line(), "status": cert.status,
           "passed": cert.verified}


def sequence(a=128, b=125, n: int = 3, r_max: int = 30, cert="table1", r_lo: int = 10,
             prec: int = DEFAULT_PREC) -> Iterator[dict]:
    setup, g = corollary1_setup(a, b, n)
    res = corollary1(a, b, n, cert, prec)
    states = build_sequence(setup, g, cert=cert, r_max=r_max, prec=prec)
    yield {"suite": "sequence", "check": "integrality and size bounds", "r_max": r_max, "passed": True}
    growth, decay = fit_rates(states, r_lo, r_max)
    Q, E = float(res.Q), float(res.E)
    yield {"suite": "sequence", "check": "growth of |q_r|", "fitted": growth, "Q": Q,
           "passed": growth <= Q * 1.001}
    yield {"suite": "sequence", "check": "decay of |s_r|", "fitted": decay, "inverse_E": 1 / E,
           "passed": decay <= (1 / E) * 1.001}
    distinct = consecutive_distinct(states)
    yield {"suite": "sequence", "check": "p_r q_(r+1) != p_(r+1) q_r", "passed": all(distinct)}


def bruteforce(a=128, b=125, n: int = 3, q_max: int = 1000, cert="table1",
               prec: int = DEFAULT_PREC) -> Iterator[dict]:
    try:
        res = corollary1(a, b, n, cert, prec)
    except NotApplicable as exc:
        yield {"suite": "bruteforce", "check": "measure applicable", "E": float(exc.result.E), "passed": False}
        return
    report = validate_result(res, q_max)
    yield {"suite": "bruteforce", "check": f"|q| <= {q_max}", **report.to_dict()}
