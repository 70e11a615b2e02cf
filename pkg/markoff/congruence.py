# (c) Copyright The markoff toolkit authors 2026

"""
Divisibility rules for orbit sizes on X*_t(p), turned into per-orbit verdicts.

t = -2           p divides every orbit size.
t^2 - 4 square   n/gcd(n, 2(p-1)/n) divides twice the orbit size, n = n_p(t).
t^2 - 4 nonsq.   n/gcd(n, 2(p+1)/n) divides twice the orbit size.
odd prime l | n  l^max(r-s, 0) divides the orbit size, r = ord_l(n), r + s = ord_l(p(p^2-1)).
"""
from math import gcd

from sympy import primefactors, primerange

from .action import orbit_decompose
from .arith import check_prime, legendre, l_valuation, n_of_trace
from .errors import InvariantViolation, UsageError
from .groups import sl2
from .log import logger
from .surface import enumerate_points, t_values
from .util import parallel_map

MAIN = "MainDivisibility"
HYPERBOLIC = "Hyperbolic"
ELLIPTIC = "Elliptic"
GENERAL_LADIC = "GeneralLadic"

ORBIT = "orbit"
TWICE_ORBIT = "twice_orbit"


class CongruenceVerdict(object):
    __slots__ = ('p', 't', 'rep', 'size', 'rule', 'ell', 'modulus', 'side', 'passed', 'needs_twice')

    def __init__(self, p, t, rep, size, rule, modulus, side, ell=None):
        self.p = p
        self.t = t
        self.rep = rep
        self.size = size
        self.rule = rule
        self.ell = ell
        self.modulus = modulus
        self.side = side
        quantity = size if side == ORBIT else 2 * size
        self.passed = quantity % modulus == 0
        # the factor-2 slack question: divides 2|O| but not |O|
        self.needs_twice = self.passed and side == TWICE_ORBIT and size % modulus != 0

    def to_dict(self):
        return {k: getattr(self, k) for k in self.__slots__}

    def csv_row(self):
        return "%d,%d,%s,%d,%s,%d,%s" % (self.p, self.t, " ".join(str(c) for c in self.rep), self.size,
                                         self.rule, self.modulus, "pass" if self.passed else "FAIL")

    def __repr__(self):
        return "CongruenceVerdict(p=%d, t=%d, size=%d, %s mod %d: %s)" % (
            self.p, self.t, self.size, self.rule, self.modulus, "pass" if self.passed else "FAIL")


def required_modulus(p, t, ell=None):
    """
    The modulus a star orbit size on X_t(F_p) must be divisible by.

    :param p: odd prime
    :param t: trace invariant, t != 2
    :param ell: when given, the l-adic rule for this prime
    :return: (modulus, side) where side is "orbit" or "twice_orbit"
    """
    modulus, side, _ = congruence_rule(p, t, ell)
    return modulus, side


def congruence_rule(p, t, ell=None):
    """ (modulus, side, rule name) """
    p = check_prime(p, odd=True)
    t = int(t) % p
    if t == 2 % p:
        raise UsageError("the Cayley cubic t = 2 carries no congruence")
    n = n_of_trace(t, p)

    if ell is not None:
        if ell == 2 or n % ell:
            return 1, ORBIT, GENERAL_LADIC
        r = l_valuation(ell, n)
        s = l_valuation(ell, p * (p * p - 1)) - r
        return ell ** max(r - s, 0), ORBIT, GENERAL_LADIC

    if t == p - 2:
        return p, ORBIT, MAIN
    if legendre(t * t - 4, p) == 1:
        return n // gcd(n, 2 * (p - 1) // n), TWICE_ORBIT, HYPERBOLIC
    return n // gcd(n, 2 * (p + 1) // n), TWICE_ORBIT, ELLIPTIC


def verdicts_for_orbit(p, t, rep, size):
    t %= p
    out = []
    modulus, side, rule = congruence_rule(p, t)
    out.append(CongruenceVerdict(p, t, rep, size, rule, modulus, side))
    if t != p - 2:
        for ell in primefactors(n_of_trace(t, p)):
            if ell == 2:
                continue
            modulus, side, rule = congruence_rule(p, t, ell)
            out.append(CongruenceVerdict(p, t, rep, size, rule, modulus, side, ell=ell))
    return out


def verify_surface(p, t, gens='gamma', table=None, strict=True):
    """
    One or more verdicts per orbit of star points on X_t(F_p).

    :param strict: raise InvariantViolation on the first failing verdict
    :return: list of CongruenceVerdict
    """
    p = check_prime(p, odd=True)
    t = int(t) % p
    if t == 2 % p:
        raise UsageError("the Cayley cubic t = 2 carries no congruence")
    if table is None:
        table = enumerate_points(p, t)
    decomposition = orbit_decompose(table, gens, 'star')

    verdicts = []
    for i, size in enumerate(decomposition.sizes):
        rep = decomposition.representative_point(i).as_tuple()
        verdicts.extend(verdicts_for_orbit(p, t, rep, int(size)))

    failed = [v for v in verdicts if not v.passed]
    if failed:
        logger.error("congruence failures on X_%d(F_%d): %s", t, p, failed)
        if strict:
            raise InvariantViolation("orbit size congruence failed", verdicts=[v.to_dict() for v in failed])
    return verdicts


def verify_range(p_max, threads=1, p_min=3):
    """
    verify_surface over every odd prime p_min <= p <= p_max and every t != 2.

    :return: list of failing verdicts (empty when everything passes)
    """
    jobs = [(p, t) for p in primerange(max(3, p_min), p_max + 1) for t in t_values(p)]

    def run(job):
        return [v for v in verify_surface(job[0], job[1], strict=False) if not v.passed]

    failures = []
    for chunk in parallel_map(run, jobs, threads):
        failures.extend(chunk)
    logger.info("checked %d surfaces up to p=%d: %d failures", len(jobs), p_max, len(failures))
    return failures


def centralizer_order_check(p, t):
    """
    Order of the centralizer in SL2(F_p) of a noncentral trace t matrix, checked against
    2p (t = -2), p - 1 (t^2 - 4 a nonzero square) and p + 1 (nonsquare).
    """
    p = check_prime(p, odd=True)
    t = int(t) % p
    if t == 2 % p:
        raise UsageError("t = 2 is excluded")
    group = sl2(p)
    g = group.index_of((0, p - 1, 1, t))
    found = len(group.centralizer(g))
    if t == p - 2:
        expected = 2 * p
    elif legendre(t * t - 4, p) == 1:
        expected = p - 1
    else:
        expected = p + 1
    if found != expected:
        raise InvariantViolation("centralizer order disagrees with the case table", p=p, t=t, found=found,
                                 expected=expected)
    return found
