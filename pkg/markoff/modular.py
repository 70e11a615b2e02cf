# (c) Copyright The markoff toolkit authors 2026

"""
Geometry of the curve M_p read off from orbit data on X*_{-2}(p): degree, ramification over
j = 0 and j = 1728, cusps and their widths, and the genus computed two ways (Riemann-Hurwitz
from the orbit counts, and the closed form in Phi and epsilon).
"""
from collections import Counter
from fractions import Fraction

import numpy as np

from .action import cycle_lengths, orbit_labels, parity, permutation_of, sign_changes
from .arith import check_prime, n_of_trace, phi_capital
from .errors import InvariantViolation, UsageError
from .log import logger
from .markoff_z import mp_property
from .surface import enumerate_points, star_count, star_count_closed
from .version import VERSION


def _require_p(p):
    p = check_prime(p)
    if p < 5:
        raise UsageError("M_p is only studied for p >= 5, got %d" % p)
    return p


class RamificationProfile(object):
    """ cycle types of gamma_0, gamma_1728 and Rot1 on X*_{-2}(p) """

    def __init__(self, p, degree, fiber0, fiber1728, cusps):
        self.p = p
        self.degree = degree
        self.fiber0 = fiber0
        self.fiber1728 = fiber1728
        self.cusps = cusps

    def to_dict(self):
        kvs = dict()
        kvs['p'] = self.p
        kvs['degree'] = self.degree
        kvs['fiber0'] = dict(Counter(self.fiber0))
        kvs['fiber1728'] = dict(Counter(self.fiber1728))
        kvs['cusps'] = self.cusps
        return kvs


def expected_cusp_widths(p, table):
    """ n_p(a) repeated |C_1(a)*| / n_p(a) times, over all a """
    star = table.subset('star')
    x, _, _ = table.coords(star)
    per_a = np.bincount(x, minlength=p)
    widths = []
    for a in range(p):
        count = int(per_a[a])
        if count == 0:
            continue
        n = n_of_trace(a, p)
        if count % n:
            raise InvariantViolation("conic star count not a multiple of n_p(a)", p=p, a=a, count=count, n=n)
        widths.extend([n] * (count // n))
    return sorted(widths)


def ramification_profile(p, table=None):
    """
    :param p: prime >= 5
    :param table: optional precomputed PointTable for t = -2
    :return: RamificationProfile
    """
    p = _require_p(p)
    if table is None:
        table = enumerate_points(p, -2)
    degree = table.count('star')

    fiber0 = sorted(int(c) for c in cycle_lengths(permutation_of('Gamma0', table)[0]))
    fiber1728 = sorted(int(c) for c in cycle_lengths(permutation_of('Gamma1728', table)[0]))
    cusps = sorted(int(c) for c in cycle_lengths(permutation_of('GammaInf', table)[0]))
    profile = RamificationProfile(p, degree, fiber0, fiber1728, cusps)
    check_profile(profile, table)
    return profile


def check_profile(profile, table):
    p = profile.p
    for name in ('fiber0', 'fiber1728', 'cusps'):
        if sum(getattr(profile, name)) != profile.degree:
            raise InvariantViolation("%s does not sum to the degree" % name, p=p)
    if not set(profile.fiber0) <= {1, 3} or profile.fiber0.count(1) > 1:
        raise InvariantViolation("gamma_0 cycle type is not 1^e 3^k with e <= 1", p=p, fiber0=profile.fiber0)
    if not set(profile.fiber1728) <= {1, 2}:
        raise InvariantViolation("gamma_1728 cycle type is not 1^e 2^k", p=p)
    fixed = profile.fiber1728.count(1)
    if (fixed == 2) != (p % 8 in (1, 7)):
        raise InvariantViolation("gamma_1728 fixed points disagree with p mod 8", p=p, fixed=fixed)
    widths = expected_cusp_widths(p, table)
    if widths != profile.cusps:
        raise InvariantViolation("cusp widths differ from the conic fiber prediction", p=p,
                                 found=profile.cusps, expected=widths)


def epsilon(p):
    """ the p mod 8 correction term of the genus formula """
    r = p % 8
    if r == 1:
        return Fraction(7 * p, 8) - Fraction(29, 24)
    if r == 3:
        return Fraction(5 * p, 8) + Fraction(19, 24)
    if r == 5:
        return Fraction(7 * p, 8) - Fraction(17, 24)
    if r == 7:
        return Fraction(5 * p, 8) + Fraction(7, 24)
    raise UsageError("epsilon is defined for odd p")


def cusp_count_closed(p):
    """
    (p-1)/2 Phi(p-1) + (p+1)/2 Phi(p+1) + (-5p+11)/4 or (-7p-1)/4 as p is 1 or 3 mod 4.
    """
    p = _require_p(p)
    value = Fraction(p - 1, 2) * phi_capital(p - 1) + Fraction(p + 1, 2) * phi_capital(p + 1)
    if p % 4 == 1:
        value += Fraction(-5 * p + 11, 4)
    else:
        value += Fraction(-7 * p - 1, 4)
    if value.denominator != 1 or value < 0:
        raise InvariantViolation("cusp count closed form is not a nonnegative integer", p=p, value=str(value))
    return value


def genus_closed(p):
    p = _require_p(p)
    return Fraction(p * p, 12) - Fraction(p - 1, 4) * phi_capital(p - 1) - \
        Fraction(p + 1, 4) * phi_capital(p + 1) + epsilon(p)


def genus_lower_bound(p):
    """
    The closed-form genus, checked to be at least 2 from p = 13 on.
    """
    g = genus_closed(p)
    if p >= 13 and g < 2:
        raise InvariantViolation("closed form genus drops below 2", p=p, genus=str(g))
    return g


def fiber_counts_closed(p):
    """
    Closed forms for the number of points over j = 1728 (by p mod 8) and over j = 0
    ((deg + 2)/3, forced by a unique unramified point).
    """
    p = _require_p(p)
    degree = star_count_closed(p)
    over1728 = {1: Fraction(p * p + 3 * p + 2, 2), 3: Fraction(p * p - 3 * p, 2),
                5: Fraction(p * p + 3 * p, 2), 7: Fraction(p * p - 3 * p + 2, 2)}[p % 8]
    return Fraction(degree + 2, 3), over1728


def riemann_hurwitz(degree, n0, n1728, ninf):
    """ genus of a cover of the j-line with the given fiber counts over 0, 1728 and infinity """
    twice = degree - n0 - n1728 - ninf + 2
    if twice % 2 or twice < 0:
        raise InvariantViolation("Riemann-Hurwitz gives a non-integral genus", degree=degree, fibers=[n0, n1728, ninf])
    return twice // 2


class GenusReport(object):
    def __init__(self, p, degree, fibers, cusps, genus_rh, genus_closed, epsilon, cusp_count_formula,
                 components):
        self.p = p
        self.degree = degree
        self.fibers = fibers
        self.cusps = cusps
        self.genus_rh = genus_rh
        self.genus_closed = genus_closed
        self.epsilon = epsilon
        self.cusp_count_formula = cusp_count_formula
        self.components = components

    def is_connected(self):
        return len(self.components) == 1

    def to_dict(self):
        kvs = dict()
        kvs['p'] = self.p
        kvs['t'] = -2
        kvs['gens'] = 'out_plus'
        kvs['version'] = VERSION
        kvs['degree'] = self.degree
        kvs['fibers'] = self.fibers
        kvs['cusps'] = self.cusps
        kvs['genus_rh'] = self.genus_rh
        kvs['genus_closed'] = str(self.genus_closed) if self.genus_closed is not None else None
        kvs['epsilon'] = str(self.epsilon)
        kvs['cusp_count_formula'] = str(self.cusp_count_formula)
        kvs['components'] = self.components
        return kvs


def components(p, table):
    """
    Orbits of <gamma_0, gamma_1728> on X*_{-2}(p) with the per-component fiber counts and genus.
    """
    perms = {name: permutation_of(name, table)[0] for name in ('Gamma0', 'Gamma1728', 'GammaInf')}
    n = table.count('star')
    comp = orbit_labels([perms['Gamma0'], perms['Gamma1728']], n)
    reps, comp_ids = np.unique(comp, return_inverse=True)
    out = []
    cycles = {}
    for name, perm in perms.items():
        cyc = orbit_labels([perm], n)
        # one representative per cycle, counted in its component
        cycle_reps = np.unique(cyc)
        cycles[name] = np.bincount(comp_ids[cycle_reps], minlength=len(reps))
    degrees = np.bincount(comp_ids, minlength=len(reps))
    for i in range(len(reps)):
        degree = int(degrees[i])
        n0, n1728, ninf = (int(cycles[k][i]) for k in ('Gamma0', 'Gamma1728', 'GammaInf'))
        out.append({'degree': degree, 'fiber0': n0, 'fiber1728': n1728, 'cusps': ninf,
                    'genus': riemann_hurwitz(degree, n0, n1728, ninf)})
    return out


def genus(p, table=None):
    """
    Genus of M_p from Riemann-Hurwitz and from the closed form; the two must agree.

    When the action is not transitive the report carries one genus per component and no single
    genus values.
    """
    p = _require_p(p)
    if table is None:
        table = enumerate_points(p, -2)
    star_count(p, table)
    comps = components(p, table)
    profile = ramification_profile(p, table)
    eps = epsilon(p)
    cusp_formula = cusp_count_closed(p)
    fibers = {'0': len(profile.fiber0), '1728': len(profile.fiber1728), 'inf': len(profile.cusps)}

    if len(comps) != 1:
        logger.warning("p=%d: X*(p) splits into %d components; reporting per-component genera", p, len(comps))
        return GenusReport(p, profile.degree, fibers, profile.cusps, None, None, eps, cusp_formula, comps)

    closed0, closed1728 = fiber_counts_closed(p)
    if fibers['0'] != closed0 or fibers['1728'] != closed1728:
        raise InvariantViolation("fiber counts over 0 / 1728 disagree with their closed forms", p=p,
                                 found=fibers, expected=[str(closed0), str(closed1728)])
    if fibers['inf'] != cusp_formula:
        raise InvariantViolation("cusp count disagrees with the closed form", p=p, found=fibers['inf'],
                                 expected=str(cusp_formula))

    g_rh = comps[0]['genus']
    g_closed = genus_lower_bound(p)
    if g_closed != g_rh:
        raise InvariantViolation("Riemann-Hurwitz and closed form genus differ", p=p, genus_rh=g_rh,
                                 genus_closed=str(g_closed))
    return GenusReport(p, profile.degree, fibers, profile.cusps, g_rh, g_closed, eps, cusp_formula, comps)


class MonodromyReport(object):
    def __init__(self, p, d_p, transitive_on_quotient, parities, alt_predicted, mp):
        self.p = p
        self.d_p = d_p
        self.transitive_on_quotient = transitive_on_quotient
        self.parities = parities
        self.alt_predicted = alt_predicted
        self.mp = mp

    def parity_consistent(self):
        all_even = not any(self.parities.values())
        return all_even == self.alt_predicted

    def to_dict(self):
        kvs = dict()
        kvs['p'] = self.p
        kvs['d_p'] = self.d_p
        kvs['transitive_on_quotient'] = self.transitive_on_quotient
        kvs['parities'] = self.parities
        kvs['alt_predicted'] = self.alt_predicted
        kvs['mp'] = self.mp
        kvs['parity_consistent'] = self.parity_consistent()
        return kvs


def sign_quotient(table):
    """
    Classes of X*_{-2}(p) modulo the double sign changes.  The group has order 4 and must act
    freely.

    :return: (class id per star position, number of classes)
    """
    n = table.count('star')
    neg_xy, neg_xz, neg_yz = sign_changes(table)
    ident = np.arange(n)
    if not np.array_equal(neg_yz, neg_xy[neg_xz]):
        raise InvariantViolation("double sign changes do not compose", p=table.p)
    if np.any(neg_xy == ident) or np.any(neg_xz == ident) or np.any(neg_yz == ident):
        raise InvariantViolation("double sign changes do not act freely", p=table.p)
    labels = orbit_labels([neg_xy, neg_xz], n)
    reps, ids = np.unique(labels, return_inverse=True)
    return ids, len(reps)


def monodromy_report(p, table=None):
    """
    Permutation data of gamma_0, gamma_1728, gamma_inf on Y*(p) = X*_{-2}(p)/V.
    """
    p = _require_p(p)
    if table is None:
        table = enumerate_points(p, -2)
    ids, d_p = sign_quotient(table)
    expected = star_count(p, table) // 4
    if d_p != expected:
        raise InvariantViolation("sign quotient has the wrong size", p=p, found=d_p, expected=expected)

    parities = {}
    quotient_perms = []
    for name in ('Gamma0', 'Gamma1728', 'GammaInf'):
        perm = permutation_of(name, table)[0]
        q = np.empty(d_p, dtype=np.int64)
        q[ids] = ids[perm]
        if not np.array_equal(q[ids], ids[perm]):
            raise InvariantViolation("%s does not descend to the sign quotient" % name, p=p)
        quotient_perms.append(q)
        parities[name] = parity(q)

    labels = orbit_labels(quotient_perms, d_p)
    transitive = bool(d_p == 0 or np.all(labels == 0))
    report = MonodromyReport(p, d_p, transitive, parities, p % 16 in (1, 3, 13, 15), mp_property(p))
    if report.mp and report.transitive_on_quotient and not report.parity_consistent():
        raise InvariantViolation("generator parities contradict the alternating/symmetric prediction", p=p,
                                 parities=parities, alt_predicted=report.alt_predicted)
    return report
