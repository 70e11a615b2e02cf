# (c) Copyright The markoff toolkit authors 2026

"""
Nielsen classes: generating pairs of a finite group G modulo Inn(G), the action of
Out+(F_2) on them, and the congruences their orbit sizes satisfy.

The Out+ moves on pairs are

    gamma0:      (g, h) -> (g h^-1, g)
    gamma1728:   (g, h) -> (h^-1, g)
    gammaInf:    (g, h) -> (g, g h)
    gammaMinusI: (g, h) -> (g^-1, h^-1) = gamma1728^2

They fix the Higman invariant (the class of [g, h] = g h g^-1 h^-1), so orbits are reported
per Higman class.
"""
from math import gcd

import numpy as np
from sympy import primefactors

from .action import cycle_lengths, orbit_labels, permutation_of
from .arith import ceil_div, check_prime, l_valuation
from .configurator import config
from .cusp_comb import cusp_records, d_prime, m_prime
from .errors import InvariantViolation, UsageError
from .groups import Mat, sl2
from .log import logger
from .pairs import GenPairClass, PairSpace, higman_classes, markoff_pair_space  # noqa: F401
from .surface import enumerate_points, markoff_form
from .version import VERSION

COMBINATORIAL = "Combinatorial"
L_POWER = "LPower"


class GroupVerdict(object):
    __slots__ = ('group', 'higman', 'size', 'rule', 'ell', 'modulus', 'passed')

    def __init__(self, group, higman, size, rule, modulus, ell=None):
        self.group = group
        self.higman = higman
        self.size = size
        self.rule = rule
        self.ell = ell
        self.modulus = modulus
        self.passed = size % modulus == 0

    def to_dict(self):
        return {k: getattr(self, k) for k in self.__slots__}

    def __repr__(self):
        return "GroupVerdict(%s, higman %d, size %d, %s mod %d: %s)" % (
            self.group, self.higman, self.size, self.rule, self.modulus, "pass" if self.passed else "FAIL")


class HigmanStratum(object):
    """
    The Out+ orbits on classes whose Higman invariant is one conjugacy class.

    orbit_sizes: sizes on Inn-classes; quotient_sizes: sizes after identifying gammaMinusI-images
    minus_i_fixed: classes fixed by gammaMinusI (recorded, never enforced)
    """

    def __init__(self, group, higman, orbit_sizes, quotient_sizes, minus_i_fixed, classes):
        rep = int(group.class_representatives()[higman])
        self.group = group
        self.higman = higman
        self.representative = rep
        self.order = group.order(rep)
        self.class_size = len(group.conj_class(rep))
        self.orbit_sizes = orbit_sizes
        self.quotient_sizes = quotient_sizes
        self.minus_i_fixed = minus_i_fixed
        self.classes = classes
        self.m_prime = None
        self.d_prime = None
        self.modulus = None
        self.ell_moduli = {}
        self.verdicts = []

    @property
    def e_divisible(self):
        """ every quotient orbit size is divisible by the order of the Higman invariant """
        return all(size % self.order == 0 for size in self.quotient_sizes)

    def to_dict(self):
        kvs = dict()
        kvs['higman'] = self.higman
        kvs['representative'] = self.group.format(self.representative)
        kvs['order'] = self.order
        kvs['class_size'] = self.class_size
        kvs['classes'] = self.classes
        kvs['orbit_sizes'] = self.orbit_sizes
        kvs['quotient_sizes'] = self.quotient_sizes
        kvs['minus_i_fixed'] = self.minus_i_fixed
        kvs['m_prime'] = self.m_prime
        kvs['d_prime'] = self.d_prime
        kvs['modulus'] = self.modulus
        kvs['ell_moduli'] = {str(k): v for k, v in self.ell_moduli.items()}
        kvs['e_divisible'] = self.e_divisible
        kvs['verdicts'] = [v.to_dict() for v in self.verdicts]
        return kvs


class NielsenOrbitReport(object):
    def __init__(self, group, strata):
        self.group = group
        self.strata = strata

    def stratum(self, higman):
        for s in self.strata:
            if s.higman == higman:
                return s
        raise UsageError("Higman class %d of %s is not admissible" % (higman, self.group.name))

    def total_classes(self):
        return sum(s.classes for s in self.strata)

    def passed(self):
        return all(v.passed for s in self.strata for v in s.verdicts)

    def to_dict(self):
        kvs = dict()
        kvs['group'] = self.group.name
        kvs['order'] = self.group.n
        kvs['gens'] = 'out_plus'
        kvs['version'] = VERSION
        kvs['classes'] = self.total_classes()
        kvs['strata'] = [s.to_dict() for s in self.strata]
        return kvs


def enumerate_classes(group, higman=None):
    """
    One GenPairClass per Inn(G)-orbit of generating pairs.

    :param group: FiniteGroup
    :param higman: iterable of conjugacy class ids the commutator must lie in, or None
    :return: list of GenPairClass, empty when G is not 2-generated
    """
    return PairSpace(group, higman).classes()


def higman_invariant(group, g, h=None):
    """
    Conjugacy class id of [g, h].  Accepts a GenPairClass in place of (g, h).
    """
    if isinstance(g, GenPairClass):
        g, h = g.pair()
    return group.class_of(group.commutator(g, h))


def ell_power_modulus(group, higman, ell):
    """
    l^ceil((r - 3s - j)/2) with r = ord_l |c|, r + s = ord_l |G| and j the largest l-valuation of
    the order of a proper normal subgroup; 1 when the exponent is not positive.

    :return: (modulus, r, s, j)
    """
    rep = int(group.class_representatives()[higman])
    r = l_valuation(ell, group.order(rep))
    s = l_valuation(ell, group.n) - r
    proper = [len(N) for N in group.normal_subgroups() if len(N) < group.n]
    j = max([l_valuation(ell, size) for size in proper] + [0])
    exponent = ceil_div(r - 3 * s - j, 2)
    return ell ** max(exponent, 0), r, s, j


def _minus_i_quotients(space, labels):
    minus = space.move('gammaMinusI')
    twice = space.move('gamma1728')[space.move('gamma1728')]
    if not np.array_equal(minus, twice):
        raise InvariantViolation("gammaMinusI is not gamma1728 squared on classes", group=space.group.name)
    fixed = minus == np.arange(len(space))
    reps, ids, sizes = np.unique(labels, return_inverse=True, return_counts=True)
    fixed_per_orbit = np.bincount(ids, weights=fixed, minlength=len(reps)).astype(np.int64)
    mixed = (fixed_per_orbit != 0) & (fixed_per_orbit != sizes)
    if mixed.any() or np.any(sizes[fixed_per_orbit == 0] % 2):
        raise InvariantViolation("gammaMinusI acts neither trivially nor freely on an orbit", group=space.group.name)
    quotients = np.where(fixed_per_orbit == sizes, sizes, sizes // 2)
    return reps, sizes, quotients, fixed_per_orbit


def _stratum_verdicts(stratum, records):
    group = stratum.group
    stratum.m_prime = m_prime(group, stratum.higman, records)
    stratum.d_prime = d_prime(group, stratum.higman)
    c = stratum.order
    stratum.modulus = c // gcd(c, stratum.m_prime * stratum.d_prime)
    stratum.ell_moduli = {ell: ell_power_modulus(group, stratum.higman, ell)[0] for ell in primefactors(c)}
    verdicts = []
    for size in stratum.quotient_sizes:
        verdicts.append(GroupVerdict(group.name, stratum.higman, size, COMBINATORIAL, stratum.modulus))
        for ell, modulus in sorted(stratum.ell_moduli.items()):
            verdicts.append(GroupVerdict(group.name, stratum.higman, size, L_POWER, modulus, ell=ell))
    stratum.verdicts = verdicts


def out_plus_orbits(group, higman=None, verify=True):
    """
    The Out+(F_2) orbits on Inn-classes of generating pairs, per Higman class.

    :param group: FiniteGroup
    :param higman: iterable of Higman class ids to restrict to, or None for every class
    :param verify: also compute m', d' and the congruence verdicts of each stratum
    :return: NielsenOrbitReport
    """
    space = PairSpace(group, higman)
    labels = orbit_labels([space.move('gamma0'), space.move('gamma1728'), space.move('gammaInf')], len(space))
    reps, sizes, quotients, fixed = _minus_i_quotients(space, labels)
    orbit_higman = space.higman_of_classes()[reps] if len(reps) else np.empty(0, dtype=np.int64)

    records = cusp_records(group, space=space) if verify else None
    strata = []
    for c in np.unique(orbit_higman):
        mine = orbit_higman == c
        stratum = HigmanStratum(group, int(c), sorted(int(s) for s in sizes[mine]),
                                sorted(int(q) for q in quotients[mine]), int(fixed[mine].sum()),
                                int(sizes[mine].sum()))
        if verify:
            _stratum_verdicts(stratum, records)
        strata.append(stratum)
    logger.debug("%s: %d classes in %d Out+ orbits over %d Higman classes", group.name, len(space), len(reps),
                 len(strata))
    return NielsenOrbitReport(group, strata)


def verify_combinatorial_congruence(group, higman, report=None, strict=True):
    """
    Every gammaMinusI-quotient orbit size in the Higman stratum is divisible by
    |c| / gcd(|c|, m' d') and by each l-power modulus.

    :return: list of GroupVerdict
    """
    if report is None:
        report = out_plus_orbits(group, [higman])
    stratum = report.stratum(higman)
    if not stratum.verdicts:
        _stratum_verdicts(stratum, cusp_records(group, [higman]))
    failed = [v for v in stratum.verdicts if not v.passed]
    if failed:
        logger.error("combinatorial congruence failures in %s: %s", group.name, failed)
        if strict:
            raise InvariantViolation("orbit size congruence failed", group=group.name,
                                     verdicts=[v.to_dict() for v in failed])
    return stratum.verdicts


def lift_trace_triple(p, x, y, z, rng=None):
    """
    A pair (A, B) in SL2(F_p) with (tr A, tr B, tr AB) = (x, y, z).

    A is the companion matrix [[0, -1], [1, x]]; B = [[y - d, z + c - x d], [c, d]] has the right
    traces for every (c, d), and we search for det B = 1, at random first and then exhaustively.
    When x = +-2 and no companion lift exists, A = +-I.

    :return: (Mat, Mat)
    """
    p = check_prime(p)
    x, y, z = x % p, y % p, z % p
    if rng is None:
        rng = np.random.default_rng([p, x, y, z])
    A = Mat(p, 0, p - 1, 1, x)

    def solve(c, d):
        b11 = (y - d) % p
        b12 = (z + c - x * d) % p
        return b11, b12, (b11 * d - b12 * c) % p

    for _ in range(config['nielsen']['lift_attempts']):
        c, d = (int(v) for v in rng.integers(0, p, size=2))
        b11, b12, det = solve(c, d)
        if det == 1:
            return A, Mat(p, b11, b12, c, d)

    c = np.arange(p, dtype=np.int64)
    for d in range(p):
        b11, b12, det = solve(c, d)
        hits = np.flatnonzero(det == 1)
        if len(hits):
            k = int(hits[0])
            return A, Mat(p, int(b11), int(b12[k]), k, d)

    for s in (1, p - 1):
        if x == (2 * s) % p and (s * y) % p == z:
            return Mat(p, s, 0, 0, s), Mat(p, 0, p - 1, 1, y)
    raise InvariantViolation("no SL2 pair has these trace coordinates", p=p, triple=(x, y, z))


def sl2_crosscheck(p):
    """
    The trace map from GL2(F_p)-classes of generating pairs of SL2(F_p) with noncentral trace -2
    commutator to X*_{-2}(F_p) is a bijection carrying gammaInf to Rot1.  Every trace triple off the
    Cayley cubic T = 2 also lifts back through lift_trace_triple.

    :return: True, or raises InvariantViolation
    """
    space = markoff_pair_space(p)
    group = space.group
    g, h = space.rep_pairs()
    x, y, z = group.trace(g), group.trace(h), group.trace(group.mul(g, h))

    table = enumerate_points(p, -2)
    where = table.index_of(x, y, z)
    star = table.mask('star')
    if np.any(where < 0) or not np.all(star[np.maximum(where, 0)]):
        raise InvariantViolation("trace coordinates of a pair miss X*_{-2}", p=p)
    if len(np.unique(where)) != len(where):
        raise InvariantViolation("two pair classes share trace coordinates", p=p)
    if len(where) != table.count('star'):
        raise InvariantViolation("trace map is not onto X*_{-2}", p=p, classes=len(where), points=table.count('star'))

    rot1, _ = permutation_of('Rot1', table, 'star')
    position = np.searchsorted(table.subset('star'), where)
    if not np.array_equal(rot1[position], position[space.move('gammaInf')]):
        raise InvariantViolation("gammaInf on pairs does not match Rot1 on points", p=p)
    pair_cycles = sorted(int(c) for c in cycle_lengths(space.move('gammaInf')))
    point_cycles = sorted(int(c) for c in cycle_lengths(rot1))
    if pair_cycles != point_cycles:
        raise InvariantViolation("orbit multisets differ", p=p, pairs=pair_cycles, points=point_cycles)

    lifted = check_lifts(p, group)
    logger.info("p=%d: trace map is a bijection onto %d star points, %d trace triples lift", p, len(where), lifted)
    return True


def check_lifts(p, group=None):
    """
    Lift every (x, y, z) in F_p^3 with x^2 + y^2 + z^2 - xyz - 2 != 2 through lift_trace_triple and
    read the traces back in SL2(F_p).

    :return: the number of triples lifted, or raises InvariantViolation
    """
    p = check_prime(p)
    if group is None:
        group = sl2(p)
    xs, ys, zs = np.indices((p, p, p)).reshape(3, -1)
    wanted = markoff_form(xs, ys, zs, p) != 2 % p
    count = 0
    for triple in zip(xs[wanted].tolist(), ys[wanted].tolist(), zs[wanted].tolist()):
        A, B = lift_trace_triple(p, *triple)
        a, b = group.index_of(A), group.index_of(B)
        found = (int(group.trace(a)[0]), int(group.trace(b)[0]), int(group.trace(group.mul(a, b))[0]))
        if found != triple:
            raise InvariantViolation("lift has the wrong trace coordinates", p=p, triple=triple, found=found)
        count += 1
    return count
