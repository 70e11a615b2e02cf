# (c) Copyright The markoff toolkit authors 2026

"""
Integral Markoff triples.

Two surfaces: M : x^2 + y^2 + z^2 = 3xyz with root (1, 1, 1), and X : x^2 + y^2 + z^2 = xyz with
root (3, 3, 3).  xi : M -> X scales by 3.  Positive solutions are one orbit of the Vieta moves
and permutations, so the tree below a bound is the closure of the root under the moves with
every triple kept at or below the bound.  Coordinates are Python ints throughout.
"""
from collections import deque
from math import isqrt

import numpy as np
from sympy import factorint

from .action import GENERATOR_SETS, MoveWord, orbit_decompose
from .arith import QuadExt, check_prime, element_order, inverse_mod
from .configurator import config
from .errors import InvariantViolation, UsageError
from .log import logger
from .surface import enumerate_points
from .version import VERSION

SURFACES = {'M': 3, 'X': 1}
ROOTS = {'M': (1, 1, 1), 'X': (3, 3, 3)}
SIGNED_ROOTS = ((0, 0, 0), (3, 3, 3), (3, -3, -3), (-3, 3, -3), (-3, -3, 3))


def _coefficient(surface):
    if surface not in SURFACES:
        raise UsageError("unknown surface %r, expected 'M' or 'X'" % (surface,))
    return SURFACES[surface]


class MarkoffTriple(object):
    """ A positive solution with x <= y <= z. """
    __slots__ = ('x', 'y', 'z', 'surface')

    def __init__(self, x, y, z, surface='M'):
        k = _coefficient(surface)
        x, y, z = sorted((int(x), int(y), int(z)))
        if x <= 0:
            raise UsageError("Markoff triples are positive: %r" % ((x, y, z),))
        if x * x + y * y + z * z != k * x * y * z:
            raise UsageError("%r is not on %s" % ((x, y, z), surface))
        self.x, self.y, self.z = x, y, z
        self.surface = surface

    def as_tuple(self):
        return (self.x, self.y, self.z)

    def is_root(self):
        return self.as_tuple() == ROOTS[self.surface]

    def vieta(self, i):
        """ replaces coordinate i (0, 1, 2 of the sorted triple) by the other root of its quadratic """
        k = SURFACES[self.surface]
        c = list(self.as_tuple())
        a, b = (c[j] for j in range(3) if j != i)
        c[i] = k * a * b - c[i]
        return MarkoffTriple(c[0], c[1], c[2], self.surface)

    def children(self):
        """ the neighbors above this triple in the tree """
        out = {self.vieta(0), self.vieta(1)}
        return sorted(t for t in out if t.z > self.z)

    def to_dict(self):
        return {'surface': self.surface, 'triple': [self.x, self.y, self.z]}

    def __eq__(self, other):
        return isinstance(other, MarkoffTriple) and self.surface == other.surface and \
            self.as_tuple() == other.as_tuple()

    def __lt__(self, other):
        return (self.z, self.y, self.x) < (other.z, other.y, other.x)

    def __hash__(self):
        return hash((self.surface,) + self.as_tuple())

    def __repr__(self):
        return "%s%r" % (self.surface, self.as_tuple())


def xi(T):
    """ M -> X, (x, y, z) -> (3x, 3y, 3z) """
    if T.surface != 'M':
        raise UsageError("xi maps M to X")
    return MarkoffTriple(3 * T.x, 3 * T.y, 3 * T.z, 'X')


def xi_inverse(T):
    if T.surface != 'X':
        raise UsageError("xi_inverse maps X to M")
    if T.x % 3 or T.y % 3 or T.z % 3:
        raise InvariantViolation("a positive point of X has a coordinate prime to 3", triple=T.as_tuple())
    return MarkoffTriple(T.x // 3, T.y // 3, T.z // 3, 'M')


def grow_tree(bound, surface='M'):
    """
    Every positive solution with largest coordinate <= bound.

    :param bound: int >= 1
    :param surface: 'M' or 'X'
    :return: sorted list of MarkoffTriple
    """
    bound = int(bound)
    if bound < 1:
        raise UsageError("tree bound must be >= 1")
    root = MarkoffTriple(*ROOTS[surface], surface=surface)
    if root.z > bound:
        return []
    seen = {root}
    queue = deque([root])
    while queue:
        T = queue.popleft()
        for i in range(3):
            U = T.vieta(i)
            if U.z <= bound and U not in seen:
                seen.add(U)
                queue.append(U)
    return sorted(seen)


def descend(T):
    """
    Markoff descent: replace the largest coordinate until the root is reached.

    :param T: MarkoffTriple
    :return: list of the triples visited after T, ending at the root; empty for the root
    """
    path = []
    while not T.is_root():
        U = T.vieta(2)
        if U.z >= T.z:
            raise InvariantViolation("descent stalls", triple=T.as_tuple(), surface=T.surface)
        path.append(U)
        T = U
    return path


def brute_force_triples(bound, surface='M'):
    """
    Exhaustive scan of x <= y <= z <= bound.  For each (x, y) the z are the roots of
    z^2 - kxy z + x^2 + y^2, found when the discriminant is a perfect square.
    """
    k = _coefficient(surface)
    bound = int(bound)
    if bound > 10 ** 7:
        raise UsageError("brute force scan is limited to bounds <= 10^7")
    found = []
    # xy <= 3z / k
    for x in range(1, isqrt(3 * bound // k) + 1):
        y = np.arange(x, min(bound, 3 * bound // (k * x)) + 1, dtype=np.int64)
        if not len(y):
            break
        b = k * x * y
        disc = b * b - 4 * (x * x + y * y)
        ok = disc >= 0
        r = np.sqrt(np.maximum(disc, 0).astype(np.float64)).astype(np.int64)
        r = np.where(r * r > disc, r - 1, r)
        r = np.where((r + 1) * (r + 1) <= disc, r + 1, r)
        ok &= r * r == disc
        for sign in (1, -1):
            twice = b + sign * r
            z = twice // 2
            hit = ok & (twice % 2 == 0) & (z >= y) & (z <= bound)
            found.extend(MarkoffTriple(x, int(yy), int(zz), surface) for yy, zz in zip(y[hit], z[hit]))
    return sorted(set(found))


def markoff_numbers(bound):
    """ distinct coordinates of M-triples up to bound """
    return sorted({c for T in grow_tree(bound) for c in T.as_tuple()})


def mp_property(p):
    """ p = 1 mod 4, or the order of (3 + sqrt 5)/2 in F_p or F_p^2 is at least 32 sqrt(p + 1) """
    p = check_prime(p, odd=True)
    if p % 4 == 1:
        return True
    ext = QuadExt(p)
    eps = (ext.element(3) + ext.sqrt_of(5)) * inverse_mod(2, p)
    order = element_order(eps)
    return order * order >= 1024 * (p + 1)


class StrongApproxReport(object):
    def __init__(self, n, method):
        self.n = n
        self.factors = sorted(factorint(n))
        self.method = method
        self.target = 0
        self.covered = 0
        self.mixed = 0
        self.bound = None
        self.conditional = any(q >= config['markoff']['verified_prime_bound'] for q in self.factors)

    @property
    def holds(self):
        return self.covered == self.target

    def to_dict(self):
        kvs = dict()
        kvs['n'] = self.n
        kvs['factors'] = self.factors
        kvs['method'] = self.method
        kvs['target'] = self.target
        kvs['covered'] = self.covered
        kvs['mixed'] = self.mixed
        kvs['bound'] = self.bound
        kvs['holds'] = self.holds
        kvs['conditional'] = self.conditional
        kvs['version'] = VERSION
        return kvs

    def __repr__(self):
        return "StrongApproxReport(n=%d, %d/%d covered)" % (self.n, self.covered, self.target)


def _residue_masks(n, factors):
    """ over all residues mod n packed as x + n*y + n^2*z: (star everywhere, star or origin everywhere) """
    keys = np.arange(n ** 3, dtype=np.int64)
    x, y, z = keys % n, (keys // n) % n, keys // (n * n)
    star = np.ones(n ** 3, dtype=bool)
    on_surface = np.ones(n ** 3, dtype=bool)
    for q in factors:
        table = enumerate_points(q, -2)
        lut_star = np.zeros(q ** 3, dtype=bool)
        lut_star[table.keys[table.mask('star')]] = True
        reduced = (x % q) + q * (y % q) + q * q * (z % q)
        star &= lut_star[reduced]
        on_surface &= lut_star[reduced] | (reduced == 0)
    return star, on_surface


def _orbit_mod_n(n, start):
    visited = np.zeros(n ** 3, dtype=bool)
    frontier = np.array([start[0] % n + n * (start[1] % n) + n * n * (start[2] % n)], dtype=np.int64)
    visited[frontier] = True
    words = [MoveWord((tag,)) for tag in GENERATOR_SETS['gamma']]
    while len(frontier):
        x, y, z = frontier % n, (frontier // n) % n, frontier // (n * n)
        images = []
        for word in words:
            a, b, c = word.act(x, y, z, n)
            images.append(a + n * b + n * n * c)
        images = np.unique(np.concatenate(images))
        frontier = images[~visited[images]]
        visited[frontier] = True
    return visited


def _tree_residues(n, bound):
    seen = set()
    for T in grow_tree(bound, 'X'):
        a, b, c = T.x % n, T.y % n, T.z % n
        for u, v, w in ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
            seen.add(u + n * v + n * n * w)
    return seen


def strong_approx(n, method='orbit'):
    """
    Surjectivity of X(Z) onto X*(n) together with the origin, n an odd prime or a squarefree
    product of odd primes each = 1 mod 4 or with MP(p).

    'orbit' reduces the integral orbit of (3, 3, 3) equivariantly, by walking it mod n.  'tree'
    reduces the integral tree itself, doubling the digits of the bound until everything is
    covered or config['markoff']['tree_digits_cap'] is passed.  Residues that are the origin modulo
    some prime factors but not others are counted as mixed and are not required.

    :return: StrongApproxReport
    """
    n = int(n)
    if n < 3:
        raise UsageError("strong approximation needs n >= 3")
    factors = factorint(n)
    if any(e > 1 for e in factors.values()) or 2 in factors:
        raise UsageError("n must be a squarefree product of odd primes")
    if len(factors) > 1:
        bad = [q for q in factors if not mp_property(q)]
        if bad:
            raise UsageError("primes %s are 3 mod 4 without MP(p)" % bad)
    if method not in ('orbit', 'tree'):
        raise UsageError("unknown method %r" % (method,))

    report = StrongApproxReport(n, method)
    if report.conditional:
        logger.warning("n=%d has a prime factor beyond the verified range: the result is conditional on "
                       "transitivity", n)

    if len(factors) == 1 and method == 'orbit':
        table = enumerate_points(n, -2)
        decomposition = orbit_decompose(table, 'gamma', 'all')
        origin = int(table.index_of(0, 0, 0))
        start = decomposition.orbit_of(int(table.index_of(3 % n, 3 % n, 3 % n)))
        covered = set(decomposition.members(start).tolist()) | {origin}
        target = set(table.subset('star').tolist()) | {origin}
        report.target = len(target)
        report.covered = len(target & covered)
    else:
        if n ** 3 > config['markoff']['residue_cap']:
            raise UsageError("n = %d is beyond the residue bitmap cap" % n)
        star, on_surface = _residue_masks(n, sorted(factors))
        target = star.copy()
        target[0] = True
        mixed = on_surface & ~target
        if method == 'orbit':
            covered = _orbit_mod_n(n, ROOTS['X'])
            covered[0] = True
        else:
            covered = np.zeros(n ** 3, dtype=bool)
            covered[0] = True
            digits = 4
            while True:
                report.bound = 10 ** digits
                covered[np.fromiter(_tree_residues(n, report.bound), dtype=np.int64)] = True
                if np.all(covered[target]) or digits >= config['markoff']['tree_digits_cap']:
                    break
                digits *= 2
        report.target = int(np.count_nonzero(target))
        report.covered = int(np.count_nonzero(covered & target))
        report.mixed = int(np.count_nonzero(covered & mixed))

    if not report.holds:
        logger.error("strong approximation mod %d: %d of %d residues covered", n, report.covered, report.target)
        if method == 'orbit' and not report.conditional:
            raise InvariantViolation("integral points miss residues mod n", **report.to_dict())
    return report


class FrobeniusReport(object):
    def __init__(self, p, bound, histogram, forbidden):
        self.p = p
        self.bound = bound
        self.histogram = histogram
        self.forbidden = forbidden

    @property
    def passed(self):
        return all(self.histogram[r] == 0 for r in self.forbidden)

    def to_dict(self):
        kvs = dict()
        kvs['p'] = self.p
        kvs['bound'] = self.bound
        kvs['histogram'] = self.histogram
        kvs['forbidden'] = self.forbidden
        kvs['passed'] = self.passed
        kvs['version'] = VERSION
        return kvs


def forbidden_residues(p):
    """ 0 and +-2/3 mod p """
    third = 2 * inverse_mod(3, p) % p
    return sorted({0, third, (-third) % p})


def frobenius_residues(p, bound, strict=True):
    """
    Histogram of the Markoff numbers up to bound modulo p, p = 3 mod 4 and p != 3.  The residues
    0 and +-2/3 never occur.

    :return: FrobeniusReport
    """
    p = check_prime(p, odd=True)
    if p % 4 != 3 or p == 3:
        raise UsageError("the forbidden residues are only claimed for primes p = 3 mod 4, p != 3")
    histogram = [0] * p
    for m in markoff_numbers(bound):
        histogram[m % p] += 1
    report = FrobeniusReport(p, int(bound), histogram, forbidden_residues(p))
    if not report.passed:
        logger.error("Markoff numbers hit forbidden residues mod %d: %s", p, report.to_dict())
        if strict:
            raise InvariantViolation("a Markoff number has a forbidden residue", **report.to_dict())
    return report


def _signed_vieta(t, i):
    c = list(t)
    a, b = (c[j] for j in range(3) if j != i)
    c[i] = a * b - c[i]
    return tuple(c)


def sign_orbits(bound):
    """
    Integral points of X with every |coordinate| <= bound, split into the orbits of the three Vieta
    involutions.  Double sign changes commute with them, so the orbits are those of the five
    roots (0,0,0), (3,3,3), (3,-3,-3), (-3,3,-3), (-3,-3,3).

    :return: dict root -> orbit size
    """
    bound = int(bound)
    orbits = {}
    every = set()
    for root in SIGNED_ROOTS:
        seen = {root}
        queue = deque([root])
        while queue:
            t = queue.popleft()
            for i in range(3):
                u = _signed_vieta(t, i)
                if max(abs(c) for c in u) <= bound and u not in seen:
                    seen.add(u)
                    queue.append(u)
        if seen & every:
            raise InvariantViolation("sign orbits overlap", root=root)
        every |= seen
        orbits[root] = len(seen)

    expected = {(0, 0, 0)}
    for T in brute_force_triples(bound, 'X'):
        a, b, c = T.as_tuple()
        for u in {(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)}:
            for s in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)):
                expected.add((s[0] * u[0], s[1] * u[1], s[2] * u[2]))
    if every != expected:
        raise InvariantViolation("sign orbits miss integral points", bound=bound, found=len(every),
                                 expected=len(expected))
    return orbits
