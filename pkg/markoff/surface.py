# (c) Copyright The markoff toolkit authors 2026

"""
F_p-points of the surfaces X_t : x^2 + y^2 + z^2 - xyz = t + 2 and of their conic fibers
C_1(a)_t = {x = a}.

A PointTable stores the points as a strictly increasing array of packed keys
x + p*y + p^2*z, so a point's position in the table is its canonical index and orbit
representatives can be chosen as minimal keys.
"""
from concurrent.futures import ThreadPoolExecutor
from enum import Enum

import numpy as np

from .arith import check_prime, legendre
from .configurator import config
from .errors import InvariantViolation, UsageError
from .log import logger

SUBSETS = ('all', 'star', 'origin_excluded')


class PointClass(Enum):
    STAR = "StarPoint"
    DIHEDRAL = "DihedralType"
    REDUCIBLE = "ReducibleTrace"


class ConicType(Enum):
    PARABOLIC = "Parabolic"
    HYPERBOLIC = "Hyperbolic"
    ELLIPTIC = "Elliptic"
    EVEN_SPECIAL = "Even-special"


def markoff_form(x, y, z, p):
    """ x^2 + y^2 + z^2 - xyz - 2 mod p, i.e. the trace invariant t of the point """
    return (x * x + y * y + z * z - x * y % p * z - 2) % p


class SurfacePoint(object):
    __slots__ = ('x', 'y', 'z', 'p')

    def __init__(self, x, y, z, p):
        self.p = int(p)
        self.x = int(x) % self.p
        self.y = int(y) % self.p
        self.z = int(z) % self.p

    def trace_invariant(self):
        return markoff_form(self.x, self.y, self.z, self.p)

    def key(self):
        return self.x + self.p * self.y + self.p * self.p * self.z

    def as_tuple(self):
        return (self.x, self.y, self.z)

    def __eq__(self, other):
        return isinstance(other, SurfacePoint) and self.p == other.p and self.as_tuple() == other.as_tuple()

    def __hash__(self):
        return hash((self.p,) + self.as_tuple())

    def __repr__(self):
        return "SurfacePoint(%d, %d, %d; p=%d)" % (self.x, self.y, self.z, self.p)


def _square_roots(p):
    # roots[r] is some square root of r, or -1 for nonresidues
    roots = np.full(p, -1, dtype=np.int64)
    base = np.arange(p, dtype=np.int64)
    roots[(base * base) % p] = base
    return roots


def _keys_for_rows(p, t, xs, roots):
    inv2 = (p + 1) // 2
    y = np.arange(p, dtype=np.int64)
    p2 = p * p
    chunks = []
    for x in xs:
        b = (x * y) % p
        c = (x * x + y * y - t - 2) % p
        disc = (b * b - 4 * c) % p
        r = roots[disc]
        ok = r >= 0
        z1 = ((b + r) * inv2) % p
        chunks.append((x + p * y[ok] + p2 * z1[ok]))
        twin = ok & (r != 0)
        z2 = ((b - r) * inv2) % p
        chunks.append((x + p * y[twin] + p2 * z2[twin]))
    if not chunks:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(chunks)


def _keys_mod_two(t):
    keys = []
    for x in range(2):
        for y in range(2):
            for z in range(2):
                if markoff_form(x, y, z, 2) == t % 2:
                    keys.append(x + 2 * y + 4 * z)
    return np.array(sorted(keys), dtype=np.int64)


class PointTable(object):
    """
    All F_p-points of X_t, sorted by packed key, with the star and origin-excluded subsets
    as boolean masks over the same index set.
    """

    def __init__(self, p, t, keys):
        self.p = int(p)
        self.t = int(t) % self.p
        self.keys = np.ascontiguousarray(keys, dtype=np.int64)
        if len(self.keys) > 1 and not np.all(self.keys[1:] > self.keys[:-1]):
            raise InvariantViolation("point keys are not strictly increasing", p=self.p, t=self.t)

        x, y, z = self.coords()
        nonzero = (x != 0).astype(np.int8) + (y != 0) + (z != 0)
        self._masks = {
            'all': np.ones(len(self.keys), dtype=bool),
            'star': (nonzero >= 2) & (self.t != 2 % self.p),
            'origin_excluded': nonzero > 0,
        }

    def __len__(self):
        return len(self.keys)

    def coords(self, indices=None):
        keys = self.keys if indices is None else self.keys[indices]
        p = self.p
        return keys % p, (keys // p) % p, keys // (p * p)

    def point(self, index):
        x, y, z = self.coords(np.array([index]))
        return SurfacePoint(x[0], y[0], z[0], self.p)

    def pack(self, x, y, z):
        p = self.p
        return np.asarray(x, dtype=np.int64) + p * np.asarray(y, dtype=np.int64) + \
            (p * p) * np.asarray(z, dtype=np.int64)

    def index_of(self, x, y, z):
        """
        Table positions of the given coordinates (scalars or arrays); -1 where the point is not
        on the surface.
        """
        keys = self.pack(x, y, z)
        if len(self.keys) == 0:
            return np.full(np.shape(keys), -1, dtype=np.int64)
        pos = np.minimum(np.searchsorted(self.keys, keys), len(self.keys) - 1)
        return np.where(self.keys[pos] == keys, pos, -1)

    def contains(self, x, y, z):
        return bool(np.all(self.index_of(x, y, z) >= 0))

    def mask(self, subset):
        if subset not in self._masks:
            raise UsageError("unknown subset %r, expected one of %s" % (subset, ", ".join(SUBSETS)))
        return self._masks[subset]

    def subset(self, subset):
        """ sorted table positions of the named subset """
        return np.flatnonzero(self.mask(subset))

    def count(self, subset='all'):
        return int(np.count_nonzero(self.mask(subset)))

    def __eq__(self, other):
        return isinstance(other, PointTable) and self.p == other.p and self.t == other.t and \
            np.array_equal(self.keys, other.keys)

    def __repr__(self):
        return "PointTable(p=%d, t=%d, points=%d, star=%d)" % (self.p, self.t, len(self), self.count('star'))


def enumerate_points(p, t, threads=1):
    """
    Every F_p-point of X_t.  For each (x, y) the z-values are the roots of
    z^2 - xy*z + (x^2 + y^2 - t - 2); p = 2 is scanned exhaustively.

    :param p: prime
    :param t: trace invariant (any residue)
    :param threads: number of workers splitting the x range; output does not depend on it
    :return: PointTable
    """
    p = check_prime(p)
    if p > config['surface']['p_cap']:
        raise UsageError("p = %d is too large for packed 64-bit point keys" % p)
    t = int(t) % p

    if p == 2:
        return PointTable(p, t, _keys_mod_two(t))

    roots = _square_roots(p)
    threads = max(1, int(threads))
    if threads == 1:
        keys = _keys_for_rows(p, t, range(p), roots)
    else:
        bounds = np.linspace(0, p, threads + 1).astype(int)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda ab: _keys_for_rows(p, t, range(ab[0], ab[1]), roots),
                                  zip(bounds[:-1], bounds[1:])))
        keys = np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)

    keys = np.unique(keys)
    logger.debug("enumerated X_%d(F_%d): %d points", t, p, len(keys))
    return PointTable(p, t, keys)


def classify_point(P, t):
    """
    StarPoint, DihedralType (at most one nonzero coordinate) or ReducibleTrace (t = 2).
    """
    t = int(t) % P.p
    if P.trace_invariant() != t:
        raise UsageError("%r is not on X_%d" % (P, t))
    if t == 2 % P.p:
        return PointClass.REDUCIBLE
    nonzero = sum(1 for c in P.as_tuple() if c != 0)
    if nonzero <= 1:
        return PointClass.DIHEDRAL
    return PointClass.STAR


def star_count_closed(p):
    """ |X*_{-2}(p)|: p(p+3) for p = 1 mod 4, p(p-3) for p = 3 mod 4 """
    p = check_prime(p, odd=True)
    if p % 4 == 1:
        return p * (p + 3)
    return p * (p - 3)


def star_count(p, table=None):
    """
    The closed-form star count at t = -2, cross-checked against enumeration.
    """
    expected = star_count_closed(p)
    if table is None:
        table = enumerate_points(p, -2)
    found = table.count('star')
    if found != expected:
        logger.error("star count mismatch at p=%d: enumerated %d, closed form %d", p, found, expected)
        raise InvariantViolation("star count disagrees with the closed form", p=p, enumerated=found,
                                 closed_form=expected)
    return expected


class ConicFiber(object):
    """
    The points (y, z) with (a, y, z) on X_t, tagged by the discriminant a^2 - 4.
    """

    def __init__(self, p, t, a, kind, degenerate, points, star_points):
        self.p = p
        self.t = t
        self.a = a
        self.kind = kind
        self.degenerate = degenerate
        self.points = points
        self.star_points = star_points

    def to_dict(self):
        kvs = dict()
        kvs['p'] = self.p
        kvs['t'] = self.t
        kvs['a'] = self.a
        kvs['type'] = self.kind.value
        kvs['degenerate'] = self.degenerate
        kvs['points'] = len(self.points)
        kvs['star_points'] = len(self.star_points)
        return kvs

    def __repr__(self):
        return "ConicFiber(a=%d, %s%s, %d points, %d star)" % (
            self.a, self.kind.value, "-degenerate" if self.degenerate else "", len(self.points),
            len(self.star_points))


def conic_type(p, a):
    if p == 2:
        return ConicType.EVEN_SPECIAL
    s = legendre(a * a - 4, p)
    if s == 0:
        return ConicType.PARABOLIC
    return ConicType.HYPERBOLIC if s == 1 else ConicType.ELLIPTIC


def conic_count_closed(p, t, a):
    """
    |C_1(a)_t(F_p)| from the shape of y^2 + z^2 - ayz + c = 0, c = a^2 - 2 - t.
    """
    p = check_prime(p, odd=True)
    t %= p
    a %= p
    c = (a * a - 2 - t) % p
    kind = conic_type(p, a)
    if kind is ConicType.PARABOLIC:
        # (y -+ z)^2 = -c
        s = legendre(-c, p)
        return {1: 2 * p, 0: p, -1: 0}[s]
    if kind is ConicType.HYPERBOLIC:
        return p - 1 if c else 2 * p - 1
    return p + 1 if c else 1


def conic_fiber(p, t, a):
    """
    :param p: prime
    :param t: trace invariant
    :param a: the frozen first coordinate
    :return: ConicFiber
    """
    p = check_prime(p)
    t %= p
    a %= p
    points = []
    if p == 2:
        points = [(y, z) for y in range(2) for z in range(2) if markoff_form(a, y, z, 2) == t]
    else:
        roots = _square_roots(p)
        inv2 = (p + 1) // 2
        for y in range(p):
            b = a * y % p
            c = (y * y + a * a - 2 - t) % p
            r = int(roots[(b * b - 4 * c) % p])
            if r < 0:
                continue
            zs = sorted({(b + r) * inv2 % p, (b - r) * inv2 % p})
            points.extend((y, z) for z in zs)

    if t == 2 % p:
        star = []
    elif a == 0:
        star = [(y, z) for (y, z) in points if y != 0 and z != 0]
    else:
        star = [(y, z) for (y, z) in points if y != 0 or z != 0]

    kind = conic_type(p, a)
    degenerate = kind in (ConicType.HYPERBOLIC, ConicType.ELLIPTIC) and (a * a - 2 - t) % p == 0
    fiber = ConicFiber(p, t, a, kind, degenerate, points, star)
    if p != 2 and len(points) != conic_count_closed(p, t, a):
        raise InvariantViolation("conic fiber size disagrees with its case analysis", p=p, t=t, a=a,
                                 found=len(points), expected=conic_count_closed(p, t, a))
    return fiber


def t_values(p):
    """ every trace invariant except the Cayley cubic t = 2 """
    return [t for t in range(p) if t != 2 % p]
