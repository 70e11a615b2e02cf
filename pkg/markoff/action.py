# (c) Copyright The markoff toolkit authors 2026

"""
The mapping class group action on surface points.

Every generator is a polynomial map that works on plain ints and on numpy coordinate arrays
alike, so one definition serves both the pointwise API (apply) and the vectorized one used to
turn a generator into a permutation of a PointTable subset.
"""
from collections import deque

import numpy as np

from .arith import n_of_trace
from .errors import InvariantViolation, UsageError
from .log import logger
from .surface import SurfacePoint, conic_fiber, enumerate_points


def _r1(x, y, z, p):
    return (y * z - x) % p, y, z


def _r2(x, y, z, p):
    return x, (x * z - y) % p, z


def _r3(x, y, z, p):
    return x, y, (x * y - z) % p


def _swap12(x, y, z, p):
    return y, x, z


def _swap23(x, y, z, p):
    return x, z, y


def _swap13(x, y, z, p):
    return z, y, x


def _rot1(x, y, z, p):
    return x, z, (x * z - y) % p


def _rot2(x, y, z, p):
    return (x * y - z) % p, y, x


def _rot3(x, y, z, p):
    return y, (y * z - x) % p, z


def _gamma0(x, y, z, p):
    first = (x * y - z) % p
    return first, x, (x * first - y) % p


def _gamma1728(x, y, z, p):
    return y, x, (x * y - z) % p


def _identity(x, y, z, p):
    return x, y, z


def _neg_xy(x, y, z, p):
    return (-x) % p, (-y) % p, z


def _neg_xz(x, y, z, p):
    return (-x) % p, y, (-z) % p


def _neg_yz(x, y, z, p):
    return x, (-y) % p, (-z) % p


GENERATORS = {
    'R1': _r1,
    'R2': _r2,
    'R3': _r3,
    'Swap12': _swap12,
    'Swap23': _swap23,
    'Swap13': _swap13,
    'Rot1': _rot1,
    'Rot2': _rot2,
    'Rot3': _rot3,
    'Gamma0': _gamma0,
    'Gamma1728': _gamma1728,
    'GammaInf': _rot1,
    'GammaMinusI': _identity,
    'NegXY': _neg_xy,
    'NegXZ': _neg_xz,
    'NegYZ': _neg_yz,
}

GENERATOR_SETS = {
    'gamma': ('R3', 'Swap12', 'Swap23'),
    'full': ('R1', 'R2', 'R3', 'Swap12', 'Swap23', 'Swap13'),
    'out_plus': ('Gamma0', 'Gamma1728'),
    'signs': ('NegXY', 'NegXZ'),
}


class MoveWord(object):
    """
    A word in the named generators.  Application is right to left: the last tag acts first.
    """
    __slots__ = ('tags',)

    def __init__(self, tags=()):
        if isinstance(tags, str):
            tags = tags.replace('*', ' ').split()
        tags = tuple(tags)
        for tag in tags:
            if tag not in GENERATORS:
                raise UsageError("unknown generator %r" % tag)
        self.tags = tags

    def __mul__(self, other):
        return MoveWord(self.tags + MoveWord.coerce(other).tags)

    def __len__(self):
        return len(self.tags)

    def __eq__(self, other):
        return isinstance(other, MoveWord) and self.tags == other.tags

    def __hash__(self):
        return hash(self.tags)

    def __str__(self):
        return "*".join(self.tags) if self.tags else "1"

    __repr__ = __str__

    def act(self, x, y, z, p):
        for tag in reversed(self.tags):
            x, y, z = GENERATORS[tag](x, y, z, p)
        return x, y, z

    @staticmethod
    def coerce(m):
        return m if isinstance(m, MoveWord) else MoveWord(m)


def generator_set(gens):
    """
    Resolves a named set ('gamma', 'full', 'out_plus', 'signs') or an iterable of words into
    (id string, list of MoveWord).
    """
    if isinstance(gens, str) and gens in GENERATOR_SETS:
        return gens, [MoveWord((tag,)) for tag in GENERATOR_SETS[gens]]
    if isinstance(gens, (str, MoveWord)):
        gens = [gens]
    words = [MoveWord.coerce(g) for g in gens]
    return ",".join(str(w) for w in words), words


def apply(m, P):
    """
    Image of a surface point under a move word.

    @param m: MoveWord (or a string of tags)
    @param P: SurfacePoint
    @return: SurfacePoint on the same X_t
    """
    x, y, z = MoveWord.coerce(m).act(P.x, P.y, P.z, P.p)
    return SurfacePoint(x, y, z, P.p)


def permutation_of(m, table, restrict='star'):
    """
    The permutation a move word induces on a subset of a PointTable.

    :param m: MoveWord
    :param table: PointTable
    :param restrict: subset name
    :return: (perm, parity) with perm[i] the subset position of the image of subset position i
             and parity 0 for even, 1 for odd
    """
    m = MoveWord.coerce(m)
    idx = table.subset(restrict)
    x, y, z = table.coords(idx)
    images = table.index_of(*m.act(x, y, z, table.p))
    escaped = images < 0
    if not escaped.all():
        escaped = escaped | ~table.mask(restrict)[np.maximum(images, 0)]
    if escaped.any():
        first = int(idx[np.flatnonzero(escaped)[0]])
        raise InvariantViolation("generator leaves the subset", generator=str(m), subset=restrict, p=table.p,
                                 t=table.t, point=table.point(first).as_tuple())
    perm = np.searchsorted(idx, images)
    return perm, parity(perm)


def orbit_labels(perms, n):
    """
    Smallest index in each point's orbit under the group generated by the permutations.

    Min-label propagation with pointer jumping; every label is an index of the same orbit and
    never increases, so the fixed point is the orbit minimum whatever the schedule.
    """
    labels = np.arange(n, dtype=np.int64)
    if n == 0 or not perms:
        return labels
    while True:
        new = labels.copy()
        for perm in perms:
            np.minimum(new, labels[perm], out=new)
        new = new[new]
        if np.array_equal(new, labels):
            return labels
        labels = new


def orbit_labels_bfs(perms, n):
    """ Sequential reference for orbit_labels: breadth first search with a visited bitmap. """
    labels = np.full(n, -1, dtype=np.int64)
    visited = np.zeros(n, dtype=bool)
    images = [np.asarray(perm).tolist() for perm in perms]
    for seed in range(n):
        if visited[seed]:
            continue
        visited[seed] = True
        labels[seed] = seed
        queue = deque([seed])
        while queue:
            i = queue.popleft()
            for image in images:
                j = image[i]
                if not visited[j]:
                    visited[j] = True
                    labels[j] = seed
                    queue.append(j)
    return labels


def cycle_lengths(perm):
    """ cycle lengths of one permutation, ordered by the cycle's least element """
    labels = orbit_labels([np.asarray(perm)], len(perm))
    _, counts = np.unique(labels, return_counts=True)
    return counts


def cycle_type(perm):
    """ sorted cycle lengths; two permutations are conjugate exactly when these agree """
    return sorted(int(c) for c in cycle_lengths(perm))


def parity(perm):
    n = len(perm)
    if n == 0:
        return 0
    return int((n - len(cycle_lengths(perm))) % 2)


class OrbitDecomposition(object):
    """
    A partition of a PointTable subset into orbits.  Orbit ids are ordered by representative, the
    minimal packed key of the orbit.
    """

    def __init__(self, table, restrict, gens_id, indices, orbit_ids, sizes, representatives):
        self.table = table
        self.restrict = restrict
        self.gens_id = gens_id
        self.indices = indices
        self.orbit_ids = orbit_ids
        self.sizes = sizes
        self.representatives = representatives

    def __len__(self):
        return len(self.sizes)

    @property
    def p(self):
        return self.table.p

    @property
    def t(self):
        return self.table.t

    def is_transitive(self):
        return len(self.sizes) == 1

    def orbit_of(self, table_index):
        """ orbit id of a table position, or -1 when it lies outside the subset """
        pos = np.searchsorted(self.indices, table_index)
        if pos < len(self.indices) and self.indices[pos] == table_index:
            return int(self.orbit_ids[pos])
        return -1

    def members(self, orbit_id):
        return self.indices[self.orbit_ids == orbit_id]

    def pairs(self):
        """ (representative key, size) per orbit """
        return [(int(k), int(s)) for k, s in zip(self.representatives, self.sizes)]

    def representative_point(self, orbit_id):
        key = int(self.representatives[orbit_id])
        p = self.table.p
        return SurfacePoint(key % p, (key // p) % p, key // (p * p), p)

    def to_dict(self):
        kvs = dict()
        kvs['p'] = self.table.p
        kvs['t'] = self.table.t
        kvs['gens'] = self.gens_id
        kvs['subset'] = self.restrict
        kvs['points'] = int(len(self.indices))
        kvs['transitive'] = self.is_transitive()
        kvs['orbits'] = [{'rep': list(self.representative_point(i).as_tuple()), 'size': int(s)}
                         for i, s in enumerate(self.sizes)]
        return kvs


def decomposition_from_labels(table, restrict, gens_id, idx, labels):
    reps = np.unique(labels)
    orbit_ids = np.searchsorted(reps, labels)
    sizes = np.bincount(orbit_ids, minlength=len(reps)) if len(reps) else np.empty(0, dtype=np.int64)
    return OrbitDecomposition(table, restrict, gens_id, idx, orbit_ids, sizes, table.keys[idx[reps]])


def orbit_decompose(table, gens='gamma', restrict='star', method='labels'):
    """
    Partition of a PointTable subset into orbits of the group generated by gens.

    :param table: PointTable
    :param gens: generator set name or iterable of MoveWords
    :param restrict: 'all', 'star' or 'origin_excluded'
    :param method: 'labels' (vectorized) or 'bfs' (sequential reference); both give identical output
    :return: OrbitDecomposition
    """
    gens_id, words = generator_set(gens)
    idx = table.subset(restrict)
    perms = [permutation_of(w, table, restrict)[0] for w in words]
    if method == 'labels':
        labels = orbit_labels(perms, len(idx))
    elif method == 'bfs':
        labels = orbit_labels_bfs(perms, len(idx))
    else:
        raise UsageError("unknown orbit method %r" % method)
    decomposition = decomposition_from_labels(table, restrict, gens_id, idx, labels)
    logger.debug("X_%d(F_%d) %s under <%s>: %d orbits", table.t, table.p, restrict, gens_id, len(decomposition))
    return decomposition


def rot_orbits_on_fiber(p, t, a):
    """
    Sizes of the Rot1 orbits on the star points of the conic x = a.  Each must equal n_p(a).
    """
    if p < 3:
        raise UsageError("Rot1 orbits on conics need p >= 3")
    if t % p == 2 % p:
        raise UsageError("the Cayley cubic t = 2 is excluded")
    fiber = conic_fiber(p, t, a)
    a = fiber.a
    points = set(fiber.star_points)
    sizes = []
    while points:
        start = min(points)
        y, z = start
        size = 0
        while True:
            points.discard((y, z))
            size += 1
            y, z = z, (a * z - y) % p
            if (y, z) == start:
                break
            if (y, z) not in points:
                raise InvariantViolation("Rot1 left the star points of its conic", p=p, t=t, a=a, point=(a, y, z))
        sizes.append(size)

    expected = n_of_trace(a, p)
    bad = [s for s in sizes if s != expected]
    if bad:
        raise InvariantViolation("Rot1 orbit size differs from n_p(a)", p=p, t=t, a=a, sizes=sizes,
                                 expected=expected)
    return sorted(sizes)


def sign_changes(table, restrict='star'):
    """
    The three double sign changes as permutations of a subset.  With the identity they form
    the Klein four group, which commutes with every Vieta move.

    :param table: PointTable, or a prime p for X_{-2}(F_p)
    :return: list of permutations for NegXY, NegXZ, NegYZ
    """
    if not hasattr(table, 'keys'):
        table = enumerate_points(table, -2)
    return [permutation_of(tag, table, restrict)[0] for tag in GENERATOR_SETS['signs'] + ('NegYZ',)]
