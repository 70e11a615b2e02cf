# (c) Copyright The markoff toolkit authors 2026

"""
A small finite group engine.

Groups are closed from permutation or 2x2 matrix generators.  Elements are indexed by the
sorted order of their serialized labels, so indices (and every representative chosen as a
minimal index) are reproducible.  Up to config['groups']['dense_limit'] elements the full
multiplication table is kept; larger groups multiply through their labels.

Every element-level operation accepts ints or numpy index arrays.
"""
import os
import re
from collections import namedtuple
from functools import lru_cache

import numpy as np

from .action import orbit_labels
from .arith import check_prime
from .configurator import config
from .errors import GroupBuildError, InvariantViolation, UsageError
from .log import logger

# [[a, b], [c, d]] with entries mod p
Mat = namedtuple('Mat', ['p', 'a', 'b', 'c', 'd'])

CORPUS_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data', 'groups')


class PermutationKind(object):
    """ Permutations of {0, ..., degree-1} stored as image rows; g*h applies h first. """

    def __init__(self, degree):
        self.degree = max(1, int(degree))
        self.width = self.degree
        self._small = self.degree <= 15
        self._radix = np.array([self.degree ** i for i in range(self.degree)], dtype=np.int64) \
            if self._small else None

    def encode(self, rows):
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.width)
        if self._small:
            return rows @ self._radix
        out = np.empty(len(rows), dtype=object)
        for i, row in enumerate(rows):
            out[i] = int.from_bytes(row.astype('>u2').tobytes(), 'big')
        return out

    def compose(self, a_rows, b_rows):
        return np.take_along_axis(a_rows, b_rows, axis=1)

    def invert(self, rows):
        return np.argsort(rows, axis=1)

    def identity(self):
        return np.arange(self.degree, dtype=np.int64)

    def check(self, row):
        if sorted(row) != list(range(self.degree)):
            raise GroupBuildError("%r is not a permutation of %d points" % (tuple(row), self.degree))

    def format(self, row):
        seen = set()
        cycles = []
        for start in range(self.degree):
            if start in seen or row[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            nxt = int(row[start])
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = int(row[nxt])
            cycles.append("(" + " ".join(str(c + 1) for c in cycle) + ")")
        return "".join(cycles) or "()"

    def __repr__(self):
        return "PermutationKind(%d)" % self.degree


class MatrixKind(object):
    """ Invertible 2x2 matrices mod p stored as rows (a, b, c, d). """
    width = 4

    def __init__(self, p):
        self.p = check_prime(p)
        if self.p >= 1 << 15:
            raise UsageError("matrix groups are limited to p < 2^15")
        self._inverses = np.zeros(self.p, dtype=np.int64)
        for v in range(1, self.p):
            self._inverses[v] = pow(v, -1, self.p)

    def encode(self, rows):
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, 4)
        p = self.p
        return rows[:, 0] + p * (rows[:, 1] + p * (rows[:, 2] + p * rows[:, 3]))

    def compose(self, a_rows, b_rows):
        p = self.p
        a, b, c, d = a_rows.T
        e, f, g, h = b_rows.T
        return np.stack([(a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p], axis=1)

    def det(self, rows):
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, 4)
        return (rows[:, 0] * rows[:, 3] - rows[:, 1] * rows[:, 2]) % self.p

    def invert(self, rows):
        p = self.p
        k = self._inverses[self.det(rows)]
        a, b, c, d = rows.T
        return np.stack([(d * k) % p, (-b * k) % p, (-c * k) % p, (a * k) % p], axis=1)

    def identity(self):
        return np.array([1, 0, 0, 1], dtype=np.int64)

    def check(self, row):
        if self.det(row)[0] == 0:
            raise GroupBuildError("matrix %r is not invertible mod %d" % (tuple(row), self.p))

    def trace(self, rows):
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, 4)
        return (rows[:, 0] + rows[:, 3]) % self.p

    def format(self, row):
        return "[[%d, %d], [%d, %d]]" % tuple(int(v) for v in row)

    def __repr__(self):
        return "MatrixKind(%d)" % self.p


class FiniteGroup(object):
    """
    A finite group closed from generators.

    n: order; identity: index of 1; inv: inverse per element; orders: element orders;
    class_ids: conjugacy class per element, classes numbered by least element; center: sorted indices.
    """

    def __init__(self, kind, rows, generators, name=None):
        self.kind = kind
        self.name = name or "group"
        order = np.argsort(kind.encode(rows), kind='stable')
        self.rows = np.asarray(rows, dtype=np.int64).reshape(-1, kind.width)[order]
        self.keys = kind.encode(self.rows)
        self.n = len(self.rows)
        self.identity = int(self.index_of_rows(kind.identity()[None, :])[0])
        self.generators = [int(g) for g in self.index_of_rows(np.asarray(generators).reshape(-1, kind.width))] \
            if len(generators) else []

        self.table = None
        if self.n <= config['groups']['dense_limit']:
            self.table = np.empty((self.n, self.n), dtype=np.int32)
            for i in range(self.n):
                left = np.broadcast_to(self.rows[i], self.rows.shape)
                self.table[i] = self.index_of_rows(kind.compose(np.ascontiguousarray(left), self.rows))

        self.inv = self.index_of_rows(kind.invert(self.rows))
        self._check_axioms()
        self.orders = self._element_orders()
        self.class_ids = self._conjugacy_classes()
        self.center = self._center()
        logger.debug("built %s: order %d, %d classes, %s table", self.name, self.n, self.num_classes(),
                     "dense" if self.table is not None else "label")

    # element level

    def index_of_rows(self, rows):
        keys = self.kind.encode(rows)
        pos = np.searchsorted(self.keys, keys)
        pos = np.minimum(pos, self.n - 1)
        if not np.all(self.keys[pos] == keys):
            raise UsageError("element is not in %s" % self.name)
        return pos.astype(np.int64)

    def index_of(self, label):
        """ index of a label: a permutation image tuple, a Mat, or a 4-tuple (a, b, c, d) """
        if isinstance(label, Mat):
            label = (label.a, label.b, label.c, label.d)
        return int(self.index_of_rows(np.asarray(label, dtype=np.int64)[None, :])[0])

    def label(self, g):
        return tuple(int(v) for v in self.rows[g])

    def format(self, g):
        return self.kind.format(self.rows[g])

    def mul(self, a, b):
        if self.table is not None:
            return self.table[a, b]
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        shape = a.shape
        prod = self.kind.compose(self.rows[a.ravel()], self.rows[b.ravel()])
        out = self.index_of_rows(prod).reshape(shape)
        return out if shape else int(out)

    def power(self, g, k):
        g = np.asarray(g)
        k = int(k)
        if k < 0:
            g, k = self.inv[g], -k
        acc = np.full(g.shape, self.identity, dtype=np.int64)
        base = g
        while k:
            if k & 1:
                acc = np.asarray(self.mul(acc, base))
            base = np.asarray(self.mul(base, base))
            k >>= 1
        return acc if acc.shape else int(acc)

    def commutator(self, g, h):
        """ [g, h] = g h g^-1 h^-1 """
        return self.mul(self.mul(self.mul(g, h), self.inv[g]), self.inv[h])

    def conjugate(self, x, g):
        """ x g x^-1 """
        return self.mul(self.mul(x, g), self.inv[x])

    def order(self, g):
        return int(self.orders[g])

    def trace(self, g):
        return self.kind.trace(self.rows[np.atleast_1d(g)])

    # structure

    def _check_axioms(self):
        everything = np.arange(self.n)
        if not np.all(self.mul(self.identity, everything) == everything) or \
                not np.all(self.mul(everything, self.identity) == everything):
            raise InvariantViolation("identity axiom fails", group=self.name)
        if not np.all(self.mul(everything, self.inv) == self.identity):
            raise InvariantViolation("inverse axiom fails", group=self.name)
        rng = np.random.default_rng(self.n)
        samples = config['groups']['associativity_samples']
        a, b, c = rng.integers(0, self.n, size=(3, samples))
        if not np.all(self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))):
            raise InvariantViolation("multiplication is not associative", group=self.name)

    def _element_orders(self):
        everything = np.arange(self.n)
        orders = np.zeros(self.n, dtype=np.int64)
        power = everything.copy()
        k = 1
        while True:
            done = (power == self.identity) & (orders == 0)
            orders[done] = k
            if np.all(orders > 0):
                return orders
            power = self.mul(power, everything)
            k += 1

    def _conjugacy_classes(self):
        everything = np.arange(self.n)
        perms = [self.conjugate(s, everything) for s in self.generators]
        labels = orbit_labels(perms, self.n)
        _, ids = np.unique(labels, return_inverse=True)
        return ids

    def _center(self):
        everything = np.arange(self.n)
        central = np.ones(self.n, dtype=bool)
        for s in self.generators:
            central &= self.mul(everything, s) == self.mul(s, everything)
        return np.flatnonzero(central)

    def num_classes(self):
        return int(self.class_ids.max()) + 1 if self.n else 0

    def class_representatives(self):
        """ least element of each conjugacy class, by class id """
        reps = np.full(self.num_classes(), self.n, dtype=np.int64)
        np.minimum.at(reps, self.class_ids, np.arange(self.n))
        return reps

    def conj_class(self, g):
        return np.flatnonzero(self.class_ids == self.class_ids[g])

    def class_of(self, g):
        return int(self.class_ids[g])

    def classes(self):
        """ the conjugacy classes as sorted index arrays, ordered by least element """
        return [np.flatnonzero(self.class_ids == c) for c in range(self.num_classes())]

    def centralizer(self, g):
        everything = np.arange(self.n)
        return np.flatnonzero(self.mul(everything, g) == self.mul(g, everything))

    def centralizer_of(self, elements):
        everything = np.arange(self.n)
        keep = np.ones(self.n, dtype=bool)
        for g in np.atleast_1d(elements):
            keep &= self.mul(everything, g) == self.mul(g, everything)
        return np.flatnonzero(keep)

    def subgroup(self, elements):
        """ sorted indices of the subgroup generated by the given elements """
        gens = np.unique(np.atleast_1d(np.asarray(elements, dtype=np.int64)))
        seen = np.zeros(self.n, dtype=bool)
        seen[self.identity] = True
        frontier = np.array([self.identity], dtype=np.int64)
        while len(frontier) and len(gens):
            images = np.unique(self.mul(frontier[:, None], gens[None, :]).ravel())
            frontier = images[~seen[images]]
            seen[frontier] = True
        return np.flatnonzero(seen)

    def is_generating_pair(self, g, h):
        return len(self.subgroup([g, h])) == self.n

    def is_abelian(self):
        return len(self.center) == self.n

    def normal_subgroups(self):
        """
        All normal subgroups: normal closures of conjugacy classes, closed under joins.
        Returned sorted by order, each as a sorted index array.
        """
        found = {}
        for c in range(self.num_classes()):
            sub = self.subgroup(np.flatnonzero(self.class_ids == c))
            found[sub.tobytes()] = sub
        changed = True
        while changed:
            changed = False
            subs = list(found.values())
            for i in range(len(subs)):
                for j in range(i + 1, len(subs)):
                    joined = self.subgroup(np.concatenate([subs[i], subs[j]]))
                    if joined.tobytes() not in found:
                        found[joined.tobytes()] = joined
                        changed = True
        return sorted(found.values(), key=len)

    def __len__(self):
        return self.n

    def __repr__(self):
        return "FiniteGroup(%s, order %d)" % (self.name, self.n)


def _kind_for(generators, degree=None):
    mats = [g for g in generators if isinstance(g, Mat)]
    if mats:
        if len(mats) != len(generators):
            raise GroupBuildError("cannot mix matrices and permutations")
        primes = {m.p for m in mats}
        if len(primes) != 1:
            raise GroupBuildError("matrices over different primes: %s" % sorted(primes))
        kind = MatrixKind(primes.pop())
        rows = [[m.a % m.p, m.b % m.p, m.c % m.p, m.d % m.p] for m in mats]
        return kind, rows
    if degree is None:
        degree = max([len(g) for g in generators] + [1])
    kind = PermutationKind(degree)
    rows = []
    for g in generators:
        row = list(g) + list(range(len(g), degree))
        rows.append(row)
    return kind, rows


def build(generators, degree=None, name=None, cap=None):
    """
    Closes a generating set into a FiniteGroup.

    :param generators: permutation image tuples (0-based) or Mat instances; empty means trivial
    :param degree: permutation degree when it cannot be read off the generators
    :param name: label for logs and reports
    :param cap: closure size limit, default config['groups']['closure_cap']
    :return: FiniteGroup
    """
    generators = list(generators)
    cap = cap or config['groups']['closure_cap']
    kind, rows = _kind_for(generators, degree)
    for row in rows:
        kind.check(np.asarray(row, dtype=np.int64)[None, :] if isinstance(kind, MatrixKind) else row)
    gens = np.asarray(rows, dtype=np.int64).reshape(-1, kind.width)

    identity = kind.identity()[None, :]
    elements = [identity]
    seen = kind.encode(identity)
    frontier = identity
    while len(frontier) and len(gens):
        left = np.repeat(frontier, len(gens), axis=0)
        right = np.tile(gens, (len(frontier), 1))
        products = kind.compose(left, right)
        keys = kind.encode(products)
        keys, first = np.unique(keys, return_index=True)
        fresh = ~np.isin(keys, seen)
        frontier = products[first[fresh]]
        seen = np.concatenate([seen, keys[fresh]])
        elements.append(frontier)
        if len(seen) > cap:
            raise GroupBuildError("closure exceeds %d elements" % cap)

    return FiniteGroup(kind, np.concatenate(elements), gens, name=name)


def trivial_group():
    return build([], degree=1, name="1")


@lru_cache(maxsize=16)
def sl2(p):
    """ SL2(F_p) from [[1,1],[0,1]] and [[0,-1],[1,0]] """
    p = check_prime(p)
    group = build([Mat(p, 1, 1, 0, 1), Mat(p, 0, p - 1, 1, 0)], name="SL2(F_%d)" % p)
    if group.n != p * (p * p - 1):
        raise InvariantViolation("|SL2(F_p)| is not p(p^2-1)", p=p, order=group.n)
    return group


@lru_cache(maxsize=64)
def dihedral(k):
    """ dihedral group of order 2k acting on k points: rotation i -> i+1, reflection i -> -i """
    if k < 3:
        raise UsageError("dihedral groups need k >= 3")
    rotation = tuple((i + 1) % k for i in range(k))
    reflection = tuple((-i) % k for i in range(k))
    return build([rotation, reflection], degree=k, name="D%d" % (2 * k))


def dihedral_pair(group, k):
    """ (u, h) = (rotation by 1, the reflection i -> -i) as element indices """
    rotation = tuple((i + 1) % k for i in range(k))
    reflection = tuple((-i) % k for i in range(k))
    return group.index_of(rotation), group.index_of(reflection)


_CYCLE = re.compile(r'\(([^()]*)\)')


def parse_cycles(text):
    """ '(1 2 3)(4 5)' -> list of 0-based cycles """
    cycles = []
    for body in _CYCLE.findall(text):
        points = [int(v) - 1 for v in body.replace(',', ' ').split()]
        if any(v < 0 for v in points):
            raise GroupBuildError("points are numbered from 1: %r" % text)
        if points:
            cycles.append(points)
    return cycles


def cycles_to_images(cycles, degree):
    images = list(range(degree))
    for cycle in cycles:
        for i, point in enumerate(cycle):
            images[point] = cycle[(i + 1) % len(cycle)]
    return tuple(images)


def load_group_spec(path):
    """
    Reads a group spec file.  One generator per line, either `perm: (1 2 3)(4 5)` or
    `mat p a b c d`; `name: <label>` names the group; `#` starts a comment.

    :param path: file path, or the bare name of a shipped corpus file
    :return: FiniteGroup
    """
    if not os.path.exists(path):
        candidate = os.path.join(CORPUS_DIR, path if path.endswith('.grp') else path + '.grp')
        if not os.path.exists(candidate):
            raise UsageError("no group spec file %r" % path)
        path = candidate

    name = os.path.splitext(os.path.basename(path))[0]
    perms = []
    mats = []
    with open(path) as spec:
        for lineno, raw in enumerate(spec, 1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            if line.startswith('name:'):
                name = line[len('name:'):].strip()
            elif line.startswith('perm:'):
                perms.append(parse_cycles(line[len('perm:'):]))
            elif line.startswith('mat'):
                try:
                    p, a, b, c, d = (int(v) for v in line.split()[1:])
                except ValueError:
                    raise GroupBuildError("%s:%d: expected `mat p a b c d`" % (path, lineno))
                mats.append(Mat(p, a, b, c, d))
            else:
                raise GroupBuildError("%s:%d: cannot parse %r" % (path, lineno, line))

    if perms and mats:
        raise GroupBuildError("%s mixes permutations and matrices" % path)
    if mats:
        return build(mats, name=name)
    degree = max([max(point for cycle in cycles for point in cycle) + 1 for cycles in perms if cycles] + [1])
    return build([cycles_to_images(cycles, degree) for cycles in perms], degree=degree, name=name)


def corpus():
    """ paths of the shipped group spec files, sorted """
    return sorted(os.path.join(CORPUS_DIR, f) for f in os.listdir(CORPUS_DIR) if f.endswith('.grp'))
