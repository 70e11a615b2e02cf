# (c) Copyright The markoff toolkit authors 2026

"""
Generating pairs of a finite group modulo a group of automorphisms.

A pair (g, h) is coded as g * n + h.  The codes of every pair whose commutator lies in the
selected conjugacy classes are kept in a sorted array; automorphisms and the Out+ moves become
permutations of positions in that array, and classes are orbit labels (least code of the orbit)
under the automorphisms.  Only one pair per class is tested for generation.
"""
import numpy as np

from .action import orbit_labels
from .arith import check_prime, least_nonresidue
from .configurator import config
from .errors import InvariantViolation, UsageError
from .groups import MatrixKind, sl2
from .log import logger


def _gamma0(group, g, h):
    return group.mul(g, group.inv[h]), g


def _gamma1728(group, g, h):
    return group.inv[h], g


def _gamma_inf(group, g, h):
    return g, group.mul(g, h)


def _gamma_minus_i(group, g, h):
    return group.inv[g], group.inv[h]


# (a, b) -> (ab^-1, a), (b^-1, a), (a, ab), (a^-1, b^-1)
MOVES = {
    'gamma0': _gamma0,
    'gamma1728': _gamma1728,
    'gammaInf': _gamma_inf,
    'gammaMinusI': _gamma_minus_i,
}


def inner_automorphisms(group):
    """ conjugation by each generator, as element index maps """
    everything = np.arange(group.n)
    return [np.asarray(group.conjugate(s, everything)) for s in group.generators]


def gl2_twist(group):
    """
    Conjugation by diag(g, 1), g the least nonresidue, on a group of 2x2 matrices: the
    nontrivial outer class GL2 induces on SL2.
    """
    if not isinstance(group.kind, MatrixKind):
        raise UsageError("%s is not a matrix group" % group.name)
    p = group.kind.p
    g = least_nonresidue(p)
    g_inv = pow(g, -1, p)
    a, b, c, d = group.rows.T
    rows = np.stack([a, (g * b) % p, (c * g_inv) % p, d], axis=1)
    return group.index_of_rows(rows)


def higman_classes(group, order=None, trace=None, central=False):
    """
    Conjugacy class ids, optionally only those of elements of the given order or (for matrix
    groups) the given trace.  Central classes are left out unless asked for.
    """
    reps = group.class_representatives()
    center = set(int(z) for z in group.center)
    out = []
    for class_id, rep in enumerate(reps):
        if not central and int(rep) in center:
            continue
        if order is not None and group.order(rep) != order:
            continue
        if trace is not None and int(group.trace(rep)[0]) != trace % group.kind.p:
            continue
        out.append(class_id)
    return out


class GenPairClass(object):
    """
    One class of generating pairs.  (g, h) is its least pair in code order, i.e. the
    lexicographically least pair of the orbit.
    """
    __slots__ = ('index', 'g', 'h', 'higman', 'size', 'group')

    def __init__(self, index, g, h, higman, size, group):
        self.index = index
        self.g = g
        self.h = h
        self.higman = higman
        self.size = size
        self.group = group

    def pair(self):
        return self.g, self.h

    def to_dict(self):
        kvs = dict()
        kvs['index'] = self.index
        kvs['g'] = self.group.format(self.g)
        kvs['h'] = self.group.format(self.h)
        kvs['higman'] = self.higman
        kvs['conjugates'] = self.size
        return kvs

    def __repr__(self):
        return "GenPairClass(%d: %s, %s)" % (self.index, self.group.format(self.g), self.group.format(self.h))


class PairSpace(object):
    """
    :param group: FiniteGroup
    :param higman: iterable of conjugacy class ids the commutator must lie in, or None for all pairs
    :param automorphisms: element index maps to quotient by; default the inner automorphisms
    """

    def __init__(self, group, higman=None, automorphisms=None, name=None):
        self.group = group
        self.higman = None if higman is None else sorted(set(int(c) for c in higman))
        self.automorphisms = inner_automorphisms(group) if automorphisms is None else list(automorphisms)
        self.name = name or "Inn"
        self.codes = self._pair_codes()

        n = group.n
        perms = [self._lookup(auto[self.codes // n] * n + auto[self.codes % n], "automorphism")
                 for auto in self.automorphisms]
        self.labels = orbit_labels(perms, len(self.codes))
        orbit_reps = np.unique(self.labels)

        g, h = self.codes[orbit_reps] // n, self.codes[orbit_reps] % n
        generating = np.array([group.is_generating_pair(int(a), int(b)) for a, b in zip(g, h)], dtype=bool)
        self.class_positions = orbit_reps[generating]

        rep_class = np.full(len(self.codes), -1, dtype=np.int64)
        rep_class[self.class_positions] = np.arange(len(self.class_positions))
        self.class_of = rep_class[self.labels]
        member = self.class_of >= 0
        self.class_sizes = np.bincount(self.class_of[member], minlength=len(self.class_positions))
        self._moves = {}
        logger.debug("%s pairs of %s: %d pairs, %d %s-classes of generating pairs", "all" if higman is None
                     else "Higman %s" % self.higman, group.name, len(self.codes), len(self), self.name)

    def _pair_codes(self):
        group = self.group
        n = group.n
        if self.higman is None:
            return np.arange(n * n, dtype=np.int64)
        wanted = np.zeros(group.num_classes(), dtype=bool)
        wanted[self.higman] = True
        everything = np.arange(n, dtype=np.int64)
        step = max(1, (1 << 20) // max(n, 1))
        chunks = [np.empty(0, dtype=np.int64)]
        for start in range(0, n, step):
            g = np.arange(start, min(n, start + step), dtype=np.int64)
            keep = wanted[group.class_ids[group.commutator(g[:, None], everything[None, :])]]
            rows, cols = np.nonzero(keep)
            chunks.append(g[rows] * n + cols)
        return np.concatenate(chunks)

    def _lookup(self, images, what):
        if len(self.codes) == 0:
            return np.empty(0, dtype=np.int64)
        pos = np.minimum(np.searchsorted(self.codes, images), len(self.codes) - 1)
        missing = self.codes[pos] != images
        if missing.any():
            raise InvariantViolation("%s leaves the pair space" % what, group=self.group.name,
                                     higman=self.higman)
        return pos

    def __len__(self):
        return len(self.class_positions)

    def rep_pairs(self):
        n = self.group.n
        codes = self.codes[self.class_positions]
        return codes // n, codes % n

    def higman_of_classes(self):
        g, h = self.rep_pairs()
        return self.group.class_ids[self.group.commutator(g, h)] if len(g) else np.empty(0, dtype=np.int64)

    def move(self, name):
        """
        The permutation an Out+ move induces on the classes.

        :param name: one of MOVES
        :return: int array, class i goes to class move[i]
        """
        if name not in MOVES:
            raise UsageError("unknown move %r, expected one of %s" % (name, ", ".join(sorted(MOVES))))
        if name not in self._moves:
            n = self.group.n
            g, h = self.rep_pairs()
            if len(g) == 0:
                self._moves[name] = np.empty(0, dtype=np.int64)
            else:
                g2, h2 = MOVES[name](self.group, g, h)
                pos = self._lookup(np.asarray(g2) * n + np.asarray(h2), name)
                image = self.class_of[pos]
                if (image < 0).any():
                    raise InvariantViolation("%s sends a generating pair to a non-generating one" % name,
                                             group=self.group.name)
                self._moves[name] = image
        return self._moves[name]

    def classes(self):
        g, h = self.rep_pairs()
        higman = self.higman_of_classes()
        return [GenPairClass(i, int(a), int(b), int(c), int(s), self.group)
                for i, (a, b, c, s) in enumerate(zip(g, h, higman, self.class_sizes))]

    def class_of_pair(self, g, h):
        """ class index of a pair, -1 when it is not a generating pair of the space """
        code = int(g) * self.group.n + int(h)
        pos = int(np.searchsorted(self.codes, code))
        if pos < len(self.codes) and self.codes[pos] == code:
            return int(self.class_of[pos])
        return -1


def markoff_pair_space(p):
    """
    GL2(F_p)-classes of generating pairs of SL2(F_p) whose commutator is a noncentral
    trace -2 element: the group side of X*_{-2}(F_p).
    """
    p = check_prime(p, odd=True)
    if p * (p * p - 1) > config['groups']['dense_limit']:
        raise UsageError("SL2(F_%d) pair spaces are limited to groups of order <= %d" %
                         (p, config['groups']['dense_limit']))
    group = sl2(p)
    higman = higman_classes(group, trace=-2)
    return PairSpace(group, higman, inner_automorphisms(group) + [gl2_twist(group)], name="GL2")
