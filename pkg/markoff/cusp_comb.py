# (c) Copyright The markoff toolkit authors 2026

"""
Cusp combinatorics of generating pairs.

A delta class is a generating pair (u, h) up to simultaneous conjugation and the twists
(u, h) -> (u, u^k h), i.e. an orbit of gammaInf on Inn-classes.  For each one we compute

  k_uh   least k > 0 with (u, h) conjugate to (u, u^k h)
  M_uh   <u, h^-1 u^-1 h>
  A      {a in C(M_uh) : a h a^-1 h^-1 in <u>}
  vertical order   |A meet <[u^-1, h^-1]>|

and check |A| * k_uh = |Z(G)| * |u|.
"""
from functools import reduce
from math import gcd

import numpy as np

from .action import orbit_decompose, orbit_labels
from .errors import InvariantViolation
from .log import logger
from .modular import cusp_count_closed
from .pairs import PairSpace, markoff_pair_space
from .surface import enumerate_points


def _lcm(a, b):
    return a * b // gcd(a, b)


def cyclic_subgroup(group, g):
    """ sorted indices of <g> """
    powers = [group.identity]
    for _ in range(group.order(g) - 1):
        powers.append(int(group.mul(powers[-1], g)))
    return np.unique(powers)


class DeltaClass(object):
    """ a delta class: its least Inn-class (u, h), the Higman class id and the twist orbit length """
    __slots__ = ('index', 'u', 'h', 'higman', 'width', 'members', 'group')

    def __init__(self, index, u, h, higman, width, members, group):
        self.index = index
        self.u = u
        self.h = h
        self.higman = higman
        self.width = width
        self.members = members
        self.group = group

    def to_dict(self):
        kvs = dict()
        kvs['index'] = self.index
        kvs['u'] = self.group.format(self.u)
        kvs['h'] = self.group.format(self.h)
        kvs['higman'] = self.higman
        kvs['width'] = self.width
        return kvs

    def __repr__(self):
        return "DeltaClass(%d: width %d, higman %d)" % (self.index, self.width, self.higman)


class CuspRecord(object):
    __slots__ = ('delta', 'u_order', 'm_order', 'k', 'a_order', 'vertical', 'center_order')

    def __init__(self, delta, u_order, m_order, k, a_order, vertical, center_order):
        self.delta = delta
        self.u_order = u_order
        self.m_order = m_order
        self.k = k
        self.a_order = a_order
        self.vertical = vertical
        self.center_order = center_order

    @property
    def width(self):
        return self.delta.width

    @property
    def exact(self):
        return self.a_order * self.k == self.center_order * self.u_order

    def to_dict(self):
        kvs = self.delta.to_dict()
        kvs['u_order'] = self.u_order
        kvs['m_order'] = self.m_order
        kvs['k_uh'] = self.k
        kvs['a_order'] = self.a_order
        kvs['vertical_order'] = self.vertical
        kvs['exact'] = self.exact
        return kvs

    def __repr__(self):
        return "CuspRecord(width=%d, k=%d, |A|=%d, vertical=%d)" % (self.width, self.k, self.a_order, self.vertical)


def delta_classes(group, higman=None, space=None):
    """
    All delta classes of generating pairs, optionally only those whose Higman class is in higman.

    :param group: FiniteGroup
    :param higman: iterable of conjugacy class ids, or None
    :param space: a prebuilt PairSpace over group to reuse
    :return: list of DeltaClass ordered by least member
    """
    if space is None:
        space = PairSpace(group, higman)
    twist = space.move('gammaInf')
    labels = orbit_labels([twist], len(space))
    reps, ids, widths = np.unique(labels, return_inverse=True, return_counts=True)
    u, h = space.rep_pairs()
    higmans = space.higman_of_classes()
    out = []
    for i, rep in enumerate(reps):
        out.append(DeltaClass(i, int(u[rep]), int(h[rep]), int(higmans[rep]), int(widths[i]),
                              np.flatnonzero(ids == i), group))
    return out


def k_uh(group, u, h):
    """ least k > 0 such that some x in C(u) has x h x^-1 = u^k h """
    twists = set(int(v) for v in np.atleast_1d(group.commutator(group.centralizer(u), h)))
    power = u
    for k in range(1, group.order(u) + 1):
        if int(power) in twists:
            return k
        power = group.mul(power, u)
    raise InvariantViolation("no twist returns the pair to its class", group=group.name, u=group.format(u),
                             h=group.format(h))


def m_group(group, u, h):
    """ M_uh = <u, h^-1 u^-1 h> """
    return group.subgroup([u, group.conjugate(group.inv[h], group.inv[u])])


def A_group(group, u, h):
    """ sorted indices of {a in C(M_uh) : a h a^-1 h^-1 in <u>} """
    candidates = group.centralizer_of([u, group.conjugate(group.inv[h], group.inv[u])])
    powers = cyclic_subgroup(group, u)
    return candidates[np.isin(np.atleast_1d(group.commutator(candidates, h)), powers)]


def cusp_record(group, delta):
    u, h = delta.u, delta.h
    k = k_uh(group, u, h)
    a = A_group(group, u, h)
    c = group.commutator(group.inv[u], group.inv[h])
    record = CuspRecord(delta, group.order(u), len(m_group(group, u, h)), k, len(a),
                        int(np.count_nonzero(np.isin(a, cyclic_subgroup(group, c)))), len(group.center))
    if k != delta.width:
        raise InvariantViolation("twist orbit length differs from k_uh", group=group.name, record=record.to_dict())
    if not record.exact:
        raise InvariantViolation("|A| * k_uh != |Z| * |u|", group=group.name, record=record.to_dict())
    return record


def cusp_records(group, higman=None, space=None):
    """ one CuspRecord per delta class """
    records = [cusp_record(group, delta) for delta in delta_classes(group, higman, space)]
    logger.debug("%s: %d cusps", group.name, len(records))
    return records


def cusp_automorphism_order(record):
    """ order of the vertical automorphism group of the cusp point: |A meet <[u^-1, h^-1]>| """
    return record.vertical


def m_prime(group, higman_class, records=None):
    """ least common multiple of the vertical orders over delta classes with Higman class higman_class """
    if records is None:
        records = cusp_records(group, [higman_class])
    orders = [cusp_automorphism_order(r) for r in records if r.delta.higman == higman_class]
    return reduce(_lcm, orders, 1)


def d_prime(group, higman_class):
    """ |C(<c>)| / |c| for c a representative of the class """
    c = int(group.class_representatives()[higman_class])
    return len(group.centralizer(c)) // group.order(c)


def cusp_crosscheck(p):
    """
    The gammaInf-orbit count on GL2-classes of trace -2 generating pairs of SL2(F_p) against
    the Rot1-orbit count on X*_{-2}(F_p) and the closed cusp count.

    :return: True, or raises InvariantViolation
    """
    space = markoff_pair_space(p)
    group_side = len(delta_classes(space.group, space=space))
    table = enumerate_points(p, -2)
    surface_side = len(orbit_decompose(table, ['Rot1'], 'star'))
    expected = cusp_count_closed(p) if p >= 5 else surface_side
    if not group_side == surface_side == expected:
        raise InvariantViolation("cusp counts disagree", p=p, pairs=group_side, rot1=surface_side,
                                 closed_form=expected)
    logger.info("p=%d: %d cusps on both sides", p, group_side)
    return True
