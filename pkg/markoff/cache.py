# (c) Copyright The markoff toolkit authors 2026

"""
Binary cache files.

MKXT (point table):   b'MKXT' | format u16 | p u64 | t u64 | count u64 | count u64 keys
MKOR (orbit list):    b'MKOR' | format u16 | p u64 | t u64 | gens id (u8 length + ascii) | subset |
                      count u64 | count (representative key, size) u64 pairs

Everything is little endian and t is stored reduced mod p.  A file from another format, or a
point table whose keys are not exactly the points of X_t, is refused with CacheError, which the
cache lifecycle turns into a recompute.
"""
import os
import struct

import numpy as np
from sympy import isprime

from .action import orbit_decompose
from .errors import CacheError
from .fsm import CacheMachine
from .surface import PointTable, SurfacePoint, conic_count_closed, enumerate_points, markoff_form
from .version import VERSION

MAGIC_TABLE = b'MKXT'
MAGIC_ORBITS = b'MKOR'
FORMAT_VERSION = 2

_HEAD = struct.Struct('<4sH')
_PT = struct.Struct('<QQ')
_COUNT = struct.Struct('<Q')


def _pack_str(s):
    raw = s.encode('ascii')
    return struct.pack('<B', len(raw)) + raw


class _Reader(object):
    def __init__(self, data):
        self.data = data
        self.pos = 0

    def take(self, n):
        if self.pos + n > len(self.data):
            raise CacheError("truncated cache file")
        out = self.data[self.pos:self.pos + n]
        self.pos += n
        return out

    def unpack(self, fmt):
        return fmt.unpack(self.take(fmt.size))

    def string(self):
        (n,) = struct.unpack('<B', self.take(1))
        return self.take(n).decode('ascii')

    def header(self, magic):
        found, version = self.unpack(_HEAD)
        if found != magic:
            raise CacheError("bad magic %r, expected %r" % (found, magic))
        if version != FORMAT_VERSION:
            raise CacheError("cache format %d, expected %d" % (version, FORMAT_VERSION))

    def done(self):
        if self.pos != len(self.data):
            raise CacheError("trailing bytes in cache file")


def encode_table(table):
    keys = np.ascontiguousarray(table.keys, dtype='<u8')
    return _HEAD.pack(MAGIC_TABLE, FORMAT_VERSION) + _PT.pack(table.p, table.t) + \
        _COUNT.pack(len(keys)) + keys.tobytes()


def _check_points(p, t, keys):
    if len(keys) and (keys[0] < 0 or keys[-1] >= p ** 3):
        raise CacheError("cached key out of range for p=%d" % p)
    x, y, z = keys % p, (keys // p) % p, keys // (p * p)
    off = np.flatnonzero(markoff_form(x, y, z, p) != t)
    if len(off):
        raise CacheError("cached key %d is not a point of X_%d(F_%d)" % (keys[off[0]], t, p))
    if p != 2:
        expected = sum(conic_count_closed(p, t, a) for a in range(p))
        if len(keys) != expected:
            raise CacheError("cached table has %d points, X_%d(F_%d) has %d" % (len(keys), t, p, expected))


def decode_table(data):
    reader = _Reader(data)
    reader.header(MAGIC_TABLE)
    p, t = reader.unpack(_PT)
    (count,) = reader.unpack(_COUNT)
    keys = np.frombuffer(reader.take(8 * count), dtype='<u8').astype(np.int64)
    reader.done()
    if not 2 <= p < 1 << 21 or t >= p or not isprime(p):
        raise CacheError("bad header p=%d t=%d" % (p, t))
    try:
        table = PointTable(p, t, keys)
    except Exception as exc:
        raise CacheError("cached keys are not a point table: %s" % exc)
    _check_points(table.p, table.t, table.keys)
    return table


class OrbitRecord(object):
    """ The (representative key, size) list of an orbit decomposition, as cached. """

    def __init__(self, p, t, gens_id, restrict, pairs):
        self.p = p
        self.t = t
        self.gens_id = gens_id
        self.restrict = restrict
        self.pairs = [(int(k), int(s)) for k, s in pairs]

    @classmethod
    def from_decomposition(cls, decomposition):
        return cls(decomposition.p, decomposition.t, decomposition.gens_id, decomposition.restrict,
                   decomposition.pairs())

    @property
    def sizes(self):
        return [s for _, s in self.pairs]

    def is_transitive(self):
        return len(self.pairs) == 1

    def to_dict(self):
        kvs = dict()
        kvs['p'] = self.p
        kvs['t'] = self.t
        kvs['gens'] = self.gens_id
        kvs['subset'] = self.restrict
        kvs['points'] = sum(self.sizes)
        kvs['transitive'] = self.is_transitive()
        kvs['orbits'] = [{'rep': list(SurfacePoint(k % self.p, (k // self.p) % self.p, k // (self.p * self.p),
                                                   self.p).as_tuple()), 'size': s} for k, s in self.pairs]
        kvs['version'] = VERSION
        return kvs

    def __eq__(self, other):
        return isinstance(other, OrbitRecord) and (self.p, self.t, self.gens_id, self.restrict, self.pairs) == \
            (other.p, other.t, other.gens_id, other.restrict, other.pairs)

    def __repr__(self):
        return "OrbitRecord(p=%d, t=%d, %s, %d orbits)" % (self.p, self.t, self.gens_id, len(self.pairs))


def encode_orbits(record):
    pairs = np.asarray(record.pairs, dtype='<u8').reshape(-1, 2)
    return _HEAD.pack(MAGIC_ORBITS, FORMAT_VERSION) + _PT.pack(record.p, record.t) + \
        _pack_str(record.gens_id) + _pack_str(record.restrict) + _COUNT.pack(len(pairs)) + pairs.tobytes()


def decode_orbits(data):
    reader = _Reader(data)
    reader.header(MAGIC_ORBITS)
    p, t = reader.unpack(_PT)
    gens_id = reader.string()
    restrict = reader.string()
    (count,) = reader.unpack(_COUNT)
    pairs = np.frombuffer(reader.take(16 * count), dtype='<u8').astype(np.int64).reshape(-1, 2)
    reader.done()
    return OrbitRecord(p, t, gens_id, restrict, pairs.tolist())


class Cache(object):
    """
    Point tables and orbit lists under one directory.  With directory None everything is
    recomputed and nothing is written.
    """

    def __init__(self, directory=None, threads=1):
        self.directory = directory
        self.threads = threads
        self.last_state = None

    def _path(self, name):
        if self.directory is None:
            return None
        return os.path.join(self.directory, name)

    def points(self, p, t):
        t %= p
        machine = CacheMachine(self._path("points-%d-%d.mkxt" % (p, t)),
                               lambda: enumerate_points(p, t, self.threads), encode_table, decode_table)
        value = machine.run()
        self.last_state = machine.state
        return value

    def orbits(self, p, t, gens='gamma', restrict='star'):
        t %= p
        gens_name = gens if isinstance(gens, str) else ",".join(str(g) for g in gens)

        def compute():
            return OrbitRecord.from_decomposition(orbit_decompose(self.points(p, t), gens, restrict))

        name = "orbits-%d-%d-%s-%s.mkor" % (p, t, gens_name.replace('*', '.').replace(',', '+'), restrict)
        machine = CacheMachine(self._path(name), compute, encode_orbits, decode_orbits)
        value = machine.run()
        self.last_state = machine.state
        return value
