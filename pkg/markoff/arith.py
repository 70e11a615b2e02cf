# (c) Copyright The markoff toolkit authors 2026

"""
Exact arithmetic in F_p and F_p^2 plus the number theoretic helpers the orbit and genus
formulas consume.

Elements are immutable; fields are cheap value objects and can be shared between threads.
"""
from fractions import Fraction

from sympy import divisors, factorint, isprime, multiplicity, totient
from sympy.ntheory import sqrt_mod as _sympy_sqrt_mod

from .errors import UsageError

# Exact rationals for Phi(n), epsilon(p) and the closed forms built from them.
Rational = Fraction

P_LIMIT = 1 << 31


def is_prime(n):
    return n >= 2 and bool(isprime(n))


def check_prime(p, odd=False):
    """
    Validates a field characteristic.

    @param p: candidate prime
    @param odd: reject p = 2 as well
    @return: p as an int
    """
    p = int(p)
    if not is_prime(p):
        raise UsageError("%d is not prime" % p)
    if p > P_LIMIT:
        raise UsageError("p = %d exceeds the supported limit 2^31" % p)
    if odd and p == 2:
        raise UsageError("p = 2 is not supported here")
    return p


def inverse_mod(a, p):
    a %= p
    if a == 0:
        raise ZeroDivisionError("0 has no inverse mod %d" % p)
    return pow(a, -1, p)


def legendre(a, p):
    """
    Legendre symbol by Euler's criterion.

    >>> legendre(2, 7)
    1
    """
    if p == 2:
        raise UsageError("legendre symbol needs an odd prime")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod(a, p):
    """
    A square root of a mod p, or None when a is not a square.
    """
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if legendre(a, p) != 1:
        return None
    return int(_sympy_sqrt_mod(a, p))


def least_nonresidue(p):
    if p == 2:
        raise UsageError("F_2 has no quadratic nonresidue")
    for d in range(2, p):
        if legendre(d, p) == -1:
            return d
    raise UsageError("no nonresidue mod %d" % p)


def _order_in(one, x, group_order):
    # Strip prime factors off the group order while x still dies.
    order = group_order
    for q in factorint(group_order):
        while order % q == 0 and x ** (order // q) == one:
            order //= q
    return order


class FieldElement(object):
    __slots__ = ('value', 'field')

    def __init__(self, value, field):
        self.value = int(value) % field.p
        self.field = field

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            return other.value
        return int(other) % self.field.p

    def __add__(self, other):
        return FieldElement(self.value + self._coerce(other), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.value - self._coerce(other), self.field)

    def __rsub__(self, other):
        return FieldElement(self._coerce(other) - self.value, self.field)

    def __mul__(self, other):
        return FieldElement(self.value * self._coerce(other), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.value * inverse_mod(self._coerce(other), self.field.p), self.field)

    def __neg__(self):
        return FieldElement(-self.value, self.field)

    def __pow__(self, exponent):
        if exponent < 0:
            return FieldElement(pow(inverse_mod(self.value, self.field.p), -exponent, self.field.p), self.field)
        return FieldElement(pow(self.value, exponent, self.field.p), self.field)

    def inverse(self):
        return FieldElement(inverse_mod(self.value, self.field.p), self.field)

    def __eq__(self, other):
        if isinstance(other, QuadElement):
            return other == self
        return self.value == self._coerce(other)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return "%d (mod %d)" % (self.value, self.field.p)


class PrimeField(object):
    """ The prime field F_p.  p is checked for primality at construction. """

    def __init__(self, p):
        self.p = check_prime(p)

    @property
    def zero(self):
        return FieldElement(0, self)

    @property
    def one(self):
        return FieldElement(1, self)

    def element(self, value):
        return FieldElement(value, self)

    def __call__(self, value):
        return FieldElement(value, self)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(('F', self.p))

    def __repr__(self):
        return "PrimeField(%d)" % self.p


class QuadElement(object):
    """ a + b*sqrt(d) in F_p^2 """
    __slots__ = ('a', 'b', 'ext')

    def __init__(self, a, b, ext):
        p = ext.p
        self.a = int(a) % p
        self.b = int(b) % p
        self.ext = ext

    def _coerce(self, other):
        if isinstance(other, QuadElement):
            return other
        if isinstance(other, FieldElement):
            return QuadElement(other.value, 0, self.ext)
        return QuadElement(int(other), 0, self.ext)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadElement(self.a + o.a, self.b + o.b, self.ext)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return QuadElement(self.a - o.a, self.b - o.b, self.ext)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        d = self.ext.d
        return QuadElement(self.a * o.a + self.b * o.b * d, self.a * o.b + o.a * self.b, self.ext)

    __rmul__ = __mul__

    def __neg__(self):
        return QuadElement(-self.a, -self.b, self.ext)

    def conjugate(self):
        return QuadElement(self.a, -self.b, self.ext)

    def norm(self):
        p = self.ext.p
        return (self.a * self.a - self.ext.d * self.b * self.b) % p

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("0 has no inverse in F_%d^2" % self.ext.p)
        n_inv = inverse_mod(n, self.ext.p)
        return QuadElement(self.a * n_inv, -self.b * n_inv, self.ext)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        acc = self.ext.one
        base = self
        while exponent:
            if exponent & 1:
                acc = acc * base
            base = base * base
            exponent >>= 1
        return acc

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def __eq__(self, other):
        if not isinstance(other, (QuadElement, FieldElement, int)):
            return NotImplemented
        o = self._coerce(other)
        return self.a == o.a and self.b == o.b

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.a, self.b, self.ext.p))

    def __repr__(self):
        return "%d + %d*sqrt(%d) (mod %d)" % (self.a, self.b, self.ext.d, self.ext.p)


class QuadExt(object):
    """
    F_p^2 = F_p(sqrt(d)) with d the least positive quadratic nonresidue, so representations are
    reproducible across runs.
    """

    def __init__(self, base):
        if not isinstance(base, PrimeField):
            base = PrimeField(base)
        if base.p == 2:
            raise UsageError("the quadratic extension is only built for odd p")
        self.base = base
        self.p = base.p
        self.d = least_nonresidue(self.p)
        if legendre(self.d, self.p) != -1:
            raise UsageError("%d is a square mod %d" % (self.d, self.p))

    @property
    def zero(self):
        return QuadElement(0, 0, self)

    @property
    def one(self):
        return QuadElement(1, 0, self)

    def element(self, a, b=0):
        return QuadElement(a, b, self)

    def sqrt_of(self, a):
        """ A square root in F_p^2 of the base field residue a. """
        a %= self.p
        s = sqrt_mod(a, self.p)
        if s is not None:
            return QuadElement(s, 0, self)
        # a = d * (a/d) and a/d is a square.
        s = sqrt_mod(a * inverse_mod(self.d, self.p), self.p)
        return QuadElement(0, s, self)

    def omega_for_trace(self, t):
        """
        A root of T^2 - t*T + 1, i.e. an element with omega + 1/omega = t.
        """
        half = inverse_mod(2, self.p)
        return (self.element(t) + self.sqrt_of(t * t - 4)) * half

    def __repr__(self):
        return "QuadExt(%d, d=%d)" % (self.p, self.d)


def element_order(x):
    """
    Multiplicative order of a nonzero element of F_p or F_p^2.

    :param x: FieldElement or QuadElement
    :return: least k >= 1 with x**k == 1
    """
    if isinstance(x, FieldElement):
        if x.value == 0:
            raise UsageError("0 has no multiplicative order")
        p = x.field.p
        return _order_in(x.field.one, x, p - 1)
    if isinstance(x, QuadElement):
        if x.is_zero():
            raise UsageError("0 has no multiplicative order")
        p = x.ext.p
        return _order_in(x.ext.one, x, p * p - 1)
    raise UsageError("element_order needs a field element, got %r" % (x,))


def n_of_trace(t, p):
    """
    The order of any noncentral matrix of SL2(F_p) with trace t.

    n_p(2) = p, n_p(-2) = 2p, otherwise the order of omega with omega + 1/omega = t, taken in
    F_p when t^2 - 4 is a square and in F_p^2 otherwise.
    """
    p = int(p)
    t = int(t) % p
    if p == 2:
        if t == 0:
            return 2
        raise UsageError("over F_2 only t = 0 has a noncentral matrix of known order")
    if t == 2:
        return p
    if t == p - 2:
        return 2 * p
    disc = (t * t - 4) % p
    if legendre(disc, p) == 1:
        field = PrimeField(p)
        omega = (field(t) + sqrt_mod(disc, p)) * inverse_mod(2, p)
        return element_order(omega)
    return element_order(QuadExt(p).omega_for_trace(t))


def phi_capital(n):
    """
    Phi(n) = sum over d | n of phi(d)/d, exactly.
    """
    n = int(n)
    if n < 1:
        raise UsageError("Phi(n) needs n >= 1")
    return sum((Fraction(int(totient(d)), d) for d in divisors(n)), Fraction(0))


def l_valuation(ell, n):
    """ max k with ell^k | n """
    n = int(n)
    if n < 1:
        raise UsageError("valuation needs n >= 1")
    return int(multiplicity(ell, n))


def ceil_div(a, b):
    return -((-a) // b)


__all__ = ['Rational', 'PrimeField', 'QuadExt', 'FieldElement', 'QuadElement', 'legendre', 'element_order',
           'n_of_trace', 'phi_capital', 'l_valuation', 'sqrt_mod', 'inverse_mod', 'least_nonresidue',
           'is_prime', 'check_prime', 'ceil_div']
