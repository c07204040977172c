"""Quaternion arithmetic over exact rational or floating scalars.

One class serves both engines of the toolkit: symbolic code keeps the four
components as ``fractions.Fraction`` (or ``int``), numeric code uses floats.
Hamilton's product, conjugation and inversion are written so that they stay
exact whenever the components are exact.  Values are treated as immutable;
every operation returns a fresh quaternion.
"""

import math
import re
from fractions import Fraction

_EXACT_TYPES = (int, Fraction)
_SCALAR_TYPES = (int, float, Fraction)


class RealArgumentError(ValueError):
    """The imaginary unit of a quaternion with zero vector part was requested."""


class Quaternion:
    """A quaternion w + x*i + y*j + z*k."""

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w=0, x=0, y=0, z=0):
        for c in (w, x, y, z):
            if not isinstance(c, _SCALAR_TYPES):
                raise TypeError("quaternion components must be int, Fraction or float")
        self.w = w
        self.x = x
        self.y = y
        self.z = z

    # -- structure ---------------------------------------------------------

    def components(self):
        return (self.w, self.x, self.y, self.z)

    def conjugate(self):
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def real_part(self):
        return self.w

    def im(self):
        """The vector part x*i + y*j + z*k as a quaternion."""
        return Quaternion(0, self.x, self.y, self.z)

    def norm_sq(self):
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def im_norm_sq(self):
        return self.x * self.x + self.y * self.y + self.z * self.z

    def __abs__(self):
        return math.sqrt(float(self.norm_sq()))

    def is_zero(self):
        return self.w == 0 and self.x == 0 and self.y == 0 and self.z == 0

    def is_exact(self):
        return all(isinstance(c, _EXACT_TYPES) for c in self.components())

    def to_float(self):
        return Quaternion(float(self.w), float(self.x), float(self.y), float(self.z))

    # -- algebra -----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w + other.w, self.x + other.x,
                              self.y + other.y, self.z + other.z)
        if isinstance(other, _SCALAR_TYPES):
            return Quaternion(self.w + other, self.x, self.y, self.z)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w - other.w, self.x - other.x,
                              self.y - other.y, self.z - other.z)
        if isinstance(other, _SCALAR_TYPES):
            return Quaternion(self.w - other, self.x, self.y, self.z)
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            a, b, c, d = self.w, self.x, self.y, self.z
            e, f, g, h = other.w, other.x, other.y, other.z
            return Quaternion(
                a * e - b * f - c * g - d * h,
                a * f + b * e + c * h - d * g,
                a * g - b * h + c * e + d * f,
                a * h + b * g - c * f + d * e,
            )
        if isinstance(other, _SCALAR_TYPES):
            return Quaternion(self.w * other, self.x * other,
                              self.y * other, self.z * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, _SCALAR_TYPES):
            return Quaternion(other * self.w, other * self.x,
                              other * self.y, other * self.z)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, _SCALAR_TYPES):
            if self.is_exact() and isinstance(other, _EXACT_TYPES):
                r = Fraction(1, 1) / other
                return self * r
            return self * (1.0 / other)
        return NotImplemented

    def inverse(self):
        """The multiplicative inverse conj(q)/|q|^2; exact on exact input."""
        n2 = self.norm_sq()
        if n2 == 0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return self.conjugate() / n2

    def imaginary_unit(self):
        """The unit J = Im(q)/|Im(q)|, satisfying J*J = -1.

        The result is float-backed since |Im(q)| is irrational in general.
        Raises RealArgumentError when the vector part vanishes, signalling a
        point on the real axis.
        """
        n2 = float(self.im_norm_sq())
        if n2 == 0:
            raise RealArgumentError("quaternion lies on the real axis")
        norm = math.sqrt(n2)
        return Quaternion(0.0, float(self.x) / norm, float(self.y) / norm,
                          float(self.z) / norm)

    def split_slice(self):
        """Decompose q = alpha + J*beta with beta = |Im(q)| >= 0.

        Returns floats (alpha, beta, J).  On the real axis beta is 0 and J
        defaults to i; slice-function evaluation is independent of that
        choice by the stem parity condition.
        """
        n2 = float(self.x) ** 2 + float(self.y) ** 2 + float(self.z) ** 2
        if n2 == 0.0:
            return float(self.w), 0.0, Quaternion(0.0, 1.0, 0.0, 0.0)
        b = math.sqrt(n2)
        return float(self.w), b, Quaternion(0.0, float(self.x) / b,
                                            float(self.y) / b, float(self.z) / b)

    # -- comparisons, display ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Quaternion):
            return self.components() == other.components()
        if isinstance(other, _SCALAR_TYPES):
            return self.components() == (other, 0, 0, 0)
        return NotImplemented

    def __hash__(self):
        return hash(self.components())

    def __repr__(self):
        return "Quaternion(%r, %r, %r, %r)" % self.components()

    def __str__(self):
        return format_quaternion(self)


ZERO = Quaternion(0)
ONE = Quaternion(1)
I = Quaternion(0, 1)
J = Quaternion(0, 0, 1)
K = Quaternion(0, 0, 0, 1)
UNITS = (ONE, I, J, K)


def coordinate(q, i):
    """The i-th real coordinate of q, with i in 0..3."""
    return q.components()[i]


def replace_coordinate(q, i, value):
    comps = list(q.components())
    comps[i] = value
    return Quaternion(*comps)


def _format_component(value, suffix):
    if isinstance(value, float) and value.is_integer():
        value = int(value)
    if value == 1 and suffix:
        return suffix
    if value == -1 and suffix:
        return "-" + suffix
    return str(value) + suffix


def format_quaternion(q):
    """Literal form a+bi+cj+dk, omitting zero components; '0' when zero."""
    parts = []
    for value, suffix in zip(q.components(), ("", "i", "j", "k")):
        if value == 0:
            continue
        text = _format_component(value, suffix)
        if parts and not text.startswith("-"):
            parts.append("+")
        parts.append(text)
    return "".join(parts) if parts else "0"


_COMPONENT_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?:(?P<num>\d+(?:/\d+|\.\d+)?)\s*(?P<unit>[ijk])?"
    r"|(?P<lone>[ijk]))\s*"
)


def parse_quaternion(text):
    """Parse a literal like ``1/2+3i-2/5k`` into an exact quaternion.

    Components are rationals (``p/q``), integers, or decimal strings; the
    result carries Fraction components.
    """
    pos = 0
    comps = {"": Fraction(0), "i": Fraction(0), "j": Fraction(0), "k": Fraction(0)}
    count = 0
    while pos < len(text):
        match = _COMPONENT_RE.match(text, pos)
        if not match or match.end() == pos:
            raise ValueError("invalid quaternion literal %r at offset %d" % (text, pos))
        sign = match.group("sign")
        if count > 0 and sign is None:
            raise ValueError("missing sign between components in %r" % text)
        factor = -1 if sign == "-" else 1
        if match.group("lone"):
            unit = match.group("lone")
            value = Fraction(1)
        else:
            unit = match.group("unit") or ""
            value = Fraction(match.group("num"))
        comps[unit] += factor * value
        pos = match.end()
        count += 1
    if count == 0:
        raise ValueError("empty quaternion literal")
    return Quaternion(comps[""], comps["i"], comps["j"], comps["k"])
