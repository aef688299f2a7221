"""Forward-mode truncated-Taylor (jet) arithmetic.

A Jet stores the Taylor coefficients of a function around a base point, so
repeated differential operators (in particular (1/sinh chi) d/dchi chains)
evaluate with no finite-difference truncation error. Division strips shared
leading zeros, which is what makes sin(M*chi)/(pi*chi) regular at chi = 0.
"""

from __future__ import annotations

import math

from .errors import DomainError, JetDepthError

__all__ = ["Jet", "MAX_JET_ORDER", "jet_variable", "jsin", "jcos", "jsinh",
           "jcosh", "jexp", "derivatives_taylor"]

MAX_JET_ORDER = 24


class Jet:
    """Truncated Taylor series sum_k coeffs[k] * (x - x0)^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = list(coeffs)
        if not self.coeffs:
            raise DomainError("a jet needs at least one coefficient")

    @property
    def order(self):
        return len(self.coeffs) - 1

    def _coerce(self, other):
        if isinstance(other, Jet):
            return other
        return Jet([float(other)] + [0.0] * self.order)

    @staticmethod
    def _match(a, b):
        n = min(len(a.coeffs), len(b.coeffs))
        return a.coeffs[:n], b.coeffs[:n]

    def __add__(self, other):
        a, b = Jet._match(self, self._coerce(other))
        return Jet([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Jet([-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            s = float(other)
            return Jet([s * x for x in self.coeffs])
        a, b = Jet._match(self, other)
        n = len(a)
        out = [0.0] * n
        for k in range(n):
            out[k] = math.fsum(a[j] * b[k - j] for j in range(k + 1))
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return self * (1.0 / float(other))
        a, b = Jet._match(self, other)
        shift = 0
        while shift < len(b) and b[shift] == 0.0:
            if a[shift] != 0.0:
                raise DomainError("jet division by a higher-order zero")
            shift += 1
        if shift == len(b):
            raise DomainError("jet division by zero jet")
        a = a[shift:]
        b = b[shift:]
        n = len(a)
        out = [0.0] * n
        for k in range(n):
            acc = a[k] - math.fsum(out[j] * b[k - j] for j in range(k))
            out[k] = acc / b[0]
        return Jet(out)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def derivative(self):
        """Jet of the derivative; order drops by one."""
        if self.order == 0:
            raise JetDepthError("jet too shallow to differentiate")
        return Jet([(k + 1) * c for k, c in enumerate(self.coeffs[1:])])

    @property
    def value(self):
        return self.coeffs[0]


def jet_variable(x0, order):
    """The identity function as a jet at base point x0."""
    if order > MAX_JET_ORDER:
        raise JetDepthError(f"jet order {order} exceeds maximum {MAX_JET_ORDER}")
    if order < 0:
        raise DomainError("jet order must be >= 0")
    coeffs = [float(x0)] + [0.0] * order
    if order >= 1:
        coeffs[1] = 1.0
    return Jet(coeffs)


def _sin_cos_pair(g, sin0, cos0, sign):
    """Shared recurrence for (sin, cos) and (sinh, cosh) of a jet g.

    sign = -1 gives circular, +1 hyperbolic: s' = c*g', c' = sign*s*g'.
    """
    n = g.order
    s = [0.0] * (n + 1)
    c = [0.0] * (n + 1)
    s[0] = sin0
    c[0] = cos0
    a = g.coeffs
    for k in range(1, n + 1):
        s[k] = math.fsum(j * a[j] * c[k - j] for j in range(1, k + 1)) / k
        c[k] = sign * math.fsum(j * a[j] * s[k - j] for j in range(1, k + 1)) / k
    return Jet(s), Jet(c)


def jsin(g):
    if not isinstance(g, Jet):
        return math.sin(g)
    return _sin_cos_pair(g, math.sin(g.value), math.cos(g.value), -1.0)[0]


def jcos(g):
    if not isinstance(g, Jet):
        return math.cos(g)
    return _sin_cos_pair(g, math.sin(g.value), math.cos(g.value), -1.0)[1]


def jsinh(g):
    if not isinstance(g, Jet):
        return math.sinh(g)
    return _sin_cos_pair(g, math.sinh(g.value), math.cosh(g.value), 1.0)[0]


def jcosh(g):
    if not isinstance(g, Jet):
        return math.cosh(g)
    return _sin_cos_pair(g, math.sinh(g.value), math.cosh(g.value), 1.0)[1]


def jexp(g):
    if not isinstance(g, Jet):
        return math.exp(g)
    n = g.order
    out = [0.0] * (n + 1)
    out[0] = math.exp(g.value)
    a = g.coeffs
    for k in range(1, n + 1):
        out[k] = math.fsum(j * a[j] * out[k - j] for j in range(1, k + 1)) / k
    return Jet(out)


def derivatives_taylor(f, x, order):
    """Evaluate [f(x), f'(x), ..., f^(order)(x)] by jet propagation.

    f must be written in terms of jet-aware operations (arithmetic plus the
    j-prefixed elementary functions in this module), so it can be called on
    a Jet as well as on a float.
    """
    if order < 0:
        raise DomainError("order must be >= 0")
    if order > MAX_JET_ORDER:
        raise JetDepthError(f"order {order} exceeds maximum jet depth {MAX_JET_ORDER}")
    # Two guard coefficients so divisions that strip a leading zero still
    # deliver the requested depth.
    g = f(jet_variable(x, order + 2))
    coeffs = g.coeffs[:order + 1]
    if len(coeffs) < order + 1:
        raise JetDepthError("jet collapsed below the requested order")
    fact = 1.0
    out = []
    for k, c in enumerate(coeffs):
        if k > 0:
            fact *= k
        out.append(c * fact)
    return out
