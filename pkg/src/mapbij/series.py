r"""
Truncated power series with exact rational coefficients.

A series knows its variable name and its order ``N``: coefficients up to
``var**N`` are exact, everything above is unknown.  Binary operations keep
the smaller order.

>>> u = RationalSeries.variable("u", 5)
>>> (1 - u) * (1 - u).inverse()
RationalSeries('u', [1, 0, 0, 0, 0, 0])
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Union

Number = Union[int, Fraction]


class SeriesError(ValueError):
    pass


def _frac(c: Number) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


@dataclass(frozen=True)
class RationalSeries:
    var: str
    coeffs: tuple[Fraction, ...]

    def __init__(self, var: str, coeffs: Iterable[Number]):
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "coeffs", tuple(_frac(c) for c in coeffs))
        if not self.coeffs:
            raise SeriesError("a series needs at least its constant term")

    # construction ----------------------------------------------------------

    @classmethod
    def constant(cls, value: Number, var: str, order: int) -> RationalSeries:
        return cls(var, [value] + [0] * order)

    @classmethod
    def variable(cls, var: str, order: int) -> RationalSeries:
        return cls.monomial(var, 1, order)

    @classmethod
    def monomial(cls, var: str, power: int, order: int, coeff: Number = 1) -> RationalSeries:
        c = [Fraction(0)] * (order + 1)
        if power <= order:
            c[power] = _frac(coeff)
        return cls(var, c)

    # basic access ----------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        if k > self.order:
            raise SeriesError(f"coefficient {k} is beyond the order {self.order}")
        return self.coeffs[k] if k >= 0 else Fraction(0)

    def __repr__(self) -> str:
        shown = [str(c) for c in self.coeffs]
        return f"RationalSeries({self.var!r}, [{', '.join(shown)}])"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
                num = str(c) if (k == 0 or c != 1) else ""
                terms.append(f"{num}*{mono}" if num and mono else (num or mono))
        return (" + ".join(terms) or "0") + f" + O({self.var}^{self.order + 1})"

    def truncate(self, order: int) -> RationalSeries:
        if order > self.order:
            raise SeriesError("cannot raise the order of a truncated series")
        return RationalSeries(self.var, self.coeffs[:order + 1])

    def valuation(self) -> int | None:
        return next((k for k, c in enumerate(self.coeffs) if c), None)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def integral_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    # arithmetic ------------------------------------------------------------

    def _lift(self, other) -> RationalSeries:
        if isinstance(other, RationalSeries):
            if other.var != self.var:
                raise SeriesError(f"variables differ: {self.var} and {other.var}")
            return other
        if isinstance(other, (int, Fraction)):
            return RationalSeries.constant(other, self.var, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        return RationalSeries(self.var, [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)])

    __radd__ = __add__

    def __neg__(self) -> RationalSeries:
        return RationalSeries(self.var, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalSeries(self.var, [c * other for c in self.coeffs])
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            if a[i]:
                for j in range(n + 1 - i):
                    out[i + j] += a[i] * b[j]
        return RationalSeries(self.var, out)

    __rmul__ = __mul__

    def inverse(self) -> RationalSeries:
        a = self.coeffs
        if not a[0]:
            raise SeriesError("constant term is zero: the series is not invertible")
        out = [1 / a[0]]
        for k in range(1, self.order + 1):
            s = sum(a[i] * out[k - i] for i in range(1, k + 1))
            out.append(-s / a[0])
        return RationalSeries(self.var, out)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalSeries(self.var, [c / other for c in self.coeffs])
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int) -> RationalSeries:
        if k < 0:
            return self.inverse() ** (-k)
        out = RationalSeries.constant(1, self.var, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> RationalSeries:
        """Multiply by ``var**k``; negative ``k`` divides, which needs zero low terms and costs order."""
        if k >= 0:
            return RationalSeries(self.var, ([Fraction(0)] * k + list(self.coeffs))[:self.order + 1])
        if any(self.coeffs[:-k]):
            raise SeriesError(f"cannot divide by {self.var}^{-k}: low coefficients are nonzero")
        return RationalSeries(self.var, self.coeffs[-k:])

    def sqrt(self) -> RationalSeries:
        r"""Square root of a series with constant term 1.

        >>> RationalSeries("u", [1, 2, 1, 0]).sqrt()
        RationalSeries('u', [1, 1, 0, 0])
        """
        a = self.coeffs
        if a[0] != 1:
            raise SeriesError("square root needs constant term 1")
        out = [Fraction(1)]
        for k in range(1, self.order + 1):
            s = sum(out[i] * out[k - i] for i in range(1, k))
            out.append((a[k] - s) / 2)
        return RationalSeries(self.var, out)

    def derivative(self) -> RationalSeries:
        """Derivative; the result has one order less."""
        return RationalSeries(self.var, [k * c for k, c in enumerate(self.coeffs)][1:] or [0])

    def theta(self) -> RationalSeries:
        """``var * d/dvar``, which keeps the order."""
        return RationalSeries(self.var, [k * c for k, c in enumerate(self.coeffs)])

    def integral(self) -> RationalSeries:
        """Antiderivative vanishing at 0; the result has one order more."""
        return RationalSeries(self.var, [0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def compose(self, inner: RationalSeries) -> RationalSeries:
        """``self(inner)`` for ``inner`` without constant term, in the variable of ``inner``."""
        if inner[0]:
            raise SeriesError("the inner series must have no constant term")
        v = inner.valuation()
        n = inner.order if v is None else min(inner.order, (self.order + 1) * v - 1)
        inner = inner.truncate(n)
        out = RationalSeries.constant(self.coeffs[self.order], inner.var, n)
        for c in reversed(self.coeffs[:self.order]):
            out = out * inner + c
        return out

    def reverse(self) -> RationalSeries:
        r"""Compositional inverse, for a series ``c1*v + c2*v^2 + ...`` with ``c1 != 0``.

        >>> x = RationalSeries("s", [0, Fraction(1, 2), Fraction(-3, 2), 1, 0])
        >>> x.reverse().coeffs[:4]
        (Fraction(0, 1), Fraction(2, 1), Fraction(12, 1), Fraction(128, 1))
        """
        if self.coeffs[0] or self.order < 1 or not self.coeffs[1]:
            raise SeriesError("reversion needs c0 = 0 and c1 != 0")
        n = self.order
        v = RationalSeries.variable(self.var, n)
        g = v / self.coeffs[1]
        # each pass fixes one more coefficient of g in self(g) = v
        for _ in range(n):
            g = g - (self.compose(g) - v) / self.coeffs[1]
        return g

    def rename(self, var: str) -> RationalSeries:
        return RationalSeries(var, self.coeffs)


def fixed_point(step: Callable[[RationalSeries], RationalSeries], start: RationalSeries) -> RationalSeries:
    """Iterate ``step`` until it stops changing; each pass must fix one more coefficient."""
    cur = start
    for _ in range(start.order + 2):
        nxt = step(cur)
        if nxt == cur:
            return cur
        cur = nxt
    raise SeriesError("fixed point iteration did not settle")


def series_arith(a: RationalSeries, b: RationalSeries | Number, op: str) -> RationalSeries:
    ops = {"+": a.__add__, "-": a.__sub__, "*": a.__mul__, "/": a.__truediv__}
    if op not in ops:
        raise SeriesError(f"unknown operation {op!r}")
    return ops[op](b)


def series_sqrt(a: RationalSeries) -> RationalSeries:
    return a.sqrt()


def series_reverse(a: RationalSeries) -> RationalSeries:
    return a.reverse()
