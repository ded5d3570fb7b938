"""Degree-2 truncated complex power series in one variable."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from numbers import Number


@dataclass(frozen=True)
class Series2:
    """``a0 + a1 x + a2 x**2 + o(x**2)``."""

    a0: complex = 0j
    a1: complex = 0j
    a2: complex = 0j

    @classmethod
    def const(cls, c: complex) -> "Series2":
        return cls(complex(c))

    @classmethod
    def var(cls) -> "Series2":
        return cls(0j, 1 + 0j, 0j)

    @classmethod
    def exp_i(cls, a: float) -> "Series2":
        """Truncated expansion of ``exp(i a x)``."""
        return cls(1 + 0j, 1j * a, -0.5 * a * a + 0j)

    @property
    def coeffs(self) -> tuple[complex, complex, complex]:
        return (self.a0, self.a1, self.a2)

    def _coerce(self, other) -> "Series2":
        if isinstance(other, Series2):
            return other
        if isinstance(other, Number):
            return Series2.const(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Series2(self.a0 + o.a0, self.a1 + o.a1, self.a2 + o.a2)

    __radd__ = __add__

    def __neg__(self):
        return Series2(-self.a0, -self.a1, -self.a2)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Series2(
            self.a0 * o.a0,
            self.a0 * o.a1 + self.a1 * o.a0,
            self.a0 * o.a2 + self.a1 * o.a1 + self.a2 * o.a0,
        )

    __rmul__ = __mul__

    def __call__(self, x: complex) -> complex:
        return self.a0 + self.a1 * x + self.a2 * x * x

    def isclose(self, other: "Series2", tol: float = 1e-12) -> bool:
        return all(cmath.isclose(a, b, abs_tol=tol) for a, b in zip(self.coeffs, other.coeffs))
