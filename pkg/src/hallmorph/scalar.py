"""Exact coefficient arithmetic in Q(sqrt(q)) at a fixed prime q.

Every structure constant of the engine lives in Z[sqrt(q), 1/sqrt(q)], the
Laurent ring generated by v = sqrt(q).  A Scalar stores the two rational
coordinates of  rat + srt*sqrt(q)  exactly, so equality is decidable and all
arithmetic is closed-form.  Division is performed in the ambient field
Q(sqrt(q)); whether a result stays q-local can be queried with is_q_local().
"""

from __future__ import annotations

from fractions import Fraction


class ScalarError(ArithmeticError):
    """Raised on mixed-q operands or division by zero."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Scalar:
    """An element rat + srt*sqrt(q) of Q(sqrt(q)), with exact components."""

    __slots__ = ("rat", "srt", "q")

    def __init__(self, rat, srt, q: int):
        if not _is_prime(q):
            raise ScalarError(f"q must be prime, got {q}")
        object.__setattr__(self, "rat", Fraction(rat))
        object.__setattr__(self, "srt", Fraction(srt))
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, q: int) -> "Scalar":
        return cls(0, 0, q)

    @classmethod
    def one(cls, q: int) -> "Scalar":
        return cls(1, 0, q)

    @classmethod
    def from_int(cls, n, q: int) -> "Scalar":
        return cls(n, 0, q)

    @classmethod
    def v_power(cls, k: int, q: int) -> "Scalar":
        """v^k with v = sqrt(q); even powers are rational, odd carry sqrt(q)."""
        if k % 2 == 0:
            return cls(Fraction(q) ** (k // 2), 0, q)
        return cls(0, Fraction(q) ** ((k - 1) // 2), q)

    @classmethod
    def q_power(cls, k: int, q: int) -> "Scalar":
        return cls.v_power(2 * k, q)

    # -- helpers -----------------------------------------------------------

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.q != self.q:
                raise ScalarError(f"mixed q: {self.q} vs {other.q}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(other, 0, self.q)
        raise TypeError(f"cannot coerce {type(other).__name__} to Scalar")

    def is_q_local(self) -> bool:
        """True when both denominators are powers of q (element of Z[v, 1/v])."""
        for frac in (self.rat, self.srt):
            d = frac.denominator
            while d % self.q == 0:
                d //= self.q
            if d != 1:
                return False
        return True

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "Scalar":
        o = self._coerce(other)
        return Scalar(self.rat + o.rat, self.srt + o.srt, self.q)

    __radd__ = __add__

    def __sub__(self, other) -> "Scalar":
        o = self._coerce(other)
        return Scalar(self.rat - o.rat, self.srt - o.srt, self.q)

    def __rsub__(self, other) -> "Scalar":
        return self._coerce(other) - self

    def __neg__(self) -> "Scalar":
        return Scalar(-self.rat, -self.srt, self.q)

    def __mul__(self, other) -> "Scalar":
        o = self._coerce(other)
        return Scalar(
            self.rat * o.rat + self.srt * o.srt * self.q,
            self.rat * o.srt + self.srt * o.rat,
            self.q,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Scalar":
        o = self._coerce(other)
        # (a+b*sqrt(q))/(c+d*sqrt(q)) via the conjugate; the norm c^2 - d^2 q
        # vanishes only at zero since sqrt(q) is irrational.
        norm = o.rat * o.rat - o.srt * o.srt * self.q
        if norm == 0:
            raise ScalarError("division by zero Scalar")
        conj = Scalar(o.rat, -o.srt, self.q)
        num = self * conj
        return Scalar(num.rat / norm, num.srt / norm, self.q)

    def __rtruediv__(self, other) -> "Scalar":
        return self._coerce(other) / self

    def times_v(self, k: int) -> "Scalar":
        return self * Scalar.v_power(k, self.q)

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.rat == other and self.srt == 0
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.q == other.q and self.rat == other.rat and self.srt == other.srt

    def __hash__(self):
        return hash((self.rat, self.srt, self.q))

    def __bool__(self) -> bool:
        return self.rat != 0 or self.srt != 0

    # -- display -----------------------------------------------------------

    def __repr__(self) -> str:
        return f"Scalar({self.rat}, {self.srt}, q={self.q})"

    def __str__(self) -> str:
        if self.srt == 0:
            return str(self.rat)
        root = f"{self.srt}*v" if abs(self.srt) != 1 else ("v" if self.srt > 0 else "-v")
        if self.rat == 0:
            return root
        sign = "+" if self.srt > 0 else "-"
        mag = abs(self.srt)
        tail = "v" if mag == 1 else f"{mag}*v"
        return f"{self.rat} {sign} {tail}"

    def as_dict(self) -> dict:
        """Serialized form used by the CLI: exact rationals as strings."""
        return {"rat": str(self.rat), "sqrt_rat": str(self.srt)}

    @classmethod
    def from_dict(cls, d: dict, q: int) -> "Scalar":
        return cls(Fraction(d["rat"]), Fraction(d["sqrt_rat"]), q)
