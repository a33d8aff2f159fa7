"""Exact arithmetic in the free nilpotent group of class three on two generators.

Every element has a unique normal form

    a^r b^s [a,b]^t [a,b,a]^u [a,b,b]^v

with unbounded integer exponents, so a five-tuple of integers is a complete
representation.  The two weight-three commutators are central, the commutator
subgroup is abelian, and all weight-four commutators vanish; multiplication is
a fixed polynomial in the ten exponents.  The closed form used here is
hard-coded and refereed by the independent word-collection oracle in
:mod:`capable2.oracle`.

Commutator convention: [x, y] = x^-1 y^-1 x y, left-normed beyond that.
"""

from __future__ import annotations

from dataclasses import dataclass


def binom2(m: int) -> int:
    """m(m-1)/2, exact for every integer (the product is always even)."""
    return m * (m - 1) // 2


@dataclass(frozen=True)
class FreeElt:
    """Normal form a^r b^s [a,b]^t [a,b,a]^u [a,b,b]^v with integer exponents."""

    r: int = 0
    s: int = 0
    t: int = 0
    u: int = 0
    v: int = 0

    def coords(self) -> tuple[int, int, int, int, int]:
        return (self.r, self.s, self.t, self.u, self.v)

    def comm_coords(self) -> tuple[int, int, int]:
        """The ([a,b], [a,b,a], [a,b,b]) exponent block."""
        return (self.t, self.u, self.v)

    def is_identity(self) -> bool:
        return self == IDENTITY

    def __mul__(self, other: "FreeElt") -> "FreeElt":
        return mul(self, other)

    def __pow__(self, n: int) -> "FreeElt":
        return power(self, n)

    def __invert__(self) -> "FreeElt":
        return inverse(self)

    def __str__(self) -> str:
        parts = []
        for sym, e in zip(("a", "b", "[a,b]", "[a,b,a]", "[a,b,b]"), self.coords()):
            if e == 1:
                parts.append(sym)
            elif e:
                parts.append(f"{sym}^{e}")
        return " ".join(parts) if parts else "1"


IDENTITY = FreeElt()
A = FreeElt(r=1)
B = FreeElt(s=1)
C = FreeElt(t=1)  # [a,b]
D = FreeElt(u=1)  # [a,b,a]
E = FreeElt(v=1)  # [a,b,b]


def mul(x: FreeElt, y: FreeElt) -> FreeElt:
    """Normal form of the concatenation x*y.

    Collecting a^{y.r} leftward past [a,b]^{x.t} deposits [a,b,a]^{y.r*x.t};
    past b^{x.s} it deposits [a,b]^{-y.r*x.s} and the binomial correction
    terms; finally b^{y.s} passes the accumulated [a,b]-power.
    """
    t_mid = x.t - y.r * x.s
    return FreeElt(
        x.r + y.r,
        x.s + y.s,
        t_mid + y.t,
        x.u + y.u + y.r * x.t - x.s * binom2(y.r),
        x.v + y.v + y.s * t_mid - y.r * binom2(x.s),
    )


def inverse(x: FreeElt) -> FreeElt:
    return FreeElt(
        -x.r,
        -x.s,
        -x.t - x.r * x.s,
        x.r * x.t - x.u + x.s * binom2(-x.r),
        x.s * x.t - x.v + x.r * binom2(-x.s),
    )


def power(x: FreeElt, n: int) -> FreeElt:
    """x^n by binary exponentiation; n may be negative."""
    if n < 0:
        return power(inverse(x), -n)
    acc = IDENTITY
    base = x
    while n:
        if n & 1:
            acc = mul(acc, base)
        base = mul(base, base)
        n >>= 1
    return acc


def commutator(x: FreeElt, y: FreeElt) -> FreeElt:
    """[x, y] = x^-1 y^-1 x y."""
    return mul(mul(inverse(x), inverse(y)), mul(x, y))


def conjugate(x: FreeElt, y: FreeElt) -> FreeElt:
    """x^y = y^-1 x y."""
    return mul(mul(inverse(y), x), y)
