"""Group elements, the two supported groups, and double coset labels."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotCoprime
from .exact_arith import prime_factors


@dataclass(frozen=True)
class UnimodularMatrix:
    """Integer matrix (a b; c d) with determinant 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.entries()} is not 1")

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other: UnimodularMatrix) -> UnimodularMatrix:
        a, b, c, d = self.entries()
        e, f, g, h = other.entries()
        return UnimodularMatrix(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __neg__(self) -> UnimodularMatrix:
        return UnimodularMatrix(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> UnimodularMatrix:
        return UnimodularMatrix(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n: int) -> UnimodularMatrix:
        base = self if n >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(n)):
            out = out @ base
        return out

    def act(self, z: complex) -> complex:
        """Moebius action z -> (az + b) / (cz + d)."""
        return (self.a * z + self.b) / (self.c * z + self.d)

    def j(self, z: complex) -> complex:
        """Automorphy factor cz + d."""
        return self.c * z + self.d

    def __str__(self):
        return f"({self.a} {self.b}; {self.c} {self.d})"


IDENTITY = UnimodularMatrix(1, 0, 0, 1)
S = UnimodularMatrix(0, -1, 1, 0)
T = UnimodularMatrix(1, 1, 0, 1)


@dataclass(frozen=True)
class GroupSpec:
    """SL(2,Z) (level 1) or Gamma_0(N).

    ``index`` is the index of the image in PSL(2,Z), so the covolume is
    ``index * pi / 3`` and ``V / 4pi = index / 12`` exactly.
    """

    kind: str
    level: int = 1

    def __post_init__(self):
        if self.kind not in ("SL2Z", "Gamma0"):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.level < 1:
            raise ValueError("level must be a positive integer")
        if self.kind == "SL2Z" and self.level != 1:
            raise ValueError("SL2Z has level 1")

    @classmethod
    def sl2z(cls) -> GroupSpec:
        return cls("SL2Z", 1)

    @classmethod
    def gamma0(cls, level: int) -> GroupSpec:
        return cls("Gamma0", level)

    @classmethod
    def parse(cls, text: str) -> GroupSpec:
        """Accepts ``sl2z``, ``gamma0:N`` and ``gamma0(N)`` (case-insensitive)."""
        t = text.strip().lower().replace(" ", "")
        if t in ("sl2z", "sl(2,z)"):
            return cls.sl2z()
        for prefix in ("gamma0:", "gamma0(", "g0:"):
            if t.startswith(prefix):
                level = t[len(prefix) :].rstrip(")")
                if level.isdigit():
                    return cls.gamma0(int(level))
        raise ValueError(f"cannot parse group {text!r}")

    @property
    def is_sl2z(self) -> bool:
        # Gamma_0(1) is SL(2,Z) as well
        return self.level == 1

    @property
    def index(self) -> int:
        n = self.level
        mu = Fraction(n)
        for p in prime_factors(n):
            mu *= Fraction(p + 1, p)
        return int(mu)

    @property
    def volume_over_4pi(self) -> Fraction:
        return Fraction(self.index, 12)

    @property
    def covolume(self) -> float:
        return math.pi / 3 * self.index

    def contains(self, g: UnimodularMatrix) -> bool:
        return g.c % self.level == 0

    def __str__(self):
        return "sl2z" if self.kind == "SL2Z" else f"gamma0:{self.level}"


SL2Z = GroupSpec.sl2z()


@dataclass(frozen=True)
class DoubleCoset:
    """Gamma_inf (a *; c *) Gamma_inf with c > 0 and 0 <= a < c."""

    c: int
    a: int
    group: GroupSpec = SL2Z

    def __post_init__(self):
        if self.c < 1 or not 0 <= self.a < self.c:
            raise ValueError(f"need c >= 1 and 0 <= a < c, got a={self.a}, c={self.c}")
        if math.gcd(self.a, self.c) != 1:
            raise NotCoprime(f"gcd({self.a}, {self.c}) != 1")
        if self.c % self.group.level:
            raise ValueError(f"level {self.group.level} does not divide c={self.c}")
