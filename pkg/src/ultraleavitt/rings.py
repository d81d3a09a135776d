"""Exact coefficient rings: integers, integers mod m, rationals."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class Ring:
    """A unital commutative ring with exact arithmetic.

    ``kind`` is one of ``"int"``, ``"mod"`` or ``"rat"``; ``modulus`` is only
    meaningful for ``"mod"``.
    """

    kind: str = "int"
    modulus: int = 0

    def __post_init__(self):
        if self.kind not in ("int", "mod", "rat"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "mod" and self.modulus < 2:
            raise ValueError("modulus must be at least 2")

    @classmethod
    def parse(cls, text: str) -> "Ring":
        text = text.strip()
        if text in ("int", "ZZ", "Z"):
            return cls("int")
        if text in ("rat", "QQ", "Q"):
            return cls("rat")
        if text.startswith("mod:"):
            return cls("mod", int(text[4:]))
        raise ValueError(f"cannot parse ring {text!r}; use int, rat or mod:m")

    def __str__(self):
        return f"mod:{self.modulus}" if self.kind == "mod" else self.kind

    def __call__(self, x):
        if self.kind == "int":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return int(x)
            return int(x)
        if self.kind == "mod":
            if isinstance(x, Fraction):
                x = x.numerator * pow(x.denominator, -1, self.modulus)
            return int(x) % self.modulus
        return Fraction(x)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def is_zero(self, x) -> bool:
        return self(x) == 0

    def random_element(self, rng: random.Random, nonzero: bool = False):
        while True:
            if self.kind == "mod":
                x = rng.randrange(self.modulus)
            elif self.kind == "int":
                x = rng.randint(-3, 3)
            else:
                x = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            if not nonzero or x != 0:
                return self(x)

    def nonzero_elements(self, limit: int = 6) -> list:
        """A few representative nonzero scalars (all of them for small Z/m)."""
        if self.kind == "mod":
            return [self(k) for k in range(1, self.modulus)][:limit]
        if self.kind == "int":
            return [self(k) for k in (1, -1, 2, 3, -5, 7)][:limit]
        return [Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(3), Fraction(-2, 3), Fraction(7, 5)][:limit]


INTEGERS = Ring("int")
RATIONALS = Ring("rat")


def mod(m: int) -> Ring:
    return Ring("mod", m)
