"""Exact arithmetic over Z, Q and Z[sqrt(2)], plus p-adic primitives.

Everything in this module is arbitrary precision; no floats anywhere.
A LocalPlace pins down an embedding of Q(sqrt(2)) into Q_p at an odd
prime p where 2 is a quadratic residue, and valuation_f reads off exact
valuations and unit residues of embedded ring elements through
Hensel-lifted square roots of 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional, Union

Rational = Union[int, Fraction]

__all__ = [
    "LocalPlace",
    "LocalValue",
    "Rational",
    "Sqrt2Int",
    "hensel_lift_sqrt2",
    "is_prime",
    "is_square_f",
    "is_square_q",
    "legendre",
    "primes_from",
    "smallest_nonresidue",
    "sqrt_mod_p",
    "square_test_f",
    "unit_part_q",
    "valuation_f",
    "valuation_q",
]


# ------------------------------------------------------------------ primes

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_from(start: int = 2) -> Iterator[int]:
    """Yield primes >= start in increasing order."""
    n = max(2, start)
    while True:
        if is_prime(n):
            yield n
        n += 1


# -------------------------------------------------------- rational p-adics


def _vp_int(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation_q(x: Rational, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    if x == 0:
        raise ValueError("valuation of zero undefined")
    x = Fraction(x)
    return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)


def unit_part_q(x: Rational, p: int) -> Fraction:
    """x / p^v_p(x), with p-free numerator and denominator."""
    v = valuation_q(x, p)
    x = Fraction(x)
    if v >= 0:
        return Fraction(x.numerator // p**v, x.denominator)
    return Fraction(x.numerator, x.denominator // p**-v)


def legendre(a: int, p: int, *, validate: bool = True) -> int:
    """Legendre symbol (a|p) by Euler's criterion: +1 QR, -1 non-residue, 0 if p | a."""
    if validate and (p < 3 or p % 2 == 0 or not is_prime(p)):
        raise ValueError(f"legendre: modulus {p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def smallest_nonresidue(p: int) -> int:
    """Smallest positive quadratic non-residue mod an odd prime p."""
    for a in range(2, p):
        if legendre(a, p, validate=False) == -1:
            return a
    raise ValueError(f"no non-residue mod {p}")


def sqrt_mod_p(a: int, p: int) -> Optional[int]:
    """Smallest c with c^2 = a (mod p), or None when a is not a nonzero QR.

    Tonelli-Shanks, with the p = 3 (mod 4) shortcut.
    """
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"sqrt_mod_p: modulus {p} is not an odd prime")
    a %= p
    if legendre(a, p, validate=False) != 1:
        return None
    if p % 4 == 3:
        c = pow(a, (p + 1) // 4, p)
        return min(c, p - c)
    # write p-1 = q * 2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = smallest_nonresidue(p)
    m, c, t, rt = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, rt = t * c % p, rt * b % p
    return min(rt, p - rt)


# ------------------------------------------------------------- Z[sqrt(2)]


@dataclass(frozen=True)
class Sqrt2Int:
    """u + v*sqrt(2) with arbitrary-precision integer components."""

    u: int
    v: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.u, int) or not isinstance(self.v, int):
            raise TypeError("Sqrt2Int components must be integers")

    def __bool__(self) -> bool:
        return self.u != 0 or self.v != 0

    def __add__(self, other: "Sqrt2Int") -> "Sqrt2Int":
        other = _coerce(other)
        return Sqrt2Int(self.u + other.u, self.v + other.v)

    def __sub__(self, other: "Sqrt2Int") -> "Sqrt2Int":
        other = _coerce(other)
        return Sqrt2Int(self.u - other.u, self.v - other.v)

    def __neg__(self) -> "Sqrt2Int":
        return Sqrt2Int(-self.u, -self.v)

    def __mul__(self, other: Union["Sqrt2Int", int]) -> "Sqrt2Int":
        other = _coerce(other)
        return Sqrt2Int(
            self.u * other.u + 2 * self.v * other.v,
            self.u * other.v + self.v * other.u,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "Sqrt2Int":
        return Sqrt2Int(self.u, -self.v)

    def norm(self) -> int:
        """Field norm u^2 - 2 v^2 (multiplicative, exact)."""
        return self.u * self.u - 2 * self.v * self.v

    def __repr__(self) -> str:
        if self.v == 0:
            return str(self.u)
        if self.u == 0:
            return f"{self.v}*sqrt2"
        sign = "+" if self.v > 0 else "-"
        return f"{self.u}{sign}{abs(self.v)}*sqrt2"

    def to_json(self) -> dict:
        return {"u": str(self.u), "v": str(self.v)}

    @staticmethod
    def from_json(obj: dict) -> "Sqrt2Int":
        return Sqrt2Int(int(obj["u"]), int(obj["v"]))


SQRT2 = Sqrt2Int(0, 1)


def _coerce(x: Union[Sqrt2Int, int]) -> Sqrt2Int:
    if isinstance(x, Sqrt2Int):
        return x
    if isinstance(x, int):
        return Sqrt2Int(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Sqrt2Int")


# ------------------------------------------------------------ local places


@dataclass(frozen=True)
class LocalPlace:
    """An odd prime p split in Q(sqrt(2)) together with a chosen root of 2 mod p.

    The chosen root fixes the embedding sqrt(2) -> c of the field into Q_p.
    For p = 7 (mod 8) exactly one of the two roots is itself a quadratic
    residue (-1 is a non-residue there), and that root is required; for
    the remaining split primes the smaller root is the convention used by
    `LocalPlace.at`, but either root is accepted.
    """

    p: int
    sqrt2_root: int
    root_is_qr: bool

    def __post_init__(self) -> None:
        p, c = self.p, self.sqrt2_root
        if p < 3 or p % 2 == 0 or not is_prime(p):
            raise ValueError(f"invalid place: {p} is not an odd prime")
        if legendre(2, p, validate=False) != 1:
            raise ValueError(f"invalid place: 2 is not a square mod {p}")
        if not (1 <= c < p) or c * c % p != 2 % p:
            raise ValueError(f"invalid place: {c}^2 != 2 mod {p}")
        is_qr = legendre(c, p, validate=False) == 1
        if self.root_is_qr != is_qr:
            raise ValueError("invalid place: root_is_qr flag is inconsistent")
        if p % 8 == 7 and not is_qr:
            raise ValueError(
                f"invalid place: for p = 7 (mod 8) the residue root is required "
                f"(use {p - c} instead of {c})"
            )

    @classmethod
    def at(cls, p: int) -> "LocalPlace":
        """The canonical place at p: QR root for p = 7 (mod 8), smaller root otherwise."""
        c = sqrt_mod_p(2, p)
        if c is None:
            raise ValueError(f"invalid place: 2 is not a square mod {p}")
        if p % 8 == 7 and legendre(c, p, validate=False) != 1:
            c = p - c
        return cls(p, c, legendre(c, p, validate=False) == 1)

    def to_json(self) -> dict:
        return {"p": self.p, "sqrt2_root": self.sqrt2_root, "root_is_qr": self.root_is_qr}

    @staticmethod
    def from_json(obj: dict) -> "LocalPlace":
        return LocalPlace(int(obj["p"]), int(obj["sqrt2_root"]), bool(obj["root_is_qr"]))


def hensel_lift_sqrt2(place: LocalPlace, k: int) -> int:
    """Root of x^2 = 2 mod p^k congruent to place.sqrt2_root mod p.

    Newton iteration x <- (x + 2/x) / 2 doubles the precision each step.
    """
    if k < 1:
        raise ValueError("precision k must be >= 1")
    x, prec = place.sqrt2_root, 1
    while prec < k:
        prec = min(2 * prec, k)
        mod = place.p**prec
        x = (x + 2 * pow(x, -1, mod)) * pow(2, -1, mod) % mod
    return x


class LocalValue(NamedTuple):
    """Valuation and first unit digit of a nonzero element of Q_p."""

    val: int
    unit: int  # (x / p^val) mod p, in [1, p-1]


def valuation_f(x: Sqrt2Int, place: LocalPlace) -> LocalValue:
    """Valuation and unit residue of x under the place's embedding into Q_p.

    Precision p^B with B = v_p(norm x) + 1 is always enough: the embedding
    valuation is at most v_p(norm x) because the conjugate embedding is
    integral too.
    """
    if not x:
        raise ValueError("valuation of zero undefined")
    p = place.p
    bound = _vp_int(x.norm(), p) + 1
    root = hensel_lift_sqrt2(place, bound)
    t = (x.u + x.v * root) % p**bound
    assert t != 0
    val = 0
    while t % p == 0:
        t //= p
        val += 1
    return LocalValue(val, t % p)


# ------------------------------------------------------------ square tests


def is_square_q(x: Rational) -> bool:
    """True iff x is the square of a rational."""
    x = Fraction(x)
    if x < 0:
        return False
    n, d = x.numerator, x.denominator
    rn = math.isqrt(n)
    if rn * rn != n:
        return False
    rd = math.isqrt(d)
    return rd * rd == d


def square_test_f(x: Sqrt2Int) -> tuple[bool, dict]:
    """Square test in Q(sqrt(2)) with a replayable transcript.

    Writing x = u + v*sqrt(2): if x = (s + t*sqrt(2))^2 then
    norm(x) = (s^2 - 2t^2)^2 must be a rational square w^2, and
    (u+w)/2, (u-w)/2 equal {s^2, 2t^2} in some order.  For v = 0 the root
    may be purely rational (x = s^2) or a rational multiple of sqrt(2)
    (x = 2t^2), hence the u and u/2 candidates.
    """
    if not x:
        raise ValueError("square test of zero undefined")
    d = x.norm()
    rec: dict = {"value": x.to_json(), "norm": str(d)}
    if d < 0:
        rec.update(norm_is_square=False, result=False)
        return False, rec
    w = math.isqrt(d)
    if w * w != d:
        rec.update(norm_is_square=False, result=False)
        return False, rec
    rec.update(norm_is_square=True, norm_sqrt=str(w))
    if x.v == 0:
        rec["branch"] = "rational"
        candidates = [Fraction(x.u), Fraction(x.u, 2)]
    else:
        rec["branch"] = "mixed"
        candidates = [Fraction(x.u + w, 2), Fraction(x.u - w, 2)]
    hits = [is_square_q(c) for c in candidates]
    rec["candidates"] = [
        {"value": f"{c.numerator}/{c.denominator}", "is_square": h}
        for c, h in zip(candidates, hits)
    ]
    rec["result"] = any(hits)
    return rec["result"], rec


def is_square_f(x: Sqrt2Int) -> bool:
    """True iff x is a square in Q(sqrt(2))."""
    return square_test_f(x)[0]
