"""Degree-bound functions T, Tower, R, RTower and certified comparisons between them.

Huge values are carried as towers 2^2^...^top.  A tower that is only known
to dominate the true value is flagged ``upper``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceExceeded

MAX_FIB_INDEX = 10**6
MAX_BITS = 10**7


def fib(j: int) -> int:
    """F_j with F_0 = 0, F_1 = 1 (fast doubling)."""
    if j < 0:
        raise ValueError("negative index")
    if j > MAX_FIB_INDEX:
        raise ResourceExceeded("Fibonacci index beyond the exact-evaluation budget", {"index": j})

    def pair(k: int):
        if k == 0:
            return 0, 1
        a, b = pair(k >> 1)
        c = a * (2 * b - a)
        d = a * a + b * b
        return (d, c + d) if k & 1 else (c, d)

    return pair(j)[0]


def _tower_value(height: int, top: int):
    """The integer 2^...^top, or None when it has more than MAX_BITS bits."""
    v = top
    for _ in range(height):
        if v > MAX_BITS:
            return None
        v = 1 << v
    return v


@dataclass(frozen=True)
class Magnitude:
    """A tower of ``height`` 2s capped by ``top``; height 0 means the integer ``top``.

    ``upper`` marks a certificate that only bounds the true value from above.
    """

    height: int
    top: int
    upper: bool = False

    @classmethod
    def exact(cls, v: int) -> "Magnitude":
        return cls(0, v)

    @classmethod
    def tower_cert(cls, height: int, top: int, upper: bool = False) -> "Magnitude":
        m = cls(height, top, upper)
        return m.normalized()

    def normalized(self) -> "Magnitude":
        h, t = self.height, self.top
        while h > 0:
            inner = _tower_value(h - 1, t)
            if inner is None or inner > MAX_BITS:
                break
            return Magnitude(0, 1 << inner, self.upper)
        return Magnitude(h, t, self.upper)

    @property
    def is_exact(self) -> bool:
        return self.height == 0

    @property
    def value(self) -> int:
        v = _tower_value(self.height, self.top)
        if v is None:
            raise ResourceExceeded("magnitude too large for exact evaluation", {"height": self.height})
        return v

    def describe(self) -> str:
        prefix = "<= " if self.upper else ""
        if self.height == 0:
            return prefix + str(self.top)
        return prefix + "2^" * self.height + f"({self.top})"


def compare(a: Magnitude, b: Magnitude) -> int:
    """Exact sign of (value(a) - value(b)) for the represented values."""
    while True:
        va = _tower_value(a.height, a.top)
        vb = _tower_value(b.height, b.top)
        if va is not None and vb is not None:
            return (va > vb) - (va < vb)
        # an infeasible tower exceeds 2^MAX_BITS, a feasible value does not
        if va is not None:
            if va.bit_length() > MAX_BITS + 1:
                raise ResourceExceeded("integer too large to compare", {"bits": va.bit_length()})
            return -1
        if vb is not None:
            if vb.bit_length() > MAX_BITS + 1:
                raise ResourceExceeded("integer too large to compare", {"bits": vb.bit_length()})
            return 1
        # both are towers of height >= 1: compare their base-2 logarithms
        a = Magnitude(a.height - 1, a.top)
        b = Magnitude(b.height - 1, b.top)


def certified_lt(a: Magnitude, b: Magnitude):
    """True / False when decided, None (indeterminate) when a is only an upper bound."""
    if b.upper:
        return None
    c = compare(a, b)
    if c < 0:
        return True
    return None if a.upper else False


def certified_le(a: Magnitude, b: Magnitude):
    if b.upper:
        return None
    c = compare(a, b)
    if c <= 0:
        return True
    return None if a.upper else False


def _as_mag(d) -> Magnitude:
    return d if isinstance(d, Magnitude) else Magnitude.exact(int(d))


def _clog2(k: int) -> int:
    return (k - 1).bit_length()


def add_const(m: Magnitude, c: int) -> Magnitude:
    """An upper bound for m + c (exact when m is an integer)."""
    if m.height == 0:
        return Magnitude(0, m.top + c, m.upper)
    return Magnitude(m.height, m.top + c, True)


def exp2_times(k: int, m: Magnitude) -> Magnitude:
    """An upper bound for 2^(k*m)."""
    if m.height == 0:
        return Magnitude.tower_cert(1, k * m.top, m.upper)
    return Magnitude(m.height + 1, m.top + _clog2(k), True)


def t_bound(d, n: int) -> Magnitude:
    """T(d, 0) = d, T(d, k) = F_{2T+1} * T with T = T(d, k-1)."""
    T = _as_mag(d)
    for _ in range(n):
        if T.height == 0 and 2 * T.top + 1 <= MAX_FIB_INDEX:
            v = fib(2 * T.top + 1) * T.top
            if v.bit_length() <= MAX_BITS:
                T = Magnitude(0, v, T.upper)
                continue
        # F_{2T+1} T < 2^(2T+1) T <= 2^(3T)
        T = exp2_times(3, T)
    return T


def tower(d: int, n: int) -> Magnitude:
    if n == 1:
        return Magnitude.tower_cert(1, 3 * d + 1)
    return Magnitude.tower_cert(n, 3 * d + n + 1)


def rtower(d: int, n: int, k: int | None = None) -> Magnitude:
    """k(n-1) copies of 2 topped by Tower(d, n+k); k defaults to n."""
    if k is None:
        k = n
    m = n + k
    base_h, base_t = (1, 3 * d + 1) if m == 1 else (m, 3 * d + m + 1)
    return Magnitude.tower_cert(base_h + k * (n - 1), base_t)


def r_bound(d: int, n: int, k: int | None = None) -> Magnitude:
    """R(d,n)_0 = T(d,n), R(d,n)_{j+1} = T(d + R(d,n)_j, n); k defaults to n."""
    if k is None:
        k = n
    R = t_bound(d, n)
    for _ in range(k):
        R = t_bound(add_const(R, d), n)
    return R


def degree_audit(degrees, d: int, n: int, bound: str = "T") -> bool:
    """True iff every recorded total degree is at most T(d,n) (or R(d,n))."""
    if hasattr(degrees, "max_degrees"):
        degrees = degrees.max_degrees
    limit = t_bound(d, n) if bound == "T" else r_bound(d, n)
    for deg in degrees:
        ok = certified_le(Magnitude.exact(deg), limit)
        if ok is not True:
            return False
    return True
