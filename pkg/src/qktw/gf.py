"""Exact arithmetic in small finite fields.

Elements of F_q are plain integers in [0, q).  For prime q the integer is
the residue; for q = p^e it packs the coefficient vector of the residue
polynomial in base p (digit i = coefficient of x^i).  Plain-int elements
compare, hash, and sort like ints, which is exactly what the subspace
canonical forms need.

Fields with q <= 64 get full add/mul/inv lookup tables, since subspace
enumeration and rank computations hit them in their innermost loops.
Larger prime q falls back to modular arithmetic; larger non-prime q is
rejected.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import NotAPrimePowerError, UnsupportedFieldError

MAX_TABLE_ORDER = 64

# One fixed monic irreducible modulus per supported extension field,
# coefficients ascending (constant term first, leading 1 last).
_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),               # x^2 + x + 1
    8: (1, 1, 0, 1),            # x^3 + x + 1
    9: (1, 0, 1),               # x^2 + 1
    16: (1, 1, 0, 0, 1),        # x^4 + x + 1
    25: (2, 0, 1),              # x^2 + 2
    27: (1, 2, 0, 1),           # x^3 + 2x + 1
    32: (1, 0, 1, 0, 0, 1),     # x^5 + x^2 + 1
    49: (1, 0, 1),              # x^2 + 1
    64: (1, 1, 0, 0, 0, 0, 1),  # x^6 + x + 1
}


def prime_power(q: int) -> tuple[int, int]:
    """Decompose q = p**e with p prime; raise NotAPrimePowerError otherwise."""
    if q < 2:
        raise NotAPrimePowerError(f"field order must be at least 2, got {q}")
    p = q
    d = 2
    while d * d <= q:
        if q % d == 0:
            p = d
            break
        d += 1
    e = 0
    m = q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise NotAPrimePowerError(f"{q} is not a prime power")
    return p, e


def is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
    except NotAPrimePowerError:
        return False
    return True


def prime_powers_up_to(limit: int) -> list[int]:
    return [q for q in range(2, limit + 1) if is_prime_power(q)]


class FieldSpec:
    """Arithmetic for one finite field F_q.

    Use :func:`make_field`; instances are cached and shared, so equality
    and hashing reduce to the order q.
    """

    __slots__ = ("q", "p", "e", "modulus", "_add", "_mul", "_inv", "_neg")

    def __init__(self, q: int, p: int, e: int, modulus: tuple[int, ...]):
        self.q = q
        self.p = p
        self.e = e
        self.modulus = modulus
        if q <= MAX_TABLE_ORDER:
            self._build_tables()
        else:
            self._add = self._mul = self._inv = self._neg = None

    # -- construction -------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.e):
            a, d = divmod(a, p)
            out.append(d)
        return out

    def _undigits(self, digits: list[int]) -> int:
        out = 0
        for d in reversed(digits):
            out = out * self.p + d
        return out

    def _mul_direct(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        p = self.p
        da = self._digits(a)
        db = self._digits(b)
        conv = [0] * (2 * self.e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    conv[i + j] = (conv[i + j] + x * y) % p
        # reduce modulo the monic modulus
        for i in range(len(conv) - 1, self.e - 1, -1):
            c = conv[i]
            if c:
                conv[i] = 0
                for j, m in enumerate(self.modulus[:-1]):
                    pos = i - self.e + j
                    conv[pos] = (conv[pos] - c * m) % p
        return self._undigits(conv[: self.e])

    def _add_direct(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        da = self._digits(a)
        db = self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def _build_tables(self) -> None:
        q = self.q
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                s = self._add_direct(a, b)
                v = self._mul_direct(a, b)
                add[a][b] = add[b][a] = s
                mul[a][b] = mul[b][a] = v
        neg = [0] * q
        inv = [0] * q
        for a in range(q):
            neg[a] = add[a].index(0)
            if a:
                inv[a] = mul[a].index(1)
        self._add = add
        self._mul = mul
        self._neg = neg
        self._inv = inv

    # -- operations ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        t = self._add
        return t[a][b] if t is not None else (a + b) % self.q

    def neg(self, a: int) -> int:
        t = self._neg
        return t[a] if t is not None else (-a) % self.q

    def sub(self, a: int, b: int) -> int:
        t = self._add
        if t is not None:
            return t[a][self._neg[b]]
        return (a - b) % self.q

    def mul(self, a: int, b: int) -> int:
        t = self._mul
        return t[a][b] if t is not None else (a * b) % self.q

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        t = self._inv
        # tableless fields are prime, so Fermat inversion applies
        return t[a] if t is not None else pow(a, self.q - 2, self.q)

    def pow(self, a: int, m: int) -> int:
        if m < 0:
            return self.pow(self.inv(a), -m)
        out = 1
        base = a
        while m:
            if m & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            m >>= 1
        return out

    def elements(self) -> range:
        return range(self.q)

    # -- identity ------------------------------------------------------

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("FieldSpec", self.q))


@lru_cache(maxsize=None)
def make_field(q: int) -> FieldSpec:
    """Return the canonical FieldSpec for prime-power q.

    All prime powers up to 64 are supported through the built-in modulus
    table; larger prime orders use plain modular arithmetic; larger
    non-prime orders are rejected.
    """
    p, e = prime_power(q)
    if e == 1:
        return FieldSpec(q, p, 1, ())
    if q > MAX_TABLE_ORDER:
        raise UnsupportedFieldError(
            f"non-prime order {q} exceeds the supported table range (q <= {MAX_TABLE_ORDER})"
        )
    return FieldSpec(q, p, e, _MODULI[q])
