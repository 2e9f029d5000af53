"""Integer primitives: modular exponentiation, primality, factorization, prime
enumeration, and the kth-power residue test modulo a prime.

Conventions used throughout the package:

* 0 counts as a kth power residue (0 = 0^k), so a chain sum divisible by the
  modulus never disqualifies a chain.
* Values (terms, sums, moduli) must fit in a signed 128-bit integer; larger
  inputs raise OverflowLimitError instead of being accepted silently.
* Primality is decided by a deterministic Miller-Rabin witness set that is
  proven correct for all n < 3317044064679887385961981 (in particular for the
  full 64-bit range); asking about larger n raises OverflowLimitError rather
  than returning a probabilistic answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np

from powerchains.errors import OverflowLimitError

MAX_VALUE = 2**127 - 1

# Deterministic Miller-Rabin witness tiers (miller-rabin.appspot.com).  The
# last tier is proven for all n below this bound:
MR_CERTIFIED_BOUND = 3317044064679887385961981

_MR_TIERS = (
    (341531, (9345883071009581737,)),
    (1050535501, (336781006125, 9639812373923155)),
    (350269456337, (4230279247111683200, 14694767155120705706, 16641139526367750375)),
    (55245642489451, (2, 141889084524735, 1199124725622454117, 11096072698276303650)),
    (7999252175582851,
     (2, 4130806001517, 149795463772692060, 186635894390467037, 3967304179347715805)),
    (585226005592931977,
     (2, 123635709730000, 9233062284813009, 43835965440333360, 761179012939631437,
      1263739024124850375)),
    (18446744073709551616, (2, 325, 9375, 28178, 450775, 9780504, 1795265022)),
    (MR_CERTIFIED_BOUND, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
)

_TINY_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)

TRIAL_DIVISION_LIMIT = 10**6
_SEGMENT_ODDS = 1 << 20  # odd slots per sieve segment; cache-resident bitset

_small_prime_cache: list[int] | None = None


def _check_width(n: int, what: str = "value") -> int:
    if abs(n) > MAX_VALUE:
        raise OverflowLimitError(f"{what} {n} exceeds the 128-bit signed integer width")
    return n


def mod_pow(base: int, exp: int, modulus: int) -> int:
    """base^exp mod modulus, in O(log exp) multiplications.

    Raises ValueError for modulus < 2 or exp < 0.
    """
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if exp < 0:
        raise ValueError(f"exponent must be nonnegative, got {exp}")
    _check_width(base, "base")
    _check_width(modulus, "modulus")
    return pow(base, exp, modulus)


def _mr_composite_witness(n: int, d: int, s: int, a: int) -> bool:
    # True if a certifies that odd n is composite; n-1 = d * 2^s with d odd.
    a %= n
    if a <= 1:
        return False
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> bool:
    """Deterministic primality test.

    Exact for every n below MR_CERTIFIED_BOUND; larger n raise
    OverflowLimitError.  n < 2 (including negatives) returns False.
    """
    if n < 2:
        return False
    for p in _TINY_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < 59 * 59:
        return True
    if n >= MR_CERTIFIED_BOUND:
        raise OverflowLimitError(
            f"{n} is beyond the certified deterministic primality bound "
            f"{MR_CERTIFIED_BOUND}")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for bound, witnesses in _MR_TIERS:
        if n < bound:
            return not any(_mr_composite_witness(n, d, s, a) for a in witnesses)
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class PrimeModulus:
    """A positive integer asserted (and checked) to be prime."""

    p: int

    def __post_init__(self):
        if self.p < 2 or not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def __int__(self) -> int:
        return self.p

    def __index__(self) -> int:
        return self.p


def _as_prime(p) -> int:
    """Accept an int (validated) or a PrimeModulus (trusted)."""
    if isinstance(p, PrimeModulus):
        return p.p
    p = int(p)
    if p < 2 or not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    return p


@dataclass(frozen=True)
class Factorization:
    """Signed prime factorization: sign * prod(p_i^e_i).

    Primes are strictly increasing; +/-1 factor to an empty list.
    """

    sign: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p**e
        return n

    def __iter__(self):
        return iter(self.factors)


def _small_primes() -> list[int]:
    global _small_prime_cache
    if _small_prime_cache is None:
        _small_prime_cache = primes_up_to(TRIAL_DIVISION_LIMIT).tolist()
    return _small_prime_cache


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of composite n (deterministic parameter schedule)."""
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, m = 2 + c, 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")  # not reached at desk scale


def factor(n: int) -> Factorization:
    """Complete signed prime factorization.

    Trial division by primes below 10^6, then Pollard-Brent rho on whatever
    remains.  Raises ValueError for n = 0 and OverflowLimitError beyond the
    supported width.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    _check_width(n)
    sign = 1
    if n < 0:
        sign, n = -1, -n
    found: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    if 1 < n < TRIAL_DIVISION_LIMIT**2:
        # survived trial division below 10^6, so it is prime
        found[n] = found.get(n, 0) + 1
        n = 1
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack.extend((r, r))
            continue
        d = _pollard_brent(m)
        stack.extend((d, m // d))
    return Factorization(sign, tuple(sorted(found.items())))


def euler_phi(n: int) -> int:
    """Euler's totient, via factorization.  Requires n >= 1."""
    if n < 1:
        raise ValueError(f"euler_phi requires n >= 1, got {n}")
    if n == 1:
        return 1
    out = 1
    for p, e in factor(n).factors:
        out *= (p - 1) * p ** (e - 1)
    return out


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def prime_blocks(lo: int, hi: int):
    """Yield numpy int64 arrays that together hold every prime in [lo, hi].

    Segmented odd-only sieve; working memory stays proportional to the
    segment size, so limits around 10^8 are routine.
    """
    lo = max(lo, 2)
    if hi < lo:
        return
    base = _simple_sieve(isqrt(hi))
    odd_base = base[1:]  # drop 2
    if lo <= 2 <= hi:
        yield np.array([2], dtype=np.int64)
    low = max(lo, 3)
    if low % 2 == 0:
        low += 1
    span = 2 * _SEGMENT_ODDS
    while low <= hi:
        high = min(low + span, hi + 1)  # exclusive
        count = (high - low + 1) // 2
        mask = np.ones(count, dtype=bool)
        for p in odd_base.tolist():
            p2 = p * p
            if p2 >= high:
                break
            start = max(p2, ((low + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start < high:
                mask[(start - low) // 2 :: p] = False
        idx = np.flatnonzero(mask)
        if idx.size:
            yield low + 2 * idx
        low = high


def primes_in_range(lo: int, hi: int) -> np.ndarray:
    """All primes in [lo, hi], ascending, as an int64 array."""
    blocks = list(prime_blocks(lo, hi))
    if not blocks:
        return np.array([], dtype=np.int64)
    return np.concatenate(blocks)


def primes_up_to(n: int) -> np.ndarray:
    """All primes in [2, n], ascending, as an int64 array."""
    return primes_in_range(2, n)


def is_kth_residue(a: int, k: int, p) -> bool:
    """True iff x^k = a (mod p) is solvable, p prime.

    0 counts as a residue (0 = 0^k).  For a nonzero mod p the Euler-style
    criterion applies with the exponent reduced by d = gcd(k, p-1):
    a is a kth residue iff a^((p-1)/d) = 1 (mod p).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    p = _as_prime(p)
    _check_width(a, "residue candidate")
    a %= p
    if a == 0:
        return True
    d = gcd(k, p - 1)
    return pow(a, (p - 1) // d, p) == 1
