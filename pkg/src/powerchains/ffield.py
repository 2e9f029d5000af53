"""Polynomial chains over F_p[t]: dense polynomial arithmetic, irreducible
moduli, kth power residue tests, and chain verification for polynomial
candidates such as 1, t, t^2, ...

The residue test uses the characteristic-p reduction: writing k = p^t * k'
with gcd(k', p) = 1, an element is a kth power residue mod an irreducible f
iff it is a k'th power residue, because x -> x^p is a bijection (Frobenius)
of the residue field.  In particular every element is a kth residue when k is
a power of p.

The constant field is restricted to prime fields F_p; extension constant
fields would add a second layer of field arithmetic without changing any of
the ideas, and are left as an extension point.

Text format (used by the CLI and JSON output): `GF(p)[c0,c1,...]` with
coefficients lowest-degree first, e.g. GF(3)[1,0,1] for t^2 + 1 over F_3.
The zero polynomial prints as GF(p)[0].
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import gcd

from powerchains import _subsets, arith
from powerchains._subsets import DEFAULT_MAX_TERMS
from powerchains.chains import (ChainFailure, ChainVerdict, SumDistinctResult,
                                SumSet, _ordinal)
from powerchains.errors import InvalidCandidateError

__all__ = [
    "FFPoly",
    "IrreducibleModulus",
    "powmod",
    "poly_gcd",
    "is_irreducible",
    "irreducibles_of_degree",
    "is_kth_residue_ff",
    "ff_subset_sums",
    "ff_is_sum_distinct",
    "ff_is_chain",
    "ff_is_cyclic_chain",
    "ff_is_permutation_chain",
    "naive_ff_permutation_chain",
    "find_chain_irreducibles",
    "residue_field",
    "poly_from_text",
    "poly_to_text",
]


@lru_cache(maxsize=None)
def _check_characteristic(p: int) -> int:
    if p < 2 or not arith.is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    return p


@dataclass(frozen=True)
class FFPoly:
    """Dense polynomial over F_p: coeffs[i] is the coefficient of t^i.

    Instances are normalized (coefficients reduced mod p, no trailing zeros;
    the zero polynomial has an empty coefficient tuple) and hashable, so they
    can live in sets of subset sums.
    """

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        p = _check_characteristic(self.p)
        coeffs = [c % p for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "FFPoly":
        return cls(p, ())

    @classmethod
    def one(cls, p: int) -> "FFPoly":
        return cls(p, (1,))

    @classmethod
    def constant(cls, p: int, c: int) -> "FFPoly":
        return cls(p, (c,))

    @classmethod
    def gen(cls, p: int) -> "FFPoly":
        """The indeterminate t."""
        return cls(p, (0, 1))

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the convention deg 0 = -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, x: int) -> int:
        y = 0
        for c in reversed(self.coeffs):
            y = (y * x + c) % self.p
        return y

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "FFPoly":
        if isinstance(other, FFPoly):
            if other.p != self.p:
                raise ValueError(
                    f"characteristic mismatch: F_{self.p} vs F_{other.p}")
            return other
        if isinstance(other, int):
            return FFPoly(self.p, (other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % self.p
        return FFPoly(self.p, tuple(out))

    __radd__ = __add__

    def __neg__(self):
        return FFPoly(self.p, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return FFPoly.zero(self.p)
        p = self.p
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = (out[i + j] + a * b) % p
        return FFPoly(p, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponents are not supported")
        result = FFPoly.one(self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        db = other.degree
        inv = pow(other.coeffs[-1], p - 2, p)
        quot = [0] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db:
            if rem[-1] == 0:
                rem.pop()
                continue
            c = rem[-1] * inv % p
            shift = len(rem) - 1 - db
            quot[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[shift + i] = (rem[shift + i] - c * b) % p
            while rem and rem[-1] == 0:
                rem.pop()
        return FFPoly(p, tuple(quot)), FFPoly(p, tuple(rem))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "FFPoly":
        """Scale by the inverse of the leading coefficient."""
        if self.is_zero() or self.is_monic():
            return self
        inv = pow(self.coeffs[-1], self.p - 2, self.p)
        return FFPoly(self.p, tuple(c * inv % self.p for c in self.coeffs))

    # -- formatting --------------------------------------------------------

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("t" if c == 1 else f"{c}t")
            else:
                parts.append(f"t^{i}" if c == 1 else f"{c}t^{i}")
        return " + ".join(parts)

    def __repr__(self):
        return poly_to_text(self)


def _sort_key(f: FFPoly):
    # (degree, coefficients highest-first): same-degree polynomials compare
    # like base-p integer values
    return (f.degree, f.coeffs[::-1])


_GF_TEXT = re.compile(r"^GF\((\d+)\)\[([0-9,\-\s]*)\]$")


def poly_to_text(f: FFPoly) -> str:
    """Canonical text form, e.g. GF(3)[1,0,1] for t^2 + 1 over F_3."""
    coeffs = f.coeffs if f.coeffs else (0,)
    return f"GF({f.p})[{','.join(str(c) for c in coeffs)}]"


def poly_from_text(text: str) -> FFPoly:
    """Parse the GF(p)[c0,c1,...] format (lowest-degree first).

    Coefficients outside [0, p) are reduced; GF(p)[] and GF(p)[0] both parse
    to the zero polynomial.
    """
    m = _GF_TEXT.match(text.strip())
    if not m:
        raise ValueError(f"malformed polynomial literal {text!r}; "
                         f"expected GF(p)[c0,c1,...]")
    p = int(m.group(1))
    body = m.group(2).strip()
    try:
        coeffs = tuple(int(tok) for tok in body.split(",")) if body else ()
    except ValueError:
        raise ValueError(f"malformed coefficient list in {text!r}") from None
    return FFPoly(p, coeffs)


def powmod(base: FFPoly, exp: int, modulus: FFPoly) -> FFPoly:
    """base^exp mod modulus by square-and-multiply."""
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    if modulus.degree < 1:
        raise ValueError("modulus must have degree >= 1")
    if base.p != modulus.p:
        raise ValueError(f"characteristic mismatch: F_{base.p} vs F_{modulus.p}")
    base = base % modulus
    result = FFPoly.one(base.p)
    while exp:
        if exp & 1:
            result = result * base % modulus
        base = base * base % modulus
        exp >>= 1
    return result


def poly_gcd(a: FFPoly, b: FFPoly) -> FFPoly:
    """Monic greatest common divisor."""
    a._coerce(b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def is_irreducible(f: FFPoly) -> bool:
    """Irreducibility over F_p for nonconstant f (constants raise).

    Rabin's criterion: t^(p^d) = t (mod f), and gcd(t^(p^(d/l)) - t, f) = 1
    for every prime l dividing d.  Unit scaling is irrelevant, so non-monic
    input is normalized first.
    """
    if f.degree < 1:
        raise ValueError("irreducibility is only defined for degree >= 1")
    f = f.monic()
    p, d = f.p, f.degree
    t = FFPoly.gen(p)
    if powmod(t, p**d, f) != t % f:
        return False
    for ell in {q for q, _ in arith.factor(d).factors}:
        g = poly_gcd(powmod(t, p ** (d // ell), f) - t, f)
        if g.degree > 0:
            return False
    return True


_irreducible_cache: dict[tuple[int, int], tuple[FFPoly, ...]] = {}


def _monics(p: int, d: int):
    """All monic polynomials of degree d, ascending by base-p value."""
    for v in range(p**d):
        coeffs = []
        x = v
        for _ in range(d):
            x, r = divmod(x, p)
            coeffs.append(r)
        yield FFPoly(p, tuple(coeffs) + (1,))


def irreducibles_of_degree(p: int, d: int) -> list[FFPoly]:
    """All monic irreducibles of degree exactly d, in lexicographic
    (base-p value) order.

    Degrees up to 4 are sieved by exhaustive trial division against
    lower-degree irreducibles (the same method doubles as the test oracle);
    beyond that the Rabin criterion filters the monic candidates.
    """
    _check_characteristic(p)
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    key = (p, d)
    if key not in _irreducible_cache:
        if d <= 4:
            lower = [g for dd in range(1, d // 2 + 1)
                     for g in irreducibles_of_degree(p, dd)]
            out = [f for f in _monics(p, d)
                   if all((f % g).coeffs for g in lower)]
        else:
            out = [f for f in _monics(p, d) if is_irreducible(f)]
        _irreducible_cache[key] = tuple(out)
    return list(_irreducible_cache[key])


@dataclass(frozen=True)
class IrreducibleModulus:
    """A monic irreducible polynomial, playing the role of a prime modulus;
    its residue field has p^degree elements."""

    f: FFPoly

    def __post_init__(self):
        if not self.f.is_monic():
            raise ValueError(f"modulus {self.f!r} is not monic")
        if not is_irreducible(self.f):
            raise ValueError(f"modulus {self.f!r} is reducible")

    @classmethod
    def _trusted(cls, f: FFPoly) -> "IrreducibleModulus":
        obj = object.__new__(cls)
        object.__setattr__(obj, "f", f)
        return obj

    @property
    def p(self) -> int:
        return self.f.p

    @property
    def degree(self) -> int:
        return self.f.degree

    @property
    def field_size(self) -> int:
        return self.f.p**self.f.degree


def _as_modulus(f) -> FFPoly:
    if isinstance(f, IrreducibleModulus):
        return f.f
    if isinstance(f, FFPoly):
        return IrreducibleModulus(f.monic()).f
    raise TypeError(f"expected FFPoly or IrreducibleModulus, got {type(f).__name__}")


def _strip_char(k: int, p: int) -> int:
    """Remove every factor of p from k (the characteristic-p reduction)."""
    while k % p == 0:
        k //= p
    return k


def is_kth_residue_ff(a: FFPoly, k: int, f) -> bool:
    """True iff x^k = a (mod f) is solvable, f monic irreducible.

    k is first reduced to its prime-to-p part k'; then 0 is always a residue
    and a nonzero residue class satisfies a^((q-1)/g) = 1 with q the residue
    field size and g = gcd(k', q-1).
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    f = _as_modulus(f)
    if a.p != f.p:
        raise ValueError(f"characteristic mismatch: F_{a.p} vs F_{f.p}")
    kp = _strip_char(k, f.p)
    a = a % f
    if a.is_zero():
        return True
    q = f.p**f.degree
    g = gcd(kp, q - 1)
    if g == 1:
        return True
    return powmod(a, (q - 1) // g, f) == FFPoly.one(f.p)


def residue_field(f) -> list[FFPoly]:
    """All residue classes mod f (every polynomial of degree < deg f),
    ascending by base-p value."""
    f = _as_modulus(f)
    p, d = f.p, f.degree
    out = []
    for v in range(p**d):
        coeffs = []
        x = v
        for _ in range(d):
            x, r = divmod(x, p)
            coeffs.append(r)
        out.append(FFPoly(p, tuple(coeffs)))
    return out


# -- chain semantics, mirroring the integer module -------------------------


def _ff_terms(r) -> tuple[FFPoly, ...]:
    terms = tuple(r)
    if not terms:
        raise ValueError("candidate sequence must have at least one term")
    if not all(isinstance(t, FFPoly) for t in terms):
        raise TypeError("polynomial candidates must consist of FFPoly terms")
    p = terms[0].p
    if any(t.p != p for t in terms):
        raise ValueError("candidate terms must share one characteristic")
    return terms


def ff_subset_sums(r, *, max_terms: int = DEFAULT_MAX_TERMS,
                   with_witnesses: bool = False) -> SumSet:
    """All nonempty subset sums of a polynomial candidate (exact, in F_p[t])."""
    terms = _ff_terms(r)
    _subsets.check_term_cap(len(terms), max_terms)
    if with_witnesses:
        witnesses = _subsets.subset_value_witnesses(terms)
        return SumSet(frozenset(witnesses), witnesses, len(terms))
    return SumSet(frozenset(_subsets.subset_values(terms)), None, len(terms))


def ff_is_sum_distinct(r, *, max_terms: int = DEFAULT_MAX_TERMS) -> SumDistinctResult:
    """Candidate condition over F_p[t]: all 2^m - 1 subset sums distinct
    as polynomials (coefficient arithmetic mod p)."""
    terms = _ff_terms(r)
    _subsets.check_term_cap(len(terms), max_terms)
    values = _subsets.subset_values(terms)
    if len(values) == (1 << len(terms)) - 1:
        return SumDistinctResult(True)
    a, b, s = _subsets.first_sum_collision(terms)
    return SumDistinctResult(False, (a, b), s)


def _ff_window_failure(terms, k, kp, f: FFPoly, level: str,
                       prefix: str = "") -> ChainFailure | None:
    # k is the user's exponent (for messages), kp its prime-to-p part
    p = f.p
    q = p**f.degree
    g = gcd(kp, q - 1)
    e = (q - 1) // g
    one = FFPoly.one(p)
    seen: dict[FFPoly, FFPoly] = {}
    m = len(terms)
    for i in range(m):
        s = FFPoly.zero(p)
        for j in range(i, m):
            s = s + terms[j]
            a = s % f
            if g > 1 and not a.is_zero() and a != one and powmod(a, e, f) != one:
                return ChainFailure(
                    level, "non_residue", (s,),
                    f"{prefix}window sum {s} is not a "
                    f"{_ordinal(k)} power residue mod {f}")
            if a in seen:
                desc = (f"{prefix}window sum {s} occurs twice mod {f}"
                        if seen[a] == s else
                        f"{prefix}window sums {seen[a]} and {s} are congruent mod {f}")
                return ChainFailure(level, "collision", (seen[a], s), desc)
            seen[a] = s
    return None


def ff_is_chain(r, k: int, f) -> bool:
    """Window sums of r distinct mod f and all kth power residues."""
    terms = _ff_terms(r)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    f = _as_modulus(f)
    return _ff_window_failure(terms, k, _strip_char(k, f.p), f, "chain") is None


def ff_is_cyclic_chain(r, k: int, f) -> bool:
    """Every rotation of r is a chain mod f."""
    terms = _ff_terms(r)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    f = _as_modulus(f)
    return _ff_cyclic_failure(terms, k, _strip_char(k, f.p), f) is None


def _ff_cyclic_failure(terms, k, kp, f) -> ChainFailure | None:
    for i in range(len(terms)):
        rotated = terms[i:] + terms[:i]
        prefix = f"rotation starting at term {i + 1}: " if i else ""
        fail = _ff_window_failure(rotated, k, kp, f, "cyclic", prefix)
        if fail is not None:
            return fail
    return None


def _ff_permutation_failure(terms, k, kp, f, max_terms) -> ChainFailure | None:
    sd = ff_is_sum_distinct(terms, max_terms=max_terms)
    if not sd:
        a, b = sd.collision
        return ChainFailure(
            "permutation", "collision", (sd.colliding_sum, sd.colliding_sum),
            f"subset sums collide in F_{f.p}[t]: term subsets {list(a)} and "
            f"{list(b)} both sum to {sd.colliding_sum}")
    values = sorted(_subsets.subset_values(terms), key=_sort_key)
    seen: dict[FFPoly, FFPoly] = {}
    for s in values:
        a = s % f
        if a in seen:
            return ChainFailure(
                "permutation", "collision", (seen[a], s),
                f"subset sums {seen[a]} and {s} are congruent mod {f}")
        seen[a] = s
    q = f.p**f.degree
    g = gcd(kp, q - 1)
    if g > 1:
        e = (q - 1) // g
        one = FFPoly.one(f.p)
        for s in values:
            a = s % f
            if not a.is_zero() and a != one and powmod(a, e, f) != one:
                return ChainFailure(
                    "permutation", "non_residue", (s,),
                    f"subset sum {s} is not a {_ordinal(k)} power residue mod {f}")
    return None


def ff_is_permutation_chain(r, k: int, f, *, max_terms: int = DEFAULT_MAX_TERMS,
                            debug: bool = False) -> ChainVerdict:
    """Chain / cyclic / permutation verdict mod an irreducible f, mirroring
    the integer module: the permutation level is exact sum-distinctness in
    F_p[t] plus distinctness and residueness of the subset sums mod f."""
    terms = _ff_terms(r)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    f = _as_modulus(f)
    kp = _strip_char(k, f.p)

    chain_fail = _ff_window_failure(terms, k, kp, f, "chain")
    cyclic_fail = (chain_fail if chain_fail is not None
                   else _ff_cyclic_failure(terms, k, kp, f))
    perm_fail = (cyclic_fail if cyclic_fail is not None
                 else _ff_permutation_failure(terms, k, kp, f, max_terms))
    verdict = ChainVerdict(
        is_chain=chain_fail is None,
        is_cyclic=cyclic_fail is None,
        is_permutation=perm_fail is None,
        failure_witness=perm_fail,
    )
    if debug:
        if len(terms) > 6:
            raise ValueError("debug cross-check is limited to m <= 6")
        naive = naive_ff_permutation_chain(terms, k, f)
        if naive != verdict.is_permutation:
            raise AssertionError(
                f"subset-based verdict {verdict.is_permutation} disagrees with "
                f"all-permutations verdict {naive} for {terms}, k={k}, f={f!r}")
    return verdict


def naive_ff_permutation_chain(r, k: int, f, *, max_terms: int = 8) -> bool:
    """Literal all-orderings verifier; reference implementation."""
    terms = _ff_terms(r)
    if len(terms) > max_terms:
        raise ValueError(f"naive verifier capped at m <= {max_terms}")
    f = _as_modulus(f)
    kp = _strip_char(k, f.p)
    return all(
        _ff_window_failure(perm, k, kp, f, "chain") is None
        for perm in permutations(terms)
    )


def find_chain_irreducibles(r, k: int, p: int, max_degree: int,
                            *, max_terms: int = DEFAULT_MAX_TERMS) -> list[IrreducibleModulus]:
    """All monic irreducibles of degree <= max_degree realizing r as a
    permutation chain of kth power residues, ordered by (degree, value).

    Raises InvalidCandidateError when r is not sum-distinct over F_p[t]
    (no modulus can work then).
    """
    terms = _ff_terms(r)
    _check_characteristic(p)
    if terms[0].p != p:
        raise ValueError(f"candidate lives over F_{terms[0].p}, not F_{p}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if max_degree < 1:
        raise ValueError(f"max_degree must be >= 1, got {max_degree}")
    sd = ff_is_sum_distinct(terms, max_terms=max_terms)
    if not sd:
        a, b = sd.collision
        raise InvalidCandidateError(
            f"candidate is not sum-distinct over F_{p}[t]: term subsets "
            f"{list(a)} and {list(b)} both sum to {sd.colliding_sum}")
    values = sorted(_subsets.subset_values(terms), key=_sort_key)
    max_value_degree = max(v.degree for v in values)
    kp = _strip_char(k, p)
    one = FFPoly.one(p)
    out: list[IrreducibleModulus] = []
    for d in range(1, max_degree + 1):
        q = p**d
        g = gcd(kp, q - 1)
        e = (q - 1) // g
        for f in irreducibles_of_degree(p, d):
            if d <= max_value_degree:
                reduced = {v % f for v in values}
                if len(reduced) != len(values):
                    continue
            else:
                reduced = None
            if g > 1:
                source = reduced if reduced is not None else (v % f for v in values)
                ok = True
                for a in source:
                    if not a.is_zero() and a != one and powmod(a, e, f) != one:
                        ok = False
                        break
                if not ok:
                    continue
            out.append(IrreducibleModulus._trusted(f))
    return out
