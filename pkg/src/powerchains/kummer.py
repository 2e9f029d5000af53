"""Density prediction and measurement for permutation-chain primes.

An integer a is a kth power residue at every prime that splits completely in
the field obtained by adjoining a primitive kth root of unity and the kth
roots of the subset-sum set E.  The degree of that field is at most
phi(k) * |G| where G is the subgroup of Q*/(Q*)^k generated by E, so by the
Chebotarev density theorem the primes realizing a sum-distinct candidate as a
permutation chain have Dirichlet density at least

    1 / (phi(k) * |G|).

G is an abelian group of exponent dividing k; each generator is recorded as a
vector of exponents mod k, indexed by the primes appearing in its
factorization plus a sign coordinate (-1 has order 2 in Q*/(Q*)^k for even k,
encoded as the value k/2 so that plain mod-k addition is the group law).

For k = 2 the bound is exact: a is a square mod p iff p splits in Q(sqrt a),
so chain primes for k = 2 are exactly the split-completely primes outside the
finite exceptional set.  For k > 2 classes may collapse over the cyclotomic
field, which is why the predicted value is reported as a lower bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from powerchains import _subsets, arith, chains
from powerchains._subsets import DEFAULT_MAX_TERMS

__all__ = [
    "ExponentVector",
    "KummerClassGroup",
    "DensityReport",
    "exponent_vector",
    "class_group",
    "predicted_density",
    "empirical_density",
    "density_counts_in_range",
    "density_report_from_counts",
]


@dataclass(frozen=True)
class ExponentVector:
    """Class of a nonzero rational in Q*/(Q*)^k, as sparse exponents mod k.

    coords holds (position, exponent) pairs with position -1 for the sign and
    primes otherwise, ascending, zero exponents omitted.
    """

    k: int
    coords: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.coords)

    def is_trivial(self) -> bool:
        return not self.coords


def exponent_vector(a: int, k: int) -> ExponentVector:
    """Exponent vector of a modulo kth powers.

    The factorization exponents are reduced mod k; for even k a negative sign
    contributes k/2 on the -1 coordinate (so that twice the sign coordinate
    vanishes), while for odd k the sign is itself a kth power and drops out.
    """
    if a == 0:
        raise ValueError("0 has no class modulo kth powers")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k == 1:
        return ExponentVector(1, ())
    coords = []
    if a < 0 and k % 2 == 0:
        coords.append((-1, k // 2))
    f = arith.factor(a)
    for p, e in f.factors:
        if e % k:
            coords.append((p, e % k))
    return ExponentVector(k, tuple(coords))


def _echelon_diagonal(rows: list[list[int]], n: int) -> list[int]:
    """Diagonal of a row-echelon form of a full-column-rank integer matrix,
    reached by unimodular row operations (swap, negate, add multiples).

    The product of the diagonal is the index in Z^n of the lattice spanned by
    the rows.  gcd-style pivoting, no divisions, exact integers throughout.
    """
    mat = [list(r) for r in rows]
    diag = []
    top = 0
    for col in range(n):
        while True:
            piv = -1
            best = None
            for i in range(top, len(mat)):
                v = abs(mat[i][col])
                if v and (best is None or v < best):
                    piv, best = i, v
            if piv < 0:
                raise ValueError(f"matrix does not have full column rank at column {col}")
            mat[top], mat[piv] = mat[piv], mat[top]
            if mat[top][col] < 0:
                mat[top] = [-x for x in mat[top]]
            pval = mat[top][col]
            clear = True
            for i in range(top + 1, len(mat)):
                v = mat[i][col]
                if v:
                    q = v // pval
                    mat[i] = [x - q * y for x, y in zip(mat[i], mat[top])]
                    if mat[i][col]:
                        clear = False
            if clear:
                break
        diag.append(mat[top][col])
        top += 1
    return diag


def _subgroup_order(vectors: list[tuple[int, ...]], k: int, n: int) -> int:
    """Order of the subgroup of (Z/k)^n generated by the given vectors.

    Computed over Z by stacking the lifted generators on top of k*identity:
    the stack spans a full-rank lattice L with kZ^n <= L <= Z^n, and the
    subgroup is L/kZ^n of order k^n / [Z^n : L].
    """
    if k == 1 or n == 0:
        return 1
    rows = [[x % k for x in v] for v in vectors if any(x % k for x in v)]
    for j in range(n):
        rows.append([k if i == j else 0 for i in range(n)])
    diag = _echelon_diagonal(rows, n)
    order = 1
    for d in diag:
        if k % d:
            raise AssertionError(f"echelon diagonal {d} must divide {k}")
        order *= k // d
    return order


@dataclass(frozen=True)
class KummerClassGroup:
    """Subgroup of Q*/(Q*)^k generated by the nonzero elements of E."""

    k: int
    generators: tuple[ExponentVector, ...]
    positions: tuple[int, ...]
    subgroup_order: int
    excluded_zeros: int = 0


def class_group(E, k: int, *, max_terms: int = DEFAULT_MAX_TERMS) -> KummerClassGroup:
    """Class group data for a subset-sum set (or any iterable of integers).

    Zero elements generate nothing (0 is a residue at every prime) and are
    excluded but counted.  The order is computed by gcd elimination over the
    lifted integer matrix, which handles non-prime k exactly.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if isinstance(E, chains.SumSet):
        elements = sorted(E.values)
    else:
        elements = sorted({int(x) for x in E})
    zeros = sum(1 for c in elements if c == 0)
    nonzero = [c for c in elements if c != 0]
    gens = tuple(exponent_vector(c, k) for c in nonzero)
    positions = tuple(sorted({pos for g in gens for pos, _ in g.coords}))
    index = {pos: i for i, pos in enumerate(positions)}
    vectors = []
    for g in gens:
        row = [0] * len(positions)
        for pos, e in g.coords:
            row[index[pos]] = e
        vectors.append(tuple(row))
    order = _subgroup_order(vectors, k, len(positions))
    return KummerClassGroup(k, gens, positions, order, zeros)


def predicted_density(E, k: int) -> Fraction:
    """Lower bound for the Dirichlet density of primes at which every element
    of E is a kth power residue: 1 / (phi(k) * subgroup order).

    Exact for k = 2 (split-completely density of the multiquadratic field);
    a lower bound for k > 2, where classes may collapse over the kth
    cyclotomic field.
    """
    g = class_group(E, k)
    return Fraction(1, arith.euler_phi(k) * g.subgroup_order)


@dataclass(frozen=True)
class DensityReport:
    """Empirical count of permutation-chain primes against the predicted
    Chebotarev lower bound."""

    limit: int
    total_primes: int
    hits: int
    empirical: Fraction
    predicted_lower_bound: Fraction
    exceptional_excluded: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.hits <= self.total_primes:
            raise ValueError("hits must lie in [0, total_primes]")
        if not 0 < self.predicted_lower_bound <= 1:
            raise ValueError("predicted density must lie in (0, 1]")


def density_counts_in_range(r, k: int, lo: int, hi: int,
                            *, max_terms: int = DEFAULT_MAX_TERMS) -> tuple[int, int]:
    """(primes tested, permutation-chain hits) over primes in [lo, hi].

    Range-partitioned building block: summing the pairs over a partition of
    [2, limit] reproduces the counts of empirical_density.
    """
    terms = chains._terms(r)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    total = hits = 0
    if not chains.is_sum_distinct(terms, max_terms=max_terms):
        for block in arith.prime_blocks(lo, hi):
            total += len(block)
        return total, 0
    values = sorted(_subsets.subset_values(terms))
    spread = values[-1] - values[0]
    for block in arith.prime_blocks(lo, hi):
        total += len(block)
        hits += len(chains._block_hits(values, spread, k, block.tolist()))
    return total, hits


def density_report_from_counts(r, k: int, limit: int, total: int, hits: int,
                               *, max_terms: int = DEFAULT_MAX_TERMS) -> DensityReport:
    """Assemble a DensityReport from externally accumulated counts."""
    terms = chains._terms(r)
    values = _subsets.subset_values(terms)
    predicted = predicted_density(values, k)
    if chains.is_sum_distinct(terms, max_terms=max_terms):
        exceptional = tuple(p for p in chains.exceptional_primes(terms, max_terms=max_terms)
                            if p <= limit)
    else:
        exceptional = ()
    empirical = Fraction(hits, total) if total else Fraction(0)
    return DensityReport(limit, total, hits, empirical, predicted, exceptional)


def empirical_density(r, k: int, limit: int,
                      *, max_terms: int = DEFAULT_MAX_TERMS) -> DensityReport:
    """Sweep all primes p <= limit, counting those that realize r as a
    permutation chain of kth power residues.

    Exceptional primes (where subset sums collide mod p) are swept like any
    other prime -- they always miss -- and are listed separately in the
    report.  For a candidate that is not sum-distinct, hits is identically 0
    and the predicted bound describes only the residue condition on the
    deduplicated subset-sum set, which no longer implies a chain.
    """
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    total, hits = density_counts_in_range(r, k, 2, limit, max_terms=max_terms)
    return density_report_from_counts(r, k, limit, total, hits, max_terms=max_terms)
