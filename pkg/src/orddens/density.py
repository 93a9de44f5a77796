"""Exact densities of primes classified by the order of a reduced group.

For a finitely generated group G inside a number field K, the natural
density of primes p of K with m | ord_p(G) is an explicit rational, as are
the densities of primes whose order is k-free, has prescribed ell-adic
valuations, or is coprime to k.  Every closed formula here consumes only a
`DegreeTable`; each also has an independent series evaluator with a fully
rational certified tail bound, so exact values can be cross-checked.

All arithmetic is `fractions.Fraction`; floats appear only in the universal
constants A(k, r) and their error bounds.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .arith import (
    divisors,
    euler_phi,
    factorize,
    is_kfree,
    is_squarefree,
    mobius,
    radical,
    small_primes,
    smooth_divisors,
    valuation,
)
from .kummer import DegreeTable, GroupSpec, lift_degree


# ---------------------------------------------------------------------------
# Values and Frobenius conditions

@dataclass(frozen=True)
class ScaledConstant:
    """A rational multiple q * A(k, r) of a universal order constant."""

    multiplier: Fraction
    k: int
    r: int
    approx: float
    approx_error: float


@dataclass(frozen=True)
class DensityValue:
    exact: Fraction | None = None
    interval: tuple[Fraction, Fraction] | None = None
    scaled: ScaledConstant | None = None

    def __post_init__(self) -> None:
        if self.exact is not None and not 0 <= self.exact <= 1:
            raise ValueError("density outside [0, 1]")
        if self.interval is not None:
            lo, hi = self.interval
            if lo > hi or lo < 0 or hi > Fraction(101, 100):
                raise ValueError("bad density interval")
            if self.exact is not None and not lo <= self.exact <= hi:
                raise ValueError("exact value outside its interval")

    def as_float(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        if self.scaled is not None:
            return self.scaled.approx
        lo, hi = self.interval
        return float((lo + hi) / 2)

    @property
    def width(self) -> Fraction:
        if self.interval is None:
            return Fraction(0)
        return self.interval[1] - self.interval[0]

    def contains(self, value: Fraction) -> bool:
        if self.interval is not None:
            return self.interval[0] <= value <= self.interval[1]
        return self.exact == value


class Trivial:
    """No Frobenius condition (the full Galois group)."""

    def __repr__(self) -> str:  # pragma: no cover
        return "Trivial()"


TRIVIAL = Trivial()


@dataclass(frozen=True)
class SplitCompletely:
    """Primes split completely in an extension F/K: scale the F-density by 1/[F:K]."""

    degree_over_base: int
    ext_table: DegreeTable


@dataclass(frozen=True)
class LinearlyDisjoint:
    """F linearly disjoint from every division field: densities scale by |C|/[F:K]."""

    class_size: int
    degree_over_base: int


@dataclass(frozen=True)
class CoefficientOracle:
    """Caller-supplied Frobenius data: coeff(a, b) and degree [F_{a,b} : K]."""

    coeff: Callable[[int, int], int]
    degree: Callable[[int, int], int]


FrobeniusSpec = Trivial | SplitCompletely | LinearlyDisjoint | CoefficientOracle


def torsion_reduce(m: int, t: int) -> int:
    """Replace m | ord(G x <zeta_t>) by the equivalent condition on ord(G)."""
    if m < 1 or t < 1:
        raise ValueError("torsion_reduce requires m, t >= 1")
    out = 1
    for ell, e in factorize(m).factors:
        if e > valuation(t, ell):
            out *= ell ** e
    return out


def apply_frobenius_mode(value: DensityValue, frob: FrobeniusSpec) -> DensityValue:
    """Scale a base density according to the Frobenius condition mode."""
    if isinstance(frob, Trivial):
        return value
    if isinstance(frob, SplitCompletely):
        factor = Fraction(1, frob.degree_over_base)
    elif isinstance(frob, LinearlyDisjoint):
        factor = Fraction(frob.class_size, frob.degree_over_base)
    else:
        raise ValueError("oracle mode feeds the series directly; nothing to scale")
    exact = value.exact * factor if value.exact is not None else None
    interval = None
    if value.interval is not None:
        interval = (value.interval[0] * factor, value.interval[1] * factor)
    scaled = None
    if value.scaled is not None:
        s = value.scaled
        scaled = ScaledConstant(
            s.multiplier * factor, s.k, s.r,
            s.approx * float(factor), s.approx_error * float(factor),
        )
    return DensityValue(exact=exact, interval=interval, scaled=scaled)


# ---------------------------------------------------------------------------
# Divisibility density: closed form

def _p_weight_div(g: int, h: int, m: int, z: int, r: int) -> Fraction:
    """Weight of the (g, h) term in the closed divisibility density."""
    val = Fraction(euler_phi(g), h)
    for ell, gl in factorize(g).factors:
        hl = valuation(h, ell)
        ml = valuation(m, ell)
        zl = valuation(z, ell)
        if hl == 0:
            if gl != min(ml, zl):
                return Fraction(0)
        elif gl < zl:
            d = gl - hl
            if d == ml - 1:
                val *= -ell
            elif d != ml:
                return Fraction(0)
        elif hl < gl:  # gl == zl
            d = gl - hl
            if d < ml:
                val *= -(ell - 1)
            elif d > ml:
                return Fraction(0)
        else:  # hl == gl == zl
            val *= Fraction(-(ell ** (r + 1)) * (ell - 1), ell ** (r + 1) - 1)
    return val


def rho_closed(m: int, group: GroupSpec, table: DegreeTable) -> DensityValue:
    """Exact density of primes with m | ord(G mod p), no Frobenius condition."""
    if m < 1:
        raise ValueError("m must be >= 1")
    m = torsion_reduce(m, group.torsion_order)
    z, r = table.z, table.rank
    pref = Fraction(1, euler_phi(m))
    for ell in factorize(m).primes():
        if z % ell:
            pref *= Fraction(ell * (ell ** r - 1), ell ** (r + 1) - 1)
    mz = math.gcd(m, z)
    total = Fraction(0)
    for g in divisors(z):
        if g % mz or mz % radical(g):
            continue
        for h in divisors(g):
            w = _p_weight_div(g, h, m, z, r)
            if w:
                total += w / table.entries[(g, h)]
    return DensityValue(exact=pref * total)


# ---------------------------------------------------------------------------
# Divisibility density: series with certified tail

def _smooth_power_sum(m: int, limit: int, power: int) -> Fraction:
    return sum((Fraction(1, n ** power) for n in smooth_divisors(m, limit)), Fraction(0))


def _smooth_power_total(m: int, power: int) -> Fraction:
    total = Fraction(1)
    for ell in factorize(m).primes():
        total /= 1 - Fraction(1, ell ** power)
    return total


def _series_tail(m: int, bound: int, table: DegreeTable) -> Fraction:
    """Exact bound on sum over n | m^oo, mn > bound of 1/[K_{mn,n} : K]."""
    r = table.rank
    full = _smooth_power_total(m, r + 1)
    partial = _smooth_power_sum(m, bound // m, r + 1)
    return table.degree_slack * (full - partial) / euler_phi(m)


def rho_series(
    m: int,
    group: GroupSpec,
    table: DegreeTable,
    frob: FrobeniusSpec = TRIVIAL,
    bound: int | None = None,
) -> DensityValue:
    """Truncated series for the divisibility density, as an exact interval.

    The partial sum runs over n | m^oo with m*n <= bound; the remainder is
    bounded by degree lower bounds certified from the table itself.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    m = torsion_reduce(m, group.torsion_order)
    if bound is None:
        bound = m * 2 ** 14
    if bound < m:
        raise ValueError("bound must be at least m")

    if isinstance(frob, SplitCompletely):
        base = _rho_series_core(m, frob.ext_table, None, bound)
        return apply_frobenius_mode(base, frob)
    if isinstance(frob, LinearlyDisjoint):
        base = _rho_series_core(m, table, None, bound)
        return apply_frobenius_mode(base, frob)
    if isinstance(frob, CoefficientOracle):
        return _rho_series_core(m, table, frob, bound)
    return _rho_series_core(m, table, None, bound)


def _rho_series_core(
    m: int, table: DegreeTable, oracle: CoefficientOracle | None, bound: int
) -> DensityValue:
    partial = Fraction(0)
    square_free_divs = [d for d in divisors(m) if mobius(d) != 0]
    for n in smooth_divisors(m, bound // m):
        term = Fraction(0)
        for d in square_free_divs:
            mu = mobius(d)
            if oracle is None:
                c, deg = 1, lift_degree(table, m * n, d * n)
            else:
                c, deg = oracle.coeff(m * n, d * n), oracle.degree(m * n, d * n)
                if c < 0 or deg < 1:
                    raise ValueError("oracle must return c >= 0 and degree >= 1")
            if c:
                term += Fraction(mu * c, deg)
        partial += term
    tail = _series_tail(m, bound, table)
    hi = partial + tail
    return DensityValue(interval=(partial, min(hi, Fraction(101, 100))))


# ---------------------------------------------------------------------------
# Universal constants A(k, r)

def A_constant(k: int, r: int, cutoff: int = 10 ** 5) -> tuple[float, float]:
    """prod over primes ell < cutoff of (1 - (ell^r-1)/((ell-1)(ell^{r+1}-1)ell^{k-2})).

    Returns (value, error) where error bounds the distance to the full
    product over all primes, via an all-integers tail majorant.
    """
    if k < 2 or r < 1 or cutoff < 100:
        raise ValueError("need k >= 2, r >= 1, cutoff >= 100")
    primes = small_primes()
    if cutoff > primes[-1] + 1:
        raise ValueError("cutoff beyond the prime cache")
    prod = 1.0
    for ell in primes[: bisect_left(primes, cutoff)]:
        num = ell ** r - 1
        den = (ell - 1) * (ell ** (r + 1) - 1) * ell ** (k - 2)
        prod *= 1.0 - num / den
    # Each omitted factor is 1 - u with u <= 2/n^k; sum over all n >= cutoff.
    tail = 2.0 * (cutoff ** (1 - k) / (k - 1) + float(cutoff) ** -k)
    err = prod * math.expm1(2.0 * tail) + 1e-12
    return prod, err


# ---------------------------------------------------------------------------
# k-free order density: closed form and series

def _p_weight_kfree(g: int, h: int, k: int, z: int, r: int) -> Fraction:
    val = Fraction(g, h * radical(g) ** k)
    for ell, gl in factorize(g).factors:
        hl = valuation(h, ell)
        zl = valuation(z, ell)
        if hl == 0:
            if gl != min(k, zl):
                return Fraction(0)
            val *= -1
        else:
            d = gl - hl
            if d > k:
                return Fraction(0)
            if gl < zl:
                if d == k:
                    val *= -1
                elif d == k - 1:
                    val *= ell
                else:
                    return Fraction(0)
            elif hl < gl:  # gl == zl
                if d == k:
                    val *= -1
                else:  # 0 < d < k
                    val *= ell - 1
            else:  # hl == gl == zl
                val *= Fraction(ell ** (r + 1) * (ell - 1), ell ** (r + 1) - 1)
    return val


def beta_closed(
    k: int, group: GroupSpec, table: DegreeTable, cutoff: int = 10 ** 5
) -> DensityValue:
    """Density of primes whose order is k-free, as q * A(k, r)."""
    if k < 2:
        raise ValueError("k-free densities need k >= 2")
    r = table.rank
    if not is_kfree(group.torsion_order, k):
        return DensityValue(exact=Fraction(0), scaled=ScaledConstant(Fraction(0), k, r, 0.0, 0.0))
    z = table.z
    total = Fraction(0)
    for g in divisors(z):
        if g % math.gcd(radical(g) ** k, z):
            continue
        for h in divisors(g):
            w = _p_weight_kfree(g, h, k, z, r)
            if w:
                total += w / table.entries[(g, h)]
    for ell in factorize(z).primes():
        u = Fraction(ell ** r - 1, (ell - 1) * (ell ** (r + 1) - 1) * ell ** (k - 2))
        total /= 1 - u
    a_val, a_err = A_constant(k, r, cutoff)
    q = total
    return DensityValue(
        scaled=ScaledConstant(q, k, r, float(q) * a_val, abs(float(q)) * a_err + 1e-12)
    )


def _phi_weighted_tail(m_cutoff: int, k: int) -> Fraction:
    """Exact rational bound on sum_{m > M} 1 / (m^{k-1} phi(m))."""
    M = m_cutoff
    # m/phi(m) = sum over squarefree d | m of 1/phi(d), so
    # sum_{m>M} 1/(m phi(m)) = sum_d mu^2(d)/(phi(d) d^2) * sum_{t>M/d} 1/t^2,
    # and sum_{t>T} 1/t^2 < 1/T for integers T >= 1.
    total = Fraction(0)
    for d in range(1, M + 1):
        if not is_squarefree(d):
            continue
        total += Fraction(1, euler_phi(d) * d * d * (M // d))
    # d > M block: 2/(phi(d) d^2) <= 2*sqrt(2)/d^(5/2), summing below 2/(M*isqrt(M)).
    total += Fraction(2, M * math.isqrt(M))
    # For k > 2 pull out m^(2-k) <= M^(2-k).
    return total / M ** (k - 2)


def beta_series(
    k: int,
    group: GroupSpec,
    table: DegreeTable,
    m_cutoff: int = 100,
    bound: int | None = None,
) -> DensityValue:
    """Inclusion-exclusion series over k-th power divisibility, as an interval."""
    if k < 2:
        raise ValueError("k-free densities need k >= 2")
    if not is_kfree(group.torsion_order, k):
        return DensityValue(exact=Fraction(0), interval=(Fraction(0), Fraction(0)))
    lo = hi = Fraction(0)
    for m in range(1, m_cutoff + 1):
        mu = mobius(m)
        if mu == 0:
            continue
        inner_bound = bound if bound is not None else m ** k * 2 ** 10
        val = rho_series(m ** k, group, table, bound=max(inner_bound, m ** k))
        a, b = val.interval
        if mu > 0:
            lo, hi = lo + a, hi + b
        else:
            lo, hi = lo - b, hi - a
    # |rho_{m^k}| <= slack * zeta-ish / phi(m^k) with phi(m^k) = m^{k-1} phi(m).
    outer = 2 * table.degree_slack * _phi_weighted_tail(m_cutoff, k)
    lo, hi = lo - outer, hi + outer
    return DensityValue(interval=(max(lo, Fraction(0)), min(hi, Fraction(101, 100))))


# ---------------------------------------------------------------------------
# Valuation profile densities

def _p_weight_val(g: int, h: int, k: int, m: int, z: int, r: int) -> Fraction:
    val = Fraction(euler_phi(g), h)
    for ell, gl in factorize(g).factors:
        hl = valuation(h, ell)
        zl = valuation(z, ell)
        al = valuation(m, ell)
        d = gl - hl
        if al == 0:
            # ell | k with prescribed valuation zero
            if hl == 0:
                if gl != 1:
                    return Fraction(0)
                val *= Fraction(-1, ell - 1)
            elif hl == gl == zl:
                val *= Fraction(ell ** (r + 1), ell ** (r + 1) - 1)
            elif hl < gl:
                if d != 1:
                    return Fraction(0)
                val *= Fraction(-1, ell - 1)
            else:  # hl == gl < zl
                val *= Fraction(ell, ell - 1)
        else:
            if hl == 0:
                if gl == zl and zl > al + 1:
                    return Fraction(0)
                if gl == al and al < zl:
                    pass
                elif gl == al + 1:
                    val *= Fraction(-1, ell)
                elif gl == zl and zl <= al:
                    val *= Fraction(ell - 1, ell)
                else:
                    return Fraction(0)
            elif hl == gl == zl:
                val *= Fraction(-(ell ** r) * (ell - 1) ** 2, ell ** (r + 1) - 1)
            elif hl < gl == zl:
                if d < al:
                    val *= Fraction(-((ell - 1) ** 2), ell)
                elif d == al:
                    val *= Fraction(2 * ell - 1, ell)
                elif d == al + 1:
                    val *= Fraction(-1, ell)
                else:
                    return Fraction(0)
            else:  # gl < zl
                if d == al - 1:
                    val *= -ell
                elif d == al:
                    val *= 2
                elif d == al + 1:
                    val *= Fraction(-1, ell)
                else:
                    return Fraction(0)
    return val


def _check_val_args(k: int, m: int) -> None:
    if k < 1 or not is_squarefree(k):
        raise ValueError("k must be squarefree")
    if m < 1 or k % radical(m):
        raise ValueError("need rad(m) | k")


def gamma_closed(k: int, m: int, group: GroupSpec, table: DegreeTable) -> DensityValue:
    """Exact density of primes with v_ell(ord) = v_ell(m) for every ell | k."""
    _check_val_args(k, m)
    if group.torsion_order > 1:
        return gamma_via_rho(k, m, group, table)
    z, r = table.z, table.rank
    pref = Fraction(1, euler_phi(m))
    for ell in factorize(m).primes():
        if z % ell:
            pref *= Fraction((ell - 1) * (ell ** r - 1), ell ** (r + 1) - 1)
    for ell in factorize(k).primes():
        if m % ell and z % ell:
            pref *= 1 - Fraction(ell * (ell ** r - 1), (ell ** (r + 1) - 1) * (ell - 1))
    mz = math.gcd(m, z)
    total = Fraction(0)
    for g in divisors(z):
        if g % mz or k % radical(g):
            continue
        for h in divisors(g):
            w = _p_weight_val(g, h, k, m, z, r)
            if w:
                total += w / table.entries[(g, h)]
    return DensityValue(exact=pref * total)


def gamma_via_rho(
    k: int,
    m: int,
    group: GroupSpec,
    table: DegreeTable,
    frob: FrobeniusSpec = TRIVIAL,
    bound: int | None = None,
) -> DensityValue:
    """The same valuation-profile density by Moebius sums of divisibility densities."""
    _check_val_args(k, m)
    if isinstance(frob, Trivial):
        total = Fraction(0)
        for f in divisors(k):
            total += mobius(f) * rho_closed(m * f, group, table).exact
        return DensityValue(exact=total)
    lo = hi = Fraction(0)
    for f in divisors(k):
        mu = mobius(f)
        if mu == 0:
            continue
        val = rho_series(m * f, group, table, frob=frob, bound=bound)
        a, b = val.interval
        if mu > 0:
            lo, hi = lo + a, hi + b
        else:
            lo, hi = lo - b, hi - a
    return DensityValue(interval=(max(lo, Fraction(0)), min(hi, Fraction(101, 100))))


# ---------------------------------------------------------------------------
# Coprime order density

def coprime_density(
    k: int,
    group: GroupSpec,
    table: DegreeTable,
    frob: FrobeniusSpec = TRIVIAL,
) -> DensityValue:
    """Density of primes whose order is coprime to squarefree k."""
    if k < 1 or not is_squarefree(k):
        raise ValueError("k must be squarefree")
    if not isinstance(frob, Trivial):
        return gamma_via_rho(k, 1, group, table, frob=frob)
    mobius_total = gamma_via_rho(k, 1, group, table).exact
    # The direct closed form applies to the torsion-free part.
    if all(torsion_reduce(f, group.torsion_order) == f for f in divisors(k)):
        z, r = table.z, table.rank
        pref = Fraction(1)
        for ell in factorize(k).primes():
            if z % ell:
                pref *= 1 - Fraction(ell * (ell ** r - 1), (ell ** (r + 1) - 1) * (ell - 1))
        total = Fraction(0)
        for g in divisors(z):
            if k % radical(g):
                continue
            for h in divisors(g):
                mu = mobius(g // h)
                if mu == 0:
                    continue
                w = Fraction(euler_phi(g), euler_phi(g // h) * h)
                for ell, hl in factorize(h).factors:
                    gl = valuation(g, ell)
                    zl = valuation(z, ell)
                    if hl == zl:
                        w *= Fraction(ell ** (r + 1), ell ** (r + 1) - 1)
                    if hl == gl < zl:
                        w *= Fraction(ell, ell - 1)
                total += mu * w / table.entries[(g, h)]
        direct = pref * total
        assert direct == mobius_total, "closed form and Moebius route disagree"
    return DensityValue(exact=mobius_total)
