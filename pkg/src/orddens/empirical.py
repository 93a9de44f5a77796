"""Brute-force verification against actual primes.

Enumerates the degree-1 primes of a built-in field up to X, computes the
order and index of the reduced group in each residue field, and counts how
often an event (divisibility, k-freeness, valuation profile, coprimality,
complete splitting in a division field) occurs.  Frequencies are compared
with the exact densities elsewhere; this module only counts.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .kummer import FieldSpec, GroupSpec

_SPLIT_SEED = 24862048  # fixed: runs are bit-reproducible


# ---------------------------------------------------------------------------
# Events

@dataclass(frozen=True)
class Divisible:
    m: int


@dataclass(frozen=True)
class KFree:
    k: int


@dataclass(frozen=True)
class ValuationProfile:
    k: int
    m: int


@dataclass(frozen=True)
class Coprime:
    k: int


@dataclass(frozen=True)
class KummerSplit:
    m: int
    n: int


Event = Divisible | KFree | ValuationProfile | Coprime | KummerSplit


def event_name(ev: Event) -> str:
    if isinstance(ev, Divisible):
        return f"div:{ev.m}"
    if isinstance(ev, KFree):
        return f"kfree:{ev.k}"
    if isinstance(ev, ValuationProfile):
        return f"val:{ev.k},{ev.m}"
    if isinstance(ev, Coprime):
        return f"coprime:{ev.k}"
    return f"kummer:{ev.m},{ev.n}"


def parse_event(text: str) -> Event:
    kind, _, arg = text.partition(":")
    try:
        if kind == "div":
            return Divisible(int(arg))
        if kind == "kfree":
            return KFree(int(arg))
        if kind == "val":
            k, m = arg.split(",")
            return ValuationProfile(int(k), int(m))
        if kind == "coprime":
            return Coprime(int(arg))
        if kind == "kummer":
            m, n = arg.split(",")
            return KummerSplit(int(m), int(n))
    except ValueError as exc:
        raise ValueError(f"cannot parse event {text!r}") from exc
    raise ValueError(f"unknown event kind {kind!r}")


def _validate_event(ev: Event) -> None:
    from .arith import is_squarefree, radical

    if isinstance(ev, Divisible) and ev.m < 1:
        raise ValueError("div needs m >= 1")
    if isinstance(ev, KFree) and ev.k < 2:
        raise ValueError("kfree needs k >= 2")
    if isinstance(ev, ValuationProfile):
        if not is_squarefree(ev.k) or ev.m < 1 or ev.k % radical(ev.m):
            raise ValueError("val needs squarefree k with rad(m) | k")
    if isinstance(ev, Coprime) and (ev.k < 1 or not is_squarefree(ev.k)):
        raise ValueError("coprime needs squarefree k")
    if isinstance(ev, KummerSplit) and (ev.n < 1 or ev.m % ev.n):
        raise ValueError("kummer needs n | m")


@dataclass(frozen=True)
class Degree1Prime:
    p: int
    root: int


@dataclass(frozen=True)
class OrdIndex:
    ord: int
    ind: int


@dataclass(frozen=True)
class EmpiricalCount:
    x: int
    matched: int
    total: int
    excluded: int

    @property
    def ratio(self) -> float | None:
        if self.total == 0:
            return None
        return self.matched / self.total

    def record(self, name: str) -> str:
        r = self.ratio
        tail = "nan" if r is None else f"{r:.6f}"
        return f"count {name} {self.x} {self.matched} {self.total} {self.excluded} {tail}"


# ---------------------------------------------------------------------------
# Primes

def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def _prime_segments(x: int, segment: int = 1 << 20, start: int = 2):
    """Yield numpy arrays of the primes in [start, x], one segment at a time."""
    if x < 2:
        return
    base = _simple_sieve(math.isqrt(x))
    lo = max(2, start)
    while lo <= x:
        hi = min(lo + segment, x + 1)
        mask = np.ones(hi - lo, dtype=bool)
        if lo == 2 and hi > 4:
            mask[4 - lo :: 2] = False  # keep 2 itself
        for p in base:
            p = int(p)
            start = max(p * p, (lo + p - 1) // p * p)
            if p == 2:
                start = max(start, 4)
            if start >= hi:
                continue
            mask[start - lo :: p] = False
        if lo <= 1:
            mask[: 2 - lo] = False
        primes = np.flatnonzero(mask) + lo
        yield primes
        lo = hi


def prime_stream(x: int, segment: int = 1 << 20):
    """All rational primes <= x in increasing order, with O(segment) memory."""
    if x < 2:
        raise ValueError("prime_stream needs x >= 2")
    for chunk in _prime_segments(x, segment):
        yield from (int(p) for p in chunk)


def _spf_array(limit: int) -> np.ndarray:
    """Smallest prime factor table for 2..limit."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            view = spf[p::p]
            view[view == 0] = p
    free = np.flatnonzero(spf[2:] == 0) + 2
    spf[free] = free
    return spf


def _distinct_primes_spf(n: int, spf: np.ndarray) -> list[int]:
    out = []
    while n > 1:
        p = int(spf[n])
        out.append(p)
        while n % p == 0:
            n //= p
    return out


def _distinct_primes_trial(n: int) -> list[int]:
    out = []
    if n % 2 == 0:
        out.append(2)
        while n % 2 == 0:
            n //= 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Roots of the defining polynomial mod p

def _poly_mod(poly: tuple[int, ...], p: int) -> list[int]:
    out = [c % p for c in poly]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                prod[i + j] = (prod[i + j] + ca * cb) % p
    # reduce by monic f
    df = len(f) - 1
    for i in range(len(prod) - 1, df - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(df):
                prod[i - df + j] = (prod[i - df + j] - c * f[j]) % p
    while len(prod) > 1 and prod[-1] == 0:
        prod.pop()
    return prod or [0]


def _poly_pow_x(e: int, f: list[int], p: int) -> list[int]:
    """x**e mod (f, p), f monic of degree >= 2."""
    result = [1]
    base = [0, 1]
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b) and not (len(a) == 1 and a[0] == 0):
        c = a[-1] * inv % p
        off = len(a) - len(b)
        for j in range(len(b)):
            a[off + j] = (a[off + j] - c * b[j]) % p
        a.pop()
        while len(a) > 1 and a[-1] == 0:
            a.pop()
    return a or [0]


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while not (len(b) == 1 and b[0] == 0):
        a, b = b, _poly_rem(a, b, p)
    if len(a) > 1 or a[0]:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _split_roots(g: list[int], p: int, rng: random.Random, out: list[int]) -> None:
    """Collect the roots of a squarefree product of linear factors."""
    deg = len(g) - 1
    if deg == 0:
        return
    if deg == 1:
        out.append(-g[0] * pow(g[1], p - 2, p) % p)
        return
    while True:
        t = rng.randrange(p)
        # gcd((x+t)^((p-1)/2) - 1, g)
        shifted = _poly_pow_shifted(t, (p - 1) // 2, g, p)
        shifted[0] = (shifted[0] - 1) % p
        h = _poly_gcd(shifted, g, p)
        if 0 < len(h) - 1 < deg:
            break
    quot = _poly_quotient(g, h, p)
    _split_roots(h, p, rng, out)
    _split_roots(quot, p, rng, out)


def _poly_pow_shifted(t: int, e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = [t % p, 1]
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _poly_quotient(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    q = [0] * (len(a) - len(b) + 1)
    inv = pow(b[-1], p - 2, p)
    for i in range(len(a) - 1, len(b) - 2, -1):
        c = a[i] * inv % p
        q[i - len(b) + 1] = c
        if c:
            for j in range(len(b)):
                a[i - len(b) + 1 + j] = (a[i - len(b) + 1 + j] - c * b[j]) % p
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    return q


def roots_mod_p(poly: tuple[int, ...], p: int, seed: int = _SPLIT_SEED) -> list[int]:
    """Distinct roots of a monic integer polynomial mod p.

    Computes x^p mod (f, p), takes a gcd with f to isolate the linear part,
    then splits it with a seeded randomized equal-degree strategy.
    """
    f = _poly_mod(poly, p)
    deg = len(f) - 1
    if deg == 1:
        return [(-f[0]) % p]
    if p < 2 * deg + 4:
        return [a for a in range(p) if _poly_eval_int(poly, a, p) == 0]
    xp = _poly_pow_x(p, f, p)
    # x^p - x
    if len(xp) < 2:
        xp = xp + [0] * (2 - len(xp))
    xp[1] = (xp[1] - 1) % p
    while len(xp) > 1 and xp[-1] == 0:
        xp.pop()
    g = _poly_gcd(xp, f, p)
    if len(g) == 1:
        return []
    out: list[int] = []
    rng = random.Random(seed ^ (p * 0x9E3779B97F4A7C15))
    _split_roots(g, p, rng, out)
    out.sort()
    return out


def _poly_eval_int(poly: tuple[int, ...], a: int, p: int) -> int:
    acc = 0
    for c in reversed(poly):
        acc = (acc * a + c) % p
    return acc


# ---------------------------------------------------------------------------
# Group reduction data

def _integer_generators(group: GroupSpec) -> list[tuple[tuple[int, ...], int]]:
    """Each generator as (integer coefficient vector, common denominator)."""
    out = []
    for vec in group.coeffs:
        den = 1
        for c in vec:
            den = den * c.denominator // math.gcd(den, c.denominator)
        out.append((tuple(int(c * den) for c in vec), den))
    return out


def reduce_generator(coeffs, den: int, p: int, root: int) -> int:
    """Evaluate a generator at a root of f mod p, in the residue field."""
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * root + c) % p
    if den % p == 0 or acc == 0:
        raise ArithmeticError(f"generator reduces badly at p={p}; bad primes must cover this")
    if den != 1:
        acc = acc * pow(den, p - 2, p) % p
    return acc


def degree_one_primes(field: FieldSpec, group: GroupSpec, x: int):
    """Yield the degree-1 primes of the field up to x, skipping bad primes.

    Each root of the defining polynomial mod p is a separate prime.
    """
    bad = compute_bad_primes(field, group)
    poly = field.defining_poly
    linear = field.degree == 1
    for chunk in _prime_segments(x):
        for p_np in chunk:
            p = int(p_np)
            if p in bad:
                continue
            roots = [(-poly[0]) % p] if linear else roots_mod_p(poly, p)
            for root in roots:
                yield Degree1Prime(p, root)


def _element_order(g: int, p: int, prime_factors: list[int]) -> int:
    o = p - 1
    for q in prime_factors:
        while o % q == 0 and pow(g, o // q, p) == 1:
            o //= q
    return o


def ord_index(values: list[int], p: int, prime_factors: list[int]) -> OrdIndex:
    """Order and index of the subgroup generated by the values mod p."""
    o = 1
    for g in values:
        og = _element_order(g, p, prime_factors)
        o = o * og // math.gcd(o, og)
    ind = (p - 1) // o
    assert o * ind == p - 1
    return OrdIndex(o, ind)


# ---------------------------------------------------------------------------
# Bad primes

def _sylvester_resultant(a: list[int], b: list[int]) -> int:
    """Resultant of two integer polynomials (constant-first coefficients)."""
    da, db = len(a) - 1, len(b) - 1
    if da < 0 or db < 0:
        return 0
    if db == 0:
        return b[0] ** da
    if da == 0:
        return a[0] ** db
    n = da + db
    mat = [[Fraction(0)] * n for _ in range(n)]
    for i in range(db):
        for j, c in enumerate(reversed(a)):
            mat[i][i + j] = Fraction(c)
    for i in range(da):
        for j, c in enumerate(reversed(b)):
            mat[db + i][i + j] = Fraction(c)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for r in range(col + 1, n):
            if mat[r][col]:
                factor = mat[r][col] * inv
                mat[r] = [x - factor * y for x, y in zip(mat[r], mat[col])]
    assert det.denominator == 1
    return int(det)


def field_discriminant(field: FieldSpec) -> int:
    """disc of the defining polynomial (a multiple of the field discriminant)."""
    f = list(field.defining_poly)
    if len(f) <= 2:
        return 1
    df = [i * c for i, c in enumerate(f)][1:]
    res = _sylvester_resultant(f, df)
    n = len(f) - 2
    return res if n * (n + 1) // 2 % 2 == 0 else -res


def compute_bad_primes(field: FieldSpec, group: GroupSpec) -> frozenset[int]:
    """Conservative superset of the primes where reduction is undefined."""
    from .arith import factorize

    bad: set[int] = set(field.bad_primes)
    disc = field_discriminant(field)
    if disc not in (0, 1, -1):
        bad.update(factorize(disc).primes())
    for coeffs, den in _integer_generators(group):
        if den != 1:
            bad.update(factorize(den).primes())
        norm = _sylvester_resultant(list(field.defining_poly), list(coeffs))
        if norm == 0:
            raise ValueError("generator is zero in the field")
        if norm not in (1, -1):
            bad.update(factorize(norm).primes())
    return frozenset(bad)


# ---------------------------------------------------------------------------
# Event counting

def _needs_order(events) -> bool:
    return any(not isinstance(ev, KummerSplit) for ev in events)


def _vq(n: int, q: int) -> int:
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


def _match(ev: Event, p: int, ord_ind: OrdIndex | None, values: list[int], fac: list[int] | None) -> bool:
    if isinstance(ev, Divisible):
        return ord_ind.ord % ev.m == 0
    if isinstance(ev, KFree):
        o = ord_ind.ord
        return all(o % q ** ev.k for q in fac if o % q == 0)
    if isinstance(ev, ValuationProfile):
        return all(_vq(ord_ind.ord, q) == _vq(ev.m, q) for q in _distinct_primes_trial(ev.k))
    if isinstance(ev, Coprime):
        return math.gcd(ord_ind.ord, ev.k) == 1
    # KummerSplit
    if (p - 1) % ev.m:
        return False
    e = math.gcd(ev.n, p - 1)
    return all(pow(g, (p - 1) // e, p) == 1 for g in values)


def _count_range(field, group, events, lo, hi, x, use_spf, spf=None) -> tuple[list[int], int, int]:
    poly = field.defining_poly
    bad = compute_bad_primes(field, group)
    gens = _integer_generators(group)
    need_ord = _needs_order(events)
    matched = [0] * len(events)
    total = 0
    excluded = 0
    linear = field.degree == 1
    for chunk in _prime_segments(hi, start=lo):
        for p_np in chunk:
            p = int(p_np)
            if p in bad:
                excluded += 1
                continue
            roots = [(-poly[0]) % p] if linear else roots_mod_p(poly, p)
            if not roots:
                continue
            fac = None
            if need_ord:
                fac = _distinct_primes_spf(p - 1, spf) if use_spf else _distinct_primes_trial(p - 1)
            for root in roots:
                total += 1
                values = [reduce_generator(c, d, p, root) for c, d in gens]
                oi = ord_index(values, p, fac) if need_ord else None
                for i, ev in enumerate(events):
                    if _match(ev, p, oi, values, fac):
                        matched[i] += 1
    return matched, total, excluded


_SPF_LIMIT = 1 << 25


def count_events(
    field: FieldSpec,
    group: GroupSpec,
    events: list[Event],
    x: int,
    workers: int = 1,
) -> list[EmpiricalCount]:
    """Count all events in one pass over the degree-1 primes up to x."""
    if x < 2:
        raise ValueError("x too small")
    for ev in events:
        _validate_event(ev)
    if workers > 1:
        return _count_parallel(field, group, events, x, workers)
    use_spf = x <= _SPF_LIMIT
    spf = _spf_array(x) if use_spf and _needs_order(events) else None
    matched, total, excluded = _count_range(field, group, events, 2, x, x, use_spf, spf)
    return [EmpiricalCount(x, m, total, excluded) for m in matched]


def count_event(field, group, event: Event, x: int, workers: int = 1) -> EmpiricalCount:
    return count_events(field, group, [event], x, workers=workers)[0]


def _worker(args):
    field, group, events, lo, hi, x = args
    return _count_range(field, group, events, lo, hi, x, False, None)


def _count_parallel(field, group, events, x, workers) -> list[EmpiricalCount]:
    import multiprocessing as mp

    bounds = [2 + (x - 1) * i // workers for i in range(workers + 1)]
    jobs = [(field, group, events, bounds[i], bounds[i + 1] - 1, x) for i in range(workers)]
    jobs = [(f, g, e, lo, min(hi, x), x) for f, g, e, lo, hi, x in jobs]
    with mp.Pool(workers) as pool:
        parts = pool.map(_worker, jobs)
    matched = [sum(part[0][i] for part in parts) for i in range(len(events))]
    total = sum(part[1] for part in parts)
    excluded = sum(part[2] for part in parts)
    return [EmpiricalCount(x, m, total, excluded) for m in matched]
