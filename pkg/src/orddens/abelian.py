"""Exact cyclotomic-Kummer degree computations over abelian base fields.

Internal engine. For an abelian field K (one of the built-ins) and a finitely
generated group G of elements of the form q * zeta (q rational, zeta a root
of unity in K), this module computes the exact degree

    [K(zeta_m, G^{1/n}) : K]        (n | m)

The method: every element x of an abelian field with x^t rational factors
uniquely as  x = zeta * s * sqrt(d)  with zeta a root of unity, s a positive
rational and d > 0 squarefree (the real positive root).  Such x exist inside
L = K(zeta_m) exactly when a single exponent congruence per Galois generator
is solvable, so the group of radicals of L is finitely generated with an
explicit basis.  Kummer degrees are then orders of images in B/B^(l^e) for
the radical group B, computed by linear algebra over Z/l^E.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce

from .arith import euler_phi, factorize, valuation


# ---------------------------------------------------------------------------
# Abelian field data: K = Q(zeta_f), or the quadratic field cut out by a
# Kronecker character of discriminant quad_disc inside Q(zeta_f).

@dataclass(frozen=True)
class AbelianData:
    conductor: int
    degree: int
    quad_disc: int | None = None


ABELIAN_FIELDS: dict[str, AbelianData] = {
    "Q": AbelianData(1, 1),
    "Qzeta3": AbelianData(3, 2),
    "Qzeta4": AbelianData(4, 2),
    "Qzeta12": AbelianData(12, 4),
    "Qsqrtm5": AbelianData(20, 2, quad_disc=-20),
}


@dataclass(frozen=True)
class RadicalGen:
    """A generator q * zeta_zden^znum with q a nonzero rational."""

    q_num: int
    q_den: int
    znum: int = 0
    zden: int = 1

    @staticmethod
    def from_rational(q: Fraction | int) -> "RadicalGen":
        q = Fraction(q)
        if q == 0:
            raise ValueError("generator must be nonzero")
        return RadicalGen(q.numerator, q.denominator)

    def rational(self) -> Fraction:
        return Fraction(self.q_num, self.q_den)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n)."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    # Jacobi symbol on the odd part.
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


# ---------------------------------------------------------------------------
# Unit group machinery mod M.

@lru_cache(maxsize=None)
def _primitive_root(q: int, j: int) -> int:
    """Primitive root mod q**j for an odd prime q."""
    phi_q = q - 1
    fac = [p for p, _ in factorize(phi_q).factors]
    g = 2
    while True:
        if all(pow(g, phi_q // p, q) != 1 for p in fac):
            break
        g += 1
    if j == 1:
        return g
    # Lift: g works mod q**j unless g^(q-1) == 1 mod q**2.
    if pow(g, q - 1, q * q) == 1:
        g += q
    return g


def _crt_lift(residue: int, qj: int, modulus: int) -> int:
    """The element of (Z/modulus)^* that is `residue` mod qj and 1 elsewhere."""
    other = modulus // qj
    g, inv, _ = _xgcd(other, qj)
    assert g == 1
    # x = 1 + other*t with x == residue (mod qj)
    t = (residue - 1) * inv % qj
    return (1 + other * t) % modulus


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    return old_r, old_s, old_t


@lru_cache(maxsize=None)
def _unit_subgroup_gens(modulus: int, c: int) -> tuple[int, ...]:
    """Generators of {a in (Z/modulus)^* : a == 1 (mod c)}, for c | modulus."""
    assert modulus % c == 0
    gens: list[int] = []
    for q, j in factorize(modulus).factors:
        qj = q ** j
        cq = min(valuation(c, q) if c % q == 0 else 0, j)
        local: list[int] = []
        if q == 2:
            if j == 1:
                pass
            elif j == 2:
                if cq <= 1:
                    local = [3]
            else:
                if cq <= 1:
                    local = [qj - 1, 5]
                else:
                    local = [pow(5, 2 ** (cq - 2), qj)]
        else:
            g = _primitive_root(q, j)
            local = [pow(g, euler_phi(q ** cq), qj)]
        for x in local:
            if x % qj != 1:
                gens.append(_crt_lift(x, qj, modulus))
    return tuple(g for g in gens if g != 1)


def _character_kernel_gens(gens: tuple[int, ...], disc: int, modulus: int) -> tuple[int, ...]:
    """Generators of the kernel of the Kronecker character (disc/.) on <gens>."""
    bad = [g for g in gens if kronecker(disc, g) == -1]
    good = [g for g in gens if kronecker(disc, g) == 1]
    if not bad:
        return tuple(good)
    g0 = bad[0]
    out = good + [g0 * g % modulus for g in bad[1:]] + [g0 * g0 % modulus]
    return tuple(g for g in out if g != 1)


def _hgens(ab: AbelianData, m: int, modulus: int) -> tuple[int, ...]:
    """Generators of Gal(Q(zeta_modulus) / K(zeta_m)) inside (Z/modulus)^*."""
    if ab.quad_disc is None:
        c = math.lcm(ab.conductor, m)
        return _unit_subgroup_gens(modulus, math.gcd(c, modulus))
    base = _unit_subgroup_gens(modulus, math.gcd(m, modulus))
    return _character_kernel_gens(base, ab.quad_disc, modulus)


@dataclass(frozen=True)
class Layer:
    """Invariants of L = K(zeta_m)."""

    m: int
    N: int
    deg_over_Q: int
    W: int


@lru_cache(maxsize=None)
def _layer(ab: AbelianData, m: int) -> Layer:
    N = math.lcm(2, ab.conductor, m)
    if ab.quad_disc is None:
        deg = euler_phi(math.lcm(ab.conductor, m))
    else:
        base = _unit_subgroup_gens(N, m)
        nontrivial = any(kronecker(ab.quad_disc, g) == -1 for g in base)
        deg = euler_phi(m) * (2 if nontrivial else 1)
    hg = _hgens(ab, m, N)
    W = 1
    for q, j in factorize(N).factors:
        w = j
        for a in hg:
            w = min(w, _val_cap(a - 1, q, j))
        W *= q ** w
    return Layer(m, N, deg, W)


def _val_cap(x: int, q: int, cap: int) -> int:
    if x % q ** cap == 0:
        return cap
    v = 0
    while x % q == 0:
        x //= q
        v += 1
    return v


# ---------------------------------------------------------------------------
# Arithmetic progressions mod M (solution sets of b*(a-1) == c).

def _solve_linear(a: int, c: int, modulus: int) -> tuple[int, int] | None:
    """Solutions b of b*a == c (mod modulus) as a progression (base, step)."""
    g = math.gcd(a, modulus)
    if c % g:
        return None
    mm = modulus // g
    _, inv, _ = _xgcd((a // g) % mm, mm)
    return (c // g) * inv % mm, mm


def _intersect(p1: tuple[int, int], p2: tuple[int, int], modulus: int) -> tuple[int, int] | None:
    b1, t1 = p1
    b2, t2 = p2
    g = math.gcd(t1, t2)
    if (b2 - b1) % g:
        return None
    lcm = math.lcm(t1, t2)
    _, inv, _ = _xgcd(t1 // g, t2 // g)
    k = (b2 - b1) // g * inv % (t2 // g)
    return (b1 + t1 * k) % lcm, min(lcm, modulus)


# ---------------------------------------------------------------------------
# Subgroup orders in products of cyclic l-groups.

def _vl(x: int, l: int) -> int:
    v = 0
    while x % l == 0:
        x //= l
        v += 1
    return v


def _subgroup_order(vectors: list[tuple[int, ...]], moduli: list[int], l: int) -> int:
    """Order of the subgroup of prod Z/moduli[j] generated by the vectors.

    All moduli are powers of l.  Uses elimination with a globally minimal
    valuation pivot, which keeps the pivot-product order formula exact.
    """
    if not vectors:
        return 1
    E = max(_vl(mj, l) for mj in moduli)
    big = l ** E
    rows = []
    for vec in vectors:
        row = [x % mj * (big // mj) % big for x, mj in zip(vec, moduli)]
        if any(row):
            rows.append(row)
    order = 1
    ncols = len(moduli)
    while rows:
        piv_i = piv_j = -1
        piv_v = E
        for i, row in enumerate(rows):
            for j in range(ncols):
                if row[j]:
                    v = _vl(row[j], l)
                    if v < piv_v:
                        piv_v, piv_i, piv_j = v, i, j
        if piv_i < 0:
            break
        piv = rows.pop(piv_i)
        order *= l ** (E - piv_v)
        unit = piv[piv_j] // l ** piv_v
        _, unit_inv, _ = _xgcd(unit % big, big)
        for row in rows:
            if row[piv_j]:
                k = (row[piv_j] // l ** piv_v) * unit_inv % big
                for j in range(ncols):
                    row[j] = (row[j] - k * piv[j]) % big
        rows = [r for r in rows if any(r)]
    return order


# ---------------------------------------------------------------------------
# The radical group B(L) and Kummer degree parts.

def _support(gens: tuple[RadicalGen, ...]) -> tuple[int, ...]:
    primes: set[int] = set()
    for g in gens:
        primes.update(factorize(g.q_num).primes())
        primes.update(factorize(g.q_den).primes())
    return tuple(sorted(primes))


def _squarefree_subsets(primes: tuple[int, ...]) -> list[int]:
    out = [1]
    for p in primes:
        out += [d * p for d in out]
    return [d for d in out if d > 1]


@lru_cache(maxsize=None)
def _radical_basis(ab: AbelianData, gens: tuple[RadicalGen, ...], m: int, l: int, e: int):
    """Basis data of the radical group of L = K(zeta_m), at working level M.

    Returns (M, W, basis) where basis rows are (pivot, wvec, b): wvec spans
    the doubled-exponent lattice over the support primes and b is the root
    of unity exponent (mod M) carried by that basis element.
    """
    lay = _layer(ab, m)
    P = _support(gens)
    rad_p = reduce(lambda a, b: a * b, P, 1)
    M = math.lcm(lay.N, 8, 4 * rad_p) * l ** (e + 1)
    hg = _hgens(ab, m, M)
    W = lay.W
    assert M % W == 0

    # Generators of B(L) in coordinates (b mod M, doubled exponent vector).
    items: list[tuple[int, list[int]]] = [(M // W, [0] * len(P))]
    for idx, p in enumerate(P):
        vec = [0] * len(P)
        vec[idx] = 2
        items.append((0, vec))
    half = M // 2
    for d in _squarefree_subsets(P):
        disc = d if d % 4 == 1 else 4 * d
        sol: tuple[int, int] | None = (0, 1)
        for a in hg:
            delta = half if kronecker(disc, a) == -1 else 0
            one = _solve_linear((a - 1) % M, (-delta) % M, M)
            if one is None:
                sol = None
                break
            sol = _intersect(sol, one, M)
            if sol is None:
                break
        if sol is not None:
            vec = [1 if d % p == 0 else 0 for p in P]
            items.append((sol[0], vec))

    # Hermite-style reduction of the exponent lattice, carrying b mod M.
    basis: list[tuple[int, list[int], int]] = []
    work = [[b, vec[:]] for b, vec in items]
    for col in range(len(P)):
        while True:
            live = [r for r in work if r[1][col]]
            if not live:
                break
            live.sort(key=lambda r: abs(r[1][col]))
            piv = live[0]
            if piv[1][col] < 0:
                piv[0] = (-piv[0]) % M
                piv[1] = [-x for x in piv[1]]
            if len(live) == 1:
                work = [r for r in work if r is not piv]
                basis.append((col, piv[1], piv[0]))
                break
            for r in live[1:]:
                k = r[1][col] // piv[1][col]
                r[0] = (r[0] - k * piv[0]) % M
                for j in range(len(P)):
                    r[1][j] -= k * piv[1][j]
    # Leftover rows are torsion: their root of unity part must lie in mu(L).
    for b, vec in work:
        assert not any(vec)
        assert b % (M // W) == 0, "torsion outside mu(L): W inconsistent"
    basis.sort(key=lambda t: t[0])
    return M, W, tuple((c, tuple(v), b) for c, v, b in basis)


def _gen_image(gen: RadicalGen, M: int, W: int, basis, P: tuple[int, ...]) -> tuple[int, list[int]]:
    """Coordinates (torsion exponent mod W, lattice coefficients) of a generator."""
    q = gen.rational()
    w = []
    for p in P:
        w.append(2 * (valuation(q.numerator if q > 0 else -q.numerator, p) - valuation(q.denominator, p)))
    assert M % gen.zden == 0
    b = gen.znum * (M // gen.zden) % M
    if q < 0:
        b = (b + M // 2) % M
    coeffs = []
    for col, vec, vb in basis:
        assert w[col] % vec[col] == 0, "generator exponent outside radical lattice"
        u = w[col] // vec[col]
        coeffs.append(u)
        for j in range(len(P)):
            w[j] -= u * vec[j]
        b = (b - u * vb) % M
    assert not any(w)
    assert b % (M // W) == 0, "generator phase outside mu(L)"
    return (b // (M // W)) % W, coeffs


def kummer_l_part(ab: AbelianData, gens: tuple[RadicalGen, ...], m: int, l: int, e: int) -> int:
    """The l-part of [L(G^{1/n}) : L] for l**e exactly dividing n."""
    M, W, basis = _radical_basis(ab, gens, m, l, e)
    P = _support(gens)
    w0 = min(e, _vl(W, l))
    moduli = [l ** w0] + [l ** e] * len(basis)
    vectors = []
    for gen in gens:
        gamma, coeffs = _gen_image(gen, M, W, basis, P)
        vectors.append((gamma,) + tuple(coeffs))
    return _subgroup_order(vectors, moduli, l)


def cyclotomic_degree(ab: AbelianData, m: int) -> int:
    """[K(zeta_m) : K]."""
    lay = _layer(ab, m)
    assert lay.deg_over_Q % ab.degree == 0
    return lay.deg_over_Q // ab.degree


def kummer_degree(ab: AbelianData, gens: tuple[RadicalGen, ...], m: int, n: int) -> int:
    """[K(zeta_m, G^{1/n}) : K] for n | m."""
    if m % n:
        raise ValueError("need n | m")
    deg = cyclotomic_degree(ab, m)
    for l, e in factorize(n).factors:
        deg *= kummer_l_part(ab, gens, m, l, e)
    return deg


# ---------------------------------------------------------------------------
# Exponent lattice: independence and the entanglement modulus heuristic.

def exponent_matrix(gens: tuple[RadicalGen, ...]) -> tuple[tuple[int, ...], list[list[int]]]:
    P = _support(gens)
    rows = []
    for g in gens:
        q = g.rational()
        rows.append([
            valuation(abs(q.numerator), p) - valuation(q.denominator, p) for p in P
        ])
    return P, rows


def rational_rank(rows: list[list[int]]) -> int:
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def invariant_factors(rows: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix (small sizes only)."""
    mat = [row[:] for row in rows]
    if not mat or not mat[0]:
        return []
    nr, nc = len(mat), len(mat[0])
    out = []
    top = 0
    while top < nr and top < nc:
        # find smallest nonzero entry in the remaining block
        best = None
        for i in range(top, nr):
            for j in range(top, nc):
                if mat[i][j] and (best is None or abs(mat[i][j]) < abs(mat[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        mat[top], mat[bi] = mat[bi], mat[top]
        for row in mat:
            row[top], row[bj] = row[bj], row[top]
        stable = False
        while not stable:
            stable = True
            for i in range(top + 1, nr):
                if mat[i][top]:
                    k = mat[i][top] // mat[top][top]
                    mat[i] = [a - k * b for a, b in zip(mat[i], mat[top])]
                    if mat[i][top]:
                        mat[top], mat[i] = mat[i], mat[top]
                        stable = False
            for j in range(top + 1, nc):
                if mat[top][j]:
                    k = mat[top][j] // mat[top][top]
                    for row in mat:
                        row[j] -= k * row[top]
                    if mat[top][j]:
                        for row in mat:
                            row[top], row[j] = row[j], row[top]
                        stable = False
        out.append(abs(mat[top][top]))
        top += 1
    # normalize divisibility chain
    for i in range(len(out)):
        for j in range(i + 1, len(out)):
            g = math.gcd(out[i], out[j])
            out[i], out[j] = g, out[i] * out[j] // g if g else 0
    return [x for x in out if x]


def multiplicatively_independent(gens: tuple[RadicalGen, ...]) -> bool:
    _, rows = exponent_matrix(gens)
    if not rows:
        return False
    return rational_rank(rows) == len(gens)


def choose_entanglement_modulus(ab: AbelianData, gens: tuple[RadicalGen, ...]) -> int:
    """A modulus z for which the finite degree table determines all degrees.

    Heuristic with safety margins; not claimed minimal.  Tables built from it
    are checked against directly computed degrees before use.
    """
    P, rows = exponent_matrix(gens)
    inv = invariant_factors(rows)
    f = ab.conductor
    phase_orders = [g.zden // math.gcd(g.znum, g.zden) if g.znum else 1 for g in gens]
    phase_orders += [2 for g in gens if g.rational() < 0]
    ls = {2} | set(P) | set(factorize(f).primes())
    z = 1
    for l in sorted(ls):
        dhat = max((_vl(s, l) for s in inv), default=0)
        phase = max((_vl(t, l) for t in phase_orders), default=0)
        if l == 2:
            zl = max(3, valuation(f, 2) if f % 2 == 0 else 0) + dhat + phase
        else:
            base = valuation(f, l) if f % l == 0 else 0
            zl = max(base, 1 if l in P else 0) + dhat + phase
        z *= l ** zl
    return z
