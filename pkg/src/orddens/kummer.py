"""Degree tables for the division fields K(zeta_m, G^{1/n}).

A `DegreeTable` stores [K_{g,h} : K] for all g | z, h | g, where z is an
entanglement modulus for (K, G): beyond z, degrees grow generically, and
`lift_degree` extends the finite table to every pair (m, n) with n | m via

    [K_{m,n} : K] = phi(m) n^r / (phi((m,z)) (n,z)^r) * [K_{(m,z),(n,z)} : K].

Tables are computed natively over Q, and shipped as data files for the other
built-in fields.  No table is trusted as-is: `validate_table` enforces the
structural invariants, and the empirical splitting check compares each degree
against observed Frobenius statistics.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .abelian import (
    ABELIAN_FIELDS,
    RadicalGen,
    choose_entanglement_modulus,
    kummer_degree,
    multiplicatively_independent,
)
from .arith import divisors, euler_phi


class TableInvariantError(ValueError):
    """A degree table violates a structural invariant."""


# ---------------------------------------------------------------------------
# Fields

@dataclass(frozen=True)
class FieldSpec:
    """A monogenic number field Q[a]/(f), with f monic over Z (f = x for Q)."""

    label: str
    defining_poly: tuple[int, ...]  # coefficients, constant term first, monic
    degree: int
    bad_primes: frozenset[int]

    def __post_init__(self) -> None:
        if self.defining_poly[-1] != 1:
            raise ValueError("defining polynomial must be monic")
        if self.degree != len(self.defining_poly) - 1:
            raise ValueError("degree must match the defining polynomial")
        if self.degree <= 4 and not _is_irreducible(self.defining_poly):
            raise ValueError(f"{self.label}: defining polynomial is reducible")


def _poly_eval_fraction(poly: tuple[int, ...], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _is_irreducible(poly: tuple[int, ...]) -> bool:
    """Rational-root and quadratic-factor search; complete for degree <= 4."""
    deg = len(poly) - 1
    if deg == 1:
        return True
    a0 = poly[0]
    if a0 == 0:
        return False
    for p in divisors(abs(a0)):
        for root in (Fraction(p), Fraction(-p)):
            if _poly_eval_fraction(poly, root) == 0:
                return False
    if deg < 4:
        return True
    # monic quartic: search integer factorizations (x^2+bx+c)(x^2+b'x+c')
    _, a1, a2, a3, _ = poly
    for c in divisors(abs(a0)):
        for c1 in (c, -c):
            if a0 % c1 != 0:
                continue
            c2 = a0 // c1
            # b + b' = a3, b*b' = a2 - c1 - c2, b*c2 + b'*c1 = a1
            disc = a3 * a3 - 4 * (a2 - c1 - c2)
            if disc < 0:
                continue
            s = math.isqrt(disc)
            if s * s != disc:
                continue
            for b in {(a3 + s) // 2, (a3 - s) // 2}:
                b2 = a3 - b
                if b + b2 == a3 and b * b2 == a2 - c1 - c2 and b * c2 + b2 * c1 == a1:
                    return False
    return True


BUILTIN_FIELDS: dict[str, FieldSpec] = {
    "Q": FieldSpec("Q", (0, 1), 1, frozenset()),
    "Qzeta3": FieldSpec("Qzeta3", (1, 1, 1), 2, frozenset({3})),
    "Qzeta4": FieldSpec("Qzeta4", (1, 0, 1), 2, frozenset({2})),
    "Qzeta12": FieldSpec("Qzeta12", (1, 0, -1, 0, 1), 4, frozenset({2, 3})),
    "Qsqrtm5": FieldSpec("Qsqrtm5", (5, 0, 1), 2, frozenset({2, 5})),
}

# For the cyclotomic built-ins the generator `a` is a root of unity.
_ZETA_ORDER = {"Qzeta3": 3, "Qzeta4": 4, "Qzeta12": 12}


# ---------------------------------------------------------------------------
# Groups

_TERM_RE = re.compile(r"^([+-]?\d+(?:/\d+)?|[+-])?\s*(a(?:\^(\d+))?)?$")


def parse_element(text: str, degree: int) -> tuple[Fraction, ...]:
    """Parse an element written as a polynomial in `a`, e.g. '2', '2a', '1+a^2'."""
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty element")
    coeffs = [Fraction(0)] * degree
    for chunk in re.findall(r"[+-]?[^+-]+", text):
        m = _TERM_RE.match(chunk)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"cannot parse element term {chunk!r}")
        coef = Fraction(m.group(1)) if m.group(1) not in (None, "+", "-") else (
            Fraction(-1) if m.group(1) == "-" else Fraction(1)
        )
        power = 0
        if m.group(2):
            power = int(m.group(3)) if m.group(3) else 1
        if power >= degree:
            raise ValueError(f"element degree {power} exceeds field degree {degree}")
        coeffs[power] += coef
    if all(c == 0 for c in coeffs):
        raise ValueError("generator must be nonzero")
    return tuple(coeffs)


def _root_of_unity_order(field: FieldSpec, vec: tuple[Fraction, ...]) -> int | None:
    """Order of the element when it is a root of unity, else None."""
    nonzero = [(i, c) for i, c in enumerate(vec) if c != 0]
    if len(nonzero) != 1:
        return None
    power, coef = nonzero[0]
    if abs(coef) != 1:
        return None
    if power == 0:
        return 1 if coef == 1 else 2
    w = _ZETA_ORDER.get(field.label)
    if w is None:
        return None  # the field generator is not a root of unity
    # (-1)^s * zeta_w^k = zeta_{2w}^(2k + s*w)
    j = 2 * power + (w if coef == -1 else 0)
    return 2 * w // math.gcd(2 * w, j)


@dataclass(frozen=True)
class GroupSpec:
    """A finitely generated subgroup of the field's multiplicative group.

    `generators` is the torsion-free part (rank = number of generators);
    torsion_order t > 1 declares an extra root of unity zeta_t in the group.
    """

    field: FieldSpec
    gen_strings: tuple[str, ...]
    coeffs: tuple[tuple[Fraction, ...], ...]
    torsion_order: int = 1

    @property
    def rank(self) -> int:
        return len(self.gen_strings)

    @staticmethod
    def make(field: FieldSpec, gens, torsion_order: int = 1) -> "GroupSpec":
        if isinstance(gens, str):
            gens = [g for g in gens.split(",") if g]
        gen_strings = tuple(str(g) for g in gens)
        if not gen_strings:
            raise ValueError("group needs at least one generator")
        if torsion_order < 1:
            raise ValueError("torsion order must be >= 1")
        coeffs = tuple(parse_element(s, field.degree) for s in gen_strings)
        # a generator that is itself a root of unity carries torsion, not rank
        kept_strings, kept_coeffs = [], []
        for s, vec in zip(gen_strings, coeffs):
            order = _root_of_unity_order(field, vec)
            if order is None:
                kept_strings.append(s)
                kept_coeffs.append(vec)
            else:
                torsion_order = math.lcm(torsion_order, order)
        if not kept_strings:
            raise ValueError("group needs at least one generator of infinite order")
        gen_strings, coeffs = tuple(kept_strings), tuple(kept_coeffs)
        group = GroupSpec(field, gen_strings, coeffs, torsion_order)
        if field.label == "Q":
            rgens = group.radical_gens()
            if not multiplicatively_independent(rgens):
                raise ValueError("generators are multiplicatively dependent")
        return group

    def radical_gens(self) -> tuple[RadicalGen, ...]:
        """Generators as rational-times-root-of-unity, for exact degree work.

        Only available when every generator is a monomial c*a^k over a
        cyclotomic built-in (or plain rational anywhere).
        """
        out = []
        w = _ZETA_ORDER.get(self.field.label, 1)
        for s, vec in zip(self.gen_strings, self.coeffs):
            nonzero = [(i, c) for i, c in enumerate(vec) if c != 0]
            if len(nonzero) != 1:
                raise ValueError(f"generator {s!r} is not rational * root of unity")
            power, coef = nonzero[0]
            if power == 0:
                out.append(RadicalGen(coef.numerator, coef.denominator))
                continue
            if w == 1:
                raise ValueError(
                    f"generator {s!r} involves the field generator of {self.field.label}; "
                    "exact degrees need a bundled table"
                )
            out.append(RadicalGen(coef.numerator, coef.denominator, power % w, w))
        return tuple(out)


# ---------------------------------------------------------------------------
# Degree tables

@dataclass
class DegreeTable:
    """Finite table of degrees [K_{g,h} : K] on g | z, h | g, plus its modulus."""

    field_label: str
    gen_strings: tuple[str, ...]
    rank: int
    torsion: int
    z: int
    entries: dict[tuple[int, int], int]
    provenance: str = "file"

    def entry(self, g: int, h: int) -> int:
        return self.entries[(g, h)]

    @property
    def degree_slack(self) -> Fraction:
        """max over the table of phi(g) h^r / [K_{g,h}:K]: certified lower
        bounds [K_{m,n}:K] >= phi(m) n^r / degree_slack for every (m, n)."""
        best = Fraction(1)
        for (g, h), d in self.entries.items():
            best = max(best, Fraction(euler_phi(g) * h ** self.rank, d))
        return best


def lift_degree(table: DegreeTable, m: int, n: int) -> int:
    """[K_{m,n} : K] for any n | m, from the finite table."""
    if m < 1 or n < 1 or m % n:
        raise ValueError("lift_degree requires n | m")
    g = math.gcd(m, table.z)
    h = math.gcd(n, table.z)
    r = table.rank
    num = euler_phi(m) * n ** r * table.entries[(g, h)]
    den = euler_phi(g) * h ** r
    assert num % den == 0, "lift quotient must be integral"
    return num // den


def validate_table(table: DegreeTable) -> None:
    """Enforce the structural invariants; raises TableInvariantError."""
    z, r = table.z, table.rank
    want = {(g, h) for g in divisors(z) for h in divisors(g)}
    have = set(table.entries)
    if want != have:
        missing = sorted(want - have)[:3]
        extra = sorted(have - want)[:3]
        raise TableInvariantError(f"entry coverage wrong (missing {missing}, extra {extra})")
    if table.entries[(1, 1)] != 1:
        raise TableInvariantError("entry (1,1) must be 1")
    for (g, h), d in table.entries.items():
        if d < 1 or euler_phi(g) * h ** r % d:
            raise TableInvariantError(f"entry ({g},{h}) = {d} does not divide phi(g)*h^r")
    for (g, h), d in table.entries.items():
        for g2 in divisors(g):
            for h2 in divisors(math.gcd(h, g2)):
                if d % table.entries[(g2, h2)]:
                    raise TableInvariantError(
                        f"tower divisibility fails: ({g2},{h2}) does not divide ({g},{h})"
                    )
    for (g, h), d in table.entries.items():
        if lift_degree(table, g, h) != d:
            raise TableInvariantError(f"lift self-consistency fails at ({g},{h})")


def build_degree_table(
    field_label: str,
    gens,
    torsion: int = 1,
    z: int | None = None,
    provenance: str = "native-Q",
) -> DegreeTable:
    """Compute a table directly with the abelian engine (built-in fields only)."""
    ab = ABELIAN_FIELDS[field_label]
    group = GroupSpec.make(BUILTIN_FIELDS[field_label], gens, torsion)
    rgens = group.radical_gens()
    if z is None:
        z = choose_entanglement_modulus(ab, rgens)
    entries = {
        (g, h): kummer_degree(ab, rgens, g, h)
        for g in divisors(z)
        for h in divisors(g)
    }
    table = DegreeTable(field_label, group.gen_strings, group.rank, torsion, z, entries, provenance)
    validate_table(table)
    return table


def compute_degree_table_Q(group: GroupSpec) -> DegreeTable:
    """Native degree table over Q for a group of rationals."""
    if group.field.label != "Q":
        raise ValueError("native computation is implemented over Q only")
    return build_degree_table("Q", list(group.gen_strings), group.torsion_order)


# ---------------------------------------------------------------------------
# Table files

def save_degree_table(table: DegreeTable, path: str | Path) -> None:
    Path(path).write_text(serialize_table(table), encoding="utf-8")


def serialize_table(table: DegreeTable) -> str:
    lines = [
        f"field {table.field_label}",
        f"generators {','.join(table.gen_strings)}",
        f"rank {table.rank}",
        f"torsion {table.torsion}",
        f"z {table.z}",
    ]
    for g in divisors(table.z):
        for h in divisors(g):
            lines.append(f"deg {g} {h} {table.entries[(g, h)]}")
    return "\n".join(lines) + "\n"


def parse_table(text: str, provenance: str = "file") -> DegreeTable:
    header: dict[str, str] = {}
    entries: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "deg":
            if len(parts) != 4:
                raise ValueError(f"line {lineno}: malformed deg line {raw!r}")
            g, h, d = int(parts[1]), int(parts[2]), int(parts[3])
            if (g, h) in entries:
                raise ValueError(f"line {lineno}: duplicate entry ({g},{h})")
            entries[(g, h)] = d
        elif parts[0] in ("field", "generators", "rank", "torsion", "z"):
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: malformed header line {raw!r}")
            header[parts[0]] = parts[1]
        else:
            raise ValueError(f"line {lineno}: unknown directive {parts[0]!r}")
    for key in ("field", "generators", "rank", "torsion", "z"):
        if key not in header:
            raise ValueError(f"missing header line {key!r}")
    table = DegreeTable(
        field_label=header["field"],
        gen_strings=tuple(header["generators"].split(",")),
        rank=int(header["rank"]),
        torsion=int(header["torsion"]),
        z=int(header["z"]),
        entries=entries,
        provenance=provenance,
    )
    validate_table(table)
    return table


def load_degree_table(path: str | Path) -> DegreeTable:
    return parse_table(Path(path).read_text(encoding="utf-8"))


def _bundle_name(field_label: str, gen_strings: tuple[str, ...]) -> str:
    slug = "_".join(s.replace("/", "over") for s in gen_strings)
    return f"{field_label}__{slug}.degtab"


def bundled_table(field_label: str, gens) -> DegreeTable:
    """Load a degree table shipped with the package."""
    if isinstance(gens, str):
        gens = tuple(g for g in gens.split(",") if g)
    name = _bundle_name(field_label, tuple(gens))
    ref = resources.files("orddens.data").joinpath(name)
    if not ref.is_file():
        raise FileNotFoundError(
            f"no bundled degree table {name!r}; supply one with save_degree_table"
        )
    return parse_table(ref.read_text(encoding="utf-8"))


def table_for(group: GroupSpec) -> DegreeTable:
    """The degree table for a group: native over Q, bundled elsewhere."""
    if group.field.label == "Q":
        return compute_degree_table_Q(group)
    table = bundled_table(group.field.label, group.gen_strings)
    if table.rank != group.rank or table.torsion != group.torsion_order:
        raise ValueError("bundled table does not match the requested group")
    return table


def empirical_degree_check(
    field: FieldSpec,
    group: GroupSpec,
    table: DegreeTable,
    m: int,
    n: int,
    x: int,
    workers: int = 1,
):
    """Frequency of degree-1 primes splitting completely in K_{m,n} up to x.

    The observed ratio estimates 1 / lift_degree(table, m, n).
    """
    from .empirical import KummerSplit, count_event

    if m % n:
        raise ValueError("need n | m")
    return count_event(field, group, KummerSplit(m, n), x, workers=workers)
