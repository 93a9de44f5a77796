"""The bundled reference grid of densities, and its regeneration.

Eight tables ship with the package: exact divisibility densities over the
five built-in fields, the universal constants A(k, r), k-free densities as
rational multiples of A(k, r), and valuation-profile densities.  Every cell
can be recomputed from scratch; `check_table` reports expected vs computed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .density import A_constant, beta_closed, gamma_closed, rho_closed
from .kummer import BUILTIN_FIELDS, GroupSpec, table_for

DIVISIBILITY_MODULI = (2, 3, 4, 6, 9, 12, 16, 27)
KFREE_RANGE = (2, 3, 4, 5)
VALUATION_COLUMNS = ((6, 1), (6, 2), (6, 3), (6, 4), (6, 6), (6, 9), (6, 12))

# Divisibility densities rho_m, one row per group, columns DIVISIBILITY_MODULI.
RHO_TABLES: dict[int, tuple[str, dict[str, str]]] = {
    1: ("Q", {
        "2": "17/24 3/8 5/12 17/64 1/8 5/32 1/24 1/24",
        "16": "1/12 3/8 1/24 1/32 1/8 1/64 1/96 1/24",
        "3": "2/3 3/8 1/3 5/16 1/8 1/16 1/12 1/24",
        "27": "2/3 1/8 1/3 5/48 1/24 1/48 1/12 1/72",
        "2,3": "195/224 6/13 27/56 333/728 2/13 3/14 5/56 2/39",
        "16,27": "75/112 5/13 75/224 235/728 5/39 95/1456 75/896 5/117",
        "2,27,25": "839/960 37/80 59/120 17723/38400 37/240 1073/4800 11/120 37/720",
    }),
    2: ("Qzeta3", {
        "2": "17/24 3/4 5/12 17/32 1/4 5/16 1/24 1/12",
        "16": "1/12 3/4 1/24 1/16 1/4 1/32 1/96 1/12",
        "3": "5/6 3/4 1/6 5/8 1/4 1/8 1/24 1/12",
        "27": "5/6 1/4 1/6 5/24 1/12 1/24 1/24 1/36",
        "2,3": "111/112 12/13 13/28 333/364 4/13 3/7 3/56 4/39",
        "16,27": "47/56 10/13 19/112 235/364 10/39 95/728 19/448 10/117",
        "2,27,25": "479/480 37/40 29/60 17723/19200 37/120 1073/2400 7/120 37/360",
    }),
    3: ("Qzeta12", {
        "2": "11/12 3/4 5/6 11/16 1/4 5/8 1/12 1/12",
        "16": "1/6 3/4 1/12 1/8 1/4 1/16 1/48 1/12",
        "3": "2/3 3/4 1/3 1/2 1/4 1/4 1/12 1/12",
        "27": "2/3 1/4 1/3 1/6 1/12 1/12 1/12 1/36",
        "2,3": "55/56 12/13 13/14 165/182 4/13 6/7 3/28 4/39",
        "16,27": "19/28 10/13 19/56 95/182 10/39 95/364 19/224 10/117",
        "2,27,25": "239/240 37/40 29/30 8843/9600 37/120 1073/1200 7/60 37/360",
    }),
    4: ("Qzeta4", {
        "2a": "2/3 3/8 1/3 1/4 1/8 1/8 1/12 1/24",
        "16a": "47/48 3/8 23/24 47/128 1/8 23/64 1/48 1/24",
        "3a": "5/6 3/8 2/3 11/32 1/8 5/16 1/6 1/24",
        "27a": "5/6 1/8 2/3 11/96 1/24 5/48 1/6 1/72",
        "2a,3a": "13/14 6/13 5/7 165/364 2/13 3/7 5/28 2/39",
        "16a,27": "1791/1792 5/13 447/448 4475/11648 5/39 1115/2912 75/448 5/117",
        "2a,27,25": "29/30 37/80 11/15 259/600 37/240 259/1200 11/60 37/720",
    }),
}

# A(k, r) truncated over primes below 1e5, printed to six decimals; rows r = 1..5.
A_GRID: dict[int, str] = {
    1: "0.530712 0.788163 0.901926 0.953511 0.977581 0.989060 0.994618",
    2: "0.434934 0.734313 0.875354 0.940597 0.971280 0.985966 0.993091",
    3: "0.401045 0.714103 0.865118 0.935552 0.968798 0.984741 0.992484",
    4: "0.386687 0.705354 0.860624 0.933316 0.967691 0.984192 0.992211",
    5: "0.380106 0.701307 0.858528 0.932267 0.967169 0.983932 0.992082",
}

# k-free densities beta_k = q * A(k, r): (multiplier, printed approximation).
BETA_TABLES: dict[int, tuple[str, dict[str, tuple[tuple[str, str], ...]]]] = {
    6: ("Qzeta3", {
        "2": (("3/4", "0.398"), ("121/115", "0.829"), ("805/781", "0.930"), ("5029/4945", "0.970")),
        "16": (("69/56", "0.654"), ("517/460", "0.886"), ("3325/3124", "0.960"), ("20437/19780", "0.985")),
        "3": (("15/14", "0.569"), ("121/115", "0.829"), ("805/781", "0.930"), ("5029/4945", "0.970")),
        "27": (("55/42", "0.695"), ("77/69", "0.880"), ("2461/2343", "0.947"), ("15181/14835", "0.976")),
        "2,3": (("135/176", "0.334"), ("875/814", "0.789"), ("5989/5750", "0.912"), ("37823/36994", "0.962")),
        "16,27": (("899/704", "0.555"), ("21935/19536", "0.824"), ("48763/46000", "0.928"), ("914711/887856", "0.969")),
        "2,27,25": (("95201/119193", "0.320"), ("105751169/96766014", "0.780"),
                    ("524265887/500045142", "0.907"), ("116376274169/113496822354", "0.959")),
    }),
    7: ("Qzeta4", {
        "2": (("1/4", "0.133"), ("1", "0.788"), ("1", "0.902"), ("1", "0.953")),
        "16": (("11/8", "0.730"), ("23/20", "0.906"), ("47/44", "0.963"), ("95/92", "0.985")),
        "3": (("3/7", "0.227"), ("91/115", "0.624"), ("709/781", "0.819"), ("4729/4945", "0.912")),
        "27": (("11/21", "0.278"), ("283/345", "0.647"), ("2149/2343", "0.827"), ("331/345", "0.915")),
        "2,3": (("9/176", "0.0222"), ("329/407", "0.594"), ("2641/2875", "0.804"), ("17795/18497", "0.905")),
        "16,27": (("1073/2112", "0.221"), ("5501/6512", "0.620"), ("128873/138000", "0.817"), ("286741/295952", "0.911")),
        "2,27,25": (("23323/953544", "0.00981"), ("79247549/96766014", "0.585"),
                    ("3234551969/3500315994", "0.799"), ("109490052089/113496822354", "0.903")),
    }),
}

# Valuation-profile densities gamma_{k,m} over Q(sqrt(-5)); columns VALUATION_COLUMNS.
GAMMA_TABLE: tuple[str, dict[str, str]] = ("Qsqrtm5", {
    "2": "35/192 35/192 7/96 5/24 7/96 7/288 1/12",
    "16": "55/96 5/192 11/48 5/384 1/96 11/144 1/192",
    "3": "13/48 1/12 1/24 13/96 1/6 1/72 1/48",
    "27": "5/16 1/4 1/72 5/32 1/18 1/216 1/144",
    "2,3": "365/2912 423/2912 1/364 101/728 59/364 1/1092 10/91",
    "16,27": "391/1456 225/2912 15/364 785/5824 125/728 5/364 95/4368",
    "2,27,25": "801/6400 927/6400 37/28800 443/3200 4699/28800 37/86400 1591/14400",
})

ALL_TABLE_NUMBERS = (1, 2, 3, 4, 5, 6, 7, 8)


@dataclass(frozen=True)
class CellCheck:
    table: int
    row: str
    column: str
    expected: str
    computed: str

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


def _decimals(printed: str) -> int:
    return len(printed.split(".")[1])


def _truncate(x: float, nd: int) -> str:
    scaled = int(x * 10 ** nd)
    return f"{scaled / 10 ** nd:.{nd}f}"


def check_table(number: int) -> list[CellCheck]:
    """Recompute one reference table cell by cell."""
    out: list[CellCheck] = []
    if number in RHO_TABLES:
        field_label, rows = RHO_TABLES[number]
        field = BUILTIN_FIELDS[field_label]
        for gens, values in rows.items():
            group = GroupSpec.make(field, gens)
            table = table_for(group)
            for m, want in zip(DIVISIBILITY_MODULI, values.split()):
                got = rho_closed(m, group, table).exact
                out.append(CellCheck(number, gens, f"rho_{m}", want, str(got)))
    elif number == 5:
        for r, row in A_GRID.items():
            for k, want in zip(range(2, 9), row.split()):
                got, _ = A_constant(k, r, 10 ** 5)
                out.append(CellCheck(number, f"r={r}", f"A({k},{r})", want, f"{got:.6f}"))
    elif number in BETA_TABLES:
        field_label, rows = BETA_TABLES[number]
        field = BUILTIN_FIELDS[field_label]
        for gens, cells in rows.items():
            group = GroupSpec.make(field, gens)
            table = table_for(group)
            for k, (want_mult, want_approx) in zip(KFREE_RANGE, cells):
                value = beta_closed(k, group, table)
                got_mult = str(value.scaled.multiplier)
                out.append(CellCheck(number, gens, f"beta_{k}", want_mult, got_mult))
                nd = _decimals(want_approx)
                rounded = f"{value.scaled.approx:.{nd}f}"
                truncated = _truncate(value.scaled.approx, nd)
                # the reference grid mixes rounding and truncation in its
                # final printed digit; accept either rendering
                got_approx = want_approx if want_approx in (rounded, truncated) else rounded
                out.append(CellCheck(number, gens, f"beta_{k}_approx", want_approx, got_approx))
    elif number == 8:
        field_label, rows = GAMMA_TABLE
        field = BUILTIN_FIELDS[field_label]
        for gens, values in rows.items():
            group = GroupSpec.make(field, gens)
            table = table_for(group)
            for (k, m), want in zip(VALUATION_COLUMNS, values.split()):
                got = gamma_closed(k, m, group, table).exact
                out.append(CellCheck(number, gens, f"gamma_{k}_{m}", want, str(got)))
    else:
        raise ValueError(f"no reference table {number}")
    return out


def bundled_groups() -> list[tuple[str, str]]:
    """Every (field label, generator string) pair needing a bundled table."""
    pairs: list[tuple[str, str]] = []
    for num, (field_label, rows) in RHO_TABLES.items():
        if field_label != "Q":
            pairs += [(field_label, gens) for gens in rows]
    for field_label, rows in BETA_TABLES.values():
        pairs += [(field_label, gens) for gens in rows]
    field_label, rows = GAMMA_TABLE
    pairs += [(field_label, gens) for gens in rows]
    seen: set[tuple[str, str]] = set()
    out = []
    for pair in pairs:
        if pair not in seen:
            seen.add(pair)
            out.append(pair)
    return out
