"""Command line front end.

Subcommands: density, kfree, valuation, coprime, paper-tables, verify.
Exact values print as rationals; --format csv/json carries the same values
with rationals encoded as strings.  Exit status is 0 exactly when every
requested check passed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .density import (
    beta_closed,
    coprime_density,
    gamma_closed,
    gamma_via_rho,
    rho_closed,
    rho_series,
)
from .empirical import (
    Coprime,
    Divisible,
    KFree,
    ValuationProfile,
    count_event,
    event_name,
    parse_event,
)
from .kummer import (
    BUILTIN_FIELDS,
    FieldSpec,
    GroupSpec,
    lift_degree,
    load_degree_table,
    table_for,
)
from .paper_tables import ALL_TABLE_NUMBERS, check_table


def _fmt_rat(x: Fraction) -> str:
    return str(x)


def _text_density(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x)
    return f"{x} ≈ {float(x):.6f}"


def _emit(payload: dict, fmt: str, text_line: str) -> None:
    if fmt == "text":
        print(text_line)
    elif fmt == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(payload))
        writer.writeheader()
        writer.writerow(payload)
        sys.stdout.write(buf.getvalue())


def _parse_config(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition(" ")
        if key not in ("field", "generators", "torsion", "rank", "z") or not value.strip():
            raise SystemExit(f"{path}:{lineno}: cannot parse config line {raw!r}")
        out[key] = value.strip()
    return out


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", default=None, help="built-in field label (default Q)")
    p.add_argument("--field-poly", default=None,
                   help="custom monic field polynomial, constant-first coefficients, e.g. 5,0,1")
    p.add_argument("--group", default=None, help="comma-separated generators, e.g. 2,27 or 2a")
    p.add_argument("--torsion", type=int, default=None, help="torsion order t (default 1)")
    p.add_argument("--table", default=None, help="degree-table file (required for custom fields)")
    p.add_argument("--config", default=None, help="config file in degree-table header grammar")
    p.add_argument("--format", default="text", choices=("text", "csv", "json"))


def _resolve(args) -> tuple[FieldSpec, GroupSpec, "object"]:
    conf = _parse_config(args.config) if args.config else {}
    field_label = args.field or conf.get("field") or "Q"
    gens = args.group or conf.get("generators")
    if not gens:
        raise SystemExit("no group given (use --group or --config)")
    torsion = args.torsion if args.torsion is not None else int(conf.get("torsion", "1"))
    if args.field_poly:
        coeffs = tuple(int(c) for c in args.field_poly.split(","))
        field = FieldSpec("custom", coeffs, len(coeffs) - 1, frozenset())
        if not args.table:
            raise SystemExit("custom fields need a --table degree-table file")
    else:
        if field_label not in BUILTIN_FIELDS:
            raise SystemExit(f"unknown field {field_label!r}; "
                             f"built-ins: {', '.join(BUILTIN_FIELDS)}")
        field = BUILTIN_FIELDS[field_label]
    group = GroupSpec.make(field, gens, torsion)
    if args.table:
        table = load_degree_table(args.table)
        if table.rank != group.rank:
            raise SystemExit("degree table rank does not match the group")
    else:
        try:
            table = table_for(group)
        except FileNotFoundError as exc:
            raise SystemExit(str(exc)) from None
    return field, group, table


def _verify_block(field, group, table, event, x, tolerance, workers, exact_value: float):
    count = count_event(field, group, event, x, workers=workers)
    ratio = count.ratio
    deviation = abs(ratio - exact_value) if ratio is not None else float("inf")
    status = "PASS" if deviation < tolerance else "WARN"
    return count, ratio, deviation, status


def cmd_density(args) -> int:
    field, group, table = _resolve(args)
    value = rho_closed(args.m, group, table)
    payload = {
        "command": "density",
        "field": field.label,
        "group": ",".join(group.gen_strings),
        "torsion": str(group.torsion_order),
        "m": str(args.m),
        "exact": _fmt_rat(value.exact),
        "approx": f"{float(value.exact):.6f}",
    }
    text = _text_density(value.exact)
    ok = True
    if args.series:
        series = rho_series(args.m, group, table, bound=args.series_bound)
        lo, hi = series.interval
        payload["series_lo"] = _fmt_rat(lo)
        payload["series_hi"] = _fmt_rat(hi)
        ok = series.contains(value.exact)
        text += f"   series in [{float(lo):.8f}, {float(hi):.8f}] ({'ok' if ok else 'DISAGREES'})"
    if args.verify:
        ev = Divisible(args.m)
        count, ratio, dev, status = _verify_block(
            field, group, table, ev, args.verify, args.tolerance, args.workers,
            float(value.exact),
        )
        payload.update({
            "empirical": f"{ratio:.6f}" if ratio is not None else "nan",
            "x": str(args.verify),
            "deviation": f"{dev:.6f}",
            "status": status,
        })
        text += f"   {count.record(event_name(ev))} deviation={dev:.6f} {status}"
        ok = ok and status == "PASS"
    _emit(payload, args.format, text)
    return 0 if ok else 1


def cmd_kfree(args) -> int:
    field, group, table = _resolve(args)
    value = beta_closed(args.k, group, table, cutoff=args.prime_cutoff)
    s = value.scaled
    payload = {
        "command": "kfree",
        "field": field.label,
        "group": ",".join(group.gen_strings),
        "k": str(args.k),
        "multiplier": _fmt_rat(s.multiplier),
        "constant": f"A({s.k},{s.r})",
        "approx": f"{s.approx:.6f}",
        "approx_error": f"{s.approx_error:.2e}",
    }
    text = f"{s.multiplier} * A({s.k},{s.r}) ≈ {s.approx:.3f}"
    _emit(payload, args.format, text)
    return 0


def cmd_valuation(args) -> int:
    field, group, table = _resolve(args)
    value = gamma_closed(args.k, args.m, group, table)
    check = gamma_via_rho(args.k, args.m, group, table)
    assert check.exact == value.exact
    payload = {
        "command": "valuation",
        "field": field.label,
        "group": ",".join(group.gen_strings),
        "k": str(args.k),
        "m": str(args.m),
        "exact": _fmt_rat(value.exact),
        "approx": f"{float(value.exact):.6f}",
    }
    _emit(payload, args.format, _text_density(value.exact))
    return 0


def cmd_coprime(args) -> int:
    field, group, table = _resolve(args)
    value = coprime_density(args.k, group, table)
    payload = {
        "command": "coprime",
        "field": field.label,
        "group": ",".join(group.gen_strings),
        "k": str(args.k),
        "exact": _fmt_rat(value.exact),
        "approx": f"{float(value.exact):.6f}",
    }
    _emit(payload, args.format, _text_density(value.exact))
    return 0


def cmd_paper_tables(args) -> int:
    numbers = list(ALL_TABLE_NUMBERS) if args.which == "all" else [int(args.which)]
    rows = []
    bad = 0
    for num in numbers:
        cells = check_table(num)
        fails = [c for c in cells if not c.ok]
        bad += len(fails)
        for c in cells:
            rows.append({
                "table": str(c.table), "row": c.row, "column": c.column,
                "expected": c.expected, "computed": c.computed,
                "status": "ok" if c.ok else "MISMATCH",
            })
        if args.format == "text":
            for c in fails:
                print(f"MISMATCH table {c.table} [{c.row}] {c.column}: "
                      f"expected {c.expected}, computed {c.computed}")
            print(f"table {num}: {len(cells) - len(fails)}/{len(cells)} cells match")
    if args.format == "json":
        print(json.dumps(rows, sort_keys=True))
    elif args.format == "csv":
        writer = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
    return 0 if bad == 0 else 1


def _exact_for_event(event, group, table) -> float:
    if isinstance(event, Divisible):
        return float(rho_closed(event.m, group, table).exact)
    if isinstance(event, KFree):
        return beta_closed(event.k, group, table).scaled.approx
    if isinstance(event, ValuationProfile):
        return float(gamma_closed(event.k, event.m, group, table).exact)
    if isinstance(event, Coprime):
        return float(coprime_density(event.k, group, table).exact)
    return 1.0 / lift_degree(table, event.m, event.n)


def cmd_verify(args) -> int:
    field, group, table = _resolve(args)
    event = parse_event(args.event)
    x = int(float(args.x))
    exact = _exact_for_event(event, group, table)
    count, ratio, dev, status = _verify_block(
        field, group, table, event, x, args.tolerance, args.workers, exact
    )
    payload = {
        "command": "verify",
        "field": field.label,
        "group": ",".join(group.gen_strings),
        "event": event_name(event),
        "x": str(x),
        "matched": str(count.matched),
        "total": str(count.total),
        "excluded": str(count.excluded),
        "empirical": f"{ratio:.6f}" if ratio is not None else "nan",
        "exact": f"{exact:.6f}",
        "deviation": f"{dev:.6f}",
        "tolerance": f"{args.tolerance}",
        "status": status,
    }
    text = (f"{count.record(event_name(event))}\n"
            f"exact {exact:.6f}  empirical {payload['empirical']}  "
            f"deviation {dev:.6f}  {status}")
    _emit(payload, args.format, text)
    return 0 if status == "PASS" else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orddens",
        description="Exact and empirical densities of primes by order divisibility",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("density", help="exact density of m | ord")
    _add_common(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--series", action="store_true", help="also evaluate the series oracle")
    p.add_argument("--series-bound", type=int, default=None)
    p.add_argument("--verify", type=int, default=None, metavar="X",
                   help="append an empirical comparison up to X")
    p.add_argument("--tolerance", type=float, default=0.01)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_density)

    p = sub.add_parser("kfree", help="density of k-free order, as q * A(k,r)")
    _add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--prime-cutoff", type=int, default=10 ** 5)
    p.set_defaults(fn=cmd_kfree)

    p = sub.add_parser("valuation", help="density of prescribed order valuations")
    _add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(fn=cmd_valuation)

    p = sub.add_parser("coprime", help="density of order coprime to k")
    _add_common(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(fn=cmd_coprime)

    p = sub.add_parser("paper-tables", help="regenerate the bundled reference tables")
    p.add_argument("which", help="table number 1..8, or 'all'")
    p.add_argument("--format", default="text", choices=("text", "csv", "json"))
    p.set_defaults(fn=cmd_paper_tables)

    p = sub.add_parser("verify", help="compare an exact density with prime counts")
    _add_common(p)
    p.add_argument("--event", required=True,
                   help="div:m | kfree:k | val:k,m | coprime:k | kummer:m,n")
    p.add_argument("--x", required=True, help="bound on the prime norms, e.g. 1e6")
    p.add_argument("--tolerance", type=float, default=0.01)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
