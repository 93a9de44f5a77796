#!/usr/bin/env python3
"""Degree tables: the finite data behind every density.

All densities reduce to degrees [K(zeta_m, G^{1/n}) : K].  A finite table at
the divisors of an entanglement modulus z determines every degree through a
quasi-multiplicative lift; this script builds one natively, extends it, and
round-trips it through the text file format.
"""

import tempfile
from pathlib import Path

from orddens import (
    GroupSpec,
    BUILTIN_FIELDS,
    compute_degree_table_Q,
    lift_degree,
    load_degree_table,
    save_degree_table,
    validate_table,
)
from orddens.arith import euler_phi

group = GroupSpec.make(BUILTIN_FIELDS["Q"], "2")
table = compute_degree_table_Q(group)
print(f"<2> over Q: z = {table.z}; generic degree would be phi(m) * n")
print(" (m, n)   [K_(m,n) : K]   phi(m)n^r  collapse")
for m, n in [(1, 1), (4, 2), (8, 2), (24, 2), (16, 4), (40, 2), (5, 1)]:
    d = lift_degree(table, m, n)
    generic = euler_phi(m) * n ** table.rank
    note = "" if d == generic else f"  x{generic // d} smaller"
    print(f" ({m:3d},{n:2d})   {d:6d}        {generic:6d}{note}")

print("\nsqrt(2) lies in the 8th and 24th cyclotomic fields, so those degrees halve.")

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "two.degtab"
    save_degree_table(table, path)
    print(f"\nserialized to {path.name}:")
    for line in path.read_text().splitlines()[:8]:
        print("   ", line)
    print("    ...")
    loaded = load_degree_table(path)
    validate_table(loaded)
    print("round trip preserves every entry:", loaded.entries == table.entries)
