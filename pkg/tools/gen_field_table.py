"""Regenerate src/ppfun/data/field_table.json.

Entries cover every (p, m) with p < 1024 and p^m < 2^20; larger primes only
admit m = 1 and are handled at run time by the least degree-one primitive polynomial.
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from ppfun.gf import FIELD_LIMIT, least_primitive_poly  # noqa: E402
from ppfun.groups import is_prime  # noqa: E402


def main():
    table = {}
    for p in range(2, 1024):
        if not is_prime(p):
            continue
        m = 1
        while p ** m < FIELD_LIMIT:
            table[f"{p},{m}"] = least_primitive_poly(p, m)
            m += 1
    out = Path(__file__).resolve().parents[1] / "src" / "ppfun" / "data" / "field_table.json"
    out.write_text(json.dumps(table, separators=(",", ":")) + "\n")
    print(f"{len(table)} entries -> {out}")


if __name__ == "__main__":
    main()
