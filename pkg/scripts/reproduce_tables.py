#!/usr/bin/env python3
"""Print the three coefficient tables next to the reference values as CSV."""

import argparse
import csv
import sys

from blocksmith.constants import TABLE_HEADER, table1, table2, table3


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--table", type=int, choices=[1, 2, 3], action="append",
                    help="table number (repeatable); default all")
    args = ap.parse_args()
    builders = {1: table1, 2: table2, 3: table3}
    w = csv.writer(sys.stdout, lineterminator="\n")
    for t in args.table or [1, 2, 3]:
        rows = builders[t]()
        w.writerow([f"# table {t}"])
        w.writerow(TABLE_HEADER)
        w.writerows(r.as_csv_row() for r in rows)
        off = [r.label for r in rows if (r.d != r.ref_d if t < 3 else r.value != r.ref_value)]
        print(f"# rows differing from reference: {off or 'none'}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
