#!/usr/bin/env python3
"""Write M3 monthly series (in-sample and hold-out joined) in the ingest format.

The data comes from the `fcompdata` package (pip install fcompdata). When the
package is missing the script prints a notice and exits 0 without writing, so
callers can treat the data set as unavailable.
"""

import argparse
import csv
import sys


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("output", help="CSV file to write")
    parser.add_argument("--count", type=int, default=0, help="first N monthly series by id (0 = all)")
    args = parser.parse_args()

    try:
        import importlib.resources
        import json

        raw = importlib.resources.files("fcompdata").joinpath("data/m3_data.json").read_text()
    except (ImportError, ModuleNotFoundError, FileNotFoundError) as exc:
        print(f"M3 data unavailable: {exc}", file=sys.stderr)
        return 0

    data = json.loads(raw)
    monthly = sorted(k for k, v in data.items() if v["period"][0] == "MONTHLY")
    if args.count > 0:
        monthly = monthly[: args.count]

    with open(args.output, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["series_id", "period", "value"])
        for key in monthly:
            values = list(data[key]["x"]) + list(data[key]["xx"])
            for t, v in enumerate(values):
                writer.writerow([key, t, repr(float(v))])
    print(f"wrote {len(monthly)} monthly series to {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
