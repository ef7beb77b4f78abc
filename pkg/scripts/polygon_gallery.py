"""Render polygon presentations for irreducible three-cone data sets.

For every irreducible data set of degree <= --max-degree this draws the
labelled fundamental polygon to an SVG and cross-checks the side pairing
(free fixed-point set, rotation equivariance, Euler-characteristic genus).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from perisurf.census import enumerate_irreducible
from perisurf.core import format_data_set, genus
from perisurf.realization import (
    draw_polygon_svg,
    polygon_realization,
    verify_realization,
)


def slug(text: str) -> str:
    keep = [c if c.isalnum() else "_" for c in text]
    return "".join(keep).strip("_")


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=12)
    ap.add_argument("--out-dir", default="gallery")
    args = ap.parse_args(argv)

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    bad = 0
    total = 0
    for n in range(2, args.max_degree + 1):
        for d in enumerate_irreducible(n):
            total += 1
            text = format_data_set(d)
            pres = polygon_realization(d)
            report = verify_realization(pres, d)
            path = out / f"{slug(text)}.svg"
            draw_polygon_svg(pres, str(path))
            if report.ok:
                status = "ok"
            else:
                status = (f"FAIL euler={report.euler_genus} rh={report.rh_genus} "
                          f"inv={report.involution_ok} equiv={report.equivariance_ok}")
            flag = " (low genus)" if pres.outside_theorem else ""
            print(f"{text}: sides={pres.sides} genus={genus(d)} {status}{flag}")
            if not report.ok:
                bad += 1

    print(f"{total} polygons -> {out}/, {bad} verification failures")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
