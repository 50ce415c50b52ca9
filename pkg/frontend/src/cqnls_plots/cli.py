"""cqnls-plot: render figures from a run directory."""

from __future__ import annotations

import argparse
import sys

from .render import KINDS, render
from .snapshots import SnapshotError


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="cqnls-plot",
                                     description="Render figures from run artifacts")
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("run_dir", help="directory with run.csv / verdict.csv / *.cqnls")
    parser.add_argument("-o", "--out", required=True, help="output image path")
    parser.add_argument("--snapshot", default=None,
                        help="specific snapshot file (default: latest in the run dir)")
    args = parser.parse_args(argv)
    try:
        path = render(args.kind, args.run_dir, args.out, snapshot=args.snapshot)
    except (SnapshotError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
