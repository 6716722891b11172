"""Write the data behind figures 1-3 as CSV files.

    python scripts/make_figures.py --outdir figures/
"""

import argparse
from pathlib import Path

from dipolewave.figures import cmd_fig1, cmd_fig2, cmd_fig3


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", type=Path, default=Path("figures"))
    parser.add_argument("--steps", type=int, default=181, help="theta samples for figures 2 and 3")
    args = parser.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)
    for name, table in (("fig1", cmd_fig1()), ("fig2", cmd_fig2(args.steps)), ("fig3", cmd_fig3(args.steps))):
        path = args.outdir / f"{name}.csv"
        path.write_text(table.to_csv())
        print(f"wrote {path} ({len(table.rows)} rows)")


if __name__ == "__main__":
    main()
