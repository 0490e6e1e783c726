# This script recomputes the table of coupling pairs and writes it as JSON and text.

import argparse

from loguru import logger as log

from toricdual.cli.main import run
from toricdual.cli.report import render_table

parse = argparse.ArgumentParser(description="Recompute the table of coupling pairs")

parse.add_argument("--config", type=str, help="Path to the runtime TOML config file")
parse.add_argument("--backend", type=str, help="serial or ray")
parse.add_argument("--workers", type=int, help="Number of ray workers")
parse.add_argument(
    "--output", type=str, default="table", help="Prefix of the .json and .txt files"
)

args = parse.parse_args()

argv = ["table"]
if args.config:
    argv += ["--config", args.config]
if args.backend:
    argv += ["--backend", args.backend]
if args.workers:
    argv += ["--workers", str(args.workers)]

envelope = run(argv)
rows = envelope.results.get("rows", [])

with open(f"{args.output}.json", "w") as f:
    f.write(envelope.to_json())
with open(f"{args.output}.txt", "w") as f:
    f.write(render_table(rows) + "\n")

failed = [row["id"] for row in rows if not row["lattice_duality_ok"]]
if failed:
    log.warning(f"Lattice duality fails for {', '.join(failed)}")
log.info(f"Wrote {len(rows)} rows to {args.output}.json and {args.output}.txt")
raise SystemExit(envelope.exit_status)
