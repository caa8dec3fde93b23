#!/usr/bin/env node
/**
 * decmhd-plots: render SVG figures from decmhd run outputs.
 *
 * Usage:
 *   node dist/cli.js traces   <diagnostics.csv>  <out.svg>
 *   node dist/cli.js contours <snapshot.decmhd>  <out.svg> [--window lo,hi]
 *   node dist/cli.js current  <snapshot.decmhd>  <out.svg>
 *   node dist/cli.js profile  <snapshot.decmhd>  <out.svg> [--row j]
 */

import { writeFileSync } from "fs";

import { CsvError, readDiagnostics } from "./csv.js";
import { PlotJob, contoursSvg, currentSvg, profileSvg, tracesSvg } from "./plots.js";
import { SnapshotError, readSnapshot } from "./snapshot.js";

function usage(): never {
  console.error(
    "usage: cli.js <traces|contours|current|profile> <input> <output.svg> "
    + "[--window lo,hi] [--row j]",
  );
  process.exit(2);
}

export function main(argv: string[]): number {
  if (argv.length < 3) usage();
  const [kind, input, output, ...rest] = argv;
  const job: PlotJob = { kind: kind as PlotJob["kind"] };
  for (let k = 0; k < rest.length; k++) {
    if (rest[k] === "--window" && rest[k + 1]) {
      const [lo, hi] = rest[++k].split(",").map(Number);
      if (Number.isNaN(lo) || Number.isNaN(hi)) usage();
      job.window = [lo, hi];
    } else if (rest[k] === "--row" && rest[k + 1]) {
      job.row = Number(rest[++k]);
    } else {
      usage();
    }
  }

  let svg: string;
  try {
    switch (job.kind) {
      case "traces":
        svg = tracesSvg(readDiagnostics(input));
        break;
      case "contours":
        svg = contoursSvg(readSnapshot(input), job);
        break;
      case "current":
        svg = currentSvg(readSnapshot(input), job);
        break;
      case "profile":
        svg = profileSvg(readSnapshot(input), job);
        break;
      default:
        usage();
    }
  } catch (err) {
    if (err instanceof CsvError || err instanceof SnapshotError
        || err instanceof RangeError) {
      console.error(`decmhd-plots: ${err.message}`);
      return 1;
    }
    throw err;
  }
  writeFileSync(output, svg);
  console.error(`wrote ${output}`);
  return 0;
}

const isMain = process.argv[1] !== undefined
  && import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (isMain) {
  process.exit(main(process.argv.slice(2)));
}
