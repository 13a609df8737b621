#!/usr/bin/env node
/** Read raw text (file or stdin), write CoNLL-U (file or stdout).
 *
 * Usage: ud-tag [--backend mock|external_ud_tagger] [--language en]
 *               [--batch-size N] [--in FILE] [--out FILE]
 */

import { readFileSync, writeFileSync } from "node:fs";

import { BackendUnavailable, DEFAULT_CONFIG, tag, Backend } from "./tagger";

function parseArgs(argv: string[]) {
  const opts = {
    backend: DEFAULT_CONFIG.backend as Backend,
    language: DEFAULT_CONFIG.language,
    batchSize: DEFAULT_CONFIG.batchSize,
    in: null as string | null,
    out: null as string | null,
  };
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (value === undefined) throw new Error(`missing value for ${flag}`);
    switch (flag) {
      case "--backend":
        if (value !== "mock" && value !== "external_ud_tagger") {
          throw new Error(`unknown backend ${value}`);
        }
        opts.backend = value;
        break;
      case "--language":
        opts.language = value;
        break;
      case "--batch-size":
        opts.batchSize = Number(value);
        break;
      case "--in":
        opts.in = value;
        break;
      case "--out":
        opts.out = value;
        break;
      default:
        throw new Error(`unknown flag ${flag}`);
    }
  }
  return opts;
}

function main() {
  let opts;
  try {
    opts = parseArgs(process.argv.slice(2));
  } catch (err) {
    process.stderr.write(`ud-tag: ${(err as Error).message}\n`);
    process.exit(2);
  }
  const text = opts.in !== null ? readFileSync(opts.in, "utf-8") : readFileSync(0, "utf-8");
  let output: string;
  try {
    output = tag(text, opts);
  } catch (err) {
    if (err instanceof BackendUnavailable) {
      process.stderr.write(`ud-tag: ${err.message}\n`);
      process.exit(1);
    }
    throw err;
  }
  if (opts.out !== null) {
    writeFileSync(opts.out, output);
  } else {
    process.stdout.write(output);
  }
}

main();
