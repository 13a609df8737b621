/** End-to-end: raw text -> mock tagger -> the condmark CLI pipeline.
 *
 * Requires the `condmark` console script (the Python package) on PATH;
 * the suite skips cleanly when it is absent.
 */

import { execFileSync } from "node:child_process";
import { mkdtempSync, writeFileSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { describe, expect, test } from "vitest";

import { tag } from "../src/tagger";

function hasCondmark(): boolean {
  try {
    execFileSync("condmark", ["--help"], { stdio: "ignore" });
    return true;
  } catch {
    return false;
  }
}

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/** Raw sentences whose mock tags give help/aid a DET or PRON left
 * neighbor, with a conditional skew for the optimizer to exploit. */
function rawCorpus(seed: number, n: number): string {
  const rand = mulberry32(seed);
  const lines: string[] = [];
  for (let i = 0; i < n; i++) {
    const detContext = rand() < 0.5;
    const pWord = detContext ? 0.6 : 0.4;
    const word = rand() < pWord ? "help" : "aid";
    const context = detContext ? "the" : "we";
    lines.push(`${context} ${word} of it now .`);
  }
  return lines.join("\n");
}

const LEXICON = JSON.stringify({ sets: [{ id: 0, words: ["help", "aid"] }] });

describe.skipIf(!hasCondmark())("primary pipeline on mock-tagged text", () => {
  test("estimate, optimize, watermark, verify", () => {
    const dir = mkdtempSync(join(tmpdir(), "ud-tag-"));
    const p = (name: string) => join(dir, name);
    writeFileSync(p("lexicon.json"), LEXICON);
    writeFileSync(p("train.conllu"), tag(rawCorpus(1, 2000)));
    writeFileSync(p("clean.conllu"), tag(rawCorpus(2, 400)));

    const run = (...argv: string[]) =>
      execFileSync("condmark", argv, { encoding: "utf-8" });

    run("estimate", "--corpus", p("train.conllu"), "--lexicon", p("lexicon.json"),
        "--feature", "pos", "--order", "1", "--out", p("dist.json"));
    run("optimize", "--dist", p("dist.json"), "--seed", "5", "--out", p("rules.json"));
    run("watermark", "--corpus", p("clean.conllu"), "--lexicon", p("lexicon.json"),
        "--rules", p("rules.json"), "--out", p("marked.conllu"));
    run("verify", "--suspect", p("marked.conllu"), "--reference", p("train.conllu"),
        "--lexicon", p("lexicon.json"), "--rules", p("rules.json"),
        "--report", p("report.json"));

    const report = JSON.parse(readFileSync(p("report.json"), "utf-8"));
    expect(report.verdict).toBe("watermarked");
    expect(report.n).toBeGreaterThanOrEqual(30);
    expect(report.p_value).toBeLessThan(1e-6);
  });
});
