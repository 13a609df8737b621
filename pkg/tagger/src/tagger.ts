/** Tagging backends: a deterministic offline mock and an external UD
 * tagger wrapper.
 *
 * The mock assigns UPOS by word-list lookup (fallback "X") and builds a
 * left-headed chain: token 1 is the root, every later token attaches to
 * its left neighbor with deprel "dep". Outputs are fully reproducible.
 */

import { execFileSync } from "node:child_process";

import { corpusToConllu, TaggedToken } from "./conllu";
import { FALLBACK_DEPREL, lookupUpos } from "./lexicon";
import { splitSentences } from "./tokenize";

export type Backend = "mock" | "external_ud_tagger";

export interface AdapterConfig {
  backend: Backend;
  language: string;
  batchSize: number;
}

export const DEFAULT_CONFIG: AdapterConfig = {
  backend: "mock",
  language: "en",
  batchSize: 32,
};

export class BackendUnavailable extends Error {}

function mockTagSentence(tokens: string[]): TaggedToken[] {
  return tokens.map((surface, i) => ({
    surface,
    upos: lookupUpos(surface),
    head: i, // 0 for the first token (root), else the left neighbor
    deprel: i === 0 ? "root" : FALLBACK_DEPREL,
  }));
}

function tagMock(text: string, batchSize: number): string {
  const sentences = splitSentences(text);
  const pieces: string[] = [];
  for (let start = 0; start < sentences.length; start += batchSize) {
    const batch = sentences.slice(start, start + batchSize);
    pieces.push(corpusToConllu(batch.map(mockTagSentence)));
  }
  return pieces.join("");
}

/** External backend: run the command in UD_TAGGER_CMD with the raw text
 * on stdin; it must print CoNLL-U. Unset or failing command raises
 * BackendUnavailable. */
function tagExternal(text: string, config: AdapterConfig): string {
  const cmd = process.env.UD_TAGGER_CMD;
  if (!cmd) {
    throw new BackendUnavailable(
      "external backend needs UD_TAGGER_CMD (a command reading text on stdin, writing CoNLL-U)",
    );
  }
  try {
    return execFileSync("/bin/sh", ["-c", cmd], {
      input: text,
      encoding: "utf-8",
      env: { ...process.env, UD_TAGGER_LANGUAGE: config.language },
    });
  } catch (err) {
    throw new BackendUnavailable(`external tagger failed: ${(err as Error).message}`);
  }
}

export function tag(text: string, config: Partial<AdapterConfig> = {}): string {
  const cfg = { ...DEFAULT_CONFIG, ...config };
  if (cfg.batchSize < 1) throw new Error("batchSize must be >= 1");
  if (text.trim() === "") return "";
  if (cfg.backend === "mock") return tagMock(text, cfg.batchSize);
  return tagExternal(text, cfg);
}
