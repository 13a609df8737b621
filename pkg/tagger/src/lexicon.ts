/** Fixed word-list UPOS lookup for the mock tagger.
 *
 * Coverage is intentionally small: common English function words plus
 * punctuation and number shapes. Everything else falls back to "X",
 * which keeps outputs reproducible with no model downloads.
 */

const TABLE: Record<string, string> = {
  // pronouns
  i: "PRON", we: "PRON", you: "PRON", he: "PRON", she: "PRON", it: "PRON",
  they: "PRON", them: "PRON", us: "PRON", him: "PRON", her: "PRON",
  // determiners
  the: "DET", a: "DET", an: "DET", this: "DET", that: "DET", these: "DET",
  those: "DET", some: "DET", any: "DET", no: "DET", each: "DET", every: "DET",
  // auxiliaries and modals
  is: "AUX", are: "AUX", was: "AUX", were: "AUX", be: "AUX", been: "AUX",
  am: "AUX", do: "AUX", does: "AUX", did: "AUX", have: "AUX", has: "AUX",
  had: "AUX", will: "AUX", would: "AUX", can: "AUX", could: "AUX",
  shall: "AUX", should: "AUX", may: "AUX", might: "AUX", must: "AUX",
  // adpositions
  of: "ADP", in: "ADP", on: "ADP", at: "ADP", to: "ADP", from: "ADP",
  with: "ADP", by: "ADP", for: "ADP", about: "ADP", into: "ADP", over: "ADP",
  under: "ADP", between: "ADP",
  // conjunctions
  and: "CCONJ", or: "CCONJ", but: "CCONJ", nor: "CCONJ",
  because: "SCONJ", if: "SCONJ", while: "SCONJ", although: "SCONJ",
  // particles, adverbs, common verbs
  not: "PART", "n't": "PART",
  very: "ADV", now: "ADV", then: "ADV", here: "ADV", there: "ADV",
  saw: "VERB", see: "VERB", sees: "VERB", seen: "VERB",
  go: "VERB", goes: "VERB", went: "VERB", gone: "VERB",
  say: "VERB", says: "VERB", said: "VERB",
  make: "VERB", makes: "VERB", made: "VERB",
  take: "VERB", takes: "VERB", took: "VERB",
  protect: "VERB", protects: "VERB", protected: "VERB",
  help: "VERB", helps: "VERB", helped: "VERB",
};

const PUNCT_RE = /^[.,!?;:()"'‘’“”—-]+$/;
const NUM_RE = /^[0-9]+([.,][0-9]+)*$/;

export const FALLBACK_UPOS = "X";
export const FALLBACK_DEPREL = "dep";

export function lookupUpos(surface: string): string {
  if (PUNCT_RE.test(surface)) return "PUNCT";
  if (NUM_RE.test(surface)) return "NUM";
  return TABLE[surface.toLowerCase()] ?? FALLBACK_UPOS;
}
