/** Deterministic rule-based sentence splitting and tokenization. */

const TERMINATORS = new Set([".", "!", "?"]);
const PUNCT = /[.,!?;:()"'‘’“”—-]/;

/** Split a token into leading punctuation, core, trailing punctuation. */
function splitPunct(raw: string): string[] {
  const out: string[] = [];
  let start = 0;
  let end = raw.length;
  const lead: string[] = [];
  const trail: string[] = [];
  while (start < end && PUNCT.test(raw[start])) {
    lead.push(raw[start]);
    start += 1;
  }
  while (end > start && PUNCT.test(raw[end - 1])) {
    trail.unshift(raw[end - 1]);
    end -= 1;
  }
  out.push(...lead);
  if (end > start) out.push(raw.slice(start, end));
  out.push(...trail);
  return out;
}

export function tokenize(text: string): string[] {
  const tokens: string[] = [];
  for (const raw of text.split(/\s+/)) {
    if (!raw) continue;
    tokens.push(...splitPunct(raw));
  }
  return tokens;
}

/** Cut a token stream into sentences at terminator punctuation. */
export function splitSentences(text: string): string[][] {
  const sentences: string[][] = [];
  for (const line of text.split(/\r?\n/)) {
    let current: string[] = [];
    for (const token of tokenize(line)) {
      current.push(token);
      if (TERMINATORS.has(token)) {
        sentences.push(current);
        current = [];
      }
    }
    if (current.length > 0) sentences.push(current);
  }
  return sentences;
}
