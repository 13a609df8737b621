/** CoNLL-U emission and invariant checking.
 *
 * The downstream toolchain consumes columns ID, FORM, UPOS, HEAD and
 * DEPREL; the rest are emitted as "_".
 */

export interface TaggedToken {
  surface: string;
  upos: string;
  head: number; // 0 = root, otherwise 1-based index of the head token
  deprel: string;
}

export function sentenceToConllu(tokens: TaggedToken[]): string {
  return tokens
    .map((tok, i) =>
      [
        String(i + 1),
        tok.surface,
        "_",
        tok.upos,
        "_",
        "_",
        String(tok.head),
        tok.deprel,
        "_",
        "_",
      ].join("\t"),
    )
    .join("\n");
}

export function corpusToConllu(sentences: TaggedToken[][]): string {
  // Every sentence block carries its own trailing blank line so that
  // concatenating batches stays valid CoNLL-U.
  return sentences.map((s) => sentenceToConllu(s) + "\n\n").join("");
}

export interface ParsedToken {
  index: number;
  surface: string;
  upos: string;
  head: number;
  deprel: string;
}

/** Parse CoNLL-U text and throw on any invariant violation: short rows,
 * non-contiguous ids, empty labels, self-heads, multiple roots, cycles. */
export function parseAndValidate(text: string): ParsedToken[][] {
  const sentences: ParsedToken[][] = [];
  let current: ParsedToken[] = [];
  const flush = () => {
    if (current.length === 0) return;
    const roots = current.filter((t) => t.head === 0);
    if (roots.length !== 1) {
      throw new Error(`expected exactly 1 root, found ${roots.length}`);
    }
    for (const tok of current) {
      if (tok.head < 0 || tok.head > current.length) {
        throw new Error(`head ${tok.head} out of range`);
      }
      let cursor = tok.head;
      let steps = 0;
      while (cursor !== 0) {
        cursor = current[cursor - 1].head;
        steps += 1;
        if (steps > current.length) throw new Error("head links form a cycle");
      }
    }
    sentences.push(current);
    current = [];
  };
  for (const line of text.split("\n")) {
    if (line.trim() === "") {
      flush();
      continue;
    }
    if (line.startsWith("#")) continue;
    const cols = line.split("\t");
    if (cols.length < 8) throw new Error(`expected >= 8 columns, got ${cols.length}`);
    if (cols[0].includes("-") || cols[0].includes(".")) continue;
    const index = Number(cols[0]);
    const head = Number(cols[6]);
    if (!Number.isInteger(index) || !Number.isInteger(head)) {
      throw new Error(`non-integer ID or HEAD in: ${line}`);
    }
    if (index !== current.length + 1) throw new Error(`non-contiguous id ${index}`);
    if (head === index) throw new Error(`token ${index} heads itself`);
    if (!cols[1] || !cols[3] || cols[3] === "_" || !cols[7] || cols[7] === "_") {
      throw new Error(`empty FORM/UPOS/DEPREL in: ${line}`);
    }
    current.push({ index, surface: cols[1], upos: cols[3], head, deprel: cols[7] });
  }
  flush();
  return sentences;
}
