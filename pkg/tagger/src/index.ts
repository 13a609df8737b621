export { tag, AdapterConfig, Backend, BackendUnavailable, DEFAULT_CONFIG } from "./tagger";
export { tokenize, splitSentences } from "./tokenize";
export { lookupUpos, FALLBACK_UPOS, FALLBACK_DEPREL } from "./lexicon";
export { corpusToConllu, parseAndValidate, TaggedToken, ParsedToken } from "./conllu";
