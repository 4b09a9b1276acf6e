"""Corpus ingestion: turn a byte stream into species counts."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .histogram import SpeciesCounts

TOKENIZERS = ("whitespace", "unicode-word")
_WORD_RE = re.compile(r"\w+")


@dataclass(frozen=True)
class CorpusConfig:
    """Tokenization settings. Same config and input bytes always produce the
    same counts, including appearance order."""

    tokenizer: str = "whitespace"
    lowercase: bool = False
    min_count: int = 0

    def __post_init__(self):
        if self.tokenizer not in TOKENIZERS:
            raise ValueError(f"tokenizer must be one of {TOKENIZERS}, got {self.tokenizer!r}")
        if isinstance(self.min_count, bool) or not isinstance(self.min_count, int) \
                or self.min_count < 0:
            raise ValueError(f"min_count must be a non-negative integer, got {self.min_count!r}")


def tokenize_and_count(data: bytes, config: CorpusConfig = CorpusConfig()) -> SpeciesCounts:
    """Count tokens in UTF-8 text; invalid byte sequences are an error.

    The returned mapping preserves first-appearance order, which downstream
    ranking tie-breakers depend on. An empty corpus gives empty counts.
    """
    text = data.decode("utf-8")
    if config.lowercase:
        text = text.lower()
    tokens = text.split() if config.tokenizer == "whitespace" else _WORD_RE.findall(text)
    counts: SpeciesCounts = {}
    for token in tokens:
        counts[token] = counts.get(token, 0) + 1
    if config.min_count > 0:
        counts = {s: c for s, c in counts.items() if c >= config.min_count}
    return counts
