"""Text cleaning, tokenization, and fixed-length padding."""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from importlib import resources

from .errors import ConfigError

PAD = "<PAD>"
DEFAULT_MAX_LEN = 200


def load_map(path):
    """Read a key<TAB>value map file; '#'-prefixed lines and blanks ignored."""
    mapping = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ConfigError(f"{path}:{lineno}: expected key<TAB>value, got {line!r}")
            mapping[parts[0]] = parts[1]
    return mapping


def _default_map(name):
    ref = resources.files("empdist.resources").joinpath(name)
    mapping = {}
    for lineno, line in enumerate(ref.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        key, _, value = line.partition("\t")
        mapping[key] = value
    return mapping


def _validate_map(mapping, name):
    # Expansion tokens must never be keys, else cleaning would not be idempotent.
    keys = {k.lower() for k in mapping}
    for value in mapping.values():
        for tok in value.split():
            if tok.lower() in keys:
                raise ConfigError(f"{name} map is cyclic: expansion token {tok!r} is also a key")


@dataclass
class CleanConfig:
    contractions: dict = field(default_factory=lambda: _default_map("contractions.tsv"))
    acronyms: dict = field(default_factory=lambda: _default_map("acronyms.tsv"))
    max_len: int = DEFAULT_MAX_LEN
    pad_token: str = PAD

    def __post_init__(self):
        if self.max_len < 1:
            raise ConfigError(f"max_len must be >= 1, got {self.max_len}")
        _validate_map(self.contractions, "contraction")
        _validate_map(self.acronyms, "acronym")


@dataclass
class TokenSeq:
    tokens: list  # exactly max_len entries
    attention_len: int

    def real_tokens(self):
        return self.tokens[: self.attention_len]


def _expand(text, mapping):
    """Replace whole-word map keys with expansions, case-insensitively.

    An initial capital on the match is carried onto the expansion.
    """
    if not mapping:
        return text
    lower_map = {k.lower(): v for k, v in mapping.items()}
    pattern = re.compile(
        r"(?<![\w'])(" + "|".join(re.escape(k) for k in sorted(lower_map, key=len, reverse=True)) + r")(?![\w'])",
        re.IGNORECASE,
    )

    def repl(m):
        expansion = lower_map[m.group(0).lower()]
        if m.group(0)[0].isupper():
            return expansion[0].upper() + expansion[1:]
        return expansion

    return pattern.sub(repl, text)


def _strip_accents(text):
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(c for c in decomposed if not unicodedata.combining(c)) \
        .encode("ascii", "ignore").decode("ascii")


_PUNCT_RE = re.compile(r"[^A-Za-z0-9\s]")
_DIGIT_RE = re.compile(r"[0-9]")


def clean_text(raw, cfg=None):
    """Apply the fixed cleaning pipeline; total, idempotent, case-preserving.

    Order: contractions, acronyms, accent stripping, punctuation removal,
    digit removal, single-character token removal, whitespace collapse.
    """
    if cfg is None:
        cfg = CleanConfig()
    text = _expand(raw, cfg.contractions)
    text = _expand(text, cfg.acronyms)
    text = _strip_accents(text)
    text = _PUNCT_RE.sub(" ", text)
    text = _DIGIT_RE.sub("", text)
    tokens = [t for t in text.split() if len(t) > 1]
    return " ".join(tokens)


def tokenize_and_pad(cleaned, cfg=None):
    """Whitespace-tokenize, truncate to max_len, right-pad with the pad token."""
    if cfg is None:
        cfg = CleanConfig()
    tokens = cleaned.split()[: cfg.max_len]
    attention_len = len(tokens)
    tokens = tokens + [cfg.pad_token] * (cfg.max_len - attention_len)
    return TokenSeq(tokens=tokens, attention_len=attention_len)
