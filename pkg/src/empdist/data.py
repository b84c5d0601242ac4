"""Corpus records, label semantics, categorical vocabularies, TSV ingestion."""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field

from .errors import ConfigError, DataError

log = logging.getLogger(__name__)

BIN_THRESHOLD = 4.0

AGE_LE25 = "AGE_LE25"
AGE_26_40 = "AGE_26_40"
AGE_41_60 = "AGE_41_60"
AGE_GE61 = "AGE_GE61"

UNKNOWN = "<UNK>"

PERSONALITY_FIELDS = (
    "conscientiousness",
    "openness",
    "extraversion",
    "agreeableness",
    "stability",
)
IRI_FIELDS = (
    "fantasy",
    "perspective_taking",
    "empathic_concern",
    "personal_distress",
)

# Logical field -> default TSV column header.
DEFAULT_COLUMNS = {
    "id": "message_id",
    "essay": "essay",
    "gender": "gender",
    "education": "education",
    "race": "race",
    "age": "age",
    "income": "income",
    "conscientiousness": "personality_conscientiousness",
    "openness": "personality_openess",
    "extraversion": "personality_extraversion",
    "agreeableness": "personality_agreeableness",
    "stability": "personality_stability",
    "fantasy": "iri_fantasy",
    "perspective_taking": "iri_perspective_taking",
    "empathic_concern": "iri_empathatic_concern",
    "personal_distress": "iri_personal_distress",
    "empathy": "empathy",
    "distress": "distress",
    "empathy_bin": "empathy_bin",
    "distress_bin": "distress_bin",
    "emotion": "emotion",
}

# Label columns may be absent in prediction-only input.
OPTIONAL_FIELDS = ("empathy", "distress", "empathy_bin", "distress_bin", "emotion")


@dataclass
class EssayRecord:
    id: str
    essay: str
    gender: str
    education: str
    race: str
    age: int
    income: float
    personality: tuple  # 5 floats, PERSONALITY_FIELDS order
    iri: tuple  # 4 floats, IRI_FIELDS order
    empathy: float | None = None
    distress: float | None = None
    empathy_bin: int | None = None
    distress_bin: int | None = None
    emotion: str | None = None

    def psych_scores(self):
        """The 9 numeric model inputs (personality then IRI)."""
        return self.personality + self.iri


@dataclass
class Dataset:
    records: list
    split: str = ""
    columns: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


def bucket_age(age):
    """Map integer age to one of four bucket tokens.

    Boundary convention: 25 belongs to the lowest bucket.
    """
    if age < 0:
        raise DataError(f"age must be >= 0, got {age}")
    if age <= 25:
        return AGE_LE25
    if age <= 40:
        return AGE_26_40
    if age <= 60:
        return AGE_41_60
    return AGE_GE61


CATEGORICAL_FEATURES = ("gender", "education", "race", "age_bucket")


class CategoricalVocab:
    """Token -> dense index mapping with a reserved UNKNOWN slot at 0.

    Frozen after fit; unseen tokens encode to 0.
    """

    def __init__(self, tokens):
        self._tokens = [UNKNOWN] + list(tokens)
        if len(set(self._tokens)) != len(self._tokens):
            raise DataError("duplicate tokens in vocabulary")
        self._index = {t: i for i, t in enumerate(self._tokens)}

    def __len__(self):
        return len(self._tokens)

    def encode(self, token):
        return self._index.get(token, 0)

    def decode(self, index):
        return self._tokens[index]

    @property
    def tokens(self):
        return list(self._tokens)


def record_categoricals(rec):
    """Categorical tokens of one record, CATEGORICAL_FEATURES order."""
    return (rec.gender, rec.education, rec.race, bucket_age(rec.age))


def fit_vocab(train):
    """Fit one CategoricalVocab per demographic feature, first-occurrence order."""
    if len(train) == 0:
        raise DataError("cannot fit vocabularies on an empty dataset")
    seen = {name: [] for name in CATEGORICAL_FEATURES}
    for rec in train:
        for name, token in zip(CATEGORICAL_FEATURES, record_categoricals(rec)):
            if token not in seen[name]:
                seen[name].append(token)
    return {name: CategoricalVocab(tokens) for name, tokens in seen.items()}


def fit_emotion_vocab(train):
    """Ordered distinct emotion labels from the training data."""
    labels = []
    for rec in train:
        if rec.emotion is None:
            raise DataError(f"record {rec.id} has no emotion label")
        if rec.emotion not in labels:
            labels.append(rec.emotion)
    return labels


def encode_categoricals(rec, vocabs):
    return [
        vocabs[name].encode(token)
        for name, token in zip(CATEGORICAL_FEATURES, record_categoricals(rec))
    ]


def _parse_float(value, row_idx, column):
    try:
        return float(value)
    except (TypeError, ValueError):
        raise DataError(f"row {row_idx}: cannot parse {column!r} value {value!r} as number")


def _check_bins(rec, row_idx):
    for score, bin_val, name in (
        (rec.empathy, rec.empathy_bin, "empathy"),
        (rec.distress, rec.distress_bin, "distress"),
    ):
        if score is None or bin_val is None:
            continue
        expected = 1 if score >= BIN_THRESHOLD else 0
        if bin_val != expected:
            log.warning(
                "row %d: %s_bin=%d contradicts %s=%.3f (threshold %.1f); stored value kept",
                row_idx, name, bin_val, name, score, BIN_THRESHOLD,
            )


def load_tsv(path, mapping=None, split=""):
    """Read a tab-separated corpus file into a Dataset.

    ``mapping`` overrides DEFAULT_COLUMNS per logical field. Label columns are
    optional; everything else must be present in the header.
    """
    columns = dict(DEFAULT_COLUMNS)
    if mapping:
        unknown = set(mapping) - set(columns)
        if unknown:
            raise ConfigError(f"unknown logical fields in column mapping: {sorted(unknown)}")
        columns.update(mapping)

    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh, delimiter="\t")
        header = reader.fieldnames
        if header is None:
            raise DataError(f"{path}: empty file, expected a header row")
        missing = [
            col for field_name, col in columns.items()
            if field_name not in OPTIONAL_FIELDS and col not in header
        ]
        if missing:
            raise ConfigError(f"{path}: missing required columns {sorted(missing)}")
        have_label = {f: columns[f] in header for f in OPTIONAL_FIELDS}

        records = []
        for row_idx, row in enumerate(reader, start=1):
            def cell(field_name, row=row):
                return row[columns[field_name]]

            age = int(_parse_float(cell("age"), row_idx, columns["age"]))
            if age < 0:
                raise DataError(f"row {row_idx}: negative age {age}")
            personality = tuple(
                _parse_float(cell(f), row_idx, columns[f]) for f in PERSONALITY_FIELDS
            )
            iri = tuple(_parse_float(cell(f), row_idx, columns[f]) for f in IRI_FIELDS)

            def label(field_name, parse):
                if not have_label[field_name] or row[columns[field_name]] == "":
                    return None
                return parse(row[columns[field_name]])

            rec = EssayRecord(
                id=str(cell("id")),
                essay=cell("essay"),
                gender=str(cell("gender")),
                education=str(cell("education")),
                race=str(cell("race")),
                age=age,
                income=_parse_float(cell("income"), row_idx, columns["income"]),
                personality=personality,
                iri=iri,
                empathy=label("empathy", lambda v: _parse_float(v, row_idx, "empathy")),
                distress=label("distress", lambda v: _parse_float(v, row_idx, "distress")),
                empathy_bin=label("empathy_bin", lambda v: int(float(v))),
                distress_bin=label("distress_bin", lambda v: int(float(v))),
                emotion=label("emotion", str),
            )
            _check_bins(rec, row_idx)
            records.append(rec)

    return Dataset(records=records, split=split, columns=columns)
