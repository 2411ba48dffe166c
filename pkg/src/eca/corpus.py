"""Data model, corpus I/O, BIO codec, and context-instance construction.

Documents are pre-tokenized. Argument spans are sentence-local token ranges
with an inclusive start and exclusive end, and spans of the same sentence may
not overlap. Corpora are immutable after loading and safe to share across
concurrent readers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import DataError

LANGUAGES = ("en", "bn", "hi", "mr", "ta", "other")
SPLITS = ("train", "valid", "test")
SCOPES = ("sentence", "paragraph", "document")

#: Reserved marker inserted between sentences of a multi-sentence instance.
SB_TOKEN = "<sb>"

O_LABEL = "O"
#: Label assigned to augmentation tokens; excluded from training loss and
#: from decoded spans.
IGNORE_LABEL = "IGNORE"


class ArgumentType(Enum):
    """The six argument types in scope. String forms are stable for I/O."""

    TIME = "Time"
    PLACE = "Place"
    CASUALTIES = "Casualties"
    AFTER_EFFECT = "AfterEffect"
    REASON = "Reason"
    PARTICIPANT = "Participant"

    def __str__(self) -> str:
        return self.value


#: Canonical tagging label set: O first, then B-/I- pairs in enum order.
LABELS = [O_LABEL] + [prefix + t.value for t in ArgumentType for prefix in ("B-", "I-")]
LABEL_INDEX = {label: i for i, label in enumerate(LABELS)}


@dataclass(frozen=True)
class ArgumentSpan:
    """Typed token span, sentence-local, end exclusive."""

    kind: ArgumentType
    start: int
    end: int


@dataclass(frozen=True)
class Trigger:
    start: int
    end: int
    event_type: str


@dataclass
class Sentence:
    tokens: list[str]
    spans: list[ArgumentSpan] = field(default_factory=list)
    triggers: list[Trigger] = field(default_factory=list)


@dataclass
class Document:
    doc_id: str
    language: str
    sentences: list[Sentence]
    event_type: str | None = None


@dataclass
class Corpus:
    """Documents plus a disjoint, exhaustive train/valid/test partition."""

    documents: list[Document]
    split: dict[str, list[str]]

    def split_docs(self, name: str) -> list[Document]:
        ids = set(self.split.get(name, ()))
        return [d for d in self.documents if d.doc_id in ids]


def _check(cond: bool, doc_id: str, reason: str) -> None:
    if not cond:
        raise DataError(f"document {doc_id!r}: {reason}")


def validate_sentence(sent: Sentence, doc_id: str, index: int) -> None:
    """Raise DataError when a sentence violates its invariants."""
    where = f"sentence {index}"
    _check(len(sent.tokens) > 0, doc_id, f"{where} has no tokens")
    n = len(sent.tokens)
    for span in sent.spans:
        _check(
            0 <= span.start < span.end <= n,
            doc_id,
            f"{where} span ({span.kind}, {span.start}, {span.end}) out of range "
            f"for length {n}",
        )
    ordered = sorted(sent.spans, key=lambda s: (s.start, s.end))
    for prev, cur in zip(ordered, ordered[1:]):
        _check(
            prev.end <= cur.start,
            doc_id,
            f"{where} spans ({prev.kind}, {prev.start}, {prev.end}) and "
            f"({cur.kind}, {cur.start}, {cur.end}) overlap",
        )
    for trig in sent.triggers:
        _check(
            0 <= trig.start < trig.end <= n,
            doc_id,
            f"{where} trigger ({trig.start}, {trig.end}) out of range",
        )


def validate_document(doc: Document) -> None:
    _check(len(doc.sentences) > 0, doc.doc_id, "has no sentences")
    _check(
        doc.language in LANGUAGES,
        doc.doc_id,
        f"unknown language tag {doc.language!r} (expected one of {', '.join(LANGUAGES)})",
    )
    for i, sent in enumerate(doc.sentences):
        validate_sentence(sent, doc.doc_id, i)


def _parse_sentence(raw: dict, doc_id: str, index: int) -> Sentence:
    try:
        tokens = [str(t) for t in raw["tokens"]]
        spans = [
            ArgumentSpan(ArgumentType(s["type"]), int(s["start"]), int(s["end"]))
            for s in raw.get("spans", [])
        ]
        triggers = [
            Trigger(int(t["start"]), int(t["end"]), str(t["event_type"]))
            for t in raw.get("triggers", [])
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"document {doc_id!r}: sentence {index} malformed: {exc}") from exc
    return Sentence(tokens=tokens, spans=spans, triggers=triggers)


def load_corpus(path: str | Path) -> Corpus:
    """Load a JSONL corpus file, one document per line.

    Every invariant is validated; parse failures report the line number and
    invariant violations report the offending doc_id.
    """
    path = Path(path)
    documents: list[Document] = []
    split: dict[str, list[str]] = {name: [] for name in SPLITS}
    seen_ids: set[str] = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}:{lineno}: not valid JSON: {exc}") from exc
            try:
                doc_id = str(raw["doc_id"])
                language = str(raw["language"])
                split_name = str(raw["split"])
                sentences_raw = raw["sentences"]
            except (KeyError, TypeError) as exc:
                raise DataError(f"{path}:{lineno}: missing field: {exc}") from exc
            _check(doc_id not in seen_ids, doc_id, "duplicate doc_id")
            seen_ids.add(doc_id)
            _check(
                split_name in SPLITS,
                doc_id,
                f"unknown split {split_name!r} (expected one of {', '.join(SPLITS)})",
            )
            sentences = [
                _parse_sentence(s, doc_id, i) for i, s in enumerate(sentences_raw)
            ]
            event_type = raw.get("event_type")
            doc = Document(
                doc_id=doc_id,
                language=language,
                sentences=sentences,
                event_type=str(event_type) if event_type is not None else None,
            )
            validate_document(doc)
            documents.append(doc)
            split[split_name].append(doc_id)
    return Corpus(documents=documents, split=split)


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write a corpus back to JSONL in document order."""
    split_of = {
        doc_id: name for name, ids in corpus.split.items() for doc_id in ids
    }
    with Path(path).open("w", encoding="utf-8") as fh:
        for doc in corpus.documents:
            record = {
                "doc_id": doc.doc_id,
                "language": doc.language,
                "split": split_of[doc.doc_id],
                "sentences": [
                    {
                        "tokens": s.tokens,
                        "spans": [
                            {"type": sp.kind.value, "start": sp.start, "end": sp.end}
                            for sp in s.spans
                        ],
                        "triggers": [
                            {"start": t.start, "end": t.end, "event_type": t.event_type}
                            for t in s.triggers
                        ],
                    }
                    for s in doc.sentences
                ],
            }
            if doc.event_type is not None:
                record["event_type"] = doc.event_type
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")


def encode_bio(sentence: Sentence) -> list[str]:
    """Encode a sentence's spans as a BIO label sequence over its tokens."""
    labels = [O_LABEL] * len(sentence.tokens)
    for span in sorted(sentence.spans, key=lambda s: s.start):
        for i in range(span.start, span.end):
            if labels[i] != O_LABEL:
                raise ValueError(
                    f"overlapping spans at token {i}: {labels[i]} vs {span.kind}"
                )
            labels[i] = ("B-" if i == span.start else "I-") + span.kind.value
    return labels


def _parse_label(label: str) -> tuple[str, ArgumentType] | None:
    if len(label) > 2 and label[1] == "-" and label[0] in ("B", "I"):
        try:
            return label[0], ArgumentType(label[2:])
        except ValueError:
            return None
    return None


def decode_bio(labels: list[str]) -> list[ArgumentSpan]:
    """Decode a (possibly ill-formed) label sequence into spans.

    A dangling I-k with no preceding B-k/I-k of the same type is repaired as
    B-k. IGNORE positions are skipped and break runs. Unrecognized labels are
    treated as O; this function never raises.
    """
    spans: list[ArgumentSpan] = []
    open_kind: ArgumentType | None = None
    open_start = 0

    def close(end: int) -> None:
        nonlocal open_kind
        if open_kind is not None:
            spans.append(ArgumentSpan(open_kind, open_start, end))
            open_kind = None

    for i, label in enumerate(labels):
        parsed = _parse_label(label)
        if label == IGNORE_LABEL or parsed is None:
            close(i)
            continue
        prefix, kind = parsed
        if prefix == "B" or open_kind != kind:
            close(i)
            open_kind = kind
            open_start = i
    close(len(labels))
    return spans


def derive_doc_event_label(doc: Document) -> str | None:
    """Document event label: explicit label if set, else first trigger's type."""
    if doc.event_type is not None:
        return doc.event_type
    best: tuple[int, int, int, str] | None = None
    for s_idx, sent in enumerate(doc.sentences):
        for trig in sent.triggers:
            key = (s_idx, trig.start, trig.end, trig.event_type)
            if best is None or key < best:
                best = key
    return best[3] if best else None


@dataclass
class ContextInstance:
    """One tagging input: tokens with `<sb>` markers between sentences.

    ``positions[i]`` maps token i back to its (sentence, token) coordinates,
    or is None for marker tokens.
    """

    tokens: list[str]
    positions: list[tuple[int, int] | None]
    sentence_indices: list[int]


def _instance_for(doc: Document, sentence_indices: list[int]) -> ContextInstance:
    tokens: list[str] = []
    positions: list[tuple[int, int] | None] = []
    for n, s_idx in enumerate(sentence_indices):
        if n > 0:
            tokens.append(SB_TOKEN)
            positions.append(None)
        sent = doc.sentences[s_idx]
        tokens.extend(sent.tokens)
        positions.extend((s_idx, t) for t in range(len(sent.tokens)))
    return ContextInstance(tokens, positions, list(sentence_indices))


def make_context_instances(
    doc: Document, scope: str, paragraph_len: int = 4
) -> list[ContextInstance]:
    """Build tagging instances at sentence, paragraph, or document scope.

    Paragraph scope groups consecutive non-overlapping blocks of
    ``paragraph_len`` sentences; the last block may be shorter.
    """
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r} (expected one of {', '.join(SCOPES)})")
    if paragraph_len < 1:
        raise ValueError("paragraph_len must be >= 1")
    n = len(doc.sentences)
    if scope == "sentence":
        groups = [[i] for i in range(n)]
    elif scope == "paragraph":
        groups = [list(range(i, min(i + paragraph_len, n))) for i in range(0, n, paragraph_len)]
    else:
        groups = [list(range(n))]
    return [_instance_for(doc, g) for g in groups]
