"""Durable sign and user-glyph storage.

Layout on disk: an append-only ``journal.ndjson`` (one JSON record
per line) plus an optional ``snapshot.json`` holding everything up to
a compaction point. Loading reads the snapshot, then replays the
journal tail; ``snapshot()`` folds the journal into a fresh snapshot
and truncates it. No external database, trivially auditable.

One writer at a time (a lock serializes appends); reads take no lock
because loaded records never mutate. Verdicts never gate storage -
even a failing glyph is kept for later study - so this layer knows
nothing about acceptability.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from . import geometry as geo
from .document import SignDocument, from_xml, to_xml, validate
from .geometry import Geometry
from .registry import Registry
from .symbols import user_ref, user_ref_number

JOURNAL_NAME = "journal.ndjson"
SNAPSHOT_NAME = "snapshot.json"


class StoreError(RuntimeError):
    pass


class ValidationRejected(ValueError):
    """A write was refused because the document fails validation."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(d.message for d in self.diagnostics)
                         or "validation failed")


@dataclass(frozen=True)
class UserGlyph:
    ref: str
    geometry: Geometry
    tags: frozenset[str]
    author: str
    session: str
    created_at: str

    @property
    def feature_tags(self) -> frozenset[str]:
        # same vocabulary role as GlyphEntry.feature_tags
        return self.tags

    def to_record(self) -> dict:
        return {
            "kind": "user-glyph",
            "id": self.ref,
            "geometry": geo.format_path(self.geometry),
            "tags": sorted(self.tags),
            "author": self.author,
            "session": self.session,
            "created_at": self.created_at,
        }


@dataclass(frozen=True)
class SignRecord:
    sign_id: str
    xml: str
    author: str
    created_at: str

    def to_record(self) -> dict:
        return {
            "kind": "sign",
            "id": self.sign_id,
            "xml": self.xml,
            "author": self.author,
            "created_at": self.created_at,
        }


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


class Store:
    """Sign and user-glyph records under one directory.

    The registry handed in at construction is what write-time
    validation and corpus queries resolve against.
    """

    def __init__(self, root, registry: Registry, clock=_utc_now):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.registry = registry
        self._clock = clock
        self._lock = threading.Lock()
        self._signs: dict[str, SignRecord] = {}
        self._docs: dict[str, SignDocument] = {}
        self._user: dict[str, UserGlyph] = {}
        self._sign_seq = 0
        self._glyph_seq = 0
        self._load()

    # -- loading ---------------------------------------------------------

    def _load(self) -> None:
        snapshot = self.root / SNAPSHOT_NAME
        if snapshot.exists():
            payload = json.loads(snapshot.read_text(encoding="utf-8"))
            for record in payload.get("records", []):
                self._apply(record)
        journal = self.root / JOURNAL_NAME
        if journal.exists():
            with open(journal, encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, start=1):
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        self._apply(json.loads(line))
                    except (json.JSONDecodeError, KeyError, ValueError) as exc:
                        raise StoreError(
                            f"{journal}:{lineno}: bad journal record: {exc}"
                        ) from None

    def _apply(self, record: dict) -> None:
        kind = record["kind"]
        if kind == "sign":
            rec = SignRecord(record["id"], record["xml"],
                             record.get("author", ""),
                             record.get("created_at", ""))
            # re-validate the payload: a stored sign must still parse
            self._docs[rec.sign_id] = from_xml(rec.xml)
            self._signs[rec.sign_id] = rec
            self._sign_seq = max(self._sign_seq,
                                 int(rec.sign_id.split("-", 1)[1]))
        elif kind == "user-glyph":
            glyph = UserGlyph(
                ref=record["id"],
                geometry=geo.parse_path(record["geometry"]),
                tags=frozenset(record["tags"]),
                author=record.get("author", ""),
                session=record.get("session", ""),
                created_at=record.get("created_at", ""),
            )
            self._user[glyph.ref] = glyph
            self._glyph_seq = max(self._glyph_seq,
                                  user_ref_number(glyph.ref))
        else:
            raise ValueError(f"unknown record kind {kind!r}")

    def _append(self, record: dict) -> None:
        line = json.dumps(record, sort_keys=True, ensure_ascii=False)
        with open(self.root / JOURNAL_NAME, "a", encoding="utf-8") as fh:
            fh.write(line + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    # -- signs -----------------------------------------------------------

    def save_sign(self, doc: SignDocument, author: str,
                  role: str = "user", session: str | None = None) -> str:
        """Persist a document; refused unless it validates cleanly for
        the author's role. Saving twice stores two records."""
        diagnostics = validate(doc, self.registry, self, role, session)
        if diagnostics:
            raise ValidationRejected(diagnostics)
        with self._lock:
            self._sign_seq += 1
            sign_id = f"S-{self._sign_seq}"
            rec = SignRecord(sign_id, to_xml(doc).decode("utf-8"),
                             author, self._clock())
            self._append(rec.to_record())
            self._signs[sign_id] = rec
            self._docs[sign_id] = doc
        return sign_id

    def get_sign(self, sign_id: str) -> SignDocument:
        try:
            return self._docs[sign_id]
        except KeyError:
            raise StoreError(f"no sign {sign_id}") from None

    def get_sign_record(self, sign_id: str) -> SignRecord:
        try:
            return self._signs[sign_id]
        except KeyError:
            raise StoreError(f"no sign {sign_id}") from None

    def signs(self):
        """(id, document) pairs in id order."""
        for sign_id in sorted(self._docs,
                              key=lambda s: int(s.split("-", 1)[1])):
            yield sign_id, self._docs[sign_id]

    def sign_ids(self) -> list[str]:
        return [sign_id for sign_id, _ in self.signs()]

    # -- user glyphs -------------------------------------------------------

    def add_user_glyph(self, geometry: Geometry, tags, author: str,
                       session: str = "") -> UserGlyph:
        tags = frozenset(tags)
        if not tags:
            raise ValueError(
                "a user glyph needs at least one declared function tag")
        if not geometry or not any(len(s) for s in geometry):
            raise ValueError("a user glyph needs non-empty geometry")
        if not geo.in_unit_box(geometry):
            raise ValueError("user glyph geometry must be normalized "
                             "to the unit box")
        with self._lock:
            self._glyph_seq += 1
            glyph = UserGlyph(user_ref(self._glyph_seq), tuple(geometry),
                              tags, author, session, self._clock())
            self._append(glyph.to_record())
            self._user[glyph.ref] = glyph
        return glyph

    def get_user_glyph(self, ref: str) -> UserGlyph | None:
        return self._user.get(ref)

    def user_glyphs(self):
        return [self._user[ref] for ref in
                sorted(self._user, key=user_ref_number)]

    def list_user_glyphs(self, role: str, session: str | None = None
                         ) -> list[UserGlyph]:
        """Researchers see everything with provenance; plain users see
        only glyphs drawn in their own session."""
        glyphs = self.user_glyphs()
        if role == "researcher":
            return glyphs
        return [g for g in glyphs if session is not None
                and g.session == session]

    # -- maintenance -------------------------------------------------------

    def snapshot(self) -> None:
        """Fold the journal into snapshot.json and truncate it."""
        with self._lock:
            records = ([r.to_record() for _, r in sorted(
                            self._signs.items(),
                            key=lambda kv: int(kv[0].split("-", 1)[1]))]
                       + [g.to_record() for g in self.user_glyphs()])
            tmp = self.root / (SNAPSHOT_NAME + ".tmp")
            tmp.write_text(json.dumps({"records": records}, indent=2,
                                      ensure_ascii=False),
                           encoding="utf-8")
            tmp.replace(self.root / SNAPSHOT_NAME)
            journal = self.root / JOURNAL_NAME
            if journal.exists():
                journal.write_text("", encoding="utf-8")
