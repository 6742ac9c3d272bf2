"""Durable curated-simile store.

Records are keyed by a canonical stem key so inflectional variants of one
simile collide; at most one non-rejected record may hold a key. Backed by
sqlite (embedded, transactional, single file) with an append-only
revision log. All mutations are serialized through one lock and commit
before returning, so a crash can only lose the tail of the operation
sequence, never tear a record.
"""

from __future__ import annotations

import datetime as _dt
import json
import secrets
import sqlite3
import threading
from dataclasses import dataclass, field

from .stemming import StemRuleSet, stem
from .tagging import CONNECTOR_FORMS, tokenize

SOURCES = ("www", "karadzic", "manual")
STATUSES = ("pending", "approved", "rejected")
KINDS = ("adjectival", "verbal", "unknown")

_FOLD_MAP = str.maketrans({"š": "s", "č": "c", "ć": "c", "ž": "z", "đ": "dj"})


class CorpusError(Exception):
    pass


class NotASimileError(CorpusError):
    """Phrase has no connector token, so it has no canonical key."""


class NotFoundError(CorpusError):
    pass


class IllegalTransitionError(CorpusError):
    def __init__(self, message, current_status):
        super().__init__(message)
        self.current_status = current_status


def now_rfc3339() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds").replace(
        "+00:00", "Z"
    )


def fold_diacritics(text: str) -> str:
    return text.translate(_FOLD_MAP)


def phrase_tokens(phrase: str) -> list[str]:
    return [t for sentence in tokenize(phrase) for t in sentence]


def canonical_key(phrase: str, rules: StemRuleSet) -> str:
    """Case-fold, normalize connector forms to "kao", stem every token."""
    tokens = [t.lower() for t in phrase_tokens(phrase)]
    if not any(t in CONNECTOR_FORMS for t in tokens):
        raise NotASimileError(f"no connector in {phrase!r}")
    normalized = ["kao" if t in CONNECTOR_FORMS else t for t in tokens]
    return " ".join(stem(t, rules) for t in normalized)


@dataclass
class Revision:
    record_id: int
    editor: str
    action: str
    before: str
    after: str
    timestamp: str


@dataclass
class SimileRecord:
    id: int
    display_form: str
    canonical_key: str
    kind: str
    source: str
    status: str
    submitted_by: str | None
    created_at: str
    updated_at: str
    evidence: list[tuple[str, int]] = field(default_factory=list)
    revision_count: int = 0

    def to_dict(self, revisions: list[Revision] | None = None) -> dict:
        d = {
            "id": self.id,
            "display_form": self.display_form,
            "canonical_key": self.canonical_key,
            "kind": self.kind,
            "source": self.source,
            "status": self.status,
            "submitted_by": self.submitted_by,
            "created_at": self.created_at,
            "updated_at": self.updated_at,
            "evidence": [{"doc_url": u, "count": c} for u, c in self.evidence],
            "revision_count": self.revision_count,
        }
        if revisions is not None:
            d["revisions"] = [vars(r) for r in revisions]
        return d


@dataclass
class UpsertResult:
    created: bool
    record: SimileRecord


@dataclass
class MergeReport:
    added: int = 0
    duplicates: int = 0
    intersection: list[str] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)


_SCHEMA = """
CREATE TABLE IF NOT EXISTS records (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    display_form TEXT NOT NULL,
    canonical_key TEXT NOT NULL,
    kind TEXT NOT NULL,
    source TEXT NOT NULL,
    status TEXT NOT NULL,
    submitted_by TEXT,
    created_at TEXT NOT NULL,
    updated_at TEXT NOT NULL
);
CREATE UNIQUE INDEX IF NOT EXISTS idx_live_key
    ON records(canonical_key) WHERE status != 'rejected';
CREATE TABLE IF NOT EXISTS evidence (
    record_id INTEGER NOT NULL,
    doc_url TEXT NOT NULL,
    count INTEGER NOT NULL,
    UNIQUE(record_id, doc_url)
);
CREATE TABLE IF NOT EXISTS variants (
    record_id INTEGER NOT NULL,
    surface TEXT NOT NULL,
    count INTEGER NOT NULL,
    UNIQUE(record_id, surface)
);
CREATE TABLE IF NOT EXISTS revisions (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    record_id INTEGER NOT NULL,
    editor TEXT NOT NULL,
    action TEXT NOT NULL,
    before TEXT NOT NULL,
    after TEXT NOT NULL,
    timestamp TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS users (
    name TEXT PRIMARY KEY,
    role TEXT NOT NULL,
    salt TEXT NOT NULL,
    pass_hash TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS sessions (
    token TEXT PRIMARY KEY,
    user TEXT NOT NULL,
    role TEXT NOT NULL,
    expires_at TEXT NOT NULL
);
"""


class SimileStore:
    """Single-writer store over one sqlite file."""

    def __init__(self, path, rules: StemRuleSet, fold_search: bool = True):
        self.path = str(path)
        self.rules = rules
        self.fold_search = fold_search
        self._lock = threading.RLock()
        self._conn = sqlite3.connect(self.path, check_same_thread=False)
        self._conn.execute("PRAGMA synchronous=FULL")
        with self._lock, self._conn:
            self._conn.executescript(_SCHEMA)

    def close(self):
        with self._lock:
            self._conn.close()

    # -- reads ------------------------------------------------------------

    def _row_to_record(self, row) -> SimileRecord:
        rec = SimileRecord(
            id=row[0], display_form=row[1], canonical_key=row[2], kind=row[3],
            source=row[4], status=row[5], submitted_by=row[6],
            created_at=row[7], updated_at=row[8],
        )
        rec.evidence = [
            (u, c) for u, c in self._conn.execute(
                "SELECT doc_url, count FROM evidence WHERE record_id=? ORDER BY doc_url",
                (rec.id,),
            )
        ]
        rec.revision_count = self._conn.execute(
            "SELECT COUNT(*) FROM revisions WHERE record_id=?", (rec.id,)
        ).fetchone()[0]
        return rec

    def get(self, record_id: int) -> SimileRecord:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM records WHERE id=?", (record_id,)
            ).fetchone()
        if row is None:
            raise NotFoundError(f"no record {record_id}")
        return self._row_to_record(row)

    def revisions(self, record_id: int) -> list[Revision]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT record_id, editor, action, before, after, timestamp"
                " FROM revisions WHERE record_id=? ORDER BY id",
                (record_id,),
            ).fetchall()
        return [Revision(*row) for row in rows]

    def _live_by_key(self, key: str) -> SimileRecord | None:
        row = self._conn.execute(
            "SELECT * FROM records WHERE canonical_key=? AND status != 'rejected'",
            (key,),
        ).fetchone()
        return self._row_to_record(row) if row else None

    def list_records(self, status: str | None = None) -> list[SimileRecord]:
        with self._lock:
            if status is None:
                rows = self._conn.execute("SELECT * FROM records ORDER BY id").fetchall()
            else:
                rows = self._conn.execute(
                    "SELECT * FROM records WHERE status=? ORDER BY display_form, id",
                    (status,),
                ).fetchall()
            return [self._row_to_record(r) for r in rows]

    def approved_page(self, page: int, page_size: int) -> tuple[list[SimileRecord], int]:
        """One page of the alphabetical approved listing plus the total."""
        with self._lock:
            total = self._conn.execute(
                "SELECT COUNT(*) FROM records WHERE status='approved'"
            ).fetchone()[0]
            rows = self._conn.execute(
                "SELECT * FROM records WHERE status='approved'"
                " ORDER BY display_form, id LIMIT ? OFFSET ?",
                (page_size, (page - 1) * page_size),
            ).fetchall()
            return [self._row_to_record(r) for r in rows], total

    def search(self, query: str) -> list[SimileRecord]:
        """Approved records whose key contains the stemmed query tokens.

        Full-key matches rank first, then token-contiguous substring
        matches, alphabetically. With fold_search on, both sides are
        compared diacritic-insensitively. An empty query lists all
        approved records.
        """
        with self._lock:
            approved = self.list_records("approved")
        tokens = [t.lower() for t in phrase_tokens(query)]
        if not tokens:
            return approved
        normalized = ["kao" if t in CONNECTOR_FORMS else t for t in tokens]
        stemmed = [stem(t, self.rules) for t in normalized]
        if self.fold_search:
            stemmed = [fold_diacritics(t) for t in stemmed]
        exact: list[SimileRecord] = []
        partial: list[SimileRecord] = []
        for rec in approved:
            key_tokens = rec.canonical_key.split()
            if self.fold_search:
                key_tokens = [fold_diacritics(t) for t in key_tokens]
            if key_tokens == stemmed:
                exact.append(rec)
            elif _contains_run(key_tokens, stemmed):
                partial.append(rec)
        return exact + partial

    def stats(self) -> dict:
        with self._lock:
            counts: dict[str, dict[str, int]] = {
                s: {st: 0 for st in STATUSES} for s in SOURCES
            }
            for source, status, n in self._conn.execute(
                "SELECT source, status, COUNT(*) FROM records GROUP BY source, status"
            ):
                counts.setdefault(source, {st: 0 for st in STATUSES})[status] = n
            total_approved = sum(c["approved"] for c in counts.values())
            total = sum(sum(c.values()) for c in counts.values())
        return {"by_source": counts, "total_approved": total_approved, "total": total}

    # -- writes -----------------------------------------------------------

    def upsert(self, phrase: str, source: str, submitter: str | None = None,
               kind: str = "unknown", doc_url: str | None = None, count: int = 1,
               trusted: bool = False) -> UpsertResult:
        """Insert a phrase or report the live record that already holds its key."""
        if source not in SOURCES:
            raise CorpusError(f"unknown source {source!r}")
        key = canonical_key(phrase, self.rules)
        phrase = " ".join(phrase.split())
        with self._lock:
            existing = self._live_by_key(key)
            if existing is not None:
                with self._conn:
                    if source == "www":
                        if doc_url:
                            self._conn.execute(
                                "INSERT INTO evidence(record_id, doc_url, count) VALUES(?,?,?)"
                                " ON CONFLICT(record_id, doc_url)"
                                " DO UPDATE SET count = count + excluded.count",
                                (existing.id, doc_url, count),
                            )
                        if existing.source == "www":
                            self._bump_variant(existing.id, phrase, count)
                    self._conn.execute(
                        "UPDATE records SET updated_at=? WHERE id=?",
                        (now_rfc3339(), existing.id),
                    )
                return UpsertResult(False, self.get(existing.id))
            ts = now_rfc3339()
            status = "approved" if trusted else "pending"
            with self._conn:
                cur = self._conn.execute(
                    "INSERT INTO records(display_form, canonical_key, kind, source,"
                    " status, submitted_by, created_at, updated_at)"
                    " VALUES(?,?,?,?,?,?,?,?)",
                    (phrase, key, kind, source, status, submitter, ts, ts),
                )
                rid = cur.lastrowid
                if source == "www":
                    if doc_url:
                        self._conn.execute(
                            "INSERT INTO evidence(record_id, doc_url, count) VALUES(?,?,?)",
                            (rid, doc_url, count),
                        )
                    self._bump_variant(rid, phrase, count)
                self._conn.execute(
                    "INSERT INTO revisions(record_id, editor, action, before, after, timestamp)"
                    " VALUES(?,?,?,?,?,?)",
                    (rid, submitter or source, "created", "", phrase, ts),
                )
            return UpsertResult(True, self.get(rid))

    def _bump_variant(self, record_id: int, surface: str, count: int):
        self._conn.execute(
            "INSERT INTO variants(record_id, surface, count) VALUES(?,?,?)"
            " ON CONFLICT(record_id, surface)"
            " DO UPDATE SET count = count + excluded.count",
            (record_id, surface, count),
        )
        top = self._conn.execute(
            "SELECT surface FROM variants WHERE record_id=?"
            " ORDER BY count DESC, surface LIMIT 1",
            (record_id,),
        ).fetchone()
        if top:
            self._conn.execute(
                "UPDATE records SET display_form=? WHERE id=?", (top[0], record_id)
            )

    def set_status(self, record_id: int, new_status: str, curator: str) -> SimileRecord:
        if new_status not in ("approved", "rejected"):
            raise IllegalTransitionError(f"cannot set status {new_status!r}", None)
        with self._lock:
            record = self.get(record_id)
            if record.status != "pending":
                raise IllegalTransitionError(
                    f"cannot move {record.status} record to {new_status}", record.status
                )
            ts = now_rfc3339()
            with self._conn:
                self._conn.execute(
                    "UPDATE records SET status=?, updated_at=? WHERE id=?",
                    (new_status, ts, record_id),
                )
                self._conn.execute(
                    "INSERT INTO revisions(record_id, editor, action, before, after, timestamp)"
                    " VALUES(?,?,?,?,?,?)",
                    (record_id, curator, new_status, record.display_form,
                     record.display_form, ts),
                )
            return self.get(record_id)

    def edit(self, record_id: int, new_form: str, editor: str) -> SimileRecord:
        """Change the display form (and key) of a pending or approved record."""
        with self._lock:
            record = self.get(record_id)
            if record.status == "rejected":
                raise IllegalTransitionError("cannot edit a rejected record", "rejected")
            new_key = canonical_key(new_form, self.rules)
            new_form = " ".join(new_form.split())
            clash = self._live_by_key(new_key)
            if clash is not None and clash.id != record_id:
                raise IllegalTransitionError(
                    f"edited form collides with record {clash.id}", record.status
                )
            ts = now_rfc3339()
            with self._conn:
                self._conn.execute(
                    "UPDATE records SET display_form=?, canonical_key=?, updated_at=?"
                    " WHERE id=?",
                    (new_form, new_key, ts, record_id),
                )
                self._conn.execute(
                    "INSERT INTO revisions(record_id, editor, action, before, after, timestamp)"
                    " VALUES(?,?,?,?,?,?)",
                    (record_id, editor, "edited", record.display_form, new_form, ts),
                )
            return self.get(record_id)

    def merge_corpora(self, phrases: list[str], source: str,
                      trusted: bool = False) -> MergeReport:
        """Upsert every phrase; list cross-source duplicates (the intersection)."""
        report = MergeReport()
        for phrase in phrases:
            try:
                result = self.upsert(phrase, source, trusted=trusted)
            except NotASimileError as exc:
                report.errors.append(str(exc))
                continue
            if result.created:
                report.added += 1
            else:
                report.duplicates += 1
                if result.record.source != source:
                    report.intersection.append(result.record.display_form)
        return report

    # -- export / import ---------------------------------------------------

    def export_jsonl(self, path) -> int:
        with self._lock:
            records = self.list_records()
        with open(path, "w", encoding="utf-8") as fh:
            for rec in records:
                fh.write(json.dumps(rec.to_dict(), ensure_ascii=False, sort_keys=True) + "\n")
        return len(records)

    def import_jsonl(self, path) -> int:
        """Load exported records verbatim (ids are reassigned)."""
        n = 0
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                d = json.loads(line)
                with self._lock, self._conn:
                    cur = self._conn.execute(
                        "INSERT INTO records(display_form, canonical_key, kind, source,"
                        " status, submitted_by, created_at, updated_at)"
                        " VALUES(?,?,?,?,?,?,?,?)",
                        (d["display_form"], d["canonical_key"], d["kind"], d["source"],
                         d["status"], d.get("submitted_by"), d["created_at"], d["updated_at"]),
                    )
                    for ev in d.get("evidence", []):
                        self._conn.execute(
                            "INSERT INTO evidence(record_id, doc_url, count) VALUES(?,?,?)",
                            (cur.lastrowid, ev["doc_url"], ev["count"]),
                        )
                n += 1
        return n

    # -- users / sessions ---------------------------------------------------

    def add_user(self, name: str, role: str, password: str) -> None:
        import hashlib

        salt = secrets.token_hex(16)
        digest = hashlib.scrypt(password.encode(), salt=bytes.fromhex(salt),
                                n=2**14, r=8, p=1).hex()
        with self._lock, self._conn:
            self._conn.execute(
                "INSERT OR REPLACE INTO users(name, role, salt, pass_hash) VALUES(?,?,?,?)",
                (name, role, salt, digest),
            )

    def verify_user(self, name: str, password: str) -> str | None:
        """Return the role on success, None otherwise."""
        import hashlib

        with self._lock:
            row = self._conn.execute(
                "SELECT role, salt, pass_hash FROM users WHERE name=?", (name,)
            ).fetchone()
        if row is None:
            return None
        role, salt, expected = row
        digest = hashlib.scrypt(password.encode(), salt=bytes.fromhex(salt),
                                n=2**14, r=8, p=1).hex()
        return role if secrets.compare_digest(digest, expected) else None

    def create_session(self, user: str, role: str, ttl_minutes: int = 720) -> dict:
        token = secrets.token_hex(16)  # 128 bits
        expires = (_dt.datetime.now(_dt.timezone.utc)
                   + _dt.timedelta(minutes=ttl_minutes)).isoformat(timespec="seconds")
        expires = expires.replace("+00:00", "Z")
        with self._lock, self._conn:
            self._conn.execute(
                "INSERT INTO sessions(token, user, role, expires_at) VALUES(?,?,?,?)",
                (token, user, role, expires),
            )
        return {"token": token, "user": user, "role": role, "expires_at": expires}

    def get_session(self, token: str) -> dict | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT token, user, role, expires_at FROM sessions WHERE token=?",
                (token,),
            ).fetchone()
        if row is None:
            return None
        session = {"token": row[0], "user": row[1], "role": row[2], "expires_at": row[3]}
        expires = _dt.datetime.fromisoformat(session["expires_at"].replace("Z", "+00:00"))
        if expires <= _dt.datetime.now(_dt.timezone.utc):
            return None
        return session


def _contains_run(haystack: list[str], needle: list[str]) -> bool:
    if not needle or len(needle) > len(haystack):
        return False
    return any(
        haystack[i : i + len(needle)] == needle
        for i in range(len(haystack) - len(needle) + 1)
    )
