"""Session store for interactive simulation.

Each session owns one ledger; mutations are serialized by a per-session
lock. Sessions expire after a configurable idle time and are purged lazily
on access.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field

from ..vm.ledger import LedgerState

DEFAULT_TTL_SECONDS = 30 * 60


@dataclass
class Session:
    session_id: str
    ledger: LedgerState = field(default_factory=LedgerState)
    last_used: float = field(default_factory=time.monotonic)
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    def __init__(self, ttl_seconds: float = DEFAULT_TTL_SECONDS):
        self.ttl = ttl_seconds
        self._sessions: dict[str, Session] = {}
        self._store_lock = threading.Lock()

    def get_or_create(self, session_id: str) -> Session:
        now = time.monotonic()
        with self._store_lock:
            expired = [
                sid for sid, s in self._sessions.items() if now - s.last_used > self.ttl
            ]
            for sid in expired:
                del self._sessions[sid]
            session = self._sessions.get(session_id)
            if session is None:
                session = Session(session_id=session_id)
                self._sessions[session_id] = session
            session.last_used = now
            return session

    def count(self) -> int:
        with self._store_lock:
            return len(self._sessions)
