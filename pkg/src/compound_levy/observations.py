"""Jump records of a bivariate process over [0, T] and their CSV form.

A row is ``time, w1, w2, kind`` where ``kind`` is ``par`` (jump in both
coordinates), ``perp1`` or ``perp2`` (jump in one coordinate only; the other
weight is 0).
"""

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from compound_levy.errors import DomainError

KINDS = ("par", "perp1", "perp2")
CSV_COLUMNS = ("time", "w1", "w2", "kind")


def _fmt(x):
    return repr(float(x))


@dataclass
class JumpPath:
    T: float
    time: np.ndarray
    w1: np.ndarray
    w2: np.ndarray
    kind: np.ndarray = field(default=None)

    def __post_init__(self):
        if not (np.isfinite(self.T) and self.T > 0):
            raise DomainError("horizon T must be positive")
        self.time = np.asarray(self.time, dtype=float)
        self.w1 = np.asarray(self.w1, dtype=float)
        self.w2 = np.asarray(self.w2, dtype=float)
        if self.kind is None:
            self.kind = classify(self.w1, self.w2)
        self.kind = np.asarray(self.kind, dtype="<U5")
        n = self.time.size
        if not (self.w1.size == self.w2.size == self.kind.size == n):
            raise DomainError("time, w1, w2 and kind must have equal length")
        if n and (self.time.min() < 0 or self.time.max() > self.T):
            raise DomainError("jump times must lie in [0, T]")
        if np.any(self.w1 < 0) or np.any(self.w2 < 0):
            raise DomainError("jump weights must be non-negative")

    def __len__(self):
        return self.time.size

    def sorted(self):
        order = np.argsort(self.time, kind="stable")
        return JumpPath(self.T, self.time[order], self.w1[order], self.w2[order], self.kind[order])

    def cumulative(self, t):
        """(Y1(t), Y2(t)) on a grid of times."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        order = np.argsort(self.time, kind="stable")
        times = self.time[order]
        c1 = np.concatenate([[0.0], np.cumsum(self.w1[order])])
        c2 = np.concatenate([[0.0], np.cumsum(self.w2[order])])
        idx = np.searchsorted(times, t, side="right")
        return c1[idx], c2[idx]

    def to_csv(self, fh=None):
        """Write rows sorted by time; returns the text when ``fh`` is None."""
        out = io.StringIO() if fh is None else fh
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        p = self.sorted()
        for row in zip(p.time, p.w1, p.w2, p.kind):
            writer.writerow((_fmt(row[0]), _fmt(row[1]), _fmt(row[2]), row[3]))
        return out.getvalue() if fh is None else None

    @classmethod
    def from_csv(cls, fh, T=None):
        """Parse ``time,w1,w2[,kind]`` rows. ``T`` defaults to the last jump time."""
        reader = csv.reader(fh)
        try:
            header = [h.strip().lower() for h in next(reader)]
        except StopIteration:
            raise DomainError("empty observation file") from None
        missing = [c for c in ("time", "w1", "w2") if c not in header]
        if missing:
            raise DomainError(f"missing columns {missing} in header {header}")
        cols = {name: header.index(name) for name in header}
        times, w1, w2, kinds = [], [], [], []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            try:
                times.append(float(row[cols["time"]]))
                w1.append(float(row[cols["w1"]]))
                w2.append(float(row[cols["w2"]]))
                if "kind" in cols:
                    k = row[cols["kind"]].strip()
                    k = "par" if k == "both" else k
                    if k not in KINDS:
                        raise ValueError(f"unknown kind {k!r}")
                    kinds.append(k)
            except (ValueError, IndexError) as exc:
                raise DomainError(f"line {lineno}: malformed row {row!r} ({exc})") from None
        if not times:
            raise DomainError("observation file contains no rows")
        if T is None:
            T = max(times)
        return cls(T, times, w1, w2, kinds if "kind" in cols else None)


def classify(w1, w2):
    w1 = np.asarray(w1, dtype=float)
    w2 = np.asarray(w2, dtype=float)
    kind = np.where(w1 > 0, np.where(w2 > 0, "par", "perp1"), "perp2")
    if np.any((w1 <= 0) & (w2 <= 0)):
        raise DomainError("every record needs at least one positive weight")
    return kind.astype("<U5")


@dataclass
class ObservationSet:
    """Classified jumps over [0, T]: one-coordinate jumps and joint jumps."""
    T: float
    perp1: np.ndarray
    perp2: np.ndarray
    parallel: np.ndarray

    def __post_init__(self):
        if not (np.isfinite(self.T) and self.T > 0):
            raise DomainError("horizon T must be positive")
        self.perp1 = np.asarray(self.perp1, dtype=float).reshape(-1)
        self.perp2 = np.asarray(self.perp2, dtype=float).reshape(-1)
        self.parallel = np.asarray(self.parallel, dtype=float).reshape(-1, 2)
        for name in ("perp1", "perp2", "parallel"):
            if np.any(~(getattr(self, name) > 0)):
                raise DomainError(f"{name} weights must be > 0")

    @classmethod
    def from_path(cls, path):
        k = path.kind
        return cls(path.T, path.w1[k == "perp1"], path.w2[k == "perp2"],
                   np.column_stack([path.w1[k == "par"], path.w2[k == "par"]]))

    @property
    def counts(self):
        return self.perp1.size, self.perp2.size, self.parallel.shape[0]

    @property
    def is_empty(self):
        return sum(self.counts) == 0

    def marginal_weights(self, i):
        """All jumps seen in coordinate ``i``: one-coordinate plus joint."""
        if i == 1:
            return np.concatenate([self.perp1, self.parallel[:, 0]])
        if i == 2:
            return np.concatenate([self.perp2, self.parallel[:, 1]])
        raise DomainError("dimension index must be 1 or 2")
