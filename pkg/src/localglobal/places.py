from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: a finite prime ``p`` or the infinite place (``p is None``)."""

    p: int | None = None

    @classmethod
    def infinite(cls) -> Place:
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.p is None

    @classmethod
    def parse(cls, text: str) -> Place:
        t = str(text).strip().lower()
        if t in ("inf", "infinity", "oo", "∞", "r"):
            return cls(None)
        p = int(t)
        if p < 2:
            raise ValueError(f"not a place: {text!r}")
        return cls(p)

    def __str__(self) -> str:
        return "inf" if self.p is None else str(self.p)

    def sort_key(self):
        # finite places by prime, infinity last
        return (1, 0) if self.p is None else (0, self.p)


INF = Place.infinite()
