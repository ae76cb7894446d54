"""Lookup of Mordell-Weil lattices of rational elliptic surfaces by trivial lattice."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ..errors import ParseError, RejectionError
from .gram import GramLattice
from .roots import RootSum

TABLE_FILE = "mw_table.txt"


@dataclass(frozen=True)
class MWEntry:
    no: int
    roots: RootSum
    mw: GramLattice
    narrow: GramLattice
    torsion: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.mw.rank

    @property
    def torsion_order(self) -> int:
        out = 1
        for n in self.torsion:
            out *= n
        return out

    def torsion_label(self) -> str:
        return " + ".join(f"Z/{n}" for n in self.torsion) if self.torsion else "0"


@dataclass(frozen=True)
class MWLookup:
    roots: RootSum
    rank: int
    entries: tuple[MWEntry, ...]

    @property
    def missing(self) -> bool:
        return not self.entries

    @property
    def ambiguous(self) -> bool:
        return len(self.entries) > 1


def _parse_torsion(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "0"):
        return ()
    out = []
    for part in text.split("+"):
        part = part.strip()
        if not part.startswith("Z/"):
            raise ParseError(f"bad torsion {text!r}")
        out.append(int(part[2:]))
    return tuple(out)


def parse_table(text: str) -> tuple[MWEntry, ...]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split("|")]
        if len(fields) != 5:
            raise ParseError(f"MW table line {lineno}: expected 5 fields")
        no, roots, mw, narrow, tors = fields
        rows.append(
            MWEntry(int(no), RootSum.parse(roots), GramLattice.parse(mw), GramLattice.parse(narrow),
                    _parse_torsion(tors))
        )
    return tuple(rows)


@lru_cache(maxsize=1)
def mw_table() -> tuple[MWEntry, ...]:
    text = resources.files("ellfib.data").joinpath(TABLE_FILE).read_text()
    return parse_table(text)


def mw_lookup(roots: RootSum | str) -> MWLookup:
    """All shipped rows whose trivial lattice has root part ``roots``.

    The rank ``8 - rank(T)`` is always reported; an empty ``entries`` tuple
    means the table has no row for this root type.
    """
    if isinstance(roots, str):
        roots = RootSum.parse(roots)
    if roots.rank > 8:
        raise RejectionError(f"root lattice {roots} has rank {roots.rank} > 8")
    entries = tuple(e for e in mw_table() if e.roots == roots)
    return MWLookup(roots, 8 - roots.rank, entries)


def entry(no: int) -> MWEntry:
    for e in mw_table():
        if e.no == no:
            return e
    raise KeyError(no)
