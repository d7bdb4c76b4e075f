"""Linear AONT matrices shipped with the package, re-verified on load."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Optional, Tuple

from .aont_linear import AontParams, LinearAont, VerificationReport, verify_linear_aont
from .matrix_gf import invert, parse_matrix

_PARAMS_RE = re.compile(r"\((\d+),(\d+),(\d+),(\d+)\)")


class CorruptCatalog(RuntimeError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    aont: LinearAont
    report: VerificationReport

    @property
    def params(self) -> AontParams:
        return self.aont.params


def _entry_names() -> List[str]:
    files = resources.files(__package__).joinpath("data").iterdir()
    return sorted(p.name[:-4] for p in files if p.name.endswith(".txt"))


def _sort_key(name: str) -> Tuple:
    return (name[0] != "E", name)


@lru_cache(maxsize=1)
def load_catalog() -> Tuple[CatalogEntry, ...]:
    entries = []
    for name in sorted(_entry_names(), key=_sort_key):
        text = resources.files(__package__).joinpath("data").joinpath(name + ".txt").read_text()
        match = _PARAMS_RE.search(text.splitlines()[0])
        if match is None:
            raise CorruptCatalog(f"{name}: missing parameter comment")
        t_i, t_o, s, q = (int(g) for g in match.groups())
        m = parse_matrix(text)
        if m.shape != (s, s) or m.field.q != q:
            raise CorruptCatalog(f"{name}: matrix does not match declared ({t_i},{t_o},{s},{q})")
        report = verify_linear_aont(m, t_i, t_o)
        if not report.passed:
            raise CorruptCatalog(f"{name}: failed verification {report.to_dict()}")
        aont = LinearAont(AontParams(t_i, t_o, s, q), m, invert(m))
        entries.append(CatalogEntry(name, aont, report))
    return tuple(entries)


def catalog_by_params() -> Dict[Tuple[int, int, int, int], CatalogEntry]:
    return {e.params.astuple(): e for e in load_catalog()}


def catalog_lookup(t_i: int, t_o: int, s: int, q: int) -> Optional[LinearAont]:
    entry = catalog_by_params().get((t_i, t_o, s, q))
    return None if entry is None else entry.aont


def catalog_entry(name: str) -> CatalogEntry:
    for e in load_catalog():
        if e.name == name:
            return e
    raise KeyError(name)
