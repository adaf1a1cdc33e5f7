# src/billiardlab/utils/selectors.py
from __future__ import annotations
import re
from dataclasses import dataclass
from typing import Dict, List, Optional

from billiardlab.models import DerivedKind
from billiardlab.centers.base import available_centers
from billiardlab.utils.config import ConfigError


@dataclass(frozen=True)
class LocusSelector:
    """What to track per orbit triangle: a center, a derived-triangle vertex, or a composite."""
    name: str                              # canonical form, e.g. "X9", "intouch-vertices"
    index: Optional[int] = None            # Kimberling index for center selectors
    kind: Optional[DerivedKind] = None     # derived triangle whose vertex 0 is tracked


class SelectorResolver:
    """
    Normalizes user spellings into canonical locus selectors.

    Accepts:
    - Kimberling spellings: X1, x1, X_1, X(1)
    - Center names: incenter, barycenter, mittenpunkt, ...
    - Derived-vertex names with or without the "-vertices" suffix; a bare derived name
      always means the derived triangle (feuerbach, medial), never a center
    """

    def __init__(self):
        self.center_aliases: Dict[str, int] = {
            "INCENTER": 1,
            "BARYCENTER": 2,
            "CENTROID": 2,
            "CIRCUMCENTER": 3,
            "ORTHOCENTER": 4,
            "NINE-POINT-CENTER": 5,
            "SYMMEDIAN": 6,
            "SYMMEDIAN-POINT": 6,
            "LEMOINE": 6,
            "MITTENPUNKT": 9,
            "FEUERBACH-POINT": 11,
        }
        self.derived_aliases: Dict[str, DerivedKind] = {k.value.upper(): k for k in DerivedKind}
        self.derived_aliases["ANTICOMPL"] = DerivedKind.ANTICOMPLEMENTARY
        self.composites = {"EXCENTERS": "excenters", "ANTICOMPL-INTOUCH": "anticompl-intouch",
                           "ORTHIC-INCENTER": "orthic-incenter"}

    def normalize(self, raw: str) -> str:
        s = raw.upper().strip()
        s = re.sub(r"[\s_]+", "-", s)
        s = re.sub(r"-+", "-", s)
        return s.strip("-")

    def resolve(self, raw: str) -> LocusSelector:
        s = self.normalize(raw)
        m = re.match(r"^X-?\(?(\d+)\)?$", s)
        if m:
            return self._center(int(m.group(1)), raw)
        if s in self.center_aliases:
            return self._center(self.center_aliases[s], raw)
        if s in self.composites:
            return LocusSelector(name=self.composites[s])
        base = s[: -len("-VERTICES")] if s.endswith("-VERTICES") else s
        if base == "EXCENTRAL":
            return LocusSelector(name="excenters")
        if base in self.derived_aliases:
            kind = self.derived_aliases[base]
            return LocusSelector(name=f"{kind.value}-vertices", kind=kind)
        raise ConfigError(f"Unknown locus selector {raw!r}. Known: {', '.join(known_selectors())}")

    def _center(self, index: int, raw: str) -> LocusSelector:
        if index not in available_centers():
            known = ", ".join(f"X{i}" for i in available_centers())
            raise ConfigError(f"Unsupported center {raw!r}. Known: {known}")
        return LocusSelector(name=f"X{index}", index=index)


_resolver = SelectorResolver()


def resolve_selector(raw: str) -> LocusSelector:
    return _resolver.resolve(raw)


def known_selectors() -> List[str]:
    names = [f"X{i}" for i in available_centers()]
    names += ["excenters", "anticompl-intouch", "orthic-incenter"]
    names += [f"{k.value}-vertices" for k in DerivedKind if k is not DerivedKind.EXCENTRAL]
    return names
