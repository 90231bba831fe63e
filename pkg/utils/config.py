"""Size guards for the exhaustive enumerations.

Every operation that walks a whole lattice, chamber complex or tree family
checks its size argument against a guard from ``Limits``. The environment
variable ``NCPART_MAX_N`` (or the CLI's ``--max-n``) raises all guards to at
least the given value.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional

from utils.errors import GuardExceeded

logger = logging.getLogger(__name__)

ENV_MAX_N = "NCPART_MAX_N"

DEFAULT_LIMITS: Dict[str, int] = {
    "nc_enumerate:A": 8,
    "nc_enumerate:B": 6,
    "nc_enumerate:D": 6,
    "chambers:BUILDING": 7,
    "chambers:PN": 7,
    "chambers:NCP": 8,
    "apartments:BUILDING": 6,
    "apartments:PN": 7,
    "apartments:NCP": 8,
    "full_aut_group:A": 5,
    "full_aut_group:B": 4,
    "full_aut_group:D": 4,
    "link_property_scan": 6,
    "spanning_trees": 7,
    "subspace_lattice": 6,
    "hurwitz:A": 6,
    "hurwitz:B": 4,
    "hurwitz:D": 4,
}


@dataclass(frozen=True)
class Limits:
    """Guard table plus an optional global floor."""

    table: Mapping[str, int] = field(default_factory=lambda: dict(DEFAULT_LIMITS))
    max_n: Optional[int] = None

    def limit(self, name: str) -> int:
        base = self.table[name]
        if self.max_n is not None:
            return max(base, self.max_n)
        return base


def _parse_max_n(raw: Optional[str]) -> Optional[int]:
    """Read an override value, ignoring malformed input with a warning."""

    if raw is None or raw.strip() == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        logger.warning("ignoring %s=%r: not an integer", ENV_MAX_N, raw)
        return None
    if value < 1:
        logger.warning("ignoring %s=%r: must be positive", ENV_MAX_N, raw)
        return None
    return value


def load_limits(environ: Optional[Mapping[str, str]] = None) -> Limits:
    """Build the guard table from defaults and the environment."""

    env = os.environ if environ is None else environ
    max_n = _parse_max_n(env.get(ENV_MAX_N))
    if max_n is not None:
        logger.warning("size guards raised to n>=%d via %s; large runs may be slow", max_n, ENV_MAX_N)
    return Limits(max_n=max_n)


_ACTIVE: Optional[Limits] = None


def active_limits() -> Limits:
    global _ACTIVE
    if _ACTIVE is None:
        _ACTIVE = load_limits()
    return _ACTIVE


def set_max_n(value: Optional[int]) -> Limits:
    """Install a global override (``None`` restores the environment defaults)."""

    global _ACTIVE
    if value is None:
        _ACTIVE = load_limits()
    else:
        logger.warning("size guards raised to n>=%d; large runs may be slow", value)
        _ACTIVE = Limits(max_n=value)
    return _ACTIVE


def check_guard(name: str, n: int) -> None:
    """Raise ``GuardExceeded`` when ``n`` is above the guard called ``name``."""

    limit = active_limits().limit(name)
    if n > limit:
        raise GuardExceeded(name, n, limit)
