"""VM type catalog: compute capacity, bandwidth, hourly pricing, price ranks.

Ranks are the integer positions of each type in price-ascending order;
they define the coordinate system used by the scheduler's mapping
distance.  Bandwidth is MB/s with a fixed conversion of 10^6 bytes/MB.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import DuplicateName, MalformedInput, NonPositiveField, UnknownType

BYTES_PER_MB = 1e6
DEFAULT_BILLING_SECONDS = 3600.0


@dataclass(frozen=True)
class VmType:
    name: str
    compute_units: float
    bandwidth_mbps: float
    price_per_hour: float

    def __post_init__(self):
        for attr in ("compute_units", "bandwidth_mbps", "price_per_hour"):
            if getattr(self, attr) <= 0:
                raise NonPositiveField(f"{self.name!r}: {attr} must be > 0")


class Catalog:
    """Immutable list of VM types plus their price-rank order.

    Price ties are broken lexicographically by name so ranks stay a
    bijection for custom catalogs.
    """

    def __init__(self, types: list[VmType], billing_seconds: float = DEFAULT_BILLING_SECONDS):
        names = [t.name for t in types]
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise DuplicateName(f"duplicate VM type name {dup!r}")
        if billing_seconds <= 0:
            raise NonPositiveField("billing_seconds must be > 0")
        self.types: tuple[VmType, ...] = tuple(types)
        self.billing_seconds = float(billing_seconds)
        ranked = sorted(types, key=lambda t: (t.price_per_hour, t.name))
        self.rank: dict[str, int] = {t.name: i for i, t in enumerate(ranked)}
        self._by_name = {t.name: t for t in types}
        self._by_rank = tuple(ranked)

    def __len__(self):
        return len(self.types)

    def __iter__(self):
        return iter(self.types)

    def get(self, name: str) -> VmType:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownType(f"unknown VM type {name!r}") from None

    def by_rank(self, rank: int) -> VmType:
        return self._by_rank[rank]


_DEFAULT_ROWS = [
    ("m3.medium", 3.75, 85.2, 0.067),
    ("m4.large", 7.5, 35.2, 0.1),
    ("m3.large", 7.5, 85.2, 0.133),
    ("m4.xlarge", 15, 68, 0.2),
    ("m3.xlarge", 15, 131, 0.266),
    ("m4.2xlarge", 30, 131, 0.4),
    ("m3.2xlarge", 40, 131, 0.532),
    ("m4.4xlarge", 45, 181, 0.8),
]


def default_catalog() -> Catalog:
    """The eight stock EC2 on-demand types, sorted by price."""
    return Catalog([VmType(n, float(c), float(b), float(p)) for n, c, b, p in _DEFAULT_ROWS])


def load_catalog(text: str) -> Catalog:
    """Parse the catalog JSON format (see README for the schema)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(exc.msg, position=f"offset {exc.pos}") from exc
    if not isinstance(doc, dict) or "types" not in doc:
        raise MalformedInput("catalog document needs a 'types' array")
    types = []
    for i, raw in enumerate(doc["types"]):
        if not isinstance(raw, dict):
            raise MalformedInput("type entry must be an object", position=f"types[{i}]")
        missing = {"name", "compute_units", "bandwidth_mbps", "price_per_hour"} - raw.keys()
        if missing:
            raise MalformedInput(f"missing fields {sorted(missing)}", position=f"types[{i}]")
        try:
            types.append(
                VmType(
                    str(raw["name"]),
                    float(raw["compute_units"]),
                    float(raw["bandwidth_mbps"]),
                    float(raw["price_per_hour"]),
                )
            )
        except (TypeError, ValueError):
            raise MalformedInput("numeric field not a number", position=f"types[{i}]")
    if not types:
        raise MalformedInput("catalog has no types")
    return Catalog(types, billing_seconds=float(doc.get("billing_seconds", DEFAULT_BILLING_SECONDS)))


def dump_catalog(catalog: Catalog) -> str:
    doc = {
        "billing_seconds": catalog.billing_seconds,
        "types": [
            {
                "name": t.name,
                "compute_units": t.compute_units,
                "bandwidth_mbps": t.bandwidth_mbps,
                "price_per_hour": t.price_per_hour,
            }
            for t in catalog.types
        ],
    }
    return json.dumps(doc, indent=2)
