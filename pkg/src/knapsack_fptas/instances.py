"""Seeded instance generators and the text / JSON instance formats."""

from __future__ import annotations

import json
import os
import random
from typing import Union

from .core import Instance, Item

PROFILES = ("uniform", "many-distinct-profits", "clustered-unit-profit", "scale-spread")

# ratios p/w shared by many items in the clustered profile; small numerators
# keep total profit low enough for the exact profit-axis DP
_UNIT_RATIOS = ((1, 1000), (2, 1500), (3, 2000), (3, 4000))


def _rng(seed: int, profile: str) -> random.Random:
    return random.Random(seed * 1_000_003 + PROFILES.index(profile))


def gen_instance(seed: int, profile: str = "uniform", n: int = 20, max_w: int = 10**6) -> Instance:
    """Deterministic random instance for one of the four stress profiles."""
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; expected one of {PROFILES}")
    if n < 0 or max_w < 1:
        raise ValueError("need n >= 0 and max_w >= 1")
    r = _rng(seed, profile)
    items = []
    if profile == "uniform":
        for _ in range(n):
            items.append(Item(r.randint(1, 1000), r.randint(1, max_w)))
    elif profile == "many-distinct-profits":
        # one power-of-two band; for n <= 100 neighbouring profits differ by more
        # than the rounding grain used at eps = 0.05
        base = 1 << 10
        gap = base // max(n, 1)
        order = list(range(n))
        r.shuffle(order)
        for k in order:
            items.append(Item(base + k * gap + r.randint(0, gap // 4), r.randint(1, max_w)))
    elif profile == "clustered-unit-profit":
        for _ in range(n):
            num, den = r.choice(_UNIT_RATIOS)
            t = r.randint(1, max(1, max_w // den))
            items.append(Item(num * t, den * t))
    else:
        spread = 12
        for i in range(n):
            # the first two items pin the extremes so the profile always spans the full range
            j = 0 if i == 0 else spread if i == 1 else r.randint(0, spread)
            items.append(Item((1 << j) + r.randrange(1 << j), r.randint(1, max_w)))
    total = sum(it.weight for it in items)
    capacity = r.randint(total // 10, max(total // 10, total // 2)) if total else 0
    return Instance(items, capacity)


def serialize_instance(inst: Instance, fmt: str = "text") -> str:
    if fmt == "text":
        lines = [f"{inst.n} {inst.capacity}"]
        lines.extend(f"{it.profit} {it.weight}" for it in inst.items)
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return json.dumps({"capacity": inst.capacity,
                           "items": [{"p": it.profit, "w": it.weight} for it in inst.items]},
                          sort_keys=True)
    raise ValueError(f"unknown format {fmt!r}")


def _int(tok) -> int:
    if isinstance(tok, bool) or not isinstance(tok, (int, str)):
        raise ValueError(f"expected an integer, got {tok!r}")
    v = int(tok)
    if v < 0:
        raise ValueError(f"negative value {v}")
    return v


def parse_instance(text: str) -> Instance:
    """Parse either format; raises ValueError on malformed input."""
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty input")
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
            cap = _int(obj["capacity"])
            items = [Item(_int(d["p"]), _int(d["w"])) for d in obj["items"]]
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise ValueError(f"malformed JSON instance: {exc}") from exc
        return Instance(items, cap)
    rows = [line.split() for line in stripped.splitlines() if line.strip()]
    if len(rows[0]) != 2:
        raise ValueError("first line must be 'n W'")
    n, cap = _int(rows[0][0]), _int(rows[0][1])
    if len(rows) - 1 != n:
        raise ValueError(f"header says {n} items, found {len(rows) - 1}")
    items = []
    for row in rows[1:]:
        if len(row) != 2:
            raise ValueError(f"item line must be 'p w', got {' '.join(row)!r}")
        items.append(Item(_int(row[0]), _int(row[1])))
    return Instance(items, cap)


def load_instance(path: Union[str, os.PathLike]) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())
