"""CSV cache for exact coefficients, one file per (form, limit).

File name: ``<form_id>_<limit>.csv`` with header ``n,a_f_n``.  A lookup
for limit L accepts any cached file for the same form whose limit is
at least L.  The cache directory comes from an explicit argument, the
``NEWFORMLAB_CACHE`` environment variable, or is disabled.
"""

from __future__ import annotations

import os
import re

ENV_VAR = "NEWFORMLAB_CACHE"

_FILE_RE = re.compile(r"^(?P<form>.+)_(?P<limit>\d+)\.csv$")


def resolve_cache_dir(flag_value: str | None) -> str | None:
    if flag_value:
        return flag_value
    return os.environ.get(ENV_VAR) or None


def _cache_path(cache_dir: str, form_id: str, limit: int) -> str:
    return os.path.join(cache_dir, f"{form_id}_{limit}.csv")


def find_cached(cache_dir: str, form_id: str, limit: int) -> str | None:
    """Path of a cache file for ``form_id`` with limit >= ``limit``, if any."""
    if not os.path.isdir(cache_dir):
        return None
    best = None
    for name in sorted(os.listdir(cache_dir)):
        m = _FILE_RE.match(name)
        if not m or m.group("form") != form_id:
            continue
        file_limit = int(m.group("limit"))
        if file_limit >= limit and (best is None or file_limit < best[0]):
            best = (file_limit, os.path.join(cache_dir, name))
    return best[1] if best else None


def load_raw(cache_dir: str, form_id: str, limit: int) -> list[int] | None:
    """Exact coefficients [0, a_f(1), ..., a_f(L)] from cache, or None on miss."""
    path = find_cached(cache_dir, form_id, limit)
    if path is None:
        return None
    raw = [0]
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip()
        if header != "n,a_f_n":
            raise ValueError(f"unrecognized cache header in {path}: {header!r}")
        for line in fh:
            n_str, v_str = line.rstrip("\n").split(",")
            n = int(n_str)
            if n != len(raw):
                raise ValueError(f"non-contiguous cache file {path} at n={n}")
            raw.append(int(v_str))
    if len(raw) <= limit:
        raise ValueError(f"cache file {path} shorter than advertised")
    return raw


def store_raw(cache_dir: str, form_id: str, limit: int, raw: list[int]) -> str:
    os.makedirs(cache_dir, exist_ok=True)
    path = _cache_path(cache_dir, form_id, limit)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="ascii") as fh:
        fh.write("n,a_f_n\n")
        for n in range(1, limit + 1):
            fh.write(f"{n},{raw[n]}\n")
    os.replace(tmp, path)
    return path
