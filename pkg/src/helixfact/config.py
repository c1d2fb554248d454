"""Plain-text ``key = value`` run configuration.

One assignment per line; ``#`` starts a comment.  Values stay strings until a
command converts them, so files round-trip byte-for-byte through
:func:`dumps`.
"""

from __future__ import annotations

from pathlib import Path


def loads(text: str) -> dict:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ValueError(f"line {lineno}: empty key")
        out[key] = value
    return out


def load(path) -> dict:
    return loads(Path(path).read_text())


def dumps(cfg: dict) -> str:
    return "".join(f"{k} = {_fmt(v)}\n" for k, v in sorted(cfg.items()))


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ",".join(_fmt(x) for x in v)
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def as_bool(s) -> bool:
    if isinstance(s, bool):
        return s
    s = str(s).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off", ""):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def as_int_list(s) -> list:
    if isinstance(s, (list, tuple)):
        return [int(x) for x in s]
    return [int(x) for x in str(s).replace(" ", "").split(",") if x]


def as_float_list(s) -> list:
    if isinstance(s, (list, tuple)):
        return [float(x) for x in s]
    return [float(x) for x in str(s).replace(" ", "").split(",") if x]
