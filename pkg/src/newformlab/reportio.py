"""Deterministic report emission: CSV rows and canonical JSON.

Every float is printed with 17 significant digits (round-trippable
doubles); JSON objects are emitted with sorted keys so identical runs
produce identical bytes.
"""

from __future__ import annotations

from fractions import Fraction


def fmt_float(x: float) -> str:
    return f"{float(x):.17g}"


def _atom(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return fmt_float(value)
    if isinstance(value, Fraction):
        return json_escape(f"{value.numerator}/{value.denominator}")
    return json_escape(str(value))


def json_escape(text: str) -> str:
    out = ['"']
    for ch in text:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def to_json(obj, indent: int = 0) -> str:
    """Canonical JSON: sorted keys, 17-significant-digit floats."""
    pad = " " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = []
        for key in sorted(obj):
            items.append(f"{pad}  {json_escape(str(key))}: "
                         f"{to_json(obj[key], indent + 2)}")
        inner = ",\n".join(items)
        return "{\n" + inner + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}  {to_json(v, indent + 2)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return _atom(obj)


def csv_line(*fields) -> str:
    parts = []
    for f in fields:
        if isinstance(f, bool):
            parts.append("true" if f else "false")
        elif isinstance(f, float):
            parts.append(fmt_float(f))
        else:
            parts.append(str(f))
    return ",".join(parts)
