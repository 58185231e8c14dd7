"""Flat key=value config files with TOML-style scalar values.

Example::

    # baseline for the filtered runs
    alpha = 0.7071067811865476
    r = 0.7
    f = "none"
    subsystem = "AB1C1"
    seed = 7

Lines are ``key = value`` with ``#`` comments; values may be integers,
floats, booleans, quoted strings, or the bare word ``none``.  Keys mirror
the command-line flags and the command line wins on conflicts.
"""

from __future__ import annotations

from .errors import DomainError


def _parse_scalar(text: str, key: str, path: str):
    text = text.strip()
    if not text:
        raise DomainError(f"{path}: empty value for key {key!r}")
    if text.startswith(('"', "'")):
        quote = text[0]
        if len(text) < 2 or not text.endswith(quote):
            raise DomainError(f"{path}: unterminated string for key {key!r}")
        return text[1:-1]
    lowered = text.lower()
    if lowered == "true":
        return True
    if lowered == "false":
        return False
    if lowered == "none":
        return "none"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise DomainError(f"{path}: cannot parse value {text!r} for key {key!r}") from None


def load_config(path: str) -> dict:
    """Parse one flat config file into {key: scalar}."""
    values = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key = value, got {line!r}")
            key, _, rest = line.partition("=")
            # allow trailing comments after unquoted scalars
            if "#" in rest and not rest.strip().startswith(('"', "'")):
                rest = rest.split("#", 1)[0]
            values[key.strip()] = _parse_scalar(rest, key.strip(), path)
    return values
