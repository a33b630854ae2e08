"""Reading and writing poset configuration files.

The format is line based UTF-8 text::

    # a diamond
    [meta]
    name = diamond
    base = a

    [elements]
    a b c
    d

    [covers]
    a < b : 2
    a < c : 3
    b < d : 3
    c < d : 2

``[elements]`` lists identifiers separated by whitespace or commas, and
``[covers]`` has one ``lower < upper : label`` entry per line.  ``[meta]``
is optional and accepts only the keys in :data:`META_KEYS`.  ``#`` starts a
comment.  Anything else is a :class:`ConfigError` carrying line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Tuple, Union

from .errors import ConfigError
from .system import FactorSystem, Poset, close_and_validate

__all__ = ["META_KEYS", "ParsedConfig", "parse_config", "load_config", "load_system", "dump_config"]

META_KEYS = ("name", "description", "base", "depth")
SECTIONS = ("meta", "elements", "covers")

_IDENT = re.compile(r"[A-Za-z0-9_.\-]+")
_SECTION = re.compile(r"\[\s*([^\]]*?)\s*\]\s*$")
_COVER = re.compile(r"(?P<lo>[^\s<:]+)\s*<\s*(?P<hi>[^\s<:]+)\s*:\s*(?P<n>\S+)\s*$")


@dataclass
class ParsedConfig:
    elements: List[str] = field(default_factory=list)
    covers: Dict[Tuple[str, str], int] = field(default_factory=dict)
    meta: Dict[str, str] = field(default_factory=dict)

    def poset(self) -> Poset:
        return Poset(self.elements, self.covers)

    def system(self) -> FactorSystem:
        return close_and_validate(self.poset(), self.covers, self.meta)


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_config(text: str) -> ParsedConfig:
    """Parse config text; does not validate the order or the labels."""
    cfg = ParsedConfig()
    seen_sections = set()
    cover_lines: Dict[Tuple[str, str], int] = {}
    meta_where: Dict[str, Tuple[int, int]] = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        body = line.lstrip()
        if not body:
            continue
        col = len(line) - len(body) + 1
        m = _SECTION.match(body)
        if body.startswith("["):
            if not m:
                raise ConfigError("malformed section header", lineno, col)
            name = m.group(1)
            if name not in SECTIONS:
                raise ConfigError(f"unknown section [{name}]", lineno, col)
            if name in seen_sections:
                raise ConfigError(f"duplicate section [{name}]", lineno, col)
            seen_sections.add(name)
            section = name
            continue
        if section is None:
            raise ConfigError("entry outside of any section", lineno, col)
        if section == "meta":
            key, sep, value = body.partition("=")
            key = key.strip()
            if not sep:
                raise ConfigError("expected 'key = value'", lineno, col)
            if key not in META_KEYS:
                raise ConfigError(f"unknown meta key {key!r}", lineno, col)
            if key in cfg.meta:
                raise ConfigError(f"duplicate meta key {key!r}", lineno, col)
            value = value.strip()
            if key == "depth" and not value.isdigit():
                raise ConfigError("depth must be a natural number", lineno, col + body.index("=") + 1)
            cfg.meta[key] = value
            meta_where[key] = (lineno, col)
        elif section == "elements":
            for tok in re.finditer(r"[^\s,]+", body):
                name = tok.group(0)
                where = col + tok.start()
                if not _IDENT.fullmatch(name):
                    raise ConfigError(f"invalid identifier {name!r}", lineno, where)
                if name in cfg.elements:
                    raise ConfigError(f"duplicate element {name!r}", lineno, where)
                cfg.elements.append(name)
        else:
            m = _COVER.match(body)
            if not m:
                raise ConfigError("expected 'lower < upper : label'", lineno, col)
            lo, hi, n = m.group("lo"), m.group("hi"), m.group("n")
            for grp in ("lo", "hi"):
                name = m.group(grp)
                if name not in cfg.elements:
                    raise ConfigError(f"undeclared element {name!r}", lineno, col + m.start(grp))
            if not n.isdigit() or int(n) < 1:
                raise ConfigError(f"label must be a natural number >= 1, got {n!r}", lineno, col + m.start("n"))
            if (lo, hi) in cover_lines:
                raise ConfigError(f"duplicate cover {lo} < {hi} (first on line {cover_lines[(lo, hi)]})", lineno, col)
            cover_lines[(lo, hi)] = lineno
            cfg.covers[(lo, hi)] = int(n)
    if "elements" not in seen_sections:
        raise ConfigError("missing [elements] section", max(1, len(text.splitlines())), 1)
    if "base" in cfg.meta and cfg.meta["base"] not in cfg.elements:
        raise ConfigError(f"meta base {cfg.meta['base']!r} is not an element", *meta_where["base"])
    return cfg


def load_config(path: Union[str, Path]) -> ParsedConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def load_system(path: Union[str, Path]) -> FactorSystem:
    """Parse a config file and close/validate its labels."""
    return load_config(path).system()


def dump_config(system: FactorSystem) -> str:
    """Serialise a factor system (its Hasse diagram labels) in config format."""
    lines = []
    meta = {k: v for k, v in system.meta.items() if k in META_KEYS}
    if meta:
        lines.append("[meta]")
        lines.extend(f"{k} = {meta[k]}" for k in META_KEYS if k in meta)
        lines.append("")
    lines.append("[elements]")
    lines.append(" ".join(str(e) for e in system.elements))
    lines.append("")
    lines.append("[covers]")
    for (a, b), n in system.cover_labels().items():
        lines.append(f"{a} < {b} : {n}")
    return "\n".join(lines) + "\n"
