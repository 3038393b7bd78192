"""Plain-text lattice files and Hasse-diagram DOT export.

Format (whitespace-separated names, '#' comments):

    name: m3
    elements: 0 a1 a2 a3 1
    covers:
    0 a1
    0 a2
    a1 1
    ...
    generators: a1 a2 a3

`covers:` opens a block of one pair per line that runs until the next
``key:`` line or end of file.  `generators:` is optional.  Parsing feeds
`core.validate`, so a file that parses is a genuine bounded lattice.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Tuple

from latkit.core import FiniteLattice, covers, validate
from latkit.errors import ParseError

_KEY_RE = re.compile(r"^(name|elements|covers|generators)\s*:\s*(.*)$", re.IGNORECASE)


@dataclass
class LatticeFile:
    """Parsed form of a lattice file: name, lattice, optional generators."""

    name: str
    lattice: FiniteLattice
    generators: Optional[Tuple[str, ...]] = None


def parse(text: str) -> LatticeFile:
    name = None
    elements = None
    generators = None
    cover_pairs = []
    in_covers = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        matched = _KEY_RE.match(line)
        if matched:
            in_covers = False
            key = matched.group(1).lower()
            rest = matched.group(2)
            if key == "name":
                name = rest.strip()
            elif key == "elements":
                elements = tuple(rest.split())
            elif key == "generators":
                generators = tuple(rest.split())
            else:
                in_covers = True
                extra = rest.split()
                if extra:
                    if len(extra) != 2:
                        raise ParseError(lineno, "cover line needs exactly two names")
                    cover_pairs.append(((extra[0], extra[1]), lineno))
            continue
        if not in_covers:
            raise ParseError(lineno, f"unexpected line {line!r}")
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, "cover line needs exactly two names")
        cover_pairs.append(((parts[0], parts[1]), lineno))

    if elements is None:
        raise ParseError(0, "missing 'elements:' line")
    if len(set(elements)) != len(elements):
        raise ParseError(0, "duplicate element names")
    known = set(elements)
    for (a, b), lineno in cover_pairs:
        if a not in known:
            raise ParseError(lineno, f"unknown element {a!r}")
        if b not in known:
            raise ParseError(lineno, f"unknown element {b!r}")
    if generators is not None:
        for g in generators:
            if g not in known:
                raise ParseError(0, f"unknown generator {g!r}")
    lattice = validate(elements, [pair for pair, _ in cover_pairs])
    return LatticeFile(name=name or "lattice", lattice=lattice, generators=generators)


def serialize(
    lattice: FiniteLattice, name: str = "lattice", generators=None
) -> str:
    lines = [f"name: {name}", "elements: " + " ".join(lattice.universe), "covers:"]
    lines += [f"{a} {b}" for a, b in sorted(covers(lattice))]
    if generators:
        lines.append("generators: " + " ".join(generators))
    return "\n".join(lines) + "\n"


def load(path) -> LatticeFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def to_dot(lattice: FiniteLattice, name: str = "lattice") -> str:
    """Hasse diagram in DOT, ranked bottom to top."""

    def q(s: str) -> str:
        return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = [f"digraph {q(name)} {{", "  rankdir=BT;"]
    for element in lattice.universe:
        lines.append(f"  {q(element)};")
    for a, b in sorted(covers(lattice)):
        lines.append(f"  {q(a)} -> {q(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
