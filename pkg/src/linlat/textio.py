"""
Reading and writing lattices and morphism literals.

Text form::

    lattice M2
    elements 0 a b 1
    cover 0 a
    cover 0 b
    cover a 1
    cover b 1

Several blocks may share one stream.  A JSON object with keys
``name``/``elements``/``covers`` (or a list of them) is accepted as well.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .errors import ParseError
from .lattice import Lattice, build_lattice
from .morphisms import validate_linear


def _strip(line):
    return line.split("#", 1)[0].strip()


def parse_lattices(text: str) -> list:
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        return lattices_from_json(text)
    blocks = []
    cur = None
    in_morphism = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        if in_morphism:
            in_morphism = "}" not in line
            continue
        words = line.split()
        head = words[0]
        if head == "lattice":
            if len(words) != 2:
                raise ParseError("expected 'lattice <name>'", lineno)
            cur = {"name": words[1], "elements": None, "covers": [], "line": lineno}
            blocks.append(cur)
        elif head == "morphism":
            # morphism literals are read by parse_morphisms
            cur = None
            in_morphism = "}" not in line
        elif cur is None:
            raise ParseError(f"'{head}' outside a lattice block", lineno)
        elif head == "elements":
            if cur["elements"] is not None:
                raise ParseError("duplicate elements line", lineno)
            if len(words) < 2:
                raise ParseError("empty elements line", lineno)
            cur["elements"] = words[1:]
        elif head == "cover":
            if len(words) != 3:
                raise ParseError("expected 'cover <x> <y>'", lineno)
            if cur["elements"] is None:
                raise ParseError("cover before elements line", lineno)
            known = set(cur["elements"])
            for w in words[1:]:
                if w not in known:
                    raise ParseError(f"unknown element {w!r}", lineno)
            cur["covers"].append((words[1], words[2]))
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    out = []
    for b in blocks:
        if b["elements"] is None:
            raise ParseError(f"lattice {b['name']} has no elements line", b["line"])
        out.append(build_lattice(b["elements"], b["covers"], name=b["name"]))
    return out


def parse_lattice(text: str) -> Lattice:
    lats = parse_lattices(text)
    if len(lats) != 1:
        raise ParseError(f"expected exactly one lattice, found {len(lats)}")
    return lats[0]


def lattices_from_json(text: str) -> list:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.lineno) from None
    if isinstance(data, dict):
        data = [data]
    out = []
    for obj in data:
        if not isinstance(obj, dict) or "elements" not in obj:
            raise ParseError("JSON lattice needs an 'elements' key")
        covers = obj.get("covers", [])
        if any(len(c) != 2 for c in covers):
            raise ParseError("each JSON cover must be a pair")
        out.append(build_lattice(obj["elements"], covers, name=obj.get("name", "L")))
    return out


def lattice_to_json(L: Lattice) -> dict:
    return {"name": L.name, "elements": list(L.names), "covers": [list(c) for c in L.cover_names()]}


def format_lattice(L: Lattice) -> str:
    lines = [f"lattice {L.name}", "elements " + " ".join(L.names)]
    lines += [f"cover {x} {y}" for x, y in L.cover_names()]
    return "\n".join(lines) + "\n"


def read_lattices(path) -> list:
    return parse_lattices(Path(path).read_text())


# ---------------------------------------------------------------------------
# morphism literals

_MORPHISM = re.compile(r"morphism\s+(\S+)\s*:\s*(\S+)\s*\{(.*?)\}", re.S)


def parse_morphisms(text: str, lattices) -> list:
    """Parse every ``morphism <name> : <lattice> { x->y, ... }`` literal.

    ``lattices`` maps lattice names to Lattice objects (a list is accepted).
    """
    if not isinstance(lattices, dict):
        lattices = {L.name: L for L in lattices}
    out = []
    clean = "\n".join(raw.split("#", 1)[0] for raw in text.splitlines())
    for m in _MORPHISM.finditer(clean):
        lineno = clean.count("\n", 0, m.start()) + 1
        name, lname, body = m.groups()
        if lname not in lattices:
            raise ParseError(f"morphism {name} refers to unknown lattice {lname}", lineno)
        L = lattices[lname]
        mapping = {}
        for item in filter(None, (s.strip() for s in body.split(","))):
            if "->" not in item:
                raise ParseError(f"expected 'x->y', got {item!r}", lineno)
            x, y = (s.strip() for s in item.split("->", 1))
            for w in (x, y):
                if w not in L.names:
                    raise ParseError(f"unknown element {w!r} in morphism {name}", lineno)
            if L[x] in mapping:
                raise ParseError(f"{x} mapped twice in morphism {name}", lineno)
            mapping[L[x]] = L[y]
        missing = [L.names[x] for x in range(L.n) if x not in mapping]
        if missing:
            raise ParseError(f"morphism {name} is not total: missing {', '.join(missing)}", lineno)
        W = L.whole()
        out.append(validate_linear(W, W, mapping, name=name))
    return out


def format_morphism(f, name=None) -> str:
    return f"morphism {name or f.name or 'f'} : {f.lattice.name} {f.describe()}"
