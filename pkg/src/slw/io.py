"""Reading and writing embedded graphs and coloring instances.

Two interchangeable encodings carry the same fields:

Text (one graph per file)::

    # comments allowed anywhere
    V 4 E 6
    rot 0: 0 2 4
    rot 1: 1 6 8
    ...
    twin: 0 1  2 3  4 5 ...
    lists:
    0: 1 2 3
    precolor:
    0: 1

`rot v:` lines give each vertex's darts in rotation order, `twin:` pairs up
opposite darts (pairs may continue on following lines). The optional `lists:`
and `precolor:` sections turn an embedding file into a coloring instance.

JSON mirrors the field names: ``{"V": n, "E": m, "rot": [[...], ...],
"twin": [[d, d'], ...], "lists": {"v": [...]}, "precolor": {"v": c}}``.

Rotation systems encode exactly the orientable cellular embeddings, so
non-orientable input is impossible by construction rather than rejected by a
check. Serialization round-trips bit-exactly: `rotation_rows` starts each
cycle at the vertex's smallest dart, so emit -> parse -> emit is the
identity on the text.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence

from .embedding import RotationEmbedding
from .errors import ParseError
from .listcolor import ListAssignment

__all__ = [
    "Instance",
    "format_embedding",
    "format_instance",
    "parse_embedding",
    "parse_instance",
    "instance_to_json",
    "instance_from_json",
    "load_instance",
    "save_instance",
    "to_dot",
]


@dataclass
class Instance:
    """An embedding optionally bundled with lists and a precoloring."""

    emb: RotationEmbedding
    lists: Optional[ListAssignment] = None
    precolor: Dict[int, int] = field(default_factory=dict)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            list(self.emb.vertex_of) == list(other.emb.vertex_of)
            and list(self.emb.next_dart) == list(other.emb.next_dart)
            and list(self.emb.twin) == list(other.emb.twin)
            and self.lists == other.lists
            and self.precolor == other.precolor
        )


def format_embedding(emb: RotationEmbedding) -> str:
    return format_instance(Instance(emb))


def format_instance(inst: Instance) -> str:
    emb = inst.emb
    out = [f"V {emb.n} E {emb.m}"]
    for v, row in enumerate(emb.rotation_rows()):
        out.append(f"rot {v}: " + " ".join(str(d) for d in row))
    pairs = [f"{d} {emb.twin[d]}" for d in range(2 * emb.m) if d < emb.twin[d]]
    out.append("twin: " + "  ".join(pairs))
    if inst.lists is not None:
        out.append("lists:")
        for v in sorted(inst.lists.vertices()):
            out.append(f"{v}: " + " ".join(str(c) for c in inst.lists.colors(v)))
    if inst.precolor:
        out.append("precolor:")
        for v in sorted(inst.precolor):
            out.append(f"{v}: {inst.precolor[v]}")
    return "\n".join(out) + "\n"


def _ints(text: str, where: str) -> List[int]:
    try:
        return [int(tok) for tok in text.split()]
    except ValueError:
        raise ParseError(f"{where}: expected integers, got {text!r}")


def parse_instance(text: str, *, allow_multi: bool = False) -> Instance:
    """Parse the text format. JSON input is detected and dispatched."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}")
        return instance_from_json(payload, allow_multi=allow_multi)

    n = m = None
    rot: Dict[int, List[int]] = {}
    twin_tokens: List[int] = []
    lists: Dict[int, List[int]] = {}
    precolor: Dict[int, int] = {}
    # Section state: rot/twin lines before any section header, then whichever
    # of lists/precolor headers appeared last.
    section = "graph"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"line {lineno}"
        if line.startswith("V ") or line == "V":
            toks = line.split()
            if len(toks) != 4 or toks[0] != "V" or toks[2] != "E":
                raise ParseError(f"{where}: malformed header {line!r}")
            n, m = _ints(toks[1], where)[0], _ints(toks[3], where)[0]
            continue
        if line.startswith("rot "):
            head, _, tail = line.partition(":")
            v = _ints(head[4:], where)[0]
            if v in rot:
                raise ParseError(f"{where}: duplicate rotation for vertex {v}")
            rot[v] = _ints(tail, where)
            continue
        if line.startswith("twin:"):
            section = "twin"
            twin_tokens.extend(_ints(line[5:], where))
            continue
        if line == "lists:":
            section = "lists"
            continue
        if line == "precolor:":
            section = "precolor"
            continue
        if section == "twin":
            twin_tokens.extend(_ints(line, where))
        elif section in ("lists", "precolor"):
            head, sep, tail = line.partition(":")
            if not sep:
                raise ParseError(f"{where}: expected 'v: ...' in {section} section")
            v = _ints(head, where)[0]
            vals = _ints(tail, where)
            if section == "lists":
                lists[v] = vals
            else:
                if len(vals) != 1:
                    raise ParseError(f"{where}: precolor takes one color per vertex")
                precolor[v] = vals[0]
        else:
            raise ParseError(f"{where}: unrecognized line {line!r}")

    if n is None:
        raise ParseError("missing 'V <n> E <m>' header")
    if set(rot) != set(range(n)):
        missing = sorted(set(range(n)) - set(rot))
        extra = sorted(set(rot) - set(range(n)))
        raise ParseError(f"rotation lines do not cover vertices 0..{n - 1}"
                         f" (missing {missing}, extra {extra})")
    if len(twin_tokens) % 2:
        raise ParseError("twin section has an odd number of darts")
    if len(twin_tokens) != 2 * m:
        raise ParseError(f"twin section pairs {len(twin_tokens)} darts, expected {2 * m}")

    vertex_of = [-1] * (2 * m)
    next_dart = [-1] * (2 * m)
    for v, row in rot.items():
        for i, d in enumerate(row):
            if not 0 <= d < 2 * m:
                raise ParseError(f"dart {d} out of range 0..{2 * m - 1}")
            if vertex_of[d] != -1:
                raise ParseError(f"dart {d} appears in two rotations")
            vertex_of[d] = v
            next_dart[d] = row[(i + 1) % len(row)]
    if -1 in vertex_of:
        raise ParseError("some darts missing from rotations")

    twin = [-1] * (2 * m)
    for a, b in zip(twin_tokens[::2], twin_tokens[1::2]):
        for d in (a, b):
            if not 0 <= d < 2 * m:
                raise ParseError(f"twin dart {d} out of range")
        if twin[a] != -1 or twin[b] != -1 or a == b:
            raise ParseError(f"twin pair ({a}, {b}) conflicts with earlier pairing")
        twin[a], twin[b] = b, a

    try:
        emb = RotationEmbedding(vertex_of, next_dart, twin, allow_multi=allow_multi)
    except Exception as exc:
        raise ParseError(f"embedding invalid: {exc}")

    L = None
    if lists:
        for v in lists:
            if not 0 <= v < n:
                raise ParseError(f"lists: vertex {v} out of range")
        L = ListAssignment.from_colors(lists)
    for v in precolor:
        if not 0 <= v < n:
            raise ParseError(f"precolor: vertex {v} out of range")
    return Instance(emb, L, precolor)


def parse_embedding(text: str, *, allow_multi: bool = False) -> RotationEmbedding:
    return parse_instance(text, allow_multi=allow_multi).emb


def instance_to_json(inst: Instance) -> dict:
    emb = inst.emb
    payload = {
        "V": emb.n,
        "E": emb.m,
        "rot": emb.rotation_rows(),
        "twin": [[d, emb.twin[d]] for d in range(2 * emb.m) if d < emb.twin[d]],
    }
    if inst.lists is not None:
        payload["lists"] = {str(v): inst.lists.colors(v)
                            for v in sorted(inst.lists.vertices())}
    if inst.precolor:
        payload["precolor"] = {str(v): c for v, c in sorted(inst.precolor.items())}
    return payload


def instance_from_json(payload: dict, *, allow_multi: bool = False) -> Instance:
    try:
        n = int(payload["V"])
        m = int(payload["E"])
        rot_rows = payload["rot"]
        twin_pairs = payload["twin"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"JSON instance missing or malformed field: {exc}")
    lines = [f"V {n} E {m}"]
    if len(rot_rows) != n:
        raise ParseError(f"JSON rot has {len(rot_rows)} rows, expected {n}")
    for v, row in enumerate(rot_rows):
        lines.append(f"rot {v}: " + " ".join(str(int(d)) for d in row))
    lines.append("twin: " + "  ".join(f"{int(a)} {int(b)}" for a, b in twin_pairs))
    if payload.get("lists"):
        lines.append("lists:")
        for v, colors in payload["lists"].items():
            lines.append(f"{int(v)}: " + " ".join(str(int(c)) for c in colors))
    if payload.get("precolor"):
        lines.append("precolor:")
        for v, c in payload["precolor"].items():
            lines.append(f"{int(v)}: {int(c)}")
    return parse_instance("\n".join(lines), allow_multi=allow_multi)


def load_instance(path, *, allow_multi: bool = False) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read(), allow_multi=allow_multi)


def save_instance(inst: Instance, path) -> None:
    """Write text, or JSON when the filename ends in .json."""
    path = str(path)
    with open(path, "w", encoding="utf-8") as fh:
        if path.endswith(".json"):
            json.dump(instance_to_json(inst), fh, indent=1)
            fh.write("\n")
        else:
            fh.write(format_instance(inst))


def to_dot(emb: RotationEmbedding, highlight: Iterable[int] = (),
           labels: Optional[Dict[int, str]] = None) -> str:
    """Graphviz dump; `highlight` vertices are filled."""
    hi = set(highlight)
    labels = labels or {}
    out = ["graph G {", "  node [shape=circle];"]
    for v in emb.vertices():
        attrs = []
        if v in labels:
            attrs.append(f'label="{labels[v]}"')
        if v in hi:
            attrs.append('style=filled fillcolor="gray80"')
        out.append(f"  {v}" + (f" [{' '.join(attrs)}]" if attrs else "") + ";")
    for e in sorted(tuple(sorted(e)) for e in emb.edges()):
        out.append(f"  {e[0]} -- {e[1]};")
    out.append("}")
    return "\n".join(out) + "\n"
