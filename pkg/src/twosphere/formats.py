"""Reading and writing ``.2sc`` complexes, ``.gt`` Grid Tiling instances and JSON."""
from __future__ import annotations

import json
import re
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .complex import Complex2, make_edge, make_triangle
from .errors import DegenerateTriangle, FormatError
from .gridtiling import GridTilingInstance

_BUDGET = re.compile(r"#\s*budget\s+(-?\d+)\s*$")


class ParsedComplex:
    """A complex read from disk, with optional weights and a recorded budget."""

    def __init__(self, complex: Complex2, weights: Optional[Dict[tuple, int]] = None,
                 budget: Optional[int] = None):
        self.complex = complex
        self.weights = weights or {}
        self.budget = budget

    @property
    def weighted(self) -> bool:
        return bool(self.weights)


def _ints(fields: Sequence[str], lineno: int, path) -> List[int]:
    out = []
    for f in fields:
        if not re.fullmatch(r"\d+", f):
            raise FormatError(f"expected a non-negative integer, got {f!r}", lineno, path)
        out.append(int(f))
    return out


def parse_2sc(text: str, path: Optional[str] = None) -> ParsedComplex:
    lines = text.splitlines()
    header_seen = False
    tris: Dict[tuple, int] = {}
    weights: Dict[tuple, int] = {}
    edges, verts = [], []
    budget = None
    for lineno, raw in enumerate(lines, start=1):
        m = _BUDGET.match(raw.strip())
        if m:
            budget = int(m.group(1))
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if not header_seen:
            if fields != ["2sc", "1"]:
                raise FormatError("first line must be '2sc 1'", lineno, path)
            header_seen = True
            continue
        kind, rest = fields[0], fields[1:]
        try:
            if kind == "t":
                if len(rest) not in (3, 4):
                    raise FormatError("triangle line needs 3 vertex ids and an optional weight", lineno, path)
                nums = _ints(rest, lineno, path)
                t = make_triangle(*nums[:3])
                if t in tris:
                    raise FormatError(f"duplicate triangle {t}", lineno, path)
                tris[t] = lineno
                if len(nums) == 4:
                    if nums[3] < 1:
                        raise FormatError("weights must be positive", lineno, path)
                    weights[t] = nums[3]
            elif kind == "e":
                if len(rest) != 2:
                    raise FormatError("edge line needs 2 vertex ids", lineno, path)
                edges.append(make_edge(*_ints(rest, lineno, path)))
            elif kind == "v":
                if len(rest) != 1:
                    raise FormatError("vertex line needs 1 vertex id", lineno, path)
                verts.append(_ints(rest, lineno, path)[0])
            else:
                raise FormatError(f"unknown record type {kind!r}", lineno, path)
        except DegenerateTriangle as exc:
            raise FormatError(str(exc), lineno, path) from None
    if not header_seen:
        raise FormatError("missing '2sc 1' header", 1, path)
    return ParsedComplex(Complex2(tris, edges, verts), weights, budget)


def format_2sc(K: Complex2, weights: Optional[Mapping[tuple, int]] = None,
               budget: Optional[int] = None, order: Optional[Iterable[tuple]] = None,
               comments: Sequence[str] = ()) -> str:
    """Serialise ``K``; ``order`` fixes the triangle order (default: sorted)."""
    out = ["2sc 1"]
    out += [f"# {c}" for c in comments]
    if budget is not None:
        out.append(f"# budget {budget}")
    weights = weights or {}
    tris = list(order) if order is not None else list(K.triangles)
    for a, b, c in tris:
        w = weights.get((a, b, c))
        out.append(f"t {a} {b} {c}" + (f" {w}" if w is not None and w != 1 else ""))
    out += [f"e {a} {b}" for a, b in K.loose_edges]
    out += [f"v {v}" for v in K.loose_vertices]
    return "\n".join(out) + "\n"


def complex_to_json(K: Complex2, weights: Optional[Mapping[tuple, int]] = None) -> dict:
    d = {"triangles": [list(t) for t in K.triangles]}
    if K.loose_edges:
        d["edges"] = [list(e) for e in K.loose_edges]
    if K.loose_vertices:
        d["vertices"] = list(K.loose_vertices)
    if weights:
        d["weights"] = {",".join(map(str, t)): w for t, w in sorted(weights.items()) if w != 1}
    return d


def parse_json_complex(text: str, path: Optional[str] = None) -> ParsedComplex:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", exc.lineno, path) from None
    if not isinstance(data, dict) or "triangles" not in data:
        raise FormatError("expected an object with a 'triangles' list", None, path)
    try:
        tris = [make_triangle(*t) for t in data["triangles"]]
        edges = [make_edge(*e) for e in data.get("edges", [])]
        verts = [int(v) for v in data.get("vertices", [])]
        weights = {make_triangle(*map(int, key.split(","))): int(w)
                   for key, w in data.get("weights", {}).items()}
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad simplex entry: {exc}", None, path) from None
    return ParsedComplex(Complex2(tris, edges, verts), weights, data.get("budget"))


def parse_gt(text: str, path: Optional[str] = None) -> GridTilingInstance:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows or rows[0][1] != ["gt", "1"]:
        raise FormatError("first line must be 'gt 1'", rows[0][0] if rows else 1, path)
    if len(rows) < 2 or len(rows[1][1]) != 2:
        raise FormatError("second line must be 'n k'", rows[1][0] if len(rows) > 1 else 2, path)
    n, k = _ints(rows[1][1], rows[1][0], path)
    sets: Dict[Tuple[int, int], set] = {}
    for lineno, fields in rows[2:]:
        if len(fields) != 4:
            raise FormatError("membership line must be 'i j a b'", lineno, path)
        i, j, a, b = _ints(fields, lineno, path)
        if not (1 <= i <= k and 1 <= j <= k):
            raise FormatError(f"tile ({i},{j}) outside the {k}x{k} grid", lineno, path)
        if not (1 <= a <= n and 1 <= b <= n):
            raise FormatError(f"pair ({a},{b}) outside [{n}]x[{n}]", lineno, path)
        sets.setdefault((i, j), set()).add((a, b))
    try:
        return GridTilingInstance(n, k, {t: frozenset(s) for t, s in sets.items()})
    except ValueError as exc:
        raise FormatError(str(exc), None, path) from None


def format_gt(G: GridTilingInstance) -> str:
    out = ["gt 1", f"{G.n} {G.k}"]
    for (i, j) in G.tiles():
        out += [f"{i} {j} {a} {b}" for a, b in sorted(G.sets[(i, j)])]
    return "\n".join(out) + "\n"


def read_complex(path: str) -> ParsedComplex:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".json"):
        return parse_json_complex(text, path)
    return parse_2sc(text, path)


def read_gt(path: str) -> GridTilingInstance:
    with open(path, encoding="utf-8") as fh:
        return parse_gt(fh.read(), path)
