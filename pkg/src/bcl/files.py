"""Text persistence: facet files and cocycle files.

Facet file, one complex per file::

    # optional comments anywhere
    dim 2
    vertices 9
    colors 1 2 3 1 2 3 1 2 3
    facet 0 1 2
    facet 0 1 5

``dim`` and ``vertices`` are validated against the facet lines.  The
optional ``colors`` line carries one 1-based color per vertex id; 0 marks
an uncolored (inactive) id.  Writers emit facets sorted lexicographically
by their vertex tuples.

Cocycle file::

    t 2
    edge 0 3 1

Undeclared edges carry value 0.  The ``t`` line may be omitted when the
caller supplies the sheet count explicitly.
"""

from __future__ import annotations

import os
from typing import Iterable

from .coloring import Coloring
from .core import Complex, bits
from .covers import Cocycle
from .errors import BadParameters

__all__ = ["read_cocycle", "read_complex", "write_cocycle", "write_complex"]


def _tokens(path: str) -> list[tuple[int, list[str]]]:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                out.append((lineno, line.split()))
    return out


def _ints(words: list[str], path: str, lineno: int) -> list[int]:
    try:
        return [int(w) for w in words]
    except ValueError:
        raise BadParameters(f"{path}:{lineno}: expected integers, got {words!r}")


def read_complex(path: str) -> tuple[Complex, Coloring | None]:
    """Parse a facet file; returns the complex and its coloring, if any."""
    dim = verts = None
    colors: list[int] | None = None
    facets: list[list[int]] = []
    for lineno, words in _tokens(path):
        key, rest = words[0], words[1:]
        if key == "dim":
            dim = _ints(rest, path, lineno)[0] if len(rest) == 1 else None
            if dim is None:
                raise BadParameters(f"{path}:{lineno}: malformed dim line")
        elif key == "vertices":
            verts = _ints(rest, path, lineno)[0] if len(rest) == 1 else None
            if verts is None:
                raise BadParameters(f"{path}:{lineno}: malformed vertices line")
        elif key == "colors":
            colors = _ints(rest, path, lineno)
        elif key == "facet":
            if not rest:
                raise BadParameters(f"{path}:{lineno}: empty facet line")
            facets.append(_ints(rest, path, lineno))
        else:
            raise BadParameters(f"{path}:{lineno}: unknown directive {key!r}")
    if verts is None:
        raise BadParameters(f"{path}: missing 'vertices' line")
    C = Complex.from_facets(verts, facets) if facets else Complex.empty(verts)
    if dim is not None and dim != C.dim:
        raise BadParameters(f"{path}: declared dim {dim}, facets give {C.dim}")
    kappa = None
    if colors is not None:
        if len(colors) != verts:
            raise BadParameters(
                f"{path}: colors line has {len(colors)} entries for {verts} vertices"
            )
        kappa = Coloring({v: c for v, c in enumerate(colors) if c > 0})
    return C, kappa


def write_complex(
    path: str, C: Complex, kappa: Coloring | None = None, header: str | None = None
) -> None:
    lines = []
    if header:
        for part in header.splitlines():
            lines.append(f"# {part}")
    lines.append(f"dim {C.dim}")
    lines.append(f"vertices {C.n}")
    if kappa is not None:
        cols = " ".join(str(kappa.get(v, 0)) for v in range(C.n))
        lines.append(f"colors {cols}")
    for f in sorted(bits(m) for m in C.facets):
        lines.append("facet " + " ".join(str(v) for v in f))
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def read_cocycle(path: str, t: int | None = None) -> Cocycle:
    """Parse a cocycle file; ``t`` overrides or supplies the sheet count."""
    file_t = None
    values: dict[tuple[int, int], int] = {}
    for lineno, words in _tokens(path):
        key, rest = words[0], words[1:]
        if key == "t":
            file_t = _ints(rest, path, lineno)[0] if len(rest) == 1 else None
            if file_t is None:
                raise BadParameters(f"{path}:{lineno}: malformed t line")
        elif key == "edge":
            nums = _ints(rest, path, lineno)
            if len(nums) != 3:
                raise BadParameters(f"{path}:{lineno}: edge lines are 'edge u v value'")
            u, v, val = nums
            values[(u, v)] = val
        else:
            raise BadParameters(f"{path}:{lineno}: unknown directive {key!r}")
    sheets = t if t is not None else file_t
    if sheets is None:
        raise BadParameters(f"{path}: no sheet count ('t' line or explicit argument)")
    return Cocycle(sheets, values)


def write_cocycle(path: str, omega: Cocycle, header: str | None = None) -> None:
    lines = []
    if header:
        for part in header.splitlines():
            lines.append(f"# {part}")
    lines.append(f"t {omega.t}")
    for u, v, val in omega.edge_items():
        lines.append(f"edge {u} {v} {val}")
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)
