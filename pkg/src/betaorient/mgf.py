"""The MGF text format: one line per parallel edge, explicit edge ids.

    # optional comments anywhere
    mgf <vertices> <edges>
    <u> <v>          (one line per edge; ids follow line order)
    ...
    rot              (optional block)
    <v>: <e_i> <e_j> ...

Edge ids are the zero-based positions of the edge lines, which is what makes
orientation and flow certificates addressable per parallel edge.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .multigraph import Multigraph
from .planar import RotationSystem, format_rotation, parse_rotation


class MgfError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class GraphDocument:
    graph: Multigraph
    rotation: Optional[RotationSystem] = None
    name: Optional[str] = None


def parse_graph(text: str) -> GraphDocument:
    lines = text.splitlines()
    name: Optional[str] = None
    header: Optional[tuple[int, int]] = None
    edges: list[tuple[int, int]] = []
    rot_lines: list[str] = []
    in_rot = False
    header_line = 0
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.split("#", 1)[0].strip()
        if raw.strip().startswith("#") and name is None and header is None:
            comment = raw.strip().lstrip("#").strip()
            if comment.startswith("name:"):
                name = comment[5:].strip()
        if not stripped:
            continue
        if in_rot:
            rot_lines.append(stripped)
            continue
        if header is None:
            parts = stripped.split()
            if len(parts) != 3 or parts[0] != "mgf":
                raise MgfError("expected header 'mgf <v> <e>'", lineno)
            try:
                header = (int(parts[1]), int(parts[2]))
            except ValueError:
                raise MgfError("header counts must be integers", lineno)
            header_line = lineno
            continue
        if stripped == "rot":
            in_rot = True
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise MgfError("expected an edge line '<u> <v>'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise MgfError("edge endpoints must be integers", lineno)
        if u == v:
            raise MgfError(f"loop edge at vertex {u}", lineno)
        edges.append((u, v))
    if header is None:
        raise MgfError("missing 'mgf' header")
    n, m = header
    if len(edges) != m:
        raise MgfError(
            f"header announces {m} edges but {len(edges)} were given", header_line
        )
    try:
        graph = Multigraph(n, tuple(edges))
    except ValueError as exc:
        raise MgfError(str(exc), header_line)
    rotation = None
    if rot_lines:
        try:
            rotation = parse_rotation(rot_lines, graph)
        except ValueError as exc:
            raise MgfError(f"rotation inconsistency: {exc}")
    return GraphDocument(graph, rotation, name)


def serialize(g: Multigraph, rotation: Optional[RotationSystem] = None, name: Optional[str] = None) -> str:
    out = []
    if name:
        out.append(f"# name: {name}")
    out.append(f"mgf {g.vertex_count} {g.edge_count}")
    out.extend(f"{min(a, b)} {max(a, b)}" for a, b in g.edges)
    if rotation is not None:
        out.append("")
        out.append("rot")
        out.append(format_rotation(rotation))
    return "\n".join(out) + "\n"
