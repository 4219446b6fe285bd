# orl/infrastructure/io/ogf_codec.py
"""
Lecture/écriture du format texte OGF.

    # commentaire
    n m
    u v        (m lignes, 0 <= u < v < n, sans doublon)
"""
import logging
from pathlib import Path
from typing import Iterable, List, Tuple, Any, Union

import aiofiles

from orl.domain.errors import OgfFormatError
from orl.domain.ordered_graph import OrderedGraph, MAX_VERTICES


def parse_ogf(text: str) -> OrderedGraph:
    header = None
    edges: List[Tuple[int, int]] = []
    seen = set()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise OgfFormatError(f"expected two integers, got '{line}'", number)
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise OgfFormatError(f"non-integer field in '{line}'", number)
        if header is None:
            if a < 0 or b < 0 or a > MAX_VERTICES:
                raise OgfFormatError(f"invalid header 'n={a} m={b}'", number)
            header = (a, b)
            continue
        n = header[0]
        if not 0 <= a < b < n:
            raise OgfFormatError(f"edge ({a}, {b}) must satisfy 0 <= u < v < {n}", number)
        if (a, b) in seen:
            raise OgfFormatError(f"duplicate edge ({a}, {b})", number)
        seen.add((a, b))
        edges.append((a, b))
    if header is None:
        raise OgfFormatError("missing 'n m' header")
    if len(edges) != header[1]:
        raise OgfFormatError(f"header announces {header[1]} edges, found {len(edges)}")
    return OrderedGraph.from_edges(header[0], edges)


def format_ogf(graph: OrderedGraph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {comment}" for comment in comments]
    lines.append(f"{graph.n} {graph.edge_count}")
    lines.extend(f"{u} {v}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"


def format_key_values(pairs: Iterable[Tuple[str, Any]]) -> str:
    return "".join(f"{key}: {_render(value)}\n" for key, value in pairs)


def _render(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    return str(value)


class OgfCodec:
    """Accès fichiers asynchrone (aiofiles) autour des fonctions pures"""

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    def render_graph(self, graph: OrderedGraph, comments: Iterable[str] = ()) -> str:
        return format_ogf(graph, comments).rstrip("\n")

    async def read_graph(self, path: Union[str, Path]) -> OrderedGraph:
        path = Path(path)
        try:
            async with aiofiles.open(path, "rb") as f:
                raw = await f.read()
        except FileNotFoundError:
            raise
        except OSError as e:
            self.logger.debug(f"Cannot read {path}: {e!r}")
            raise OgfFormatError(f"cannot read {path}: {e.strerror or e}") from e
        try:
            content = raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise OgfFormatError("not valid UTF-8 text", raw[:e.start].count(b"\n") + 1) from e
        graph = parse_ogf(content)
        self.logger.debug(f"Read {path}: n={graph.n} m={graph.edge_count}")
        return graph

    async def write_text(self, path: Union[str, Path], content: str) -> None:
        path = Path(path)
        temp_file = path.with_suffix(path.suffix + ".tmp")
        async with aiofiles.open(temp_file, "w") as f:
            await f.write(content)
        temp_file.replace(path)
        self.logger.debug(f"Wrote {path} ({len(content)} bytes)")

    async def write_graph(self, path: Union[str, Path], graph: OrderedGraph,
                          comments: Iterable[str] = ()) -> None:
        await self.write_text(path, format_ogf(graph, comments))

    async def write_certificate(self, path: Union[str, Path], pairs: Iterable[Tuple[str, Any]]) -> None:
        await self.write_text(path, format_key_values(pairs))
