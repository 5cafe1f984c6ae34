"""Graph serialization: graph6, a plain edge-list format and annotated DOT.

graph6 vertices are 0-indexed on the wire and mapped to 1..n in memory.
"""
from __future__ import annotations

from .graph import Graph, GraphError, is_connected

_HEADER = ">>graph6<<"


def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise GraphError(f"graph6 cannot encode n={n}")


def to_graph6(g: Graph) -> str:
    """graph6 string (without header or trailing newline)."""
    bits = []
    edges = g.edges
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if (i + 1, j + 1) in edges else 0)
    bits.extend([0] * (-len(bits) % 6))
    body = bytes(
        63 + int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6)
    )
    return (_encode_n(g.n) + body).decode("ascii")


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
    data = s.encode("ascii", errors="replace")
    if not data or any(b < 63 or b > 126 for b in data):
        raise GraphError(f"malformed graph6 string {text.strip()!r}")
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) > 1 and data[1] != 126:
        if len(data) < 4:
            raise GraphError("truncated graph6 size field")
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
    else:
        if len(data) < 8:
            raise GraphError("truncated graph6 size field")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        pos = 8
    if n < 1:
        raise GraphError("graph6 graph has no vertices")
    need = n * (n - 1) // 2
    body = data[pos:]
    if len(body) != (need + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {(need + 5) // 6}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i + 1, j + 1))
            k += 1
    return Graph(n, edges)


def to_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    """Parse ``n <count>`` followed by ``u v`` lines; blank lines and ``#`` comments are ignored."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows or len(rows[0]) != 2 or rows[0][0] != "n":
        raise GraphError("edge list must start with a header line 'n <count>'")
    try:
        n = int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    return Graph(n, edges)


def read_graph(text: str) -> Graph:
    """Detect the format: edge list if it begins with an ``n`` header, else graph6."""
    stripped = text.lstrip()
    if stripped.startswith("n ") or stripped.startswith("n\t"):
        return from_edge_list(text)
    line = stripped.splitlines()[0] if stripped else ""
    return from_graph6(line)


def to_dot(g: Graph) -> str:
    """DOT text; for connected graphs each vertex carries its separation and V_max membership."""
    from .destruction import separation_profile

    lines = ["graph G {"]
    if is_connected(g):
        prof = separation_profile(g, "vertices")
        for v in g.vertices:
            sep = prof.values[v]
            is_max = v in prof.argmax
            style = ', style=filled, fillcolor="#f4a582"' if is_max else ""
            lines.append(f'  {v} [label="{v}\\nsep={sep}", separation={sep}, vmax={str(is_max).lower()}{style}];')
    else:
        for v in g.vertices:
            lines.append(f"  {v};")
    for u, v in g.sorted_edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
