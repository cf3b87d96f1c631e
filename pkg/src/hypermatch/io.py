"""Plain-text instance files and JSON certificate exchange.

Instance format, 1-indexed::

    # comment
    p hg <n> <k> <m>
    e v1 v2 ... vk
    ...
"""

from __future__ import annotations

import json

from .decide import Certificate
from .errors import InvalidArgument, ParseError
from .hypergraph import Hypergraph


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_instance(text: str) -> Hypergraph:
    header = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if header is not None:
                raise ParseError("second header line", lineno)
            if len(tokens) != 5 or tokens[1] != "hg":
                raise ParseError("header must read 'p hg n k m'", lineno)
            n, k, m = _ints(tokens[2:], lineno)
            if n < 0 or k < 2 or m < 0:
                raise ParseError("header needs n >= 0, k >= 2, m >= 0", lineno)
            header = (n, k, m)
        elif tokens[0] == "e":
            if header is None:
                raise ParseError("edge before header", lineno)
            n, k, _ = header
            vs = _ints(tokens[1:], lineno)
            if len(vs) != k:
                raise ParseError(f"edge has {len(vs)} vertices, expected {k}", lineno)
            if any(not 1 <= v <= n for v in vs):
                raise ParseError(f"vertex out of range 1..{n}", lineno)
            e = tuple(sorted(vs))
            if len(set(e)) != k:
                raise ParseError("edge repeats a vertex", lineno)
            if e in seen:
                raise ParseError(f"duplicate edge {' '.join(map(str, e))}", lineno)
            seen.add(e)
            edges.append(e)
        else:
            raise ParseError(f"unknown line type {tokens[0]!r}", lineno)
    if header is None:
        raise ParseError("missing 'p hg n k m' header")
    n, k, m = header
    if m != len(edges):
        raise ParseError(f"header announces {m} edges but {len(edges)} were given")
    return Hypergraph(n, k, edges)


def serialize_instance(h: Hypergraph) -> str:
    """Canonical text form: header, then edges in lexicographic order."""
    if h.vertices != tuple(range(1, h.n + 1)):
        raise InvalidArgument("only hypergraphs on 1..n can be written")
    lines = [f"p hg {h.n} {h.k} {len(h.edges)}"]
    lines.extend("e " + " ".join(map(str, e)) for e in h.sorted_edges)
    return "\n".join(lines) + "\n"


def read_instance(path) -> Hypergraph:
    with open(path) as fh:
        return parse_instance(fh.read())


def write_instance(h: Hypergraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(serialize_instance(h))


def dumps_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def certificate_to_text(cert: Certificate) -> str:
    return dumps_json(cert.to_json()) + "\n"


def certificate_from_text(text: str) -> Certificate:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"certificate is not valid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(obj, dict):
        raise ParseError("certificate JSON must be an object")
    try:
        return Certificate.from_json(obj)
    except InvalidArgument as exc:
        raise ParseError(str(exc)) from None
