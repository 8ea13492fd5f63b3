"""Reading and writing the line-oriented ``.pfn`` plane flow network format.

    pfn 1
    n 4
    m 5
    v 0 0 1             # edge ids around vertex 0, clockwise
    e 0 0 1 3           # id tail head upper [lower]
    outer 0             # an edge on the outer face; add R for its right side
    s 0
    t 3

Rationals are integers or ``p/q``.  ``#`` starts a comment.  The printer
emits the canonical form, which parses back to the same text.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .graph_core import PlaneDiGraph, build_plane_graph
from .network import ExtFlowNetwork, FlowNetwork

__all__ = ["PfnDocument", "parse_pfn", "format_pfn", "read_pfn", "write_pfn"]


@dataclass(frozen=True)
class PfnDocument:
    G: PlaneDiGraph
    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]
    sources: tuple[int, ...]
    sinks: tuple[int, ...]

    @property
    def has_lower(self) -> bool:
        return any(self.lower)

    def flow_network(self) -> FlowNetwork:
        if len(self.sources) != 1 or len(self.sinks) != 1:
            raise ParseError("a single-pair network needs exactly one s and one t")
        if self.has_lower:
            raise ParseError("lower bounds need the extended pipeline")
        return FlowNetwork(self.G, self.upper, self.sources[0], self.sinks[0])

    def extended(self) -> ExtFlowNetwork:
        return ExtFlowNetwork(self.G, self.upper, self.lower, self.sources, self.sinks)

    @classmethod
    def of(cls, N: FlowNetwork | ExtFlowNetwork) -> "PfnDocument":
        if isinstance(N, FlowNetwork):
            return cls(N.G, N.capacity, (Fraction(0),) * N.G.m, (N.s,), (N.t,))
        return cls(N.G, N.upper, N.lower, N.sources, N.sinks)


def _rational(tok: str, line: int) -> Fraction:
    try:
        num, _, den = tok.partition("/")
        if not num.lstrip("-").isdigit() or (den and not den.isdigit()):
            raise ValueError
        value = Fraction(int(num), int(den) if den else 1)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {tok!r}", line) from None
    if value < 0:
        raise ParseError(f"negative value {tok}", line)
    return value


def _int(tok: str, line: int, what: str) -> int:
    if not tok.isdigit():
        raise ParseError(f"bad {what} {tok!r}", line)
    return int(tok)


def parse_pfn(text: str) -> PfnDocument:
    header = False
    n = m = None
    rot: dict[int, list[int]] = {}
    edges: dict[int, tuple[int, int, Fraction, Fraction]] = {}
    outer = None
    sources: list[int] | None = None
    sinks: list[int] | None = None
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last = lineno
        body = raw.split("#", 1)[0].split()
        if not body:
            continue
        key, args = body[0], body[1:]
        if not header:
            if key != "pfn" or args != ["1"]:
                raise ParseError("expected header 'pfn 1'", lineno)
            header = True
            continue
        if key in ("n", "m"):
            if len(args) != 1:
                raise ParseError(f"'{key}' takes one count", lineno)
            val = _int(args[0], lineno, "count")
            if key == "n":
                n = val
            else:
                m = val
        elif key == "v":
            if not args:
                raise ParseError("'v' needs a vertex id", lineno)
            v = _int(args[0], lineno, "vertex id")
            if v in rot:
                raise ParseError(f"vertex {v} listed twice", lineno)
            rot[v] = [_int(a, lineno, "edge id") for a in args[1:]]
        elif key == "e":
            if len(args) not in (4, 5):
                raise ParseError("'e' takes id tail head upper [lower]", lineno)
            e = _int(args[0], lineno, "edge id")
            if e in edges:
                raise ParseError(f"edge {e} listed twice", lineno)
            tail, head = _int(args[1], lineno, "tail"), _int(args[2], lineno, "head")
            up = _rational(args[3], lineno)
            lo = _rational(args[4], lineno) if len(args) == 5 else Fraction(0)
            if lo > up:
                raise ParseError(f"edge {e}: lower {lo} exceeds upper {up}", lineno)
            edges[e] = (tail, head, up, lo)
        elif key == "outer":
            if len(args) not in (1, 2) or (len(args) == 2 and args[1] not in ("L", "R")):
                raise ParseError("'outer' takes an edge id and optional side L|R", lineno)
            e = _int(args[0], lineno, "edge id")
            outer = (e, 1 if len(args) == 2 and args[1] == "R" else 0, lineno)
        elif key in ("s", "t"):
            ids = [_int(a, lineno, "terminal") for a in args]
            if not ids:
                raise ParseError(f"'{key}' needs at least one vertex", lineno)
            if key == "s":
                sources = ids
            else:
                sinks = ids
        else:
            raise ParseError(f"unknown directive {key!r}", lineno)
    if not header:
        raise ParseError("empty file", max(last, 1))
    if n is None or m is None:
        raise ParseError("missing 'n' or 'm' line", last)
    if sorted(rot) != list(range(n)):
        raise ParseError(f"expected 'v' lines for vertices 0..{n - 1}", last)
    if sorted(edges) != list(range(m)):
        raise ParseError(f"expected 'e' lines for edges 0..{m - 1}", last)
    if sources is None or sinks is None:
        raise ParseError("missing 's' or 't' line", last)
    for v in sources + sinks:
        if v >= n:
            raise ParseError(f"terminal {v} out of range", last)
    if outer is not None and outer[0] >= m:
        raise ParseError(f"outer edge {outer[0]} out of range", outer[2])
    G = build_plane_graph(
        n,
        [(edges[e][0], edges[e][1]) for e in range(m)],
        [rot[v] for v in range(n)],
        None if outer is None else 2 * outer[0] + outer[1],
    )
    return PfnDocument(
        G,
        tuple(edges[e][2] for e in range(m)),
        tuple(edges[e][3] for e in range(m)),
        tuple(sources),
        tuple(sinks),
    )


def format_pfn(doc: PfnDocument | FlowNetwork | ExtFlowNetwork) -> str:
    if not isinstance(doc, PfnDocument):
        doc = PfnDocument.of(doc)
    G = doc.G
    out = ["pfn 1", f"n {G.n}", f"m {G.m}"]
    for v in range(G.n):
        out.append(" ".join(["v", str(v)] + [str(e) for e in G.rotation[v]]))
    for e in range(G.m):
        line = f"e {e} {G.tails[e]} {G.heads[e]} {doc.upper[e]}"
        if doc.lower[e]:
            line += f" {doc.lower[e]}"
        out.append(line)
    if G.outer_dart is not None:
        out.append(f"outer {G.outer_dart >> 1}" + (" R" if G.outer_dart & 1 else ""))
    out.append("s " + " ".join(map(str, doc.sources)))
    out.append("t " + " ".join(map(str, doc.sinks)))
    return "\n".join(out) + "\n"


def read_pfn(path) -> PfnDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_pfn(fh.read())


def write_pfn(path, doc) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_pfn(doc))
