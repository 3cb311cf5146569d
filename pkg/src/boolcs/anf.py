"""Text formats: ANF systems, triangular-set listings, solve stats and trees.

ANF files look like::

    # comment
    vars: 3
    x1*x3 + x2
    x2 + 1

Triangular-set files repeat the ``vars:`` header and separate the sets with
``== triset <i> ==`` lines.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .poly import BoolPoly, TriangularSet
from .solver import SolveReport, tree_stats

__all__ = [
    "AnfError",
    "AnfDocument",
    "parse_anf",
    "format_anf",
    "read_anf",
    "parse_trisets",
    "format_trisets",
    "format_stats",
    "parse_stats",
    "format_tree",
]

_HEADER = re.compile(r"^vars\s*:\s*(\d+)$")
_BLOCK = re.compile(r"^==\s*triset\s+(\d+)\s*==$")


class AnfError(ValueError):
    """Parse failure; ``line`` is 1-based."""

    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line
        self.msg = msg


@dataclass
class AnfDocument:
    n: int
    polys: list[BoolPoly]
    comments: list[str] = field(default_factory=list)

    def text(self) -> str:
        return format_anf(self.n, self.polys, self.comments)


def _body_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            yield lineno, None, line[1:].strip()
        elif line:
            yield lineno, line, None


def _read_header(lineno: int, line: str) -> int:
    hit = _HEADER.match(line.replace(" ", ""))
    if hit is None:
        raise AnfError(lineno, f"expected 'vars: <n>' header, got {line!r}")
    n = int(hit.group(1))
    if n < 1:
        raise AnfError(lineno, "vars must be at least 1")
    return n


def _poly(line: str, n: int, lineno: int) -> BoolPoly:
    try:
        return BoolPoly.parse(line, n)
    except ValueError as exc:
        raise AnfError(lineno, str(exc)) from None


def parse_anf(text: str) -> AnfDocument:
    """Parse an ANF document.  Duplicate polynomials are dropped with a warning."""
    n = None
    polys: list[BoolPoly] = []
    seen: dict[BoolPoly, int] = {}
    comments = []
    for lineno, line, comment in _body_lines(text):
        if comment is not None:
            comments.append(comment)
            continue
        if n is None:
            n = _read_header(lineno, line)
            continue
        p = _poly(line, n, lineno)
        if p in seen:
            warnings.warn(f"line {lineno}: duplicate of line {seen[p]} dropped", stacklevel=2)
            continue
        seen[p] = lineno
        polys.append(p)
    if n is None:
        raise AnfError(max(1, len(text.splitlines())), "missing 'vars: <n>' header")
    return AnfDocument(n, polys, comments)


def format_anf(n: int, polys: Iterable[BoolPoly], comments: Sequence[str] = ()) -> str:
    out = [f"# {c}" if c else "#" for c in comments]
    out.append(f"vars: {n}")
    out.extend(str(p) for p in polys)
    return "\n".join(out) + "\n"


def read_anf(path: str | Path) -> AnfDocument:
    return parse_anf(Path(path).read_text())


def format_trisets(n: int, trisets: Sequence[TriangularSet]) -> str:
    out = [f"vars: {n}"]
    for i, a in enumerate(trisets, 1):
        out.append(f"== triset {i} ==")
        out.extend(str(p) for p in a.elems)
    return "\n".join(out) + "\n"


def parse_trisets(text: str) -> tuple[int, list[TriangularSet]]:
    n = None
    blocks: list[list[BoolPoly]] = []
    linenos: list[int] = []
    for lineno, line, _ in _body_lines(text):
        if line is None:
            continue
        if n is None:
            n = _read_header(lineno, line)
            continue
        if _BLOCK.match(line):
            blocks.append([])
            linenos.append(lineno)
            continue
        if not blocks:
            raise AnfError(lineno, "polynomial before the first '== triset i ==' line")
        blocks[-1].append(_poly(line, n, lineno))
    if n is None:
        raise AnfError(1, "missing 'vars: <n>' header")
    out = []
    for lineno, elems in zip(linenos, blocks):
        try:
            out.append(TriangularSet(n, elems))
        except ValueError as exc:
            raise AnfError(lineno, str(exc)) from None
    return n, out


def format_stats(report: SolveReport, count: bool = False) -> str:
    """``key = value`` lines; ``wall_seconds`` is the only nondeterministic one."""
    st = tree_stats(report)
    rows = [
        ("branches", st.branch_count),
        ("average_depth", f"{st.average_depth:.6f}"),
        ("max_depth", report.max_depth),
        ("trisets", len(report.trisets)),
    ]
    if count:
        rows.append(("solutions", report.solution_count))
    rows.append(("partial", int(report.partial)))
    rows += [(f"depth_{d}", c) for d, c in st.depth_histogram.items()]
    rows += [(f"initial_depth_{d}", c) for d, c in st.initial_depth_counts.items()]
    rows.append(("wall_seconds", f"{report.wall_seconds:.6f}"))
    return "".join(f"{k} = {v}\n" for k, v in rows)


def parse_stats(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        if "=" in line:
            k, v = line.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def format_tree(report: SolveReport) -> str:
    if report.tree is None:
        raise ValueError("the solve did not record its tree (record_tree=False)")
    return "".join(node.line() + "\n" for node in report.tree)
