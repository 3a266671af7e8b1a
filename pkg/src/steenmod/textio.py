"""Versioned line-oriented text formats for modules, comodules and chains.

Printing is canonical (sorted blocks, fixed field order), so
parse(print(x)) == x bit-exactly and byte-identical re-printing is a
regression check.  Parsers are strict and report the offending line.
"""

from __future__ import annotations

from typing import Iterator, Optional

from . import milnor
from .annihilator import HomIdeal, IdealChain
from .comodule import GradedComodule
from .f2 import BitMatrix
from .gmodule import GradedModule, Window
from .milnor import Algebra, Seq

MODULE_HEADER = "steenmod module v1"
COMODULE_HEADER = "steenmod comodule v1"


class ParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _seq_str(seq: Seq) -> str:
    return "Sq(" + ",".join(str(r) for r in seq) + ")"


def _algebra_str(a: Algebra) -> str:
    return "full" if a.is_full else f"subalgebra {a.profile_index}"


def _parse_algebra(text: str, line_no: int) -> Algebra:
    parts = text.split()
    if parts == ["full"]:
        return Algebra.full()
    if len(parts) == 2 and parts[0] == "subalgebra":
        try:
            return Algebra.subalgebra(int(parts[1]))
        except ValueError:
            pass
    raise ParseError(line_no, f"bad algebra {text!r}")


def _exact_str(bottom: bool, top: bool) -> str:
    names = []
    if bottom:
        names.append("below")
    if top:
        names.append("above")
    return " ".join(names) if names else "none"


def _parse_exact(text: str, line_no: int) -> tuple[bool, bool]:
    toks = text.split()
    if toks == ["none"]:
        return False, False
    bottom = "below" in toks
    top = "above" in toks
    if set(toks) - {"below", "above"}:
        raise ParseError(line_no, f"bad exactness flags {text!r}")
    return bottom, top


def _parse_window(text: str, line_no: int) -> Window:
    try:
        lo_s, hi_s = text.split("..")
        return Window(int(lo_s), int(hi_s))
    except (ValueError, TypeError):
        raise ParseError(line_no, f"bad window {text!r} (expected LO..HI)") from None


def _dims_line(dims: dict[int, int], window: Window) -> str:
    return " ".join(f"{d}={dims[d]}" for d in window)


def _parse_dims(text: str, window: Window, line_no: int) -> dict[int, int]:
    dims: dict[int, int] = {}
    for tok in text.split():
        try:
            d_s, n_s = tok.split("=")
            dims[int(d_s)] = int(n_s)
        except ValueError:
            raise ParseError(line_no, f"bad dims token {tok!r}") from None
    missing = [d for d in window if d not in dims]
    if missing:
        raise ParseError(line_no, f"dims missing degrees {missing}")
    return dims


def _matrix_lines(mat: BitMatrix) -> Iterator[str]:
    yield from mat.to_text_rows()


class _Lines:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    def next(self, what: str) -> tuple[int, str]:
        while self.pos < len(self.lines):
            raw = self.lines[self.pos]
            self.pos += 1
            stripped = raw.strip()
            if stripped and not stripped.startswith("#"):
                return self.pos, stripped
        raise ParseError(len(self.lines) + 1, f"unexpected end of file ({what} expected)")

    def expect_field(self, name: str) -> tuple[int, str]:
        no, line = self.next(f"{name}:")
        prefix = name + ":"
        if not line.startswith(prefix):
            raise ParseError(no, f"expected {prefix!r}, found {line!r}")
        return no, line[len(prefix):].strip()


def _read_matrix(lines: _Lines, nrows: int, ncols: int, where: str) -> BitMatrix:
    rows = []
    for _ in range(nrows):
        no, line = lines.next(f"matrix row of {where}")
        if len(line) != ncols or set(line) - {"0", "1"}:
            raise ParseError(no, f"bad matrix row {line!r} ({ncols} bits expected)")
        rows.append(sum((1 << j) for j, ch in enumerate(line) if ch == "1"))
    return BitMatrix(nrows, ncols, rows)


# -- modules -------------------------------------------------------------------


def print_module(m: GradedModule) -> str:
    if m.opposite:
        raise ValueError("opposite-algebra modules are internal; not serialized")
    out = [MODULE_HEADER,
           f"algebra: {_algebra_str(m.algebra)}",
           f"window: {m.window}",
           f"exact: {_exact_str(m.bottom_exact, m.top_exact)}",
           f"dims: {_dims_line(m.dims, m.window)}"]
    keys = sorted(m.actions, key=lambda sd: (milnor.degree(sd[0]), sd[0], sd[1]))
    current: Optional[Seq] = object()  # sentinel
    for seq, d in keys:
        if seq != current:
            out.append(f"action {_seq_str(seq)}")
            current = seq
        mat = m.actions[(seq, d)]
        out.append(f"@ {d}: {mat.nrows}x{mat.ncols}")
        out.extend(_matrix_lines(mat))
    out.append("end")
    return "\n".join(out) + "\n"


def parse_module(text: str) -> GradedModule:
    lines = _Lines(text)
    no, header = lines.next("header")
    if header != MODULE_HEADER:
        raise ParseError(no, f"expected {MODULE_HEADER!r}")
    _, alg_text = lines.expect_field("algebra")
    algebra = _parse_algebra(alg_text, lines.pos)
    _, win_text = lines.expect_field("window")
    window = _parse_window(win_text, lines.pos)
    _, exact_text = lines.expect_field("exact")
    bottom, top = _parse_exact(exact_text, lines.pos)
    no, dims_text = lines.expect_field("dims")
    dims = _parse_dims(dims_text, window, no)

    actions: dict[tuple[Seq, int], BitMatrix] = {}
    seq: Optional[Seq] = None
    while True:
        no, line = lines.next("action block or end")
        if line == "end":
            break
        if line.startswith("action "):
            try:
                elem = milnor.parse_element(line[len("action "):])
                (seq,) = elem.terms
            except ValueError as exc:
                raise ParseError(no, str(exc)) from None
            continue
        if line.startswith("@ "):
            if seq is None:
                raise ParseError(no, "matrix block before any action header")
            try:
                d_part, shape = line[2:].split(":")
                d = int(d_part)
                nrows_s, ncols_s = shape.strip().split("x")
                nrows, ncols = int(nrows_s), int(ncols_s)
            except ValueError:
                raise ParseError(no, f"bad block header {line!r}") from None
            actions[(seq, d)] = _read_matrix(lines, nrows, ncols,
                                             f"{_seq_str(seq)} @ {d}")
            continue
        raise ParseError(no, f"unexpected line {line!r}")
    try:
        return GradedModule(algebra, window, dims, actions, bottom, top)
    except ValueError as exc:
        raise ParseError(lines.pos, f"inconsistent module data: {exc}") from None


# -- comodules -----------------------------------------------------------------


def print_comodule(c: GradedComodule) -> str:
    out = [COMODULE_HEADER,
           f"algebra: {_algebra_str(c.algebra)}",
           f"window: {c.window}",
           f"exact: {_exact_str(c.bottom_exact, c.top_exact)}",
           f"dims: {_dims_line(c.dims, c.window)}"]
    for (d, k) in sorted(c.coactions):
        mat = c.coactions[(d, k)]
        out.append(f"coaction {d} {k}: {mat.nrows}x{mat.ncols}")
        out.extend(_matrix_lines(mat))
    out.append("end")
    return "\n".join(out) + "\n"


def parse_comodule(text: str) -> GradedComodule:
    lines = _Lines(text)
    no, header = lines.next("header")
    if header != COMODULE_HEADER:
        raise ParseError(no, f"expected {COMODULE_HEADER!r}")
    _, alg_text = lines.expect_field("algebra")
    algebra = _parse_algebra(alg_text, lines.pos)
    _, win_text = lines.expect_field("window")
    window = _parse_window(win_text, lines.pos)
    _, exact_text = lines.expect_field("exact")
    bottom, top = _parse_exact(exact_text, lines.pos)
    no, dims_text = lines.expect_field("dims")
    dims = _parse_dims(dims_text, window, no)

    coactions: dict[tuple[int, int], BitMatrix] = {}
    while True:
        no, line = lines.next("coaction block or end")
        if line == "end":
            break
        if line.startswith("coaction "):
            try:
                head, shape = line[len("coaction "):].split(":")
                d_s, k_s = head.split()
                d, k = int(d_s), int(k_s)
                nrows_s, ncols_s = shape.strip().split("x")
                nrows, ncols = int(nrows_s), int(ncols_s)
            except ValueError:
                raise ParseError(no, f"bad coaction header {line!r}") from None
            coactions[(d, k)] = _read_matrix(lines, nrows, ncols,
                                             f"coaction ({d},{k})")
            continue
        raise ParseError(no, f"unexpected line {line!r}")
    try:
        return GradedComodule(algebra, window, dims, coactions, bottom, top)
    except ValueError as exc:
        raise ParseError(lines.pos, f"inconsistent comodule data: {exc}") from None


# -- chains --------------------------------------------------------------------


def print_chain(chain: IdealChain) -> str:
    stages = []
    for st in chain.stages:
        stages.append("[" + ",".join(str(g) for g in st.generators) + "]")
    return "chain: " + " ; ".join(stages)


def parse_chain(text: str) -> IdealChain:
    compact = text.strip()
    if not compact.startswith("chain:"):
        raise ParseError(1, "chain text must start with 'chain:'")
    body = compact[len("chain:"):].strip()
    stages = []
    for stage_no, part in enumerate(body.split(";")):
        part = part.strip()
        if not (part.startswith("[") and part.endswith("]")):
            raise ParseError(1, f"stage {stage_no}: expected [...], found {part!r}")
        inner = part[1:-1].strip()
        if not inner:
            raise ParseError(1, f"stage {stage_no}: empty generator list")
        gens = []
        # split on '+'-aware commas: generators contain no brackets, so a
        # comma inside Sq(...) is inside parens
        depth = 0
        token = ""
        tokens = []
        for ch in inner:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch == "," and depth == 0:
                tokens.append(token)
                token = ""
            else:
                token += ch
        tokens.append(token)
        for tok in tokens:
            try:
                gens.append(milnor.parse_element(tok))
            except ValueError as exc:
                raise ParseError(1, f"stage {stage_no}: {exc}") from None
        try:
            stages.append(HomIdeal(gens))
        except ValueError as exc:
            raise ParseError(1, f"stage {stage_no}: {exc}") from None
    return IdealChain(stages)
