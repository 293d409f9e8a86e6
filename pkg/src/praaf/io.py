"""Reading and writing ``.praaf`` documents, plus Graphviz DOT export.

The format is APX with optional probabilities::

    # comment
    arg(a).           certain argument
    arg(c, 0.4).      probabilistic argument
    att(a, c, 0.3).   probabilistic attack
    att(c, d).        certain attack

A file without probabilities is plain APX.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .constellation import PrAAF
from .errors import ParseError

_WS = re.compile(r"(?:\s+|#[^\n]*)*")
_ID = re.compile(r"[A-Za-z0-9_]+")
_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_KEYWORD = re.compile(r"[A-Za-z_]+")

SIGNIFICANT_DIGITS = 12


@dataclass(frozen=True)
class Statement:
    kind: str  # "arg" | "att"
    ids: tuple
    probability: tuple | None  # (literal, offset); None when certain
    line: int
    column: int


class _Reader:
    def __init__(self, text: str):
        self.text = text.replace("\r\n", "\n").replace("\r", "\n")
        self.pos = 0

    def where(self, pos: int | None = None) -> tuple[int, int]:
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        column = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, column

    def fail(self, code: str, message: str, pos: int | None = None):
        line, column = self.where(pos)
        raise ParseError(code, message, line, column)

    def skip(self) -> None:
        self.pos = _WS.match(self.text, self.pos).end()

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos : self.pos + 1]

    def expect(self, char: str) -> None:
        if self.peek() != char:
            found = self.peek() or "end of input"
            self.fail("syntax", f"expected {char!r}, found {found!r}")
        self.pos += 1

    def token(self, pattern: re.Pattern, what: str) -> tuple[str, int]:
        self.skip()
        m = pattern.match(self.text, self.pos)
        if not m:
            found = self.text[self.pos : self.pos + 1] or "end of input"
            self.fail("syntax", f"expected {what}, found {found!r}")
        self.pos = m.end()
        return m.group(), m.start()

    def statement(self) -> Statement:
        self.skip()
        start = self.pos
        line, column = self.where()
        keyword, _ = self.token(_KEYWORD, "'arg' or 'att'")
        if keyword not in ("arg", "att"):
            self.fail("syntax", f"unknown statement {keyword!r}", start)
        self.expect("(")
        ids = [self.token(_ID, "an argument id")[0]]
        if keyword == "att":
            self.expect(",")
            ids.append(self.token(_ID, "an argument id")[0])
        prob = None
        if self.peek() == ",":
            self.pos += 1
            prob = self.token(_NUMBER, "a probability")
        self.expect(")")
        self.expect(".")
        return Statement(keyword, tuple(ids), prob, line, column)


def _probability(reader: _Reader, literal: str, at: int, exact: bool):
    value = Fraction(literal) if exact else float(literal)
    if value == 0:
        reader.fail("zero-probability", "probability 0 is redundant; drop the element", at)
    if not 0 < value <= 1:
        reader.fail("probability-range", f"probability {literal} outside (0,1]", at)
    return value


def parse_document(text: str) -> list[Statement]:
    reader = _Reader(text)
    out = []
    while not reader.at_end():
        out.append(reader.statement())
    return out


def parse_praaf(text: str, exact: bool = False) -> PrAAF:
    """Parse a ``.praaf`` document.

    With ``exact=True`` probabilities become ``Fraction`` values. Raises
    :class:`ParseError` with line and column on the first problem.
    """
    reader = _Reader(text)
    p_args: dict = {}
    p_atts: dict = {}
    pending = []
    while not reader.at_end():
        start = reader.pos
        st = reader.statement()
        if st.probability is None:
            value = 1
        else:
            value = _probability(reader, st.probability[0], st.probability[1], exact)
        if st.kind == "arg":
            (name,) = st.ids
            if name in p_args:
                reader.fail("duplicate", f"argument {name!r} declared twice", start)
            p_args[name] = value
        else:
            if st.ids in p_atts:
                reader.fail("duplicate", f"attack {st.ids[0]}->{st.ids[1]} declared twice", start)
            p_atts[st.ids] = value
            pending.append((st, start))
    # attack endpoints may be declared anywhere in the document
    for st, start in pending:
        for end in st.ids:
            if end not in p_args:
                reader.fail("unknown-endpoint", f"unknown endpoint {end!r}", start)
    return PrAAF(p_args, p_atts)


def read_praaf(path, exact: bool = False) -> PrAAF:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_praaf(fh.read(), exact=exact)


def format_probability(p, digits: int = SIGNIFICANT_DIGITS) -> str:
    """Plain decimal with at most ``digits`` significant digits, zeros trimmed."""
    with localcontext() as ctx:
        ctx.prec = digits
        if isinstance(p, Fraction):
            d = Decimal(p.numerator) / Decimal(p.denominator)
        else:
            d = +Decimal(p)
    text = format(d, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def serialize_praaf(praaf: PrAAF) -> str:
    """Canonical document: arguments then attacks, each sorted; probability 1 omitted."""
    lines = []
    for a in sorted(praaf.p_args):
        p = praaf.p_args[a]
        lines.append(f"arg({a})." if p >= 1 else f"arg({a},{format_probability(p)}).")
    for (src, dst) in sorted(praaf.p_atts):
        p = praaf.p_atts[(src, dst)]
        if p >= 1:
            lines.append(f"att({src},{dst}).")
        else:
            lines.append(f"att({src},{dst},{format_probability(p)}).")
    return "".join(line + "\n" for line in lines)


def write_praaf(praaf: PrAAF, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_praaf(praaf))


def export_dot(praaf: PrAAF, eta: str | None = "eta", name: str = "praaf") -> str:
    """Graphviz digraph: circles for arguments, arrows for attacks.

    Probabilistic elements carry their probability as a label; the ground
    truth argument (``eta``) is drawn as a filled double circle.
    """
    out = [f"digraph {name} {{", "  node [shape=circle];"]
    for a in sorted(praaf.p_args):
        attrs = []
        p = praaf.p_args[a]
        if p < 1:
            attrs.append(f'xlabel="{format_probability(p)}"')
        if eta is not None and a == eta:
            attrs += ['label="η"', "shape=doublecircle", "style=filled", 'fillcolor="lightgray"']
        out.append(f'  "{a}"' + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for (src, dst) in sorted(praaf.p_atts):
        p = praaf.p_atts[(src, dst)]
        label = f' [label="{format_probability(p)}"]' if p < 1 else ""
        out.append(f'  "{src}" -> "{dst}"{label};')
    out.append("}")
    return "\n".join(out) + "\n"
