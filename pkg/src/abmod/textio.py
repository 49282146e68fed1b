"""Text formats: series expressions and module files.

Series grammar (whitespace insignificant, ``#`` starts a comment in files)::

    series  :=  ['-'] term (('+'|'-') term)*
    term    :=  coef | coef '*' bpow | bpow
    bpow    :=  'b' | 'b' '^' INT
    coef    :=  INT | INT '/' INT | 'i' | '(' complex ')'
    complex :=  real | real ('+'|'-') imag | imag
    real    :=  ['-'] INT ['/' INT]
    imag    :=  [real '*'] 'i'

Examples: ``(1/2)*b + (3+2*i)*b^2``, ``-b^3``, ``i*b - 2``.

The emitter produces a canonical subset of the grammar (terms in increasing
power of b, integer coefficients bare, other rationals parenthesized, complex
coefficients as ``(re+im*i)``), so parse/emit round-trips are byte-stable.

Module file format, line oriented::

    # optional comments
    rank 2
    precision 8
    m 1 1: (1/2)*b
    m 2 1: b^2

``m i j:`` lines give the matrix entry in row i, column j (1-based); omitted
entries are zero.  Column j of the matrix holds the coordinates of a applied
to the j-th basis vector.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .scalars import Scalar
from .series import Series

# ---------------------------------------------------------------------------
# scalar formatting
# ---------------------------------------------------------------------------


def _fmt_frac(x: Fraction) -> str:
    return str(x)


def format_scalar(s: Scalar) -> str:
    """Canonical standalone text for a scalar (no enclosing parentheses
    unless the value is complex)."""
    if not s.im:
        return _fmt_frac(s.re)
    if not s.re:
        if s.im == 1:
            return "i"
        if s.im == -1:
            return "-i"
        return f"({_fmt_frac(s.im)}*i)"
    sign = "+" if s.im > 0 else "-"
    mag = abs(s.im)
    imtxt = "i" if mag == 1 else f"{_fmt_frac(mag)}*i"
    return f"({_fmt_frac(s.re)}{sign}{imtxt})"


def _fmt_coefficient(s: Scalar) -> str:
    """Text for a scalar used as a multiplier of a b power."""
    if not s.im:
        if s.re.denominator == 1:
            return _fmt_frac(s.re)
        return f"({_fmt_frac(s.re)})"
    return format_scalar(s)


def _leading_negative(s: Scalar) -> bool:
    if s.re:
        return s.re < 0
    return s.im < 0


def format_series(s: Series) -> str:
    """Canonical text of a series; precision is *not* part of the text."""
    parts: list[str] = []
    for k, c in enumerate(s.coeffs):
        if not c:
            continue
        neg = _leading_negative(c)
        mag = -c if neg else c
        if k == 0:
            body = format_scalar(mag)
        else:
            bpart = "b" if k == 1 else f"b^{k}"
            body = bpart if mag.is_one() else f"{_fmt_coefficient(mag)}*{bpart}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    if not parts:
        return "0"
    return " ".join(parts)


# ---------------------------------------------------------------------------
# tokenizer
# ---------------------------------------------------------------------------

_OPS = set("+-*/^():,;")


def _tokenize(text: str, line: int | None = None):
    """Yield (kind, value, column) tokens; kinds are INT, NAME, OP."""
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("INT", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            toks.append(("NAME", text[i:j], i))
            i = j
            continue
        if ch in _OPS:
            toks.append(("OP", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line=line, column=i + 1)
    return toks


class _TokenStream:
    def __init__(self, toks, line=None):
        self.toks = toks
        self.pos = 0
        self.line = line

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None, None)

    def next(self):
        t = self.peek()
        if t[0] is None:
            raise ParseError("unexpected end of expression", line=self.line)
        self.pos += 1
        return t

    def accept(self, kind, value=None):
        k, v, _ = self.peek()
        if k == kind and (value is None or v == value):
            self.pos += 1
            return v
        return None

    def expect(self, kind, value=None):
        k, v, c = self.peek()
        if k != kind or (value is not None and v != value):
            want = value if value is not None else kind
            raise ParseError(
                f"expected {want!r}, found {v!r}", line=self.line,
                column=(c + 1) if c is not None else None,
            )
        self.pos += 1
        return v

    def done(self) -> bool:
        return self.pos >= len(self.toks)


# ---------------------------------------------------------------------------
# scalar / series parsing
# ---------------------------------------------------------------------------


def _parse_rational(ts: _TokenStream) -> Fraction:
    neg = ts.accept("OP", "-") is not None
    num = int(ts.expect("INT"))
    den = 1
    if ts.accept("OP", "/"):
        den = int(ts.expect("INT"))
        if den == 0:
            raise ParseError("zero denominator", line=ts.line)
    f = Fraction(num, den)
    return -f if neg else f


def _parse_complex_body(ts: _TokenStream) -> Scalar:
    """Parse the inside of a parenthesized coefficient."""
    # imag-only form: [rat '*'] 'i'
    if ts.peek()[:2] == ("NAME", "i"):
        ts.next()
        return Scalar(0, 1)
    first = _parse_rational(ts)
    if ts.accept("OP", "*"):
        ts.expect("NAME", "i")
        return Scalar(0, first)
    sign = None
    if ts.accept("OP", "+"):
        sign = 1
    elif ts.accept("OP", "-"):
        sign = -1
    if sign is None:
        return Scalar(first)
    if ts.peek()[:2] == ("NAME", "i"):
        ts.next()
        return Scalar(first, sign)
    imag = _parse_rational(ts)
    ts.expect("OP", "*")
    ts.expect("NAME", "i")
    return Scalar(first, sign * imag)


def _parse_coefficient(ts: _TokenStream) -> Scalar:
    k, v, _ = ts.peek()
    if k == "OP" and v == "(":
        ts.next()
        s = _parse_complex_body(ts)
        ts.expect("OP", ")")
        return s
    if k == "NAME" and v == "i":
        ts.next()
        return Scalar(0, 1)
    return Scalar(_parse_rational(ts))


def _parse_bpow(ts: _TokenStream) -> int:
    ts.expect("NAME", "b")
    if ts.accept("OP", "^"):
        return int(ts.expect("INT"))
    return 1


def _parse_term(ts: _TokenStream) -> tuple[Scalar, int]:
    """One term -> (coefficient, b power)."""
    k, v, _ = ts.peek()
    if k == "NAME" and v == "b":
        return Scalar(1), _parse_bpow(ts)
    coef = _parse_coefficient(ts)
    if ts.accept("OP", "*"):
        return coef, _parse_bpow(ts)
    return coef, 0


def parse_scalar(text: str) -> Scalar:
    """Parse a standalone scalar (any coefficient form, optional sign)."""
    ts = _TokenStream(_tokenize(text))
    neg = ts.accept("OP", "-") is not None
    s = _parse_coefficient(ts)
    if not ts.done():
        raise ParseError(f"trailing input in scalar {text!r}")
    return -s if neg else s


def parse_series(text: str, precision: int, line: int | None = None) -> Series:
    """Parse a series expression at a stated precision.

    A term with power >= precision is a ParseError: accepting it would
    silently discard information the text claims to carry.
    """
    ts = _TokenStream(_tokenize(text, line=line), line=line)
    coeffs = [Scalar(0)] * precision
    first = True
    while not ts.done() or first:
        if first:
            sign = -1 if ts.accept("OP", "-") else 1
            first = False
        else:
            if ts.accept("OP", "+"):
                sign = 1
            elif ts.accept("OP", "-"):
                sign = -1
            else:
                k, v, c = ts.peek()
                raise ParseError(
                    f"expected '+' or '-', found {v!r}", line=line,
                    column=(c + 1) if c is not None else None,
                )
        coef, power = _parse_term(ts)
        if power >= precision:
            raise ParseError(
                f"term of order b^{power} exceeds stated precision {precision}",
                line=line,
            )
        coeffs[power] = coeffs[power] + (coef if sign > 0 else -coef)
    return Series(coeffs, precision)


# ---------------------------------------------------------------------------
# module files
# ---------------------------------------------------------------------------


def parse_module_file(text: str):
    """Parse a module file into an AbModule."""
    from .module import AbModule

    rank = None
    precision = None
    entries: dict[tuple[int, int], str] = {}
    entry_lines: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        lineat = raw.split("#", 1)[0].strip()
        if not lineat:
            continue
        if lineat.startswith("rank"):
            if rank is not None:
                raise ParseError("duplicate rank line", line=lineno)
            try:
                rank = int(lineat.split()[1])
            except (IndexError, ValueError):
                raise ParseError("malformed rank line", line=lineno) from None
            if rank < 1:
                raise ParseError("rank must be >= 1", line=lineno)
            continue
        if lineat.startswith("precision"):
            if precision is not None:
                raise ParseError("duplicate precision line", line=lineno)
            try:
                precision = int(lineat.split()[1])
            except (IndexError, ValueError):
                raise ParseError("malformed precision line", line=lineno) from None
            if precision < 1:
                raise ParseError("precision must be >= 1", line=lineno)
            continue
        if lineat.startswith("m"):
            head, _, expr = lineat.partition(":")
            if not _:
                raise ParseError("entry line is missing ':'", line=lineno)
            parts = head.split()
            if len(parts) != 3 or parts[0] != "m":
                raise ParseError("entry line must look like 'm i j: expr'", line=lineno)
            try:
                i, j = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError("entry indices must be integers", line=lineno) from None
            if (i, j) in entries:
                raise ParseError(
                    f"duplicate entry m {i} {j} (first at line {entry_lines[(i, j)]})",
                    line=lineno,
                )
            entries[(i, j)] = expr
            entry_lines[(i, j)] = lineno
            continue
        raise ParseError(f"unrecognized line {lineat!r}", line=lineno)
    if rank is None:
        raise ParseError("missing rank line")
    if precision is None:
        raise ParseError("missing precision line")
    matrix = [[Series.zero(precision) for _ in range(rank)] for _ in range(rank)]
    for (i, j), expr in entries.items():
        if not (1 <= i <= rank and 1 <= j <= rank):
            raise ParseError(
                f"entry m {i} {j} outside rank {rank}", line=entry_lines[(i, j)]
            )
        matrix[i - 1][j - 1] = parse_series(expr, precision, line=entry_lines[(i, j)])
    return AbModule(matrix)


def emit_module_file(module) -> str:
    """Canonical module-file text; parse(emit(E)) == E byte for byte."""
    lines = [f"rank {module.rank}", f"precision {module.precision}"]
    for i in range(module.rank):
        for j in range(module.rank):
            entry = module.matrix[i][j]
            if not entry.is_zero():
                lines.append(f"m {i + 1} {j + 1}: {format_series(entry)}")
    return "\n".join(lines) + "\n"
