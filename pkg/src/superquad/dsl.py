"""Line-oriented text format for superalgebras, forms and cochains.

Grammar (docs/grammar.ebnf has the formal version)::

    basis e1:even e2:odd ...
    bracket [a,b] = 2*c + 1/3*d
    form B(a,b) = 1/2
    cochain2 w(a,b;c) = q        # value of w(a,b) on c
    cochain3 f(a,b,c) = q
    scalar2 phi(a,b) = q
    # comment

Scalars are exact rationals written as integers or p/q.  Unspecified
entries default to zero.  Symmetric/skew completions are applied
automatically from the container invariants; an explicit entry that
contradicts the completion (or restates it with a different value) is a
hard error, as is any entry that violates the parity rules.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .cohomology import (Cochain2Dual, ScalarCochain2, ScalarCochain3,
                         canon2_first, canon3, collect_cochain2dual,
                         collect_alt3, collect_scalar2, expand_alt3,
                         expand_cochain2dual, expand_scalar2)
from .errors import SuperquadError
from .forms import EvenForm, QuadraticLieSuperalgebra
from .linalg import Vec, ZERO, vec, vec_is_zero, vec_scale, zero_vec
from .superalgebra import (EVEN, ODD, GradedBasis, LieSuperalgebra, Subspace,
                           graded_basis, sgn, subspace)


class ParseError(SuperquadError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


LABEL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_*']*")
RATIONAL_RE = re.compile(r"-?\d+(?:/\d+)?")


@dataclass
class AlgebraDocument:
    """Parsed, canonicalized form of a DSL file.

    All entry maps hold only canonical nonzero coordinates, so documents
    compare by structural content rather than by surface syntax.
    """

    names: tuple[str, ...] = ()
    parities: tuple[int, ...] = ()
    brackets: dict = field(default_factory=dict)      # (i,j) -> Vec
    form_name: str | None = None
    form_entries: dict = field(default_factory=dict)  # (i,j), i<=j -> Fraction
    cochain2: dict = field(default_factory=dict)      # name -> {(i,j,k): q}
    cochain3: dict = field(default_factory=dict)      # name -> {(i,j,k): q}
    scalar2: dict = field(default_factory=dict)       # name -> {(i,j): q}

    @property
    def dim(self) -> int:
        return len(self.names)

    def basis(self) -> GradedBasis:
        return graded_basis(self.names, self.parities)

    def index(self, label: str) -> int:
        return self.names.index(label)


class _LineParser:
    """Tokenizer over one line, tracking columns for error messages."""

    def __init__(self, text: str, lineno: int):
        self.text = text
        self.lineno = lineno
        self.pos = 0

    def error(self, message: str):
        raise ParseError(message, self.lineno, self.pos + 1)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def literal(self, s: str):
        self.skip_ws()
        if not self.text.startswith(s, self.pos):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def try_literal(self, s: str) -> bool:
        self.skip_ws()
        if self.text.startswith(s, self.pos):
            self.pos += len(s)
            return True
        return False

    def label(self) -> str:
        self.skip_ws()
        m = LABEL_RE.match(self.text, self.pos)
        if not m:
            self.error("expected a basis label")
        self.pos = m.end()
        return m.group(0)

    def rational(self) -> Fraction:
        self.skip_ws()
        m = RATIONAL_RE.match(self.text, self.pos)
        if not m:
            self.error("expected a rational number")
        self.pos = m.end()
        return Fraction(m.group(0))


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


class _DocBuilder:
    def __init__(self):
        self.names: list[str] = []
        self.parities: list[int] = []
        self.brackets: dict = {}
        self.form_name: str | None = None
        self.form_entries: dict = {}
        self.cochain2: dict = {}
        self.cochain3: dict = {}
        self.scalar2: dict = {}

    def require_basis(self, lp: _LineParser):
        if not self.names:
            lp.error("basis must be declared before this statement")

    def index(self, lp: _LineParser, label: str) -> int:
        try:
            return self.names.index(label)
        except ValueError:
            lp.error(f"undeclared basis label {label!r}")

    def assign(self, store: dict, key, value, lp: _LineParser, what: str):
        if key in store:
            if store[key] != value:
                lp.error(f"contradictory entry for {what}")
            return
        store[key] = value


def _parse_lincomb(lp: _LineParser, builder: _DocBuilder) -> Vec:
    n = len(builder.names)
    out = list(zero_vec(n))
    first = True
    while True:
        lp.skip_ws()
        sign = Fraction(1)
        if lp.try_literal("+"):
            pass
        elif lp.try_literal("-"):
            sign = Fraction(-1)
        elif not first:
            lp.error("expected '+' or '-'")
        lp.skip_ws()
        if lp.peek().isdigit():
            coeff = lp.rational()
            if lp.try_literal("*"):
                label = lp.label()
                out[builder.index(lp, label)] += sign * coeff
            elif coeff == 0:
                pass  # a bare zero term is allowed
            else:
                lp.error("a bare scalar term must be 0")
        else:
            label = lp.label()
            out[builder.index(lp, label)] += sign
        first = False
        if lp.at_end():
            break
    return tuple(out)


def _handle_basis(lp: _LineParser, b: _DocBuilder):
    any_decl = False
    while not lp.at_end():
        label = lp.label()
        lp.literal(":")
        lp.skip_ws()
        if lp.try_literal("even"):
            parity = EVEN
        elif lp.try_literal("odd"):
            parity = ODD
        else:
            lp.error("parity must be 'even' or 'odd'")
        if label in b.names:
            lp.error(f"duplicate basis label {label!r}")
        b.names.append(label)
        b.parities.append(parity)
        any_decl = True
    if not any_decl:
        lp.error("empty basis declaration")


def _handle_bracket(lp: _LineParser, b: _DocBuilder):
    b.require_basis(lp)
    lp.literal("[")
    a = b.index(lp, lp.label())
    lp.literal(",")
    c = b.index(lp, lp.label())
    lp.literal("]")
    lp.literal("=")
    v = _parse_lincomb(lp, b)
    parities = b.parities
    target = (parities[a] + parities[c]) % 2
    for k, q in enumerate(v):
        if q != 0 and parities[k] != target:
            lp.error(
                f"parity violation: [{b.names[a]},{b.names[c]}] cannot "
                f"contain {b.names[k]}")
    s = sgn(parities[a] * parities[c])
    if a == c and s == 1:
        if not vec_is_zero(v):
            lp.error(f"bracket [{b.names[a]},{b.names[a]}] must vanish for "
                     "an even generator")
        return
    if a > c:
        key, val = (c, a), vec_scale(-s, v)
    else:
        key, val = (a, c), v
    if vec_is_zero(val):
        if key in b.brackets and not vec_is_zero(b.brackets[key]):
            lp.error("contradictory entry for bracket")
        return
    b.assign(b.brackets, key, val, lp, f"bracket [{b.names[a]},{b.names[c]}]")


def _handle_form(lp: _LineParser, b: _DocBuilder):
    b.require_basis(lp)
    name = lp.label()
    if b.form_name is not None and b.form_name != name:
        lp.error(f"document already defines form {b.form_name!r}")
    b.form_name = name
    lp.literal("(")
    i = b.index(lp, lp.label())
    lp.literal(",")
    j = b.index(lp, lp.label())
    lp.literal(")")
    lp.literal("=")
    q = lp.rational()
    if not lp.at_end():
        lp.error("unexpected trailing input")
    p = b.parities
    if p[i] != p[j]:
        if q != 0:
            lp.error("parity violation: an even form pairs equal parities")
        return
    if i == j and p[i] == ODD:
        if q != 0:
            lp.error("an odd generator pairs to zero with itself")
        return
    key = (i, j) if i <= j else (j, i)
    val = q if i <= j else sgn(p[i] * p[j]) * q
    if val == 0:
        if key in b.form_entries and b.form_entries[key] != 0:
            lp.error("contradictory entry for form")
        return
    b.assign(b.form_entries, key, val, lp, f"form entry ({i},{j})")


def _canon_cochain2(lp, b, i, j, k, q):
    p = b.parities
    if (p[i] + p[j] + p[k]) % 2:
        if q != 0:
            lp.error("parity violation: cochain entries must be even")
        return None, ZERO
    pair, s = canon2_first(p, i, j)
    if pair is None:
        if q != 0:
            lp.error("entry with a repeated even index must vanish")
        return None, ZERO
    return (pair[0], pair[1], k), s * q


def _handle_cochain2(lp: _LineParser, b: _DocBuilder):
    b.require_basis(lp)
    name = lp.label()
    lp.literal("(")
    i = b.index(lp, lp.label())
    lp.literal(",")
    j = b.index(lp, lp.label())
    lp.literal(";")
    k = b.index(lp, lp.label())
    lp.literal(")")
    lp.literal("=")
    q = lp.rational()
    if not lp.at_end():
        lp.error("unexpected trailing input")
    key, val = _canon_cochain2(lp, b, i, j, k, q)
    store = b.cochain2.setdefault(name, {})
    if key is None:
        return
    if val == 0:
        if key in store and store[key] != 0:
            lp.error("contradictory entry for cochain2")
        return
    b.assign(store, key, val, lp, f"cochain2 {name}")


def _handle_cochain3(lp: _LineParser, b: _DocBuilder):
    b.require_basis(lp)
    name = lp.label()
    lp.literal("(")
    i = b.index(lp, lp.label())
    lp.literal(",")
    j = b.index(lp, lp.label())
    lp.literal(",")
    k = b.index(lp, lp.label())
    lp.literal(")")
    lp.literal("=")
    q = lp.rational()
    if not lp.at_end():
        lp.error("unexpected trailing input")
    key, s = canon3(b.parities, i, j, k)
    store = b.cochain3.setdefault(name, {})
    if key is None:
        if q != 0:
            lp.error("entry is forced to vanish by parity or alternation")
        return
    val = s * q
    if val == 0:
        if key in store and store[key] != 0:
            lp.error("contradictory entry for cochain3")
        return
    b.assign(store, key, val, lp, f"cochain3 {name}")


def _handle_scalar2(lp: _LineParser, b: _DocBuilder):
    b.require_basis(lp)
    name = lp.label()
    lp.literal("(")
    i = b.index(lp, lp.label())
    lp.literal(",")
    j = b.index(lp, lp.label())
    lp.literal(")")
    lp.literal("=")
    q = lp.rational()
    if not lp.at_end():
        lp.error("unexpected trailing input")
    p = b.parities
    if p[i] != p[j]:
        if q != 0:
            lp.error("parity violation: scalar2 pairs equal parities")
        return
    if i == j and p[i] == EVEN:
        if q != 0:
            lp.error("scalar2 entry with a repeated even index must vanish")
        return
    key = (i, j) if i <= j else (j, i)
    val = q if i <= j else -sgn(p[i] * p[j]) * q
    store = b.scalar2.setdefault(name, {})
    if val == 0:
        if key in store and store[key] != 0:
            lp.error("contradictory entry for scalar2")
        return
    b.assign(store, key, val, lp, f"scalar2 {name}")


_HANDLERS = {
    "basis": _handle_basis,
    "bracket": _handle_bracket,
    "form": _handle_form,
    "cochain2": _handle_cochain2,
    "cochain3": _handle_cochain3,
    "scalar2": _handle_scalar2,
}


def parse(text: str) -> AlgebraDocument:
    b = _DocBuilder()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        lp = _LineParser(line, lineno)
        lp.skip_ws()
        m = LABEL_RE.match(lp.text, lp.pos)
        keyword = m.group(0) if m else ""
        if keyword not in _HANDLERS:
            lp.error(f"unknown statement {keyword!r}" if keyword
                     else "expected a statement keyword")
        lp.pos = m.end()
        _HANDLERS[keyword](lp, b)
    doc = AlgebraDocument(
        names=tuple(b.names), parities=tuple(b.parities),
        brackets=dict(sorted(b.brackets.items())),
        form_name=b.form_name,
        form_entries=dict(sorted(b.form_entries.items())),
        cochain2={k: dict(sorted(v.items()))
                  for k, v in sorted(b.cochain2.items())},
        cochain3={k: dict(sorted(v.items()))
                  for k, v in sorted(b.cochain3.items())},
        scalar2={k: dict(sorted(v.items()))
                 for k, v in sorted(b.scalar2.items())},
    )
    return doc


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------

def _format_lincomb(doc: AlgebraDocument, v: Vec) -> str:
    parts = []
    for k, q in enumerate(v):
        if q == 0:
            continue
        mag = abs(q)
        term = doc.names[k] if mag == 1 else f"{mag}*{doc.names[k]}"
        if not parts:
            parts.append(term if q > 0 else f"-{term}")
        else:
            parts.append(("+ " if q > 0 else "- ") + term)
    return " ".join(parts) if parts else "0"


def emit(doc: AlgebraDocument) -> str:
    lines = []
    decls = " ".join(
        f"{n}:{'even' if p == EVEN else 'odd'}"
        for n, p in zip(doc.names, doc.parities))
    lines.append(f"basis {decls}")
    for (i, j), v in sorted(doc.brackets.items()):
        if not vec_is_zero(v):
            lines.append(f"bracket [{doc.names[i]},{doc.names[j]}] = "
                         f"{_format_lincomb(doc, v)}")
    if doc.form_name is not None:
        for (i, j), q in sorted(doc.form_entries.items()):
            if q != 0:
                lines.append(f"form {doc.form_name}({doc.names[i]},"
                             f"{doc.names[j]}) = {q}")
    for name, entries in sorted(doc.cochain2.items()):
        for (i, j, k), q in sorted(entries.items()):
            if q != 0:
                lines.append(
                    f"cochain2 {name}({doc.names[i]},{doc.names[j]};"
                    f"{doc.names[k]}) = {q}")
    for name, entries in sorted(doc.cochain3.items()):
        for (i, j, k), q in sorted(entries.items()):
            if q != 0:
                lines.append(
                    f"cochain3 {name}({doc.names[i]},{doc.names[j]},"
                    f"{doc.names[k]}) = {q}")
    for name, entries in sorted(doc.scalar2.items()):
        for (i, j), q in sorted(entries.items()):
            if q != 0:
                lines.append(f"scalar2 {name}({doc.names[i]},"
                             f"{doc.names[j]}) = {q}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# conversion to and from library objects
# ---------------------------------------------------------------------------

def document_algebra(doc: AlgebraDocument) -> LieSuperalgebra:
    if not doc.names:
        raise ParseError("document declares no basis", 1, 1)
    basis = doc.basis()
    n = basis.dim
    c = [[list(zero_vec(n)) for _ in range(n)] for _ in range(n)]
    for (i, j), v in doc.brackets.items():
        c[i][j] = list(v)
        if i != j:
            c[j][i] = list(vec_scale(-sgn(doc.parities[i] * doc.parities[j]),
                                     v))
    return LieSuperalgebra(basis,
                           tuple(tuple(tuple(r) for r in row) for row in c))


def document_form(doc: AlgebraDocument) -> EvenForm | None:
    if doc.form_name is None:
        return None
    basis = doc.basis()
    n = basis.dim
    g = [[ZERO] * n for _ in range(n)]
    for (i, j), q in doc.form_entries.items():
        g[i][j] = q
        if i != j:
            g[j][i] = sgn(doc.parities[i] * doc.parities[j]) * q
    return EvenForm(basis, tuple(tuple(r) for r in g))


def document_cochain2(doc: AlgebraDocument, name: str) -> Cochain2Dual:
    return expand_cochain2dual(doc.basis(), doc.cochain2[name])


def document_cochain3(doc: AlgebraDocument, name: str) -> ScalarCochain3:
    return expand_alt3(doc.basis(), doc.cochain3[name])


def document_scalar2(doc: AlgebraDocument, name: str) -> ScalarCochain2:
    return expand_scalar2(doc.basis(), doc.scalar2[name])


def document_from(algebra: LieSuperalgebra,
                  form: EvenForm | None = None,
                  form_name: str = "B",
                  cochain2: dict[str, Cochain2Dual] | None = None,
                  cochain3: dict[str, ScalarCochain3] | None = None,
                  scalar2: dict[str, ScalarCochain2] | None = None
                  ) -> AlgebraDocument:
    basis = algebra.basis
    n = basis.dim
    brackets = {}
    for i in range(n):
        for j in range(i, n):
            if i == j and sgn(basis.parity(i) * basis.parity(j)) == 1:
                continue
            v = vec(algebra.c[i][j])
            if not vec_is_zero(v):
                brackets[(i, j)] = v
    form_entries = {}
    if form is not None:
        for i in range(n):
            for j in range(i, n):
                if form.gram[i][j] != 0:
                    form_entries[(i, j)] = form.gram[i][j]
    return AlgebraDocument(
        names=basis.names, parities=basis.parities,
        brackets=dict(sorted(brackets.items())),
        form_name=form_name if form is not None else None,
        form_entries=dict(sorted(form_entries.items())),
        cochain2={k: dict(sorted(collect_cochain2dual(v).items()))
                  for k, v in sorted((cochain2 or {}).items())},
        cochain3={k: dict(sorted(collect_alt3(v).items()))
                  for k, v in sorted((cochain3 or {}).items())},
        scalar2={k: dict(sorted(collect_scalar2(v).items()))
                 for k, v in sorted((scalar2 or {}).items())},
    )


def document_quadratic(q: QuadraticLieSuperalgebra,
                       form_name: str = "B", **kwargs) -> AlgebraDocument:
    return document_from(q.algebra, form=q.form, form_name=form_name,
                         **kwargs)


def parse_span(doc: AlgebraDocument, text: str) -> Subspace:
    """Subspace from a semicolon-separated list of linear combinations,
    e.g. ``"e1*; e2 + 1/2*e3"``."""
    b = _DocBuilder()
    b.names = list(doc.names)
    b.parities = list(doc.parities)
    vectors = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        lp = _LineParser(part, 1)
        vectors.append(_parse_lincomb(lp, b))
        if not lp.at_end():
            lp.error("unexpected trailing input in span expression")
    return subspace(doc.basis(), vectors)
