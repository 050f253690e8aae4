"""N-Triples reader/writer.

``save_ntriples`` emits one triple per line in canonical order
(subject, predicate, object, compared on the serialized term text) so
that equal graphs always serialize to identical bytes.
"""

from __future__ import annotations

import re

from cantor.errors import ParseError
from cantor.graph import BlankNode, Graph, Iri, Literal, Triple

_ESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
}


def _escape(text: str) -> str:
    out = []
    for ch in text:
        if ch in _ESCAPES:
            out.append(_ESCAPES[ch])
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04X}")
        else:
            out.append(ch)
    return "".join(out)


_UNESCAPE_RE = re.compile(r"\\(u[0-9A-Fa-f]{4}|U[0-9A-Fa-f]{8}|[tbnrf\"'\\])")
_UNESCAPE_MAP = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}


def unescape_string(text: str, line=None) -> str:
    def repl(m):
        body = m.group(1)
        if body[0] in "uU":
            return chr(int(body[1:], 16))
        return _UNESCAPE_MAP[body]

    # A backslash not forming a valid escape is an error.
    pos = 0
    out = []
    while True:
        idx = text.find("\\", pos)
        if idx < 0:
            out.append(text[pos:])
            break
        out.append(text[pos:idx])
        m = _UNESCAPE_RE.match(text, idx)
        if not m:
            raise ParseError(f"invalid escape sequence at {text[idx:idx + 2]!r}", line=line)
        out.append(repl(m))
        pos = m.end()
    return "".join(out)


def format_term(term) -> str:
    if isinstance(term, Iri):
        return f"<{term.value}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    if isinstance(term, Literal):
        body = f'"{_escape(term.lexical)}"'
        if term.lang:
            return f"{body}@{term.lang}"
        if term.datatype:
            return f"{body}^^<{term.datatype.value}>"
        return body
    raise TypeError(f"not an RDF term: {term!r}")


def format_triple(triple: Triple) -> str:
    return f"{format_term(triple.subject)} {format_term(triple.predicate)} {format_term(triple.object)} ."


def save_ntriples(graph: Graph) -> str:
    lines = sorted(format_triple(t) for t in graph)
    return "".join(line + "\n" for line in lines)


_IRI_RE = re.compile(r"<([^<>\"{}|^`\\\x00-\x20]*)>")
_BNODE_RE = re.compile(r"_:([A-Za-z0-9][A-Za-z0-9._\-]*)")
_STRING_RE = re.compile(r'"((?:[^"\\\n\r]|\\.)*)"')
_LANG_RE = re.compile(r"@([A-Za-z]{1,8}(?:-[A-Za-z0-9]{1,8})*)")


class _LineParser:
    def __init__(self, text: str, line_no: int):
        self.text = text
        self.pos = 0
        self.line_no = line_no

    def error(self, message):
        raise ParseError(message, line=self.line_no)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def take(self, regex):
        m = regex.match(self.text, self.pos)
        if m:
            self.pos = m.end()
        return m

    def parse_subject(self):
        m = self.take(_IRI_RE)
        if m:
            return Iri(m.group(1))
        m = self.take(_BNODE_RE)
        if m:
            return BlankNode(m.group(1))
        self.error(f"expected IRI or blank node at column {self.pos + 1}")

    def parse_predicate(self):
        m = self.take(_IRI_RE)
        if m:
            return Iri(m.group(1))
        self.error(f"expected IRI at column {self.pos + 1}")

    def parse_object(self):
        m = self.take(_STRING_RE)
        if m:
            lexical = unescape_string(m.group(1), line=self.line_no)
            lang_m = self.take(_LANG_RE)
            if lang_m:
                return Literal(lexical, lang=lang_m.group(1))
            if self.text.startswith("^^", self.pos):
                self.pos += 2
                dt = self.take(_IRI_RE)
                if not dt:
                    self.error("expected datatype IRI after '^^'")
                return Literal(lexical, datatype=Iri(dt.group(1)))
            return Literal(lexical)
        return self.parse_subject()

    def expect_dot(self):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ".":
            self.error("expected '.' at end of statement")
        self.pos += 1
        self.skip_ws()
        if self.pos != len(self.text):
            self.error(f"trailing content after '.': {self.text[self.pos:]!r}")


def load_ntriples(text: str) -> Graph:
    graph = Graph()
    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parser = _LineParser(line, line_no)
        try:
            subject = parser.parse_subject()
            parser.skip_ws()
            predicate = parser.parse_predicate()
            parser.skip_ws()
            obj = parser.parse_object()
            parser.expect_dot()
        except ParseError:
            raise
        except Exception as exc:  # malformed terms surface as parse errors
            raise ParseError(str(exc), line=line_no)
        graph.add(Triple(subject, predicate, obj))
    return graph
