"""Reader for a deliberately small Turtle subset.

Supported: ``@prefix`` directives, IRIs, prefixed names, the ``a``
keyword, blank node labels, string literals with language tags or
datatypes, and the ``;`` / ``,`` abbreviations.  Everything else
(collections, blank-node property lists, numeric/boolean shorthand,
multi-line strings, @base...) raises a ParseError naming the construct,
so callers know the file needs a full Turtle toolchain instead.
"""

from __future__ import annotations

from cantor.errors import ParseError
from cantor.graph import BlankNode, Graph, Iri, Literal, Triple
from cantor.ntriples import unescape_string

_RDF_TYPE = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")

_PN_CHARS = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_-")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1

    def error(self, message):
        raise ParseError(message, line=self.line)

    def unsupported(self, construct):
        self.error(f"unsupported Turtle feature: {construct}")

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def _advance(self, n=1):
        for _ in range(n):
            if self.pos < len(self.text):
                if self.text[self.pos] == "\n":
                    self.line += 1
                self.pos += 1

    def skip_ws(self):
        while not self.eof():
            ch = self.text[self.pos]
            if ch in " \t\r\n":
                self._advance()
            elif ch == "#":
                while not self.eof() and self.text[self.pos] != "\n":
                    self._advance()
            else:
                return

    def peek(self) -> str:
        return self.text[self.pos] if not self.eof() else ""

    def startswith(self, token: str) -> bool:
        return self.text.startswith(token, self.pos)

    def take_iri(self) -> str:
        end = self.text.find(">", self.pos + 1)
        if end < 0:
            self.error("unterminated IRI")
        raw = self.text[self.pos + 1:end]
        self._advance(end + 1 - self.pos)
        return unescape_string(raw, line=self.line)

    def take_string(self) -> str:
        if self.startswith('"""') or self.startswith("'''"):
            self.unsupported("multi-line string literal")
        if self.peek() == "'":
            self.unsupported("single-quoted string literal")
        out_end = self.pos + 1
        while True:
            if out_end >= len(self.text):
                self.error("unterminated string literal")
            ch = self.text[out_end]
            if ch == "\\":
                out_end += 2
                continue
            if ch == '"':
                break
            if ch == "\n":
                self.error("newline inside string literal")
            out_end += 1
        raw = self.text[self.pos + 1:out_end]
        self._advance(out_end + 1 - self.pos)
        return unescape_string(raw, line=self.line)

    def take_name(self) -> str:
        """Prefixed-name part: letters/digits/_/- plus inner dots."""
        start = self.pos
        end = self.pos
        while end < len(self.text):
            ch = self.text[end]
            if ch in _PN_CHARS:
                end += 1
            elif ch == "." and end + 1 < len(self.text) and self.text[end + 1] in _PN_CHARS:
                end += 1  # dot only when more name characters follow
            else:
                break
        self._advance(end - start)
        return self.text[start:end]


def load_turtle_subset(text: str) -> Graph:
    """Parse the Turtle subset into a Graph (same triples as N-Triples form)."""
    scanner = _Scanner(text)
    graph = Graph()

    def resolve_prefixed(token_line) -> Iri:
        name = scanner.take_name()
        if scanner.peek() != ":":
            scanner.error(f"expected ':' in prefixed name after {name!r}")
        scanner._advance()
        local = scanner.take_name()
        if name not in graph.prefixes:
            raise ParseError(f"undefined prefix {name!r}", line=token_line)
        return Iri(graph.prefixes[name].value + local)

    def parse_term(position: str):
        scanner.skip_ws()
        if scanner.eof():
            scanner.error("unexpected end of document")
        ch = scanner.peek()
        if ch == "<":
            return Iri(scanner.take_iri())
        if ch == "(":
            scanner.unsupported("collection")
        if ch == "[":
            scanner.unsupported("blank-node property list")
        if ch == '"' or ch == "'":
            if position != "object":
                scanner.error("literal not allowed here")
            lexical = scanner.take_string()
            if scanner.peek() == "@":
                scanner._advance()
                lang = scanner.take_name()
                return Literal(lexical, lang=lang)
            if scanner.startswith("^^"):
                scanner._advance(2)
                scanner.skip_ws()
                if scanner.peek() == "<":
                    return Literal(lexical, datatype=Iri(scanner.take_iri()))
                return Literal(lexical, datatype=resolve_prefixed(scanner.line))
            return Literal(lexical)
        if scanner.startswith("_:"):
            scanner._advance(2)
            return BlankNode(scanner.take_name())
        if ch.isdigit() or ch in "+-":
            scanner.unsupported("numeric literal shorthand")
        # bare word: 'a', boolean shorthand, or a prefixed name
        mark = scanner.pos
        word = scanner.take_name()
        if word == "a" and scanner.peek() != ":":
            if position == "predicate":
                return _RDF_TYPE
            scanner.error("'a' is only valid as a predicate")
        if word in ("true", "false") and scanner.peek() != ":":
            scanner.unsupported("boolean literal shorthand")
        scanner.pos = mark  # re-scan as prefixed name
        return resolve_prefixed(scanner.line)

    def parse_directive():
        scanner.skip_ws()
        if scanner.startswith("@base") or scanner.startswith("BASE ") or scanner.startswith("base "):
            scanner.unsupported("@base directive")
        if scanner.startswith("@prefix"):
            scanner._advance(len("@prefix"))
            scanner.skip_ws()
            name = scanner.take_name()
            if scanner.peek() != ":":
                scanner.error("expected ':' in @prefix directive")
            scanner._advance()
            scanner.skip_ws()
            if scanner.peek() != "<":
                scanner.error("expected IRI in @prefix directive")
            ns = Iri(scanner.take_iri())
            scanner.skip_ws()
            if scanner.peek() != ".":
                scanner.error("expected '.' after @prefix directive")
            scanner._advance()
            graph.prefixes[name] = ns
            return True
        if scanner.startswith("PREFIX ") or scanner.startswith("prefix "):
            scanner.unsupported("SPARQL-style PREFIX directive")
        return False

    while True:
        scanner.skip_ws()
        if scanner.eof():
            break
        if scanner.peek() == "@" or scanner.startswith("PREFIX ") or scanner.startswith("prefix "):
            parse_directive()
            continue
        subject = parse_term("subject")
        while True:  # predicate-object list
            predicate = parse_term("predicate")
            if not isinstance(predicate, Iri):
                scanner.error("predicate must be an IRI")
            while True:  # object list
                obj = parse_term("object")
                graph.add(Triple(subject, predicate, obj))
                scanner.skip_ws()
                if scanner.peek() == ",":
                    scanner._advance()
                    continue
                break
            scanner.skip_ws()
            if scanner.peek() == ";":
                scanner._advance()
                scanner.skip_ws()
                # dangling ';' before '.' is legal Turtle
                if scanner.peek() == ".":
                    break
                continue
            break
        scanner.skip_ws()
        if scanner.peek() != ".":
            scanner.error("expected '.' at end of statement")
        scanner._advance()

    return graph
