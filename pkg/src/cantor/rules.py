"""Declarative MARC-to-graph conversion rules.

Rule files are line oriented::

    # dialect tag $code [ind1=x] [ind2=y] -> role.property | transform
    intermarc 444 $k -> expression.hasKey | vocab_lookup(keys)
    intermarc 448 $a -> expression.hasMediumOfPerformance | extractor(casting)
    unimarc   610 $d -> performance.hasDate | date_parse

Roles name the node of the record's output subgraph the property lands
on; transforms say how the subfield value becomes an RDF term.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Optional

from cantor.errors import ConfigError
from cantor.marc import Dialect
from cantor.schema import SchemaVocabulary


class NodeRole(str, enum.Enum):
    WORK = "work"
    EXPRESSION = "expression"
    EVENT = "event"
    PERFORMANCE = "performance"
    RECORDING = "recording"
    PUBLICATION = "publication"


class TransformKind(str, enum.Enum):
    VERBATIM = "verbatim"
    VOCAB_LOOKUP = "vocab_lookup"
    EXTRACTOR = "extractor"
    DATE_PARSE = "date_parse"


EXTRACTOR_NAMES = ("casting", "first_publication", "premiere")


@dataclass(frozen=True)
class Transform:
    kind: TransformKind
    arg: Optional[str] = None


@dataclass(frozen=True)
class RuleSelector:
    dialect: Dialect
    tag: str
    code: str
    ind1: Optional[str] = None
    ind2: Optional[str] = None

    def matches_field(self, record_dialect: Dialect, tag: str, ind1: str, ind2: str) -> bool:
        if record_dialect != self.dialect or tag != self.tag:
            return False
        if self.ind1 is not None and ind1 != self.ind1:
            return False
        if self.ind2 is not None and ind2 != self.ind2:
            return False
        return True


@dataclass(frozen=True)
class ConversionRule:
    selector: RuleSelector
    role: NodeRole
    prop: str  # schema property name, e.g. "hasTitle"
    transform: Transform


_RULE_RE = re.compile(
    r"^(?P<dialect>\w+)\s+(?P<tag>\S{3})\s+\$(?P<code>\w)"
    r"(?P<inds>(?:\s+ind[12]=\S)*)\s*->\s*"
    r"(?P<role>\w+)\.(?P<prop>\w+)\s*\|\s*"
    r"(?P<transform>\w+)(?:\((?P<arg>[^)]*)\))?\s*$"
)
_IND_RE = re.compile(r"ind(?P<n>[12])=(?P<v>\S)")


def parse_rule_file(text: str, schema: Optional[SchemaVocabulary] = None) -> list[ConversionRule]:
    schema = schema or SchemaVocabulary()
    rules = []
    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _RULE_RE.match(line)
        if not m:
            raise ConfigError(f"rule line {line_no}: cannot parse {raw.strip()!r}")
        try:
            dialect = Dialect(m.group("dialect").lower())
        except ValueError:
            raise ConfigError(f"rule line {line_no}: unknown dialect {m.group('dialect')!r}")
        try:
            role = NodeRole(m.group("role").lower())
        except ValueError:
            raise ConfigError(f"rule line {line_no}: unknown role {m.group('role')!r}")
        prop = m.group("prop")
        try:
            schema.property_by_name(prop)
        except KeyError:
            raise ConfigError(f"rule line {line_no}: unknown property {prop!r}")
        try:
            kind = TransformKind(m.group("transform").lower())
        except ValueError:
            raise ConfigError(f"rule line {line_no}: unknown transform {m.group('transform')!r}")
        arg = m.group("arg")
        if kind in (TransformKind.VOCAB_LOOKUP, TransformKind.EXTRACTOR) and not arg:
            raise ConfigError(f"rule line {line_no}: {kind.value} needs an argument")
        if kind == TransformKind.EXTRACTOR and arg not in EXTRACTOR_NAMES:
            raise ConfigError(f"rule line {line_no}: unknown extractor {arg!r}")
        ind1 = ind2 = None
        for im in _IND_RE.finditer(m.group("inds") or ""):
            if im.group("n") == "1":
                ind1 = im.group("v")
            else:
                ind2 = im.group("v")
        rules.append(
            ConversionRule(
                selector=RuleSelector(dialect, m.group("tag"), m.group("code"), ind1, ind2),
                role=role,
                prop=prop,
                transform=Transform(kind, arg),
            )
        )
    return rules


def load_rule_file(path, schema: Optional[SchemaVocabulary] = None) -> list[ConversionRule]:
    from pathlib import Path

    return parse_rule_file(Path(path).read_text(encoding="utf-8"), schema)
