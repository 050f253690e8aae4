"""MARC record parsing and serialization.

Handles the ISO 2709 binary layout bit-exactly (0x1D record terminator,
0x1E field terminator, 0x1F subfield delimiter, 12-character directory
entries) plus the MARC-in-XML element form.  Records keep their dialect
tag (UNIMARC vs INTERMARC) so the conversion rule engine can dispatch on
it; the two dialects share syntax and differ only in field semantics,
which is why the dialect is supplied by the caller and never sniffed.

Character handling: each record is decoded as UTF-8 and falls back to
Latin-1 when that fails; the decoding that won is kept on the record so
serialization can reproduce the original bytes.

The leader is stored with the record-length (positions 0-4) and
base-address (positions 12-16) digits zeroed out, since both are
serialization artifacts recomputed on write; this makes records parsed
from binary and XML sources structurally comparable.
"""

from __future__ import annotations

import enum
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field, replace
from typing import Optional

from cantor.errors import ParseError, ValidationError

RECORD_TERMINATOR = 0x1D
FIELD_TERMINATOR = 0x1E
SUBFIELD_DELIMITER = 0x1F

LEADER_LENGTH = 24
DIRECTORY_ENTRY_LENGTH = 12

DEFAULT_LEADER = "00000nam a2200000   4500"


class Dialect(str, enum.Enum):
    UNIMARC = "unimarc"
    INTERMARC = "intermarc"


@dataclass(frozen=True)
class Subfield:
    code: str
    value: str

    def __post_init__(self):
        if len(self.code) != 1 or not self.code.isalnum():
            raise ValidationError(f"subfield code must be a single alphanumeric char: {self.code!r}")


@dataclass(frozen=True)
class DataField:
    tag: str
    ind1: str
    ind2: str
    subfields: tuple[Subfield, ...]

    def __post_init__(self):
        _check_tag(self.tag)
        if len(self.ind1) != 1 or len(self.ind2) != 1:
            raise ValidationError(f"indicators must be single chars: {self.ind1!r}, {self.ind2!r}")
        if not self.subfields:
            raise ValidationError(f"data field {self.tag} must have at least one subfield")

    def values(self, code: Optional[str] = None) -> list[str]:
        return [sf.value for sf in self.subfields if code is None or sf.code == code]


def _check_tag(tag: str):
    if len(tag) != 3 or not all(32 <= ord(c) < 127 for c in tag):
        raise ValidationError(f"tag must be 3 ASCII chars: {tag!r}")


def is_control_tag(tag: str) -> bool:
    return tag.isdigit() and tag < "010"


@dataclass
class MarcRecord:
    leader: str
    control_fields: list[tuple[str, str]]
    data_fields: list[DataField]
    dialect: Dialect
    source_id: str
    encoding: str = field(default="utf-8", compare=False)

    def __post_init__(self):
        if len(self.leader) != LEADER_LENGTH:
            raise ValidationError(f"leader must be exactly {LEADER_LENGTH} chars, got {len(self.leader)}")
        for tag, _ in self.control_fields:
            _check_tag(tag)

    def get_values(self, tag: str, code: Optional[str] = None) -> list[str]:
        """Values for a tag in document order; empty list when absent.

        For control fields the subfield code is irrelevant and ignored.
        """
        if is_control_tag(tag):
            return [value for t, value in self.control_fields if t == tag]
        out: list[str] = []
        for df in self.data_fields:
            if df.tag == tag:
                out.extend(df.values(code))
        return out

    def fields(self, tag: str) -> list[DataField]:
        return [df for df in self.data_fields if df.tag == tag]


def get_values(record: MarcRecord, tag: str, code: Optional[str] = None) -> list[str]:
    return record.get_values(tag, code)


def _blank_leader(leader: str) -> str:
    return "00000" + leader[5:12] + "00000" + leader[17:]


def _decode_record(data: bytes):
    try:
        return data.decode("utf-8"), "utf-8"
    except UnicodeDecodeError:
        return data.decode("latin-1"), "latin-1"


def _source_id(control_fields, index: int) -> str:
    for tag, value in control_fields:
        if tag == "001":
            return value.strip()
    return f"record-{index}"


def parse_iso2709(data: bytes, dialect: Dialect) -> list[MarcRecord]:
    """Parse a concatenation of ISO 2709 records."""
    records: list[MarcRecord] = []
    pos = 0
    index = 0
    while pos < len(data):
        if data[pos] == RECORD_TERMINATOR:  # stray terminator / trailing newline guard
            pos += 1
            continue
        if data[pos : pos + 1] in (b"\n", b"\r"):
            pos += 1
            continue
        end = data.find(bytes([RECORD_TERMINATOR]), pos)
        if end < 0:
            raise ParseError(f"record {index}: missing record terminator", offset=pos)
        raw = data[pos:end]
        records.append(_parse_record(raw, dialect, index, pos))
        pos = end + 1
        index += 1
    return records


def _parse_record(raw: bytes, dialect: Dialect, index: int, record_offset: int) -> MarcRecord:
    if len(raw) < LEADER_LENGTH:
        raise ParseError(f"record {index}: shorter than a leader", offset=record_offset)
    _, encoding = _decode_record(raw)
    leader = raw[:LEADER_LENGTH].decode("latin-1")

    declared_length = leader[0:5]
    if declared_length.isdigit() and int(declared_length) != len(raw) + 1:
        raise ParseError(
            f"record {index}: declared length {declared_length} != actual {len(raw) + 1}",
            offset=record_offset,
        )
    base_text = leader[12:17]
    if not base_text.isdigit():
        raise ParseError(f"record {index}: non-numeric base address {base_text!r}", offset=record_offset + 12)
    base = int(base_text)

    dir_end = raw.find(bytes([FIELD_TERMINATOR]), LEADER_LENGTH)
    if dir_end < 0:
        raise ParseError(f"record {index}: directory not terminated", offset=record_offset + LEADER_LENGTH)
    directory = raw[LEADER_LENGTH:dir_end]
    if len(directory) % DIRECTORY_ENTRY_LENGTH != 0:
        raise ParseError(
            f"record {index}: directory length {len(directory)} not a multiple of {DIRECTORY_ENTRY_LENGTH}",
            offset=record_offset + LEADER_LENGTH,
        )
    if base != dir_end + 1:
        raise ParseError(
            f"record {index}: base address {base} != directory end {dir_end + 1}",
            offset=record_offset + 12,
        )

    body = raw[base:]
    control_fields: list[tuple[str, str]] = []
    data_fields: list[DataField] = []
    for i in range(0, len(directory), DIRECTORY_ENTRY_LENGTH):
        entry = directory[i : i + DIRECTORY_ENTRY_LENGTH].decode("latin-1")
        tag, length_text, start_text = entry[0:3], entry[3:7], entry[7:12]
        if not (length_text.isdigit() and start_text.isdigit()):
            raise ParseError(
                f"record {index}: malformed directory entry {entry!r}",
                offset=record_offset + LEADER_LENGTH + i,
            )
        length, start = int(length_text), int(start_text)
        if start + length > len(body) or length == 0:
            raise ParseError(
                f"record {index}: field {tag} runs past record end",
                offset=record_offset + base + start,
            )
        chunk = body[start : start + length]
        if chunk[-1] != FIELD_TERMINATOR:
            raise ParseError(
                f"record {index}: field {tag} not terminated where directory says",
                offset=record_offset + base + start + length - 1,
            )
        content = chunk[:-1]
        if is_control_tag(tag):
            control_fields.append((tag, content.decode(encoding)))
        else:
            data_fields.append(_parse_data_field(tag, content, encoding, index, record_offset + base + start))

    return MarcRecord(
        leader=_blank_leader(leader),
        control_fields=control_fields,
        data_fields=data_fields,
        dialect=dialect,
        source_id=_source_id(control_fields, index),
        encoding=encoding,
    )


def _parse_data_field(tag, content: bytes, encoding, index, offset) -> DataField:
    if len(content) < 2:
        raise ParseError(f"record {index}: data field {tag} too short for indicators", offset=offset)
    ind1 = content[0:1].decode(encoding)
    ind2 = content[1:2].decode(encoding)
    rest = content[2:]
    if not rest.startswith(bytes([SUBFIELD_DELIMITER])):
        raise ParseError(f"record {index}: data field {tag} has no subfield delimiter", offset=offset + 2)
    subfields = []
    for part in rest.split(bytes([SUBFIELD_DELIMITER]))[1:]:
        if not part:
            raise ParseError(f"record {index}: empty subfield in field {tag}", offset=offset)
        code = part[0:1].decode(encoding)
        subfields.append(Subfield(code, part[1:].decode(encoding)))
    return DataField(tag, ind1, ind2, tuple(subfields))


def serialize_iso2709(records: list[MarcRecord]) -> bytes:
    """Inverse of parse_iso2709; the directory is recomputed from field lengths."""
    return b"".join(_serialize_record(r) for r in records)


def _serialize_record(record: MarcRecord) -> bytes:
    encoding = record.encoding
    chunks: list[tuple[str, bytes]] = []
    for tag, value in record.control_fields:
        chunks.append((tag, value.encode(encoding) + bytes([FIELD_TERMINATOR])))
    for df in record.data_fields:
        body = df.ind1.encode(encoding) + df.ind2.encode(encoding)
        for sf in df.subfields:
            body += bytes([SUBFIELD_DELIMITER]) + sf.code.encode(encoding) + sf.value.encode(encoding)
        chunks.append((df.tag, body + bytes([FIELD_TERMINATOR])))

    directory = b""
    data = b""
    offset = 0
    for tag, chunk in chunks:
        if len(chunk) > 9999:
            raise ValidationError(f"field {tag} is {len(chunk)} bytes; ISO 2709 allows at most 9999")
        if offset > 99999:
            raise ValidationError(f"field {tag} starts at offset {offset}; ISO 2709 allows at most 99999")
        directory += f"{tag}{len(chunk):04d}{offset:05d}".encode("ascii")
        data += chunk
        offset += len(chunk)

    base = LEADER_LENGTH + len(directory) + 1
    total = base + len(data) + 1
    if total > 99999:
        raise ValidationError(f"record is {total} bytes; ISO 2709 allows at most 99999")
    leader = f"{total:05d}" + record.leader[5:12] + f"{base:05d}" + record.leader[17:]
    return leader.encode("latin-1") + directory + bytes([FIELD_TERMINATOR]) + data + bytes([RECORD_TERMINATOR])


def _strip_ns(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def parse_marcxml(text: str, dialect: Dialect, warnings: Optional[list[str]] = None) -> list[MarcRecord]:
    """Parse MARC-in-XML.  Unknown elements are skipped and counted into
    the optional ``warnings`` sink."""
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        line = exc.position[0] if getattr(exc, "position", None) else None
        raise ParseError(f"XML not well-formed: {exc.msg if hasattr(exc, 'msg') else exc}", line=line)

    def warn(message):
        if warnings is not None:
            warnings.append(message)

    if _strip_ns(root.tag) == "record":
        record_elems = [root]
    else:
        if _strip_ns(root.tag) != "collection":
            warn(f"unexpected root element {_strip_ns(root.tag)!r}")
        record_elems = [el for el in root if _strip_ns(el.tag) == "record"]
        for el in root:
            if _strip_ns(el.tag) != "record":
                warn(f"skipped element {_strip_ns(el.tag)!r}")

    records = []
    for index, rec_el in enumerate(record_elems):
        leader = DEFAULT_LEADER
        control_fields: list[tuple[str, str]] = []
        data_fields: list[DataField] = []
        for el in rec_el:
            name = _strip_ns(el.tag)
            if name == "leader":
                leader = (el.text or "").ljust(LEADER_LENGTH)[:LEADER_LENGTH]
            elif name == "controlfield":
                control_fields.append((el.attrib.get("tag", ""), el.text or ""))
            elif name == "datafield":
                subfields = []
                for sf_el in el:
                    if _strip_ns(sf_el.tag) == "subfield":
                        subfields.append(Subfield(sf_el.attrib.get("code", ""), sf_el.text or ""))
                    else:
                        warn(f"skipped element {_strip_ns(sf_el.tag)!r} inside datafield")
                data_fields.append(
                    DataField(
                        el.attrib.get("tag", ""),
                        el.attrib.get("ind1", " ") or " ",
                        el.attrib.get("ind2", " ") or " ",
                        tuple(subfields),
                    )
                )
            else:
                warn(f"skipped element {name!r}")
        records.append(
            MarcRecord(
                leader=_blank_leader(leader),
                control_fields=control_fields,
                data_fields=data_fields,
                dialect=dialect,
                source_id=_source_id(control_fields, index),
            )
        )
    return records
