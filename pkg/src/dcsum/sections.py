"""Section location and normalization for de-identified discharge notes.

A section is the text between a known header (``Header:``) and the next
known header or the end of the note. Headers are matched case-sensitively
and must be preceded by the start of the note or whitespace, which covers
both line-leading headers and the inline demographic headers
(``Name: ___   Unit No: ___`` / ``Date of Birth: ___   Sex: M``).
"""

from __future__ import annotations

import re
from enum import Enum

UNKNOWN = "Unknown"


class SectionKind(Enum):
    NAME = "Name"
    SEX = "Sex"
    SERVICE = "Service"
    ALLERGIES = "Allergies"
    CHIEF_COMPLAINT = "Chief Complaint"
    MAJOR_SURGICAL_OR_INVASIVE_PROCEDURE = "Major Surgical or Invasive Procedure"
    HISTORY_OF_PRESENT_ILLNESS = "History of Present Illness"
    PAST_MEDICAL_HISTORY = "Past Medical History"
    PERTINENT_RESULTS = "Pertinent Results"
    MEDICATIONS_ON_ADMISSION = "Medications on Admission"
    DISCHARGE_DIAGNOSIS = "Discharge Diagnosis"
    DISCHARGE_DISPOSITION = "Discharge Disposition"
    DISCHARGE_CONDITION = "Discharge Condition"
    DISCHARGE_MEDICATIONS = "Discharge Medications"
    # Targets: extractable, but never part of a SectionSet.
    BRIEF_HOSPITAL_COURSE = "Brief Hospital Course"
    DISCHARGE_INSTRUCTIONS = "Discharge Instructions"

    @property
    def header(self) -> str:
        return self.value + ":"


INPUT_KINDS: tuple[SectionKind, ...] = tuple(
    k
    for k in SectionKind
    if k not in (SectionKind.BRIEF_HOSPITAL_COURSE, SectionKind.DISCHARGE_INSTRUCTIONS)
)

TARGET_KINDS: tuple[SectionKind, ...] = (
    SectionKind.BRIEF_HOSPITAL_COURSE,
    SectionKind.DISCHARGE_INSTRUCTIONS,
)

# Headers that delimit spans but are never extracted themselves.
_BOUNDARY_HEADERS = (
    "Unit No:",
    "Admission Date:",
    "Discharge Date:",
    "Date of Birth:",
    "Attending:",
    "Social History:",
    "Family History:",
    "Physical Exam:",
    "Followup Instructions:",
)

_ALL_HEADERS = tuple(k.header for k in SectionKind) + _BOUNDARY_HEADERS

_HEADER_RE = re.compile(
    r"(?:(?<=\s)|^)(" + "|".join(re.escape(h) for h in _ALL_HEADERS) + r")"
)

_TIMESTAMP_RE = re.compile(r"^\s*_+\s+\d{1,2}:\d{2}\s?(?:AM|PM)\s*", re.IGNORECASE)
_LIST_MARKER_RE = re.compile(r"^(\s*)(?:\d+[.)]|-|\*)\s*")
_TERMINAL_PUNCT = (".", "!", "?")


def _header_spans(raw: str) -> list[tuple[str, int, int]]:
    """All known-header occurrences as (header, match start, body start)."""
    return [(m.group(1), m.start(1), m.end(1)) for m in _HEADER_RE.finditer(raw)]


def _span_for(raw: str, kind: SectionKind) -> str | None:
    """Body between `kind`'s header and the next known header, or None."""
    spans = _header_spans(raw)
    for i, (header, _, body_start) in enumerate(spans):
        if header == kind.header:
            body_end = spans[i + 1][1] if i + 1 < len(spans) else len(raw)
            return raw[body_start:body_end]
    return None


def strip_targets(raw: str) -> str:
    """Remove the two target summary spans, leaving all other bytes intact.

    The Brief Hospital Course span runs to "Medications on Admission:" and
    the Discharge Instructions span to "Followup Instructions:"; if the
    expected boundary is absent, the span ends at the next known header or
    the end of the note.
    """
    for kind, boundary in (
        (SectionKind.BRIEF_HOSPITAL_COURSE, "Medications on Admission:"),
        (SectionKind.DISCHARGE_INSTRUCTIONS, "Followup Instructions:"),
    ):
        while True:
            spans = _header_spans(raw)
            hit = next(
                (i for i, (h, _, _) in enumerate(spans) if h == kind.header), None
            )
            if hit is None:
                break
            start = spans[hit][1]
            end = len(raw)
            for later_header, later_start, _ in spans[hit + 1 :]:
                if later_header == boundary:
                    end = later_start
                    break
            else:
                if hit + 1 < len(spans):
                    end = spans[hit + 1][1]
            raw = raw[:start] + raw[end:]
    return raw


def strip_result_timestamps(body: str) -> str:
    """Drop leading ``___ 08:00AM``-style timestamps from result lines.

    Stripping repeats until the line head is timestamp-free, so stacked
    timestamps cannot survive a single pass.
    """
    out = []
    for line in body.split("\n"):
        while True:
            stripped = _TIMESTAMP_RE.sub("", line, count=1)
            if stripped == line:
                break
            line = stripped
        out.append(line)
    return "\n".join(out)


def canonicalize_list_markers(body: str) -> str:
    """Rewrite line-leading list markers (1. / 1) / - / *) to "* ".

    Marker lines additionally get a terminal "." so that items remain
    separable once line breaks collapse to spaces.
    """
    out = []
    for line in body.split("\n"):
        m = _LIST_MARKER_RE.match(line)
        if m:
            content = line[m.end() :].rstrip()
            if content and not content.endswith(_TERMINAL_PUNCT):
                content += "."
            line = m.group(1) + "* " + content
        out.append(line)
    return "\n".join(out)


def _condition_colon_to_is(body: str) -> str:
    # "Mental Status: Clear" -> "Mental Status is Clear"; every colon
    # followed by whitespace is rewritten, so the rule is one-shot.
    return re.sub(r"\s*:\s", " is ", body)


def _normalize_sex(body: str) -> str:
    code = body.strip()
    return {"M": "Male", "F": "Female"}.get(code, body)


_KIND_RULES = {
    SectionKind.SEX: _normalize_sex,
    SectionKind.PERTINENT_RESULTS: lambda b: canonicalize_list_markers(
        strip_result_timestamps(b)
    ),
    SectionKind.MEDICATIONS_ON_ADMISSION: canonicalize_list_markers,
    SectionKind.DISCHARGE_MEDICATIONS: canonicalize_list_markers,
    SectionKind.DISCHARGE_CONDITION: _condition_colon_to_is,
}


def normalize_section(kind: SectionKind, raw_body: str) -> str:
    """Kind-specific rewrite, then line breaks to spaces, collapse, trim.

    The rewrite-and-collapse pass repeats until the text stops changing, so
    the result is a fixed point: collapsing line breaks can expose a fresh
    line head (a list marker or a result timestamp) that the first pass,
    working line by line, could not see.
    """
    rule = _KIND_RULES.get(kind)
    text = raw_body
    while True:
        rewritten = rule(text) if rule is not None else text
        collapsed = re.sub(r"\s+", " ", rewritten).strip()
        if collapsed == text:
            return collapsed
        text = collapsed


def extract_sections(raw: str) -> dict[SectionKind, str]:
    """Total extraction of the 14 input sections; missing ones are "Unknown".

    Accepts raw or target-stripped text; target spans are never extracted
    here, so un-stripped input simply ignores them.
    """
    sections: dict[SectionKind, str] = {}
    for kind in INPUT_KINDS:
        body = _span_for(raw, kind)
        text = normalize_section(kind, body) if body is not None else ""
        sections[kind] = text if text else UNKNOWN
    return sections


def extract_target(raw: str, kind: SectionKind) -> str | None:
    """Raw body of a target section, or None when absent.

    Boundaries match strip_targets: BHC ends at "Medications on Admission:"
    and DI at "Followup Instructions:" when present.
    """
    if kind not in TARGET_KINDS:
        raise ValueError(f"not a target section: {kind}")
    boundary = (
        "Medications on Admission:"
        if kind is SectionKind.BRIEF_HOSPITAL_COURSE
        else "Followup Instructions:"
    )
    spans = _header_spans(raw)
    for i, (header, _, body_start) in enumerate(spans):
        if header != kind.header:
            continue
        end = len(raw)
        for later_header, later_start, _ in spans[i + 1 :]:
            if later_header == boundary:
                end = later_start
                break
        else:
            if i + 1 < len(spans):
                end = spans[i + 1][1]
        return raw[body_start:end]
    return None


def found_sections(raw: str) -> dict[SectionKind, bool]:
    """Per-note diagnostic: which known section headers were located."""
    present = {header for header, _, _ in _header_spans(raw)}
    return {k: k.header in present for k in INPUT_KINDS}
