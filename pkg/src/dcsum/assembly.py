"""Per-target input assembly: prompt, order by priority, join, truncate."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import UnknownKind
from .sections import INPUT_KINDS, SectionKind
from .tokenization import Tokenizer

SEP = "<sep>"
DEFAULT_INPUT_BUDGET = 1596


class TargetKind(Enum):
    BRIEF_HOSPITAL_COURSE = "bhc"
    DISCHARGE_INSTRUCTIONS = "di"


@dataclass(frozen=True)
class PromptSpec:
    kind: SectionKind
    prompt: str
    bhc_priority: int | None
    di_priority: int | None


# Canonical prompt per section plus its position in each target's input.
# None means the section does not feed that target at all.
PROMPT_SPECS: tuple[PromptSpec, ...] = (
    PromptSpec(SectionKind.NAME, "The patient's name is provided as follows:", 1, 1),
    PromptSpec(SectionKind.SEX, "Gender details are as follows:", 2, 2),
    PromptSpec(SectionKind.SERVICE, "The service details are as follows:", 9, 9),
    PromptSpec(
        SectionKind.ALLERGIES,
        "Information on any allergies is detailed as follows:",
        7,
        6,
    ),
    PromptSpec(
        SectionKind.CHIEF_COMPLAINT,
        "The primary reason for the visit is summarized as follows:",
        3,
        3,
    ),
    PromptSpec(
        SectionKind.MAJOR_SURGICAL_OR_INVASIVE_PROCEDURE,
        "Details on any major surgeries or invasive procedures are as follows:",
        8,
        7,
    ),
    PromptSpec(
        SectionKind.HISTORY_OF_PRESENT_ILLNESS,
        "An overview of the current illness's history is provided as follows:",
        4,
        4,
    ),
    PromptSpec(
        SectionKind.PAST_MEDICAL_HISTORY,
        "A summary of the patient's past medical history is as follows:",
        6,
        5,
    ),
    PromptSpec(
        SectionKind.PERTINENT_RESULTS,
        "Clinically significant findings impacting the treatment and diagnosis"
        " are as follows:",
        5,
        None,
    ),
    PromptSpec(
        SectionKind.MEDICATIONS_ON_ADMISSION,
        "Medications upon admission are detailed as follows:",
        None,
        8,
    ),
    PromptSpec(
        SectionKind.DISCHARGE_DIAGNOSIS,
        "The final diagnosis at discharge is as follows:",
        None,
        10,
    ),
    PromptSpec(
        SectionKind.DISCHARGE_DISPOSITION,
        "The disposition at discharge is provided as follows:",
        None,
        11,
    ),
    PromptSpec(
        SectionKind.DISCHARGE_CONDITION,
        "The patient's condition upon discharge is described as follows:",
        None,
        12,
    ),
    PromptSpec(
        SectionKind.DISCHARGE_MEDICATIONS,
        "Medications prescribed at discharge are as follows:",
        None,
        13,
    ),
)

_PROMPT_BY_KIND = {spec.kind: spec.prompt for spec in PROMPT_SPECS}


def prompt_for(kind: SectionKind) -> str:
    try:
        return _PROMPT_BY_KIND[kind]
    except KeyError:
        raise UnknownKind(f"no prompt defined for {kind}") from None


def priorities_for(target: TargetKind) -> list[SectionKind]:
    """Section kinds feeding `target`, in strictly increasing priority."""
    key = (
        (lambda s: s.bhc_priority)
        if target is TargetKind.BRIEF_HOSPITAL_COURSE
        else (lambda s: s.di_priority)
    )
    ranked = [(key(s), s.kind) for s in PROMPT_SPECS if key(s) is not None]
    return [kind for _, kind in sorted(ranked)]


def build_input(
    sections: dict[SectionKind, str],
    target: TargetKind,
    tokenizer: Tokenizer,
    budget: int = DEFAULT_INPUT_BUDGET,
) -> str:
    """Assemble one model input from a complete section map.

    Each selected section becomes "<prompt> <text>." (the period only when
    the text does not already end a sentence); segments are joined with the
    separator token, no surrounding spaces, then truncated to the last
    whole token inside the budget.
    """
    missing = [k for k in INPUT_KINDS if k not in sections]
    if missing:
        raise KeyError(f"incomplete section map, missing: {missing}")
    segments = []
    for kind in priorities_for(target):
        text = sections[kind]
        if not text.endswith((".", "!", "?")):
            text += "."
        segments.append(f"{prompt_for(kind)} {text}")
    return tokenizer.truncate(SEP.join(segments), budget)
