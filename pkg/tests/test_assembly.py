import re

import pytest

from dcsum.assembly import (
    SEP,
    PROMPT_SPECS,
    TargetKind,
    build_input,
    priorities_for,
    prompt_for,
)
from dcsum.errors import UnknownKind
from dcsum.sections import INPUT_KINDS, UNKNOWN, SectionKind
from dcsum.tokenization import Tokenizer

BHC = TargetKind.BRIEF_HOSPITAL_COURSE
DI = TargetKind.DISCHARGE_INSTRUCTIONS

DI_ONLY = {
    SectionKind.MEDICATIONS_ON_ADMISSION,
    SectionKind.DISCHARGE_DIAGNOSIS,
    SectionKind.DISCHARGE_DISPOSITION,
    SectionKind.DISCHARGE_CONDITION,
    SectionKind.DISCHARGE_MEDICATIONS,
}


def collapse_ws(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip()


class TestPrompts:
    def test_known_prompts(self):
        assert prompt_for(SectionKind.SEX) == "Gender details are as follows:"
        assert (
            prompt_for(SectionKind.DISCHARGE_DIAGNOSIS)
            == "The final diagnosis at discharge is as follows:"
        )
        assert (
            prompt_for(SectionKind.NAME)
            == "The patient's name is provided as follows:"
        )

    def test_targets_have_no_prompt(self):
        with pytest.raises(UnknownKind):
            prompt_for(SectionKind.BRIEF_HOSPITAL_COURSE)

    def test_priority_sets_are_gapless(self):
        bhc = [s.bhc_priority for s in PROMPT_SPECS if s.bhc_priority is not None]
        di = [s.di_priority for s in PROMPT_SPECS if s.di_priority is not None]
        assert sorted(bhc) == list(range(1, 10))
        assert sorted(di) == list(range(1, 14))

    def test_exclusive_sections(self):
        by_kind = {s.kind: s for s in PROMPT_SPECS}
        pr = by_kind[SectionKind.PERTINENT_RESULTS]
        assert pr.bhc_priority == 5 and pr.di_priority is None
        expected_di = {
            SectionKind.MEDICATIONS_ON_ADMISSION: 8,
            SectionKind.DISCHARGE_DIAGNOSIS: 10,
            SectionKind.DISCHARGE_DISPOSITION: 11,
            SectionKind.DISCHARGE_CONDITION: 12,
            SectionKind.DISCHARGE_MEDICATIONS: 13,
        }
        for kind, priority in expected_di.items():
            assert by_kind[kind].bhc_priority is None
            assert by_kind[kind].di_priority == priority


class TestPriorities:
    def test_bhc_order(self):
        assert priorities_for(BHC) == [
            SectionKind.NAME,
            SectionKind.SEX,
            SectionKind.CHIEF_COMPLAINT,
            SectionKind.HISTORY_OF_PRESENT_ILLNESS,
            SectionKind.PERTINENT_RESULTS,
            SectionKind.PAST_MEDICAL_HISTORY,
            SectionKind.ALLERGIES,
            SectionKind.MAJOR_SURGICAL_OR_INVASIVE_PROCEDURE,
            SectionKind.SERVICE,
        ]

    def test_di_order(self):
        assert priorities_for(DI) == [
            SectionKind.NAME,
            SectionKind.SEX,
            SectionKind.CHIEF_COMPLAINT,
            SectionKind.HISTORY_OF_PRESENT_ILLNESS,
            SectionKind.PAST_MEDICAL_HISTORY,
            SectionKind.ALLERGIES,
            SectionKind.MAJOR_SURGICAL_OR_INVASIVE_PROCEDURE,
            SectionKind.MEDICATIONS_ON_ADMISSION,
            SectionKind.SERVICE,
            SectionKind.DISCHARGE_DIAGNOSIS,
            SectionKind.DISCHARGE_DISPOSITION,
            SectionKind.DISCHARGE_CONDITION,
            SectionKind.DISCHARGE_MEDICATIONS,
        ]

    def test_bhc_excludes_later_sections(self):
        assert not DI_ONLY & set(priorities_for(BHC))


class TestBuildInput:
    def _unknown_sections(self, **overrides):
        secs = {k: UNKNOWN for k in INPUT_KINDS}
        for name, value in overrides.items():
            secs[SectionKind[name]] = value
        return secs

    def test_defaults_and_order(self, whitespace_tokenizer):
        secs = self._unknown_sections(NAME="___", SEX="Male")
        out = build_input(secs, BHC, whitespace_tokenizer)
        assert out.startswith(
            "The patient's name is provided as follows: ___.<sep>"
            "Gender details are as follows: Male.<sep>"
            "The primary reason for the visit is summarized as follows: Unknown.<sep>"
        )
        assert out.count(SEP) == 8
        assert not out.startswith(SEP) and not out.endswith(SEP)
        assert SEP + SEP not in out

    def test_segment_counts(self, whitespace_tokenizer):
        secs = self._unknown_sections()
        assert build_input(secs, BHC, whitespace_tokenizer).count(SEP) == 8
        assert build_input(secs, DI, whitespace_tokenizer).count(SEP) == 12

    def test_truncation_cuts_at_token_boundary(self, whitespace_tokenizer):
        # tiny budget: only the first tokens of the first prompt survive
        secs = self._unknown_sections()
        out = build_input(secs, BHC, whitespace_tokenizer, budget=4)
        assert out == "The patient's name is"

    def test_budget_enforced(self, whitespace_tokenizer):
        secs = self._unknown_sections(
            HISTORY_OF_PRESENT_ILLNESS="w " * 5000,
        )
        out = build_input(secs, BHC, whitespace_tokenizer, budget=1596)
        assert whitespace_tokenizer.count(out) <= 1596

    def test_incomplete_sections_rejected(self, whitespace_tokenizer):
        with pytest.raises(KeyError):
            build_input({SectionKind.NAME: "x"}, BHC, whitespace_tokenizer)

    def test_terminal_period_only_when_needed(self, whitespace_tokenizer):
        secs = self._unknown_sections(CHIEF_COMPLAINT="Chest pain?")
        out = build_input(secs, BHC, whitespace_tokenizer)
        assert "summarized as follows: Chest pain?<sep>" in out


@pytest.mark.parametrize(
    "name,target",
    [("bhc", BHC), ("di", DI)],
)
def test_golden_input_fixtures(data_dir, golden_section_bodies, name, target):
    expected = (data_dir / f"{name}_input_expected.txt").read_text(encoding="utf-8")
    got = build_input(golden_section_bodies, target, Tokenizer(), budget=10**6)
    assert collapse_ws(got) == collapse_ws(expected)
    assert got.count(SEP) == (8 if name == "bhc" else 12)
