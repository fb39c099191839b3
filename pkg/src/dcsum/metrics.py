"""N-gram evaluation metrics and overall-score aggregation.

BLEU-4 is corpus-level and unsmoothed; ROUGE-1/2/L and METEOR are per-pair
and averaged over the corpus. Model-based metrics (BERTScore, AlignScore,
MEDCON) are never computed here; externally produced values are merged into
the report before aggregation.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field

from . import porter
from .errors import LengthMismatch, MissingMetric

NGRAM_METRICS = ("bleu", "rouge1", "rouge2", "rougeL", "meteor")
MODEL_METRICS = ("bertscore", "alignscore", "medcon")
ALL_METRICS = ("bleu", "rouge1", "rouge2", "rougeL", "bertscore", "meteor",
               "alignscore", "medcon")

_TOKEN = re.compile(r"[a-z0-9]+")


def normalize_tokens(text: str) -> list[str]:
    """Lowercase and split on non-alphanumeric boundaries."""
    return _TOKEN.findall(text.lower())


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _prf(overlap: int, cand_total: int, ref_total: int) -> tuple[float, float, float]:
    p = overlap / cand_total if cand_total else 0.0
    r = overlap / ref_total if ref_total else 0.0
    f = 2 * p * r / (p + r) if p + r else 0.0
    return p, r, f


def rouge_n(candidate: str, reference: str, n: int) -> tuple[float, float, float]:
    """Multiset n-gram overlap P/R/F1 over normalized tokens."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cand = _ngrams(normalize_tokens(candidate), n)
    ref = _ngrams(normalize_tokens(reference), n)
    overlap = sum((cand & ref).values())
    return _prf(overlap, sum(cand.values()), sum(ref.values()))


def _lcs_length(a: list[str], b: list[str]) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, 1):
            cur.append(prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def rouge_l(candidate: str, reference: str) -> tuple[float, float, float]:
    """Longest-common-subsequence P/R/F1 over normalized tokens."""
    cand = normalize_tokens(candidate)
    ref = normalize_tokens(reference)
    lcs = _lcs_length(cand, ref)
    return _prf(lcs, len(cand), len(ref))


def bleu4(candidates: list[str], references: list[str]) -> float:
    """Corpus-level BLEU with n = 1..4, unsmoothed, exp brevity penalty."""
    if len(candidates) != len(references):
        raise LengthMismatch(
            f"{len(candidates)} candidates vs {len(references)} references"
        )
    if not candidates:
        raise LengthMismatch("empty corpus")
    match = [0] * 4
    total = [0] * 4
    cand_len = ref_len = 0
    for cand_text, ref_text in zip(candidates, references):
        cand = normalize_tokens(cand_text)
        ref = normalize_tokens(ref_text)
        cand_len += len(cand)
        ref_len += len(ref)
        for n in range(1, 5):
            cand_ngrams = _ngrams(cand, n)
            ref_ngrams = _ngrams(ref, n)
            match[n - 1] += sum((cand_ngrams & ref_ngrams).values())
            total[n - 1] += sum(cand_ngrams.values())
    if any(t == 0 or m == 0 for m, t in zip(match, total)):
        return 0.0
    log_prec = sum(math.log(m / t) for m, t in zip(match, total)) / 4
    bp = 1.0 if cand_len > ref_len else math.exp(1 - ref_len / cand_len)
    return bp * math.exp(log_prec)


def _meteor_alignment(cand: list[str], ref: list[str]) -> list[tuple[int, int]]:
    """Injective unigram matching: exact stage, then Porter-stem stage.

    Within each stage, candidate words are scanned left to right and paired
    with the first unmatched reference occurrence.
    """
    matches: list[tuple[int, int]] = []
    cand_used = [False] * len(cand)
    ref_used = [False] * len(ref)
    for key in (lambda w: w, porter.stem):
        ref_keys = [key(w) for w in ref]
        for i, word in enumerate(cand):
            if cand_used[i]:
                continue
            k = key(word)
            for j, rk in enumerate(ref_keys):
                if not ref_used[j] and rk == k:
                    matches.append((i, j))
                    cand_used[i] = True
                    ref_used[j] = True
                    break
    return sorted(matches)


def _chunk_count(matches: list[tuple[int, int]]) -> int:
    chunks = 0
    prev = None
    for i, j in matches:  # sorted by candidate position
        if prev is None or i != prev[0] + 1 or j != prev[1] + 1:
            chunks += 1
        prev = (i, j)
    return chunks


def meteor(candidate: str, reference: str) -> float:
    """METEOR with exact + stem matching; no synonym/paraphrase stages."""
    cand = normalize_tokens(candidate)
    ref = normalize_tokens(reference)
    matches = _meteor_alignment(cand, ref)
    m = len(matches)
    if m == 0:
        return 0.0
    precision = m / len(cand)
    recall = m / len(ref)
    fmean = 10 * precision * recall / (recall + 9 * precision)
    penalty = 0.5 * (_chunk_count(matches) / m) ** 3
    return fmean * (1 - penalty)


@dataclass
class MetricReport:
    """Per-target metric values in [0, 1]."""

    target: str
    sample_count: int
    values: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for name, v in self.values.items():
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} out of [0, 1]: {v}")


@dataclass
class ScoreReport:
    bhc: MetricReport
    di: MetricReport
    per_metric_overall: dict[str, float]
    overall: float | None  # None when any of the eight metrics is missing

    @property
    def partial(self) -> bool:
        return self.overall is None

    def to_dict(self) -> dict:
        return {
            "bhc": {"sample_count": self.bhc.sample_count, **self.bhc.values},
            "di": {"sample_count": self.di.sample_count, **self.di.values},
            "per_metric_overall": dict(self.per_metric_overall),
            "overall": self.overall,
            "partial": self.partial,
        }


def aggregate(
    bhc: MetricReport,
    di: MetricReport,
    external: dict[str, dict[str, float]] | None = None,
) -> ScoreReport:
    """Average each metric over the two targets, then over the metric set.

    `external` maps target name ("bhc"/"di") to externally computed metric
    values; they are merged before averaging. When any of the eight task
    metrics is missing from either target the overall is reported as
    partial (None) rather than over a reduced metric set.
    """
    merged = {"bhc": dict(bhc.values), "di": dict(di.values)}
    for target, values in (external or {}).items():
        if target not in merged:
            raise ValueError(f"unknown target in external scores: {target!r}")
        merged[target].update(values)
    per_metric = {
        m: (merged["bhc"][m] + merged["di"][m]) / 2
        for m in ALL_METRICS
        if m in merged["bhc"] and m in merged["di"]
    }
    missing = [m for m in ALL_METRICS if m not in per_metric]
    overall = None if missing else sum(per_metric.values()) / len(ALL_METRICS)
    report = ScoreReport(
        bhc=MetricReport(bhc.target, bhc.sample_count, merged["bhc"]),
        di=MetricReport(di.target, di.sample_count, merged["di"]),
        per_metric_overall=per_metric,
        overall=overall,
    )
    return report


def overall_from_row(values: dict[str, float]) -> float:
    """Overall score from one set of eight per-metric overall values."""
    missing = [m for m in ALL_METRICS if m not in values]
    if missing:
        raise MissingMetric(missing)
    return sum(values[m] for m in ALL_METRICS) / len(ALL_METRICS)


def score_corpus(
    pairs_by_target: dict[str, list[tuple[str, str]]],
    external: dict[str, dict[str, float]] | None = None,
) -> ScoreReport:
    """Compute the n-gram metrics over (candidate, reference) pairs per
    target and aggregate, merging any external model-based values."""
    reports = {}
    for target in ("bhc", "di"):
        pairs = pairs_by_target.get(target, [])
        if not pairs:
            reports[target] = MetricReport(target, 0, {})
            continue
        cands = [c for c, _ in pairs]
        refs = [r for _, r in pairs]
        n = len(pairs)
        values = {
            "bleu": bleu4(cands, refs),
            "rouge1": sum(rouge_n(c, r, 1)[2] for c, r in pairs) / n,
            "rouge2": sum(rouge_n(c, r, 2)[2] for c, r in pairs) / n,
            "rougeL": sum(rouge_l(c, r)[2] for c, r in pairs) / n,
            "meteor": sum(meteor(c, r) for c, r in pairs) / n,
        }
        reports[target] = MetricReport(target, n, values)
    return aggregate(reports["bhc"], reports["di"], external)


def format_table(report: ScoreReport) -> str:
    """Aligned plain-text table: one row per scope, one column per metric."""
    headers = ["Scope"] + list(ALL_METRICS) + ["Overall"]
    rows = []
    for scope, values in (
        ("bhc", report.bhc.values),
        ("di", report.di.values),
        ("overall", report.per_metric_overall),
    ):
        cells = [f"{values[m]:.3f}" if m in values else "-" for m in ALL_METRICS]
        last = (
            f"{report.overall:.3f}"
            if scope == "overall" and report.overall is not None
            else ("partial" if scope == "overall" else "")
        )
        rows.append([scope] + cells + [last])
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)))
    return "\n".join(lines)
