"""Evaluation harness: dataset ingestion, the correlation grid, CSV output.

Each grid row is one (negation, composition, basis) combination; each cell
holds the Pearson correlation between a plausibility measure and the human
ratings, with the number of word pairs that contributed.  Pairs whose words
are missing from the lexicon or whose context is unavailable are skipped and
counted, so partial lexicons still produce tables.  A logical-negation-only
baseline row (no context) is emitted per negation.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .composition import CompositionKind
from .errors import (
    DuplicatePairError,
    InsufficientDataError,
    IsolatedWordError,
    MissingMatrixError,
    ParseError,
    RatingOutOfRangeError,
    UnknownWordError,
    ZeroMatrixError,
    ZeroVarianceError,
)
from .pipeline import (
    Basis,
    NegationConfig,
    NegationKind,
    conversational_negate,
    logical_negation,
    lookup_word,
    plausibility,
)
from .spectral import Dmat, rescale_max_eig

DATASET_HEADER = ("negated", "alternative", "mean_rating")
MEASURE_COLUMNS = ("k_hyp1", "k_hyp2", "k_E1", "k_E2", "k_BA", "trace")

BASELINE_COMPOSITION = "none"
BASELINE_BASIS = "-"

# Errors that mean "skip this word pair", not "abort the run".
_SKIP_ERRORS = (UnknownWordError, IsolatedWordError, ZeroMatrixError, MissingMatrixError)


@dataclass(frozen=True)
class PlausibilityRecord:
    negated: str
    alternative: str
    mean_rating: float


@dataclass(frozen=True)
class PlausibilityDataset:
    records: tuple[PlausibilityRecord, ...]

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


def load_dataset(path) -> PlausibilityDataset:
    """Parse the rating TSV: header `negated<TAB>alternative<TAB>mean_rating`."""
    records: list[PlausibilityRecord] = []
    seen: set[tuple[str, str]] = set()
    expected_header = "\t".join(DATASET_HEADER)
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if tuple(header.split("\t")) != DATASET_HEADER:
            raise ParseError(f"expected header {expected_header!r}", 1)
        for lineno, raw in enumerate(fh, start=2):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ParseError("expected 3 tab-separated fields", lineno)
            negated, alternative = parts[0].strip(), parts[1].strip()
            if not negated or not alternative:
                raise ParseError("empty word field", lineno)
            try:
                rating = float(parts[2])
            except ValueError:
                raise ParseError(f"bad rating {parts[2]!r}", lineno) from None
            if not 1.0 <= rating <= 5.0:
                raise RatingOutOfRangeError(f"rating {rating} outside [1, 5]", lineno)
            pair = (negated, alternative)
            if pair in seen:
                raise DuplicatePairError(f"duplicate pair {pair!r}", lineno)
            seen.add(pair)
            records.append(PlausibilityRecord(negated, alternative, rating))
    return PlausibilityDataset(records=tuple(records))


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Product-moment correlation; needs length >= 3 and variance on both sides."""
    if len(xs) != len(ys):
        raise InsufficientDataError(f"length mismatch {len(xs)} vs {len(ys)}")
    if len(xs) < 3:
        raise InsufficientDataError(f"need at least 3 points, got {len(xs)}")
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    dx = x - x.mean()
    dy = y - y.mean()
    sx = float(np.sqrt(np.sum(dx * dx)))
    sy = float(np.sqrt(np.sum(dy * dy)))
    if sx < 1e-15 or sy < 1e-15:
        raise ZeroVarianceError("one input list is constant")
    return float(np.clip(np.sum(dx * dy) / (sx * sy), -1.0, 1.0))


@dataclass(frozen=True)
class Cell:
    r: float | None
    n: int
    skipped: int


@dataclass(frozen=True)
class ResultRow:
    negation: str
    composition: str
    basis: str
    cells: dict[str, Cell]

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.negation, self.composition, self.basis)


@dataclass
class ResultTable:
    rows: list[ResultRow] = field(default_factory=list)
    dataset_size: int = 0

    def row(self, negation: str, composition: str, basis: str) -> ResultRow:
        for row in self.rows:
            if row.key == (negation, composition, basis):
                return row
        raise KeyError((negation, composition, basis))

    def sorted_rows(self) -> list[ResultRow]:
        return sorted(self.rows, key=lambda r: r.key)

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(csv_header() + "\n")
            for row in self.sorted_rows():
                fh.write(format_csv_row(row) + "\n")

    def render(self, highlight: float | None = None) -> str:
        lines = [csv_header().replace(",", "  ")]
        for row in self.sorted_rows():
            text = format_csv_row(row).replace(",", "  ")
            if highlight is not None:
                top = max(
                    (c.r for c in row.cells.values() if c.r is not None),
                    default=None,
                )
                if top is not None and top >= highlight:
                    text += "  *"
            lines.append(text)
        return "\n".join(lines)


def csv_header() -> str:
    cols = ["negation", "composition", "basis"]
    for m in MEASURE_COLUMNS:
        cols += [f"{m}_r", f"{m}_n"]
    return ",".join(cols)


def format_csv_row(row: ResultRow) -> str:
    cols = [row.negation, row.composition, row.basis]
    for m in MEASURE_COLUMNS:
        cell = row.cells[m]
        cols.append("null" if cell.r is None else f"{cell.r:.4f}")
        cols.append(str(cell.n))
    return ",".join(cols)


def _measure_and_direction(column: str) -> tuple[str, int]:
    if column.endswith(("1", "2")):
        return column[:-1], int(column[-1])
    return column, 1


def _score_pairs(
    dataset: PlausibilityDataset,
    negate: Callable[[str], Dmat],
    lexicon,
) -> tuple[dict[str, list[float]], list[float], int]:
    """Negate every w_N once, score all measures against each alternative."""
    scores: dict[str, list[float]] = {m: [] for m in MEASURE_COLUMNS}
    ratings: list[float] = []
    skipped = 0
    cache: dict[str, Dmat | None] = {}
    for record in dataset:
        if record.negated not in cache:
            try:
                cache[record.negated] = negate(record.negated)
            except _SKIP_ERRORS:
                cache[record.negated] = None
        negated = cache[record.negated]
        if negated is None:
            skipped += 1
            continue
        try:
            alternative = lookup_word(lexicon, record.alternative)
        except UnknownWordError:
            skipped += 1
            continue
        for column in MEASURE_COLUMNS:
            measure, direction = _measure_and_direction(column)
            scores[column].append(plausibility(negated, alternative, measure, direction))
        ratings.append(record.mean_rating)
    return scores, ratings, skipped


def _row_from_scores(
    label: tuple[str, str, str],
    scores: dict[str, list[float]],
    ratings: list[float],
    skipped: int,
) -> ResultRow:
    cells: dict[str, Cell] = {}
    for column in MEASURE_COLUMNS:
        xs = scores[column]
        try:
            r = pearson(xs, ratings)
        except (InsufficientDataError, ZeroVarianceError):
            r = None
        cells[column] = Cell(r=r, n=len(xs), skipped=skipped)
    return ResultRow(negation=label[0], composition=label[1], basis=label[2], cells=cells)


def run_grid(
    dataset: PlausibilityDataset,
    lexicon,
    context_provider: Callable[[str], Dmat],
    configs: Iterable[NegationConfig],
    out=None,
    workers: int = 1,
) -> ResultTable:
    """Evaluate every config plus one negation-only baseline row per negation.

    Rows for mult/diag collapse across bases (their basis column is '-'), so
    duplicate labels are evaluated once.
    """
    configs = list(configs)
    jobs: dict[tuple[str, str, str], Callable[[], ResultRow]] = {}

    def full_job(label, cfg):
        def run() -> ResultRow:
            negate = lambda word: conversational_negate(word, cfg, lexicon, context_provider)
            return _row_from_scores(label, *_score_pairs(dataset, negate, lexicon))

        return run

    def baseline_job(label, cfg):
        def run() -> ResultRow:
            negate = lambda word: rescale_max_eig(logical_negation(lookup_word(lexicon, word), cfg))
            return _row_from_scores(label, *_score_pairs(dataset, negate, lexicon))

        return run

    for cfg in configs:
        label = cfg.label()
        if label not in jobs:
            jobs[label] = full_job(label, cfg)
    for negation in dict.fromkeys(c.negation for c in configs):
        source = next(c for c in configs if c.negation is negation)
        baseline_cfg = NegationConfig(
            negation=negation,
            composition=CompositionKind.SPIDER,
            support_weight=source.support_weight,
        )
        label = (negation.value, BASELINE_COMPOSITION, BASELINE_BASIS)
        jobs[label] = baseline_job(label, baseline_cfg)

    ordered = sorted(jobs)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda k: jobs[k](), ordered))
    else:
        rows = [jobs[k]() for k in ordered]

    table = ResultTable(rows=rows, dataset_size=len(dataset))
    if out is not None:
        table.to_csv(out)
    return table


@dataclass
class GridSpec:
    """Axes of a grid run, parsed from a flat `key = value` config file."""

    negations: tuple[NegationKind, ...] = (NegationKind.SUB, NegationKind.INV)
    compositions: tuple[CompositionKind, ...] = tuple(CompositionKind)
    bases: tuple[Basis, ...] = (Basis.W, Basis.C)
    support_weight: float = 0.5
    context: str = "hierarchy"
    context_fn: str = "poly"
    x: float = 1.0
    graph_measure: str = "k_E"
    graph_threshold: float = 0.0

    def configs(self) -> list[NegationConfig]:
        out: list[NegationConfig] = []
        seen: set[tuple[str, str, str]] = set()
        for negation in self.negations:
            for composition in self.compositions:
                for basis in self.bases:
                    cfg = NegationConfig(
                        negation=negation,
                        composition=composition,
                        basis=basis,
                        support_weight=self.support_weight,
                    )
                    if cfg.label() not in seen:
                        seen.add(cfg.label())
                        out.append(cfg)
        return out


def parse_grid_config(path) -> GridSpec:
    """Parse `key = value` lines; lists are comma-separated; `#` comments."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParseError("expected `key = value`", lineno)
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()

    def split(value: str) -> list[str]:
        return [tok.strip() for tok in value.split(",") if tok.strip()]

    spec = GridSpec()
    if "negations" in values:
        spec.negations = tuple(NegationKind(tok) for tok in split(values.pop("negations")))
    if "compositions" in values:
        spec.compositions = tuple(CompositionKind(tok) for tok in split(values.pop("compositions")))
    if "bases" in values:
        spec.bases = tuple(Basis(tok) for tok in split(values.pop("bases")))
    for key, cast in (
        ("support_weight", float),
        ("context", str),
        ("context_fn", str),
        ("x", float),
        ("graph_measure", str),
        ("graph_threshold", float),
    ):
        if key in values:
            setattr(spec, key, cast(values.pop(key)))
    if values:
        raise ParseError(f"unknown config keys: {sorted(values)}")
    return spec
