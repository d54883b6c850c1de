"""Worldly-context construction.

Two sources: an ordered hypernym hierarchy (weighted mixture of hypernym
matrices, weights decreasing with distance) and a graded-entailment graph
(weighted mixture over graph neighbors).  Both outputs are rescaled so the
largest eigenvalue is exactly 1.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Mapping

import numpy as np

from .errors import (
    IsolatedWordError,
    MissingMatrixError,
    ParseError,
    SelfReferenceError,
    DuplicateWordError,
    UnknownWordError,
    ZeroMatrixError,
)
from . import entailment
from .spectral import Dmat, rescale_max_eig


@dataclass(frozen=True)
class HypernymHierarchy:
    """Ordered hypernym paths, nearest hypernym first."""

    paths: Mapping[str, tuple[str, ...]]

    def __contains__(self, word: str) -> bool:
        return word in self.paths

    def hypernyms(self, word: str) -> tuple[str, ...]:
        try:
            return self.paths[word]
        except KeyError:
            raise UnknownWordError(f"{word!r} has no hypernym path") from None

    @property
    def words(self):
        return self.paths.keys()

    def hyponym_sets(self) -> dict[str, set[str]]:
        """Invert the paths: for each hypernym, the set of words listing it."""
        out: dict[str, set[str]] = {}
        for word, path in self.paths.items():
            for h in path:
                out.setdefault(h, set()).add(word)
        return out


class WeightKind(str, Enum):
    POLY = "poly"
    EXP = "exp"
    HYP = "hyp"


@dataclass(frozen=True)
class WeightFunction:
    """Hypernym weight family with its non-negative shape parameter."""

    kind: WeightKind
    x: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", WeightKind(self.kind))
        if self.x < 0:
            raise ValueError(f"weight parameter must be non-negative, got {self.x}")


def load_hierarchy(path) -> HypernymHierarchy:
    """Parse a hierarchy file: `word<TAB>h1,h2,...,hn`, `#` comments ignored."""
    paths: dict[str, tuple[str, ...]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ParseError("expected `word<TAB>h1,h2,...`", lineno)
            word, tail = parts[0].strip(), parts[1].strip()
            if not word:
                raise ParseError("empty word", lineno)
            hypernyms = tuple(h.strip() for h in tail.split(","))
            if not tail or any(not h for h in hypernyms):
                raise ParseError("empty hypernym list or blank entry", lineno)
            if word in hypernyms:
                raise SelfReferenceError(f"{word!r} appears in its own hypernym list", lineno)
            if word in paths:
                raise DuplicateWordError(f"duplicate record for {word!r}", lineno)
            paths[word] = hypernyms
    return HypernymHierarchy(paths=paths)


def hypernym_weights(fn: WeightFunction, word: str, hierarchy: HypernymHierarchy, lexicon=None) -> np.ndarray:
    """Weights p_1..p_n over a word's hypernym path, rescaled to sum 1.

    poly: (n - i)^x.  exp: (1 + x/10)^(n - i).  hyp: (n - i)^(x/2) scaled by
    the graded entailment from the word to each hypernym (needs the lexicon).
    A path whose weights all vanish is returned as zeros; callers treat that
    as an empty context.
    """
    path = hierarchy.hypernyms(word)
    n = len(path)
    i = np.arange(1, n + 1, dtype=float)
    if fn.kind is WeightKind.POLY:
        raw = (n - i) ** fn.x
    elif fn.kind is WeightKind.EXP:
        raw = (1.0 + fn.x / 10.0) ** (n - i)
    else:
        if lexicon is None:
            raise MissingMatrixError("hyp weights need a lexicon")
        word_mat = _matrix_of(lexicon, word)
        raw = np.empty(n)
        for j, h in enumerate(path):
            raw[j] = (n - i[j]) ** (fn.x / 2.0) * entailment.k_e(word_mat, _matrix_of(lexicon, h))
    total = float(raw.sum())
    if total <= 0.0:
        return np.zeros(n)
    return raw / total


def _matrix_of(lexicon, word: str) -> Dmat:
    try:
        return lexicon[word]
    except KeyError:
        raise MissingMatrixError(f"no density matrix for {word!r}") from None


def worldly_context_hierarchy(
    word: str,
    hierarchy: HypernymHierarchy,
    lexicon,
    fn: WeightFunction,
) -> Dmat:
    """Weighted mixture of hypernym matrices, rescaled to top eigenvalue 1."""
    path = hierarchy.hypernyms(word)
    weights = hypernym_weights(fn, word, hierarchy, lexicon)
    if not np.any(weights > 0.0):
        raise ZeroMatrixError(f"all hypernym weights vanish for {word!r}")
    dim = _matrix_of(lexicon, path[0]).dim
    mix = np.zeros((dim, dim))
    for w, h in zip(weights, path):
        if w > 0.0:
            mix += w * _matrix_of(lexicon, h).matrix
    return rescale_max_eig(Dmat(mix))


@dataclass
class EntailmentGraph:
    """Directed weighted entailment edges; absent edges weigh 0."""

    edges: dict[tuple[str, str], float] = field(default_factory=dict)

    def weight(self, u: str, v: str) -> float:
        return self.edges.get((u, v), 0.0)

    def neighbors(self, word: str) -> list[str]:
        out = {v for (u, v) in self.edges if u == word}
        out |= {u for (u, v) in self.edges if v == word}
        return sorted(out)

    def __len__(self) -> int:
        return len(self.edges)


_GRAPH_MEASURES = {
    "k_hyp": entailment.k_hyp_clamped,
    "k_E": entailment.k_e,
}


def build_entailment_graph(lexicon, measure: str = "k_E", threshold: float = 0.0, workers: int = 1) -> EntailmentGraph:
    """Graded entailment between every ordered word pair; weak edges dropped.

    Pair computations are independent and can fan out across threads; the
    result is assembled in a fixed order either way.
    """
    try:
        score = _GRAPH_MEASURES[measure]
    except KeyError:
        raise ValueError(f"graph measure must be one of {sorted(_GRAPH_MEASURES)}") from None
    words = sorted(lexicon)
    pairs = [(u, v) for u in words for v in words if u != v]

    def edge(pair):
        u, v = pair
        return pair, score(_matrix_of(lexicon, u), _matrix_of(lexicon, v))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(edge, pairs))
    else:
        results = [edge(p) for p in pairs]
    edges = {
        pair: float(w)
        for pair, w in results
        if np.isfinite(w) and w >= threshold
    }
    return EntailmentGraph(edges=edges)


def worldly_context_graph(
    word: str,
    graph: EntailmentGraph,
    lexicon,
    combiner: Callable[[float, float], float] | None = None,
) -> Dmat:
    """Mixture over graph neighbors weighted by f(outgoing, incoming) edges.

    The default combiner keeps the outgoing weight (how much the word entails
    the neighbor).
    """
    if combiner is None:
        combiner = lambda p, q: p
    neighbors = graph.neighbors(word)
    if not neighbors:
        raise IsolatedWordError(f"{word!r} has no neighbors in the entailment graph")
    dim = _matrix_of(lexicon, neighbors[0]).dim
    mix = np.zeros((dim, dim))
    total = 0.0
    for h in neighbors:
        w = float(combiner(graph.weight(word, h), graph.weight(h, word)))
        if w < 0.0:
            raise ValueError(f"combiner produced negative weight {w} for {h!r}")
        if w > 0.0:
            mix += w * _matrix_of(lexicon, h).matrix
            total += w
    if total <= 0.0:
        raise ZeroMatrixError(f"all combined weights vanish for {word!r}")
    return rescale_max_eig(Dmat(mix))


def save_entailment_graph(graph: EntailmentGraph, path) -> None:
    """Export edges as `u<TAB>v<TAB>weight` with 9 significant digits."""
    with open(path, "w", encoding="utf-8") as fh:
        for (u, v), w in sorted(graph.edges.items()):
            fh.write(f"{u}\t{v}\t{w:.9g}\n")


def load_entailment_graph(path) -> EntailmentGraph:
    edges: dict[tuple[str, str], float] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ParseError("expected `u<TAB>v<TAB>weight`", lineno)
            try:
                weight = float(parts[2])
            except ValueError:
                raise ParseError(f"bad weight {parts[2]!r}", lineno) from None
            edges[(parts[0], parts[1])] = weight
    return EntailmentGraph(edges=edges)


def hierarchy_context_provider(hierarchy: HypernymHierarchy, lexicon, fn: WeightFunction):
    """Callable word -> worldly context built from the hypernym hierarchy."""

    def provider(word: str) -> Dmat:
        return worldly_context_hierarchy(word, hierarchy, lexicon, fn)

    return provider


def graph_context_provider(graph: EntailmentGraph, lexicon, combiner=None):
    """Callable word -> worldly context built from the entailment graph."""

    def provider(word: str) -> Dmat:
        return worldly_context_graph(word, graph, lexicon, combiner)

    return provider
