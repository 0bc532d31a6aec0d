"""Seeded sampling of linear-form tuples and generic-value reports."""

from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .algebra.linalg import rank
from .algebra.scalars import ExtendedRational, GaussianRational
from .errors import DegenerateSamplingError

DEFAULT_THRESHOLD = Fraction(9, 10)


@dataclass(frozen=True)
class SliceSampler:
    """Draws tuples of q-1 linear forms with integer coefficients in [-R, R].

    Every sample index owns its own random stream, so a sample's draw does
    not depend on how many other samples ran before it or where.
    """

    seed: int = 0
    samples: int = 100
    coefficient_range: int = 10000
    q: int = 2
    max_attempts: int = 64

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if self.coefficient_range < 1:
            raise ValueError("coefficient range must be positive")
        if self.q < 1:
            raise ValueError("q must be positive")

    def rng(self, index: int, stream: str = "forms") -> random.Random:
        return random.Random(f"{self.seed}:{stream}:{index}")

    def raw_matrix(self, rng: random.Random, rows: int, n: int) -> list[list[int]]:
        R = self.coefficient_range
        return [[rng.randint(-R, R) for _ in range(n)] for _ in range(rows)]

    def draw(
        self,
        index: int,
        n: int,
        rows: int | None = None,
        accept: Callable[[list[list[int]]], bool] | None = None,
        stream: str = "forms",
    ) -> tuple[list[list[int]], int]:
        """A full-rank rows x n integer matrix for sample ``index`` and the rejection count.

        Draws failing the rank check (or ``accept``) are rejected and redrawn.
        """
        rows = self.q - 1 if rows is None else rows
        rng = self.rng(index, stream)
        rejected = 0
        for _ in range(self.max_attempts):
            M = self.raw_matrix(rng, rows, n)
            if rank(M) == rows and (accept is None or accept(M)):
                return M, rejected
            rejected += 1
        raise DegenerateSamplingError(
            f"sample {index}: {rejected} consecutive degenerate draws"
        )

    def child(self, index: int, samples: int, stream: str) -> SliceSampler:
        """A sampler with its own seed derived from this one and ``index``."""
        sub = self.rng(index, stream).getrandbits(63)
        return SliceSampler(sub, samples, self.coefficient_range, self.q, self.max_attempts)


@dataclass(frozen=True)
class GenericValueReport:
    """Summary of a sampled generic-value quantity.

    ``value`` is the headline estimate: the mode for generic values, the
    minimum for infima and the maximum for suprema (see ``statistic``).
    """

    value: ExtendedRational
    modal_value: ExtendedRational
    min_value: ExtendedRational
    max_value: ExtendedRational
    frequency: Fraction
    samples_used: int
    rejected: int
    seed: int
    statistic: str = "mode"
    exact: bool = True
    threshold: Fraction = DEFAULT_THRESHOLD
    histogram: tuple[tuple[ExtendedRational, int], ...] = ()
    notes: tuple[str, ...] = field(default=())

    @property
    def low_confidence(self) -> bool:
        return self.frequency < self.threshold

    @property
    def min_equals_mode(self) -> bool:
        return self.min_value == self.modal_value

    @property
    def rejection_rate(self) -> Fraction:
        total = self.samples_used + self.rejected
        return Fraction(self.rejected, total) if total else Fraction(0)

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "statistic": self.statistic,
            "modal_value": self.modal_value.to_json(),
            "min_value": self.min_value.to_json(),
            "max_value": self.max_value.to_json(),
            "frequency": {"num": self.frequency.numerator, "den": self.frequency.denominator},
            "low_confidence": self.low_confidence,
            "exact": self.exact,
            "samples_used": self.samples_used,
            "rejected": self.rejected,
            "seed": self.seed,
            "histogram": [{"value": v.to_json(), "count": c} for v, c in self.histogram],
            "notes": list(self.notes),
        }


def summarize(
    values: Sequence[ExtendedRational],
    *,
    rejected: int,
    seed: int,
    statistic: str = "mode",
    exact: bool = True,
    threshold: Fraction = DEFAULT_THRESHOLD,
    notes: Iterable[str] = (),
) -> GenericValueReport:
    if not values:
        raise DegenerateSamplingError("no accepted samples")
    counts = Counter(values)
    # ties in the mode go to the smaller value so the report is order-independent
    modal, top = min(counts.items(), key=lambda vc: (-vc[1], vc[0]._key()))
    lo, hi = min(values), max(values)
    headline = {"mode": modal, "min": lo, "max": hi}[statistic]
    return GenericValueReport(
        value=headline,
        modal_value=modal,
        min_value=lo,
        max_value=hi,
        frequency=Fraction(top, len(values)),
        samples_used=len(values),
        rejected=rejected,
        seed=seed,
        statistic=statistic,
        exact=exact,
        threshold=threshold,
        histogram=tuple(sorted(counts.items(), key=lambda vc: vc[0]._key())),
        notes=tuple(notes),
    )


def map_samples(fn: Callable, items: Sequence, workers: int = 1) -> list:
    """Map ``fn`` over ``items`` in index order, optionally in worker processes."""
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def integer_rows(M: Sequence[Sequence[int]]) -> list[list[GaussianRational]]:
    return [[GaussianRational(x) for x in row] for row in M]
