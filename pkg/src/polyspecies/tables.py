"""Count tables and the published reference values they are checked against."""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .cis import CycleIndexSeries, labeled_counts, unlabeled_counts

__all__ = ["CountsTable", "POLYGONAL_2TREES", "SUCCULENTS", "reference_table"]


@dataclass(frozen=True)
class CountsTable:
    """Exact labeled and unlabeled counts for ``n = 0..max_n``."""

    family: str
    rows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for n, (lab, unl) in enumerate(self.rows):
            if lab < 0 or unl < 0:
                raise ValueError(f"negative count in row {n} of {self.family}")

    @classmethod
    def from_series(cls, family: str, series: CycleIndexSeries) -> CountsTable:
        return cls(family, tuple(zip(labeled_counts(series), unlabeled_counts(series))))

    @classmethod
    def from_columns(cls, family: str, labeled: Sequence[int], unlabeled: Sequence[int]) -> CountsTable:
        return cls(family, tuple(zip(labeled, unlabeled)))

    @property
    def max_n(self) -> int:
        return len(self.rows) - 1

    @property
    def labeled(self) -> list[int]:
        return [r[0] for r in self.rows]

    @property
    def unlabeled(self) -> list[int]:
        return [r[1] for r in self.rows]

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, n: int) -> tuple[int, int]:
        return self.rows[n]

    def truncated(self, max_n: int) -> CountsTable:
        return CountsTable(self.family, self.rows[: max_n + 1])


# (labeled, unlabeled) for n = 0, 1, 2, ...
_POLYGONAL = (
    (0, 0),
    (0, 0),
    (1, 0),
    (1, 1),
    (9, 2),
    (142, 4),
    (3255, 12),
    (98031, 35),
    (3656548, 146),
    (162577332, 638),
    (8389712565, 3202),
    (492731139565, 16812),
    (32442804010386, 92896),
    (2366514029082534, 526772),
    (189407564735080783, 3059529),
    (16501454669316415995, 18074277),
    (1554438720577536961560, 108363677),
    (157423599814757566519336, 657666274),
    (17055697585856128847006697, 4034258315),
    (1968364932798990980350721817, 24978270864),
    (241066057385127358326660352030, 155936687183),
    (31225184482248201727492659433530, 980693145568),
    (4264939764724371509073783537878211, 6208610766918),
    (612621843178318008183525963968742151, 39541690252881),
    (92318664159675081116148301725731288868, 253208231528625),
    (14562874254239454682491677079887534079900, 1629504665609635),
    (2399897780180354666071878804962398006738525, 10534360792342723),
)

_SUCCULENTS = (
    (0, 0),
    (1, 1),
    (0, 0),
    (1, 1),
    (9, 2),
    (157, 5),
    (3795, 15),
    (119346, 53),
    (4621708, 227),
    (212726529, 1066),
    (11345387805, 5523),
    (687946890790, 30142),
    (46736272993806, 172227),
    (3515975765492235, 1012974),
    (290136704987785747, 6104629),
    (26055571620539221320, 37471623),
    (2529614021758754876520, 233595886),
    (263997116122623681660241, 1475082907),
    (29471762512579341908184345, 9418713822),
    (3504426532914198495232154142, 60723473472),
)

POLYGONAL_2TREES = CountsTable("polygonal", _POLYGONAL)
SUCCULENTS = CountsTable("succulent", _SUCCULENTS)


def reference_table(family: str) -> CountsTable:
    return {"polygonal": POLYGONAL_2TREES, "succulent": SUCCULENTS}[family]
