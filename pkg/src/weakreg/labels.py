"""Per-point label records and the labeled-first index view."""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InconsistentView


class Role(enum.Enum):
    """How a point's target information enters the fit.

    LABELED points carry an exact value (s = 0), WEAK points an uncertain
    one (s > 0), UNLABELED points nothing. TEST points are held out for
    evaluation; every solver treats them exactly like UNLABELED.
    """

    LABELED = "labeled"
    WEAK = "weak"
    UNLABELED = "unlabeled"
    TEST = "test"


OBSERVED_ROLES = frozenset({Role.LABELED, Role.WEAK})


@dataclass(frozen=True, slots=True)
class WeakLabel:
    """Gaussian label belief for one point: mean a, standard deviation s."""

    a: float
    s: float
    role: Role

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("label standard deviation must be non-negative")

    @classmethod
    def exact(cls, value: float) -> "WeakLabel":
        return cls(float(value), 0.0, Role.LABELED)

    @classmethod
    def weak(cls, value: float, std: float) -> "WeakLabel":
        return cls(float(value), float(std), Role.WEAK)

    @classmethod
    def unlabeled(cls, role: Role = Role.UNLABELED) -> "WeakLabel":
        return cls(0.0, 0.0, role)

    @property
    def observed(self) -> bool:
        return self.role in OBSERVED_ROLES


@dataclass(frozen=True)
class LabeledView:
    """Permutation putting the n1 observed points first.

    order[j] is the original index of view position j; the permutation is
    recorded so solver outputs can be returned in original point order.
    """

    n: int
    n1: int
    order: np.ndarray

    def __post_init__(self):
        order = np.asarray(self.order, dtype=np.int64).reshape(-1)
        object.__setattr__(self, "order", order)
        if order.shape[0] != self.n or not 0 <= self.n1 <= self.n:
            raise InconsistentView("view sizes do not match its permutation")
        seen = np.zeros(self.n, dtype=bool)
        seen[order] = True
        if not seen.all():
            raise InconsistentView("order is not a permutation of 0..n-1")

    @classmethod
    def from_labels(cls, labels) -> "LabeledView":
        observed = np.fromiter((lab.observed for lab in labels), dtype=bool)
        order = np.concatenate(
            [np.flatnonzero(observed), np.flatnonzero(~observed)]
        ).astype(np.int64)
        return cls(observed.shape[0], int(observed.sum()), order)

    def to_view(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(x)[self.order]

    def to_original(self, x: np.ndarray) -> np.ndarray:
        out = np.empty_like(np.asarray(x))
        out[self.order] = x
        return out


@dataclass(frozen=True)
class SplitMasks:
    """Disjoint boolean masks partitioning the points by role."""

    labeled: np.ndarray
    weak: np.ndarray
    unlabeled: np.ndarray
    test: np.ndarray

    def __post_init__(self):
        stack = np.stack([self.labeled, self.weak, self.unlabeled, self.test])
        if not np.all(stack.sum(axis=0) == 1):
            raise ValueError("role masks must partition the index set")

    @property
    def n(self) -> int:
        return self.labeled.shape[0]


def roles_to_masks(labels) -> SplitMasks:
    roles = np.array([lab.role for lab in labels], dtype=object)
    return SplitMasks(
        labeled=roles == Role.LABELED,
        weak=roles == Role.WEAK,
        unlabeled=roles == Role.UNLABELED,
        test=roles == Role.TEST,
    )
