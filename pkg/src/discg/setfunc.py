"""Set functions over the ground set {1, ..., n}.

Subsets are plain ``int`` bit masks: element ``l`` belongs to the subset iff
bit ``l - 1`` is set. All values are exact ``Fraction`` instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

Subset = int


class GroundSetTooLarge(ValueError):
    """Raised by brute-force routines when 2^n enumeration is off the table."""


class VisibilityViolation(RuntimeError):
    """An agent asked for F(X) with its own element missing from X."""


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        # floats are only accepted when they round-trip through a short decimal
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class GroundSet:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"ground set needs at least one element, got n={self.n}")

    @property
    def elements(self) -> range:
        return range(1, self.n + 1)

    @property
    def full(self) -> Subset:
        return (1 << self.n) - 1

    def contains(self, x: Subset) -> bool:
        return 0 <= x <= self.full


def mask_of(elements: Iterable[int]) -> Subset:
    mask = 0
    for e in elements:
        if e < 1:
            raise ValueError(f"elements are 1-based, got {e}")
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: Subset, n: int) -> tuple[int, ...]:
    return tuple(l for l in range(1, n + 1) if mask >> (l - 1) & 1)


def indicator(mask: Subset, n: int) -> tuple[int, ...]:
    """The 0/1 vector 1_X of length n."""
    return tuple(mask >> l & 1 for l in range(n))


def mask_from_indicator(vec: Sequence) -> Subset:
    mask = 0
    for l, v in enumerate(vec):
        if v == 1:
            mask |= 1 << l
        elif v != 0:
            raise ValueError(f"not an indicator vector: entry {l + 1} is {v}")
    return mask


def weight(w: Sequence, mask: Subset) -> Fraction:
    """w(X) = sum of w over the elements of X."""
    total = Fraction(0)
    l = 0
    while mask:
        if mask & 1:
            total += w[l]
        mask >>= 1
        l += 1
    return total


class SetFunction:
    """Oracle for F: 2^V -> Q.

    Subclasses override ``_value``. Values are memoized; instances are
    immutable from the caller's point of view and safe to share.
    """

    def __init__(self, n: int):
        self.ground = GroundSet(n)
        self._memo: dict[int, Fraction] = {}

    @property
    def n(self) -> int:
        return self.ground.n

    def _value(self, x: Subset) -> Fraction:
        raise NotImplementedError

    def __call__(self, x: Subset) -> Fraction:
        try:
            return self._memo[x]
        except KeyError:
            pass
        if not self.ground.contains(x):
            raise ValueError(f"mask {x:#b} is not a subset of a ground set of size {self.n}")
        val = self._memo[x] = as_rational(self._value(x))
        return val

    def table(self) -> list[Fraction]:
        """All 2^n values indexed by mask."""
        return [self(m) for m in range(1 << self.n)]


class TableFunction(SetFunction):
    """Dense value table, indexed by mask."""

    def __init__(self, n: int, values):
        super().__init__(n)
        if isinstance(values, dict):
            vals = [Fraction(0)] * (1 << n)
            for m, v in values.items():
                vals[m] = as_rational(v)
        else:
            vals = [as_rational(v) for v in values]
        if len(vals) != 1 << n:
            raise ValueError(f"expected {1 << n} values, got {len(vals)}")
        self.values = tuple(vals)

    def _value(self, x):
        return self.values[x]


class ModularFunction(SetFunction):
    def __init__(self, weights: Sequence):
        super().__init__(len(weights))
        self.weights = tuple(as_rational(w) for w in weights)

    def _value(self, x):
        return weight(self.weights, x)


class CallableFunction(SetFunction):
    """Wraps a plain callable taking a mask."""

    def __init__(self, n: int, fn: Callable[[Subset], object]):
        super().__init__(n)
        self.fn = fn

    def _value(self, x):
        return self.fn(x)


class ShiftedFunction(SetFunction):
    """X -> F(X) - F(empty)."""

    def __init__(self, base: SetFunction):
        super().__init__(base.n)
        self.base = base
        self.offset = base(0)

    def _value(self, x):
        return self.base(x) - self.offset


def evaluate(f: SetFunction, x: Subset) -> Fraction:
    return f(x)


def normalize(f: SetFunction) -> SetFunction:
    """Shift f so that F(empty) = 0. Already-normalized functions come back as is."""
    if f(0) == 0:
        return f
    return ShiftedFunction(f)


def check_submodular(f: SetFunction, max_n: int = 12) -> bool:
    """Exact submodularity test.

    Uses the second-difference form F(A+i) + F(A+j) >= F(A+i+j) + F(A) for all
    A and i, j outside A, which is equivalent to the pairwise lattice inequality
    and needs 2^n n^2 / 2 comparisons instead of 4^n.
    """
    n = f.n
    if n > max_n:
        raise GroundSetTooLarge(f"check_submodular enumerates 2^n sets; n={n} > {max_n}")
    vals = f.table()
    for a in range(1 << n):
        fa = vals[a]
        free = [1 << l for l in range(n) if not a & (1 << l)]
        for p, bi in enumerate(free):
            fai = vals[a | bi]
            for bj in free[p + 1:]:
                if fai + vals[a | bj] < vals[a | bi | bj] + fa:
                    return False
    return True


class LocalOracle:
    """The view of F available to agent ``owner``: only sets containing it."""

    def __init__(self, owner: int, backing: SetFunction):
        if not 1 <= owner <= backing.n:
            raise ValueError(f"owner {owner} outside ground set 1..{backing.n}")
        self.owner = owner
        self.backing = backing
        self._bit = 1 << (owner - 1)

    @property
    def n(self) -> int:
        return self.backing.n

    def __call__(self, x: Subset) -> Fraction:
        if not x & self._bit:
            raise VisibilityViolation(
                f"agent {self.owner} queried a set without itself: {elements_of(x, self.n)}"
            )
        return self.backing(x)


def local_evaluate(o: LocalOracle, x: Subset) -> Fraction:
    return o(x)
