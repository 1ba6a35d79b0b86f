"""Numerical semigroups as membership bitmasks with cached invariants.

A semigroup is stored as a Python-int bitmask over the window [0, f+m]; all
per-semigroup questions (generators, descent, shifts) are decidable on that
window.  Values are immutable; equality and hashing use (f, window mask).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Optional


class NotASemigroup(ValueError):
    """The complement of the given gap set is not additively closed.

    `witness` is a pair (x, y) of members whose sum is a gap, when closure is
    what failed.
    """

    def __init__(self, message: str, witness: Optional[tuple[int, int]] = None):
        super().__init__(message)
        self.witness = witness


class Descent(Enum):
    WEAK = "weak"
    STRONG = "strong"


@dataclass(frozen=True)
class GeneratorSet:
    minimal: tuple[int, ...]
    effective: tuple[int, ...]
    h: int


class NumericalSemigroup:
    """A cofinite, additively closed subset of the non-negative integers.

    Construct through :meth:`from_gaps`; instances are immutable.  For the
    full semigroup (no gaps) the conventions are m=1, f=-1, h=1, strongly
    descended.
    """

    __slots__ = ("_mask", "m", "f", "g", "_gens")

    def __init__(self, mask: int, m: int, f: int, g: int):
        object.__setattr__(self, "_mask", mask)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "_gens", None)

    def __setattr__(self, name, value):
        raise AttributeError("NumericalSemigroup is immutable")

    @classmethod
    def from_gaps(
        cls, gaps: Iterable[int], _trusted: bool = False
    ) -> "NumericalSemigroup":
        gap_list = sorted(set(gaps))
        if any((not isinstance(x, int)) or x < 1 for x in gap_list):
            raise NotASemigroup("gaps must be positive integers")
        if not gap_list:
            return NATURALS
        f = gap_list[-1]
        g = len(gap_list)
        gap_mask = 0
        for x in gap_list:
            gap_mask |= 1 << x
        m = 1
        while gap_mask >> m & 1:
            m += 1
        window = (1 << (f + m + 1)) - 1
        mask = window & ~gap_mask
        if not _trusted:
            members_low = mask & ((1 << (f + 1)) - 1)
            x = 1
            rest = members_low >> 1
            while rest:
                if rest & 1:
                    bad = (members_low << x) & gap_mask
                    if bad:
                        p = (bad & -bad).bit_length() - 1
                        y = p - x
                        lo, hi = min(x, y), max(x, y)
                        raise NotASemigroup(
                            f"{lo}+{hi}={lo + hi} is a gap but both summands are members",
                            witness=(lo, hi),
                        )
                x += 1
                rest >>= 1
        return cls(mask, m, f, g)

    # -- membership ---------------------------------------------------------

    def __contains__(self, x: int) -> bool:
        if x < 0:
            return False
        if x > self.f:
            return True
        return bool(self._mask >> x & 1)

    def gaps(self) -> tuple[int, ...]:
        return tuple(x for x in range(1, self.f + 1) if not self._mask >> x & 1)

    def members_within(self, hi: int) -> Iterator[int]:
        """Members in [0, hi]."""
        for x in range(hi + 1):
            if x in self:
                yield x

    # -- generators and descent ---------------------------------------------

    def generators(self) -> GeneratorSet:
        cached = self._gens
        if cached is not None:
            return cached
        if self.f == -1:
            gens = GeneratorSet((1,), (1,), 1)
        else:
            m, f, mask = self.m, self.f, self._mask
            sums = 0
            positive = mask & ~1
            low = mask & ((1 << (f + 1)) - 1)
            a = m
            rest = low >> m
            while rest:
                if rest & 1:
                    sums |= positive << a
                a += 1
                rest >>= 1
            minimal = tuple(
                x
                for x in range(m, f + m + 1)
                if (mask >> x & 1) and not (sums >> x & 1)
            )
            effective = tuple(x for x in minimal if x > f)
            gens = GeneratorSet(minimal, effective, len(effective))
        object.__setattr__(self, "_gens", gens)
        return gens

    def is_strongly_descended(self) -> bool:
        """True when f+m is a minimal generator (the genus-0 root counts)."""
        if self.f == -1:
            return True
        return (self.f + self.m) in self.generators().minimal

    def child(self, generator: int) -> "NumericalSemigroup":
        if generator not in self.generators().effective:
            raise ValueError(f"{generator} is not an effective generator")
        return NumericalSemigroup.from_gaps(
            self.gaps() + (generator,), _trusted=True
        )

    def children(self) -> list[tuple[int, "NumericalSemigroup"]]:
        """One child per effective generator, in increasing generator order."""
        return [(lam, self.child(lam)) for lam in self.generators().effective]

    def descent_type(self, generator: int) -> Descent:
        """Whether removing `generator` creates a new effective generator."""
        child = self.child(generator)
        parent_eff = set(self.generators().effective)
        for e in child.generators().effective:
            if e not in parent_eff:
                return Descent.STRONG
        return Descent.WEAK

    # -- shifts and order structure ------------------------------------------

    def shift_tau(self, delta: int) -> "NumericalSemigroup":
        """Shift all non-zero elements by delta, keeping 0 (set semantics)."""
        if delta == 0:
            return self
        if self.m + delta < 0:
            raise NotASemigroup(
                f"least positive element {self.m} would shift to {self.m + delta}"
            )
        new_f = self.f + delta
        new_gaps = [
            y
            for y in range(1, new_f + 1)
            if not (y - delta >= 1 and (y - delta) in self)
        ]
        return NumericalSemigroup.from_gaps(new_gaps)

    def left_set(self) -> frozenset[int]:
        """{x in [0, f-m] : m+x is a member}; empty when f < m."""
        return frozenset(
            x for x in range(0, self.f - self.m + 1) if (self.m + x) in self
        )

    def is_orderly(self) -> bool:
        return self.is_strongly_descended() and self.g < 2 * self.generators().h

    # -- identity and rendering ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, NumericalSemigroup):
            return NotImplemented
        return self.f == other.f and self._mask == other._mask

    def __hash__(self):
        return hash((self.f, self._mask))

    def __str__(self):
        return "{" + ",".join(str(x) for x in self.gaps()) + "}"

    def __repr__(self):
        return f"NumericalSemigroup(gaps={self.gaps()})"

    def to_json(self) -> dict:
        return {
            "gaps": list(self.gaps()),
            "m": self.m,
            "f": self.f,
            "g": self.g,
            "h": self.generators().h,
        }


#: The genus-0 root: every non-negative integer.
NATURALS = NumericalSemigroup((1 << 1) - 1, 1, -1, 0)


def from_gaps(gaps: Iterable[int]) -> NumericalSemigroup:
    return NumericalSemigroup.from_gaps(gaps)
