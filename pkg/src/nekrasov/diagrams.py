"""Young diagrams, Z2-colorings, and fixed-point enumeration.

Conventions: a diagram is a weakly decreasing tuple of positive column
heights (lambda_1 >= lambda_2 >= ...), and a box is addressed as (i, j) =
(column, row), both 1-based.  With these conventions the arm and leg of a
box s = (i, j) are

    arm(s) = lambda_i - j        boxes above s in its column
    leg(s) = lambda'_j - i       boxes right of s in its row
                                 (lambda' = transpose heights)

which is exactly what the tangent-weight formulas consume.  The Z2-color
of a box in a diagram framed with color l is l + (i-1) + (j-1) mod 2.

Enumeration orders are fixed once and for all so that every run of the
engine produces identical output: diagrams are ordered by (size, then
reverse-lexicographic on columns), tuples of diagrams lexicographically
in that order, and k-vectors coordinate-wise with each coordinate ranged
over 0, 1, -1, 2, -2, ... (doubled values, smallest absolute value first).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterator

YoungDiagram = tuple


class OutOfDiagram(ValueError):
    """Box coordinates outside the diagram."""


class ParityError(ValueError):
    """Total first-Chern datum k incompatible with the framing parity."""


class GradeError(ValueError):
    """Requested series grade not congruent to w1 mod 4."""


def check_diagram(columns) -> YoungDiagram:
    cols = tuple(int(c) for c in columns)
    if any(c <= 0 for c in cols):
        raise ValueError(f"column heights must be positive: {cols}")
    if any(cols[i] < cols[i + 1] for i in range(len(cols) - 1)):
        raise ValueError(f"column heights must weakly decrease: {cols}")
    return cols


def diagram_size(diagram: YoungDiagram) -> int:
    return sum(diagram)


def column_height(diagram: YoungDiagram, i: int) -> int:
    """Height of the i-th column (0 beyond the diagram's width)."""
    return diagram[i - 1] if 1 <= i <= len(diagram) else 0


def transpose(diagram: YoungDiagram) -> YoungDiagram:
    if not diagram:
        return ()
    width = diagram[0]
    return tuple(sum(1 for c in diagram if c >= j) for j in range(1, width + 1))


def boxes(diagram: YoungDiagram) -> Iterator[tuple[int, int]]:
    """All boxes (column i, row j), column-major, 1-based."""
    for i, height in enumerate(diagram, start=1):
        for j in range(1, height + 1):
            yield (i, j)


def arm_in(diagram: YoungDiagram, i: int, j: int) -> int:
    """lambda_i - j, measured in `diagram`; negative for boxes outside it."""
    return column_height(diagram, i) - j


def leg_in(diagram: YoungDiagram, i: int, j: int) -> int:
    """lambda'_j - i, measured in `diagram`; negative for boxes outside it."""
    return column_height(transpose(diagram), j) - i


def arm_leg(diagram: YoungDiagram, i: int, j: int) -> tuple[int, int]:
    """Arm and leg of a box that must lie inside the diagram."""
    if i < 1 or j < 1 or j > column_height(diagram, i):
        raise OutOfDiagram(f"box ({i},{j}) not in diagram {list(diagram)}")
    return arm_in(diagram, i, j), leg_in(diagram, i, j)


def colored_sizes(diagram: YoungDiagram, l: int) -> tuple[int, int]:
    """Counts of boxes with Z2-color 0 and 1 for framing color l."""
    n = [0, 0]
    for i, j in boxes(diagram):
        n[(l + i + j) % 2] += 1
    return n[0], n[1]


@dataclass(frozen=True)
class FrameData:
    """Framing dimensions (w0, w1); colors are 0 for the first w0 slots."""

    w0: int
    w1: int

    def __post_init__(self) -> None:
        if self.w0 < 0 or self.w1 < 0 or self.w0 + self.w1 < 1:
            raise ValueError("need w0, w1 >= 0 with w0 + w1 >= 1")

    @property
    def r(self) -> int:
        return self.w0 + self.w1

    @property
    def r0(self) -> int:
        return self.w0

    @property
    def r1(self) -> int:
        return self.w1

    @property
    def colors(self) -> tuple[int, ...]:
        return (0,) * self.w0 + (1,) * self.w1


@dataclass(frozen=True, order=True)
class HalfInt:
    """An element of (1/2)Z stored as its doubled integer value."""

    doubled: int

    @classmethod
    def from_int(cls, n: int) -> "HalfInt":
        return cls(2 * n)

    @classmethod
    def parse(cls, text: str) -> "HalfInt":
        """Parse "p", "p/1" or "p/2"; any other denominator is rejected."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            if den.strip() == "2":
                return cls(int(num))
            if den.strip() == "1":
                return cls(2 * int(num))
            raise ValueError(f"half-integers must be 'p' or 'p/2', got {text!r}")
        return cls(2 * int(text))

    @property
    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def __add__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.doubled + other.doubled)

    def __sub__(self, other: "HalfInt") -> "HalfInt":
        return HalfInt(self.doubled - other.doubled)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.doubled)

    def __str__(self) -> str:
        if self.doubled % 2 == 0:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple[YoungDiagram, ...]:
    """All diagrams of size n, reverse-lexicographic on column heights."""
    if n == 0:
        return ((),)
    cap = n if max_part is None else min(max_part, n)
    out: list[YoungDiagram] = []
    for first in range(cap, 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def diagram_tuples(slots: int, total: int) -> Iterator[tuple[YoungDiagram, ...]]:
    """All `slots`-tuples of diagrams of given total size, lexicographically
    in the diagram order (size first, then reverse-lex)."""
    if slots == 0:
        if total == 0:
            yield ()
        return
    if slots == 1:
        for diagram in partitions(total):
            yield (diagram,)
        return
    for head_size in range(total + 1):
        for head in partitions(head_size):
            for rest in diagram_tuples(slots - 1, total - head_size):
                yield (head,) + rest


@dataclass(frozen=True)
class FixedPointX0:
    """A torus-fixed point on the orbifold side: r colored diagrams."""

    diagrams: tuple
    v0: int
    v1: int

    @classmethod
    def from_diagrams(cls, frame: FrameData, diagrams) -> "FixedPointX0":
        diagrams = tuple(diagrams)
        v0 = v1 = 0
        for color, diagram in zip(frame.colors, diagrams):
            n0, n1 = colored_sizes(diagram, color)
            v0 += n0
            v1 += n1
        return cls(diagrams, v0, v1)


def enum_fixed_points_x0(
    frame: FrameData, v0: int, v1: int
) -> list[FixedPointX0]:
    """All r-tuples of diagrams whose summed colored sizes are (v0, v1)."""
    out = []
    for tup in diagram_tuples(frame.r, v0 + v1):
        fp = FixedPointX0.from_diagrams(frame, tup)
        if (fp.v0, fp.v1) == (v0, v1):
            out.append(fp)
    return out


def _coordinate_values(parity: int, budget4: int) -> Iterator[int]:
    """Doubled coordinate values d with d*d <= budget4 and d = parity mod 2,
    ordered by absolute value, positive before negative."""
    limit = isqrt(budget4) if budget4 >= 0 else -1
    start = parity % 2
    for mag in range(start, limit + 1, 2):
        yield mag
        if mag > 0:
            yield -mag


def enum_kvectors(
    frame: FrameData, k: HalfInt, max4n: int
) -> list[tuple[HalfInt, ...]]:
    """All first-Chern vectors: integer entries on the color-0 slots,
    half-odd entries on the color-1 slots, summing to k, with
    4 * sum(k_alpha^2) <= max4n."""
    if (k.doubled + frame.w1) % 2 != 0:
        raise ParityError(f"2k = {k.doubled} has wrong parity for w1 = {frame.w1}")
    parities = [0 if c == 0 else 1 for c in frame.colors]
    out: list[tuple[HalfInt, ...]] = []

    def extend(prefix: list[int], used4: int) -> None:
        slot = len(prefix)
        if slot == frame.r - 1:
            last = k.doubled - sum(prefix)
            if last % 2 == parities[slot] and used4 + last * last <= max4n:
                out.append(tuple(HalfInt(d) for d in prefix + [last]))
            return
        for d in _coordinate_values(parities[slot], max4n - used4):
            extend(prefix + [d], used4 + d * d)

    if frame.r == 1:
        if k.doubled % 2 == parities[0] and k.doubled ** 2 <= max4n:
            out.append((k,))
    else:
        extend([], 0)
    return out


@dataclass(frozen=True)
class FixedPointX1:
    """A torus-fixed point on the resolved side: a first-Chern vector plus
    one pair of diagrams per framing slot."""

    kvec: tuple
    y1: tuple
    y2: tuple

    @property
    def grade4n(self) -> int:
        squares = sum(k.doubled ** 2 for k in self.kvec)
        sizes = sum(map(diagram_size, self.y1)) + sum(map(diagram_size, self.y2))
        return squares + 4 * sizes


def enum_fixed_points_x1(
    frame: FrameData, k: HalfInt, grade4n: int
) -> list[FixedPointX1]:
    """All (kvec, Y1, Y2) data with sum(kvec) = k sitting at the given grade
    4n = 4*sum(k_alpha^2) + 4*(total boxes)."""
    if (k.doubled + frame.w1) % 2 != 0:
        raise ParityError(f"2k = {k.doubled} has wrong parity for w1 = {frame.w1}")
    if grade4n % 4 != frame.w1 % 4:
        raise GradeError(f"grade {grade4n} is not {frame.w1} mod 4")
    out = []
    for kvec in enum_kvectors(frame, k, grade4n):
        remainder = grade4n - sum(d.doubled ** 2 for d in kvec)
        total_boxes = remainder // 4
        for tup in diagram_tuples(2 * frame.r, total_boxes):
            out.append(FixedPointX1(kvec, tup[: frame.r], tup[frame.r :]))
    return out


@dataclass(frozen=True)
class Wall:
    """A root (alpha0, alpha1) cutting a wall in the stability plane."""

    kind: str  # "real" or "imaginary"
    index: int  # m for real walls alpha_m, p for imaginary walls p*delta
    root: tuple

    def __post_init__(self) -> None:
        if self.kind == "real":
            expected = (abs(self.index), abs(self.index + 1))
        elif self.kind == "imaginary":
            if self.index <= 0:
                raise ValueError("imaginary walls have p > 0")
            expected = (self.index, self.index)
        else:
            raise ValueError(f"unknown wall kind {self.kind!r}")
        if self.root != expected:
            raise ValueError(f"root {self.root} does not match {self.kind} {self.index}")


def enum_walls(v0: int, v1: int) -> list[Wall]:
    """All positive roots (alpha0, alpha1) with alpha0 <= v0, alpha1 <= v1:
    real roots alpha_m = (|m|, |m+1|) interleaved m = 0, -1, 1, -2, ...,
    then imaginary roots p*delta = (p, p)."""
    out: list[Wall] = []
    for mag in range(0, max(v0, v1) + 1):
        # visits m = 0, -1, 1, -2, 2, -3, ...
        for m in (mag, -mag - 1):
            root = (abs(m), abs(m + 1))
            if root[0] <= v0 and root[1] <= v1:
                out.append(Wall("real", m, root))
    for p in range(1, min(v0, v1) + 1):
        out.append(Wall("imaginary", p, (p, p)))
    return out
