"""Permutations of {0, ..., n-1} with cycle-notation parsing and printing.

A permutation is stored as its tuple of images, so it is hashable and totally
ordered (lexicographically); the identity is the smallest permutation of its
degree, which the group code relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .errors import ParseError


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a bijection of 0..{len(self.images) - 1}: {self.images!r}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(x) = self(other(x))
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        o = other.images
        s = self.images
        return Permutation(tuple(s[o[x]] for x in range(len(s))))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point, sorted."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycs)

    def __str__(self):
        return self.cycle_string()


def parse_cycles(text: str, degree: int, *, source="<string>", line=1, offset=0) -> Permutation:
    """Parse cycle notation like ``(0 1 2 3)(4 5)`` into a Permutation.

    Cycles are applied left to right; points are 0-based and must be below
    ``degree``. ``()`` denotes the identity. ``offset`` is the column of the
    first character of ``text`` within its line, for error reporting.
    """

    def err(msg, col):
        raise ParseError(msg, source=source, line=line, column=offset + col + 1)

    cycles: list[list[int]] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch != "(":
            err(f"expected '(' but found {ch!r}", i)
        i += 1
        cyc: list[int] = []
        while True:
            while i < n and (text[i].isspace() or text[i] == ","):
                i += 1
            if i >= n:
                err("unterminated cycle", n - 1)
            if text[i] == ")":
                i += 1
                break
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j == i:
                err(f"expected a point or ')' but found {text[i]!r}", i)
            point = int(text[i:j])
            if point >= degree:
                err(f"point {point} out of range for degree {degree}", i)
            if point in cyc:
                err(f"point {point} repeated within a cycle", i)
            cyc.append(point)
            i = j
        if cyc:
            cycles.append(cyc)

    images = list(range(degree))
    for x in range(degree):
        y = x
        for cyc in cycles:
            if y in cyc:
                y = cyc[(cyc.index(y) + 1) % len(cyc)]
        images[x] = y
    return Permutation(tuple(images))
