"""Strict partitions, shifted diagrams and the tableaux living on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Iterator, NamedTuple

from .scalars import Surd, sqrt_content


class ShiftedBox(NamedTuple):
    row: int
    col: int

    @property
    def content(self) -> int:
        return self.col - self.row

    @property
    def diagonal(self) -> bool:
        return self.row == self.col


@dataclass(frozen=True)
class StrictPartition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a <= b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must strictly decrease: {parts}")

    @classmethod
    def parse(cls, text: str) -> StrictPartition:
        text = text.strip()
        if not text or text in ("0", "()", "[]"):
            return cls(())
        return cls(tuple(int(t) for t in text.replace(" ", "").split(",")))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"

    def boxes(self) -> list[ShiftedBox]:
        """Boxes of the shifted diagram in row-major order."""
        return [
            ShiftedBox(i, j)
            for i, p in enumerate(self.parts, start=1)
            for j in range(i, i + p)
        ]

    def padded(self, size: int) -> tuple[int, ...]:
        if self.length > size:
            raise ValueError(f"{self} has more than {size} parts")
        return self.parts + (0,) * (size - self.length)

    def add_box(self, box: ShiftedBox) -> StrictPartition:
        parts = list(self.parts)
        if box.row == len(parts) + 1:
            parts.append(1)
        else:
            parts[box.row - 1] += 1
        return StrictPartition(tuple(parts))

    def to_json(self) -> list[int]:
        return list(self.parts)


def addable_boxes(mu: StrictPartition) -> list[ShiftedBox]:
    parts = mu.parts
    out = []
    for i in range(1, len(parts) + 2):
        cur = parts[i - 1] if i <= len(parts) else 0
        new = cur + 1
        if i > 1 and new >= parts[i - 2]:
            continue
        out.append(ShiftedBox(i, i + cur))
    return out


def removable_boxes(mu: StrictPartition) -> list[ShiftedBox]:
    parts = mu.parts
    out = []
    for i, p in enumerate(parts, start=1):
        nxt = parts[i] if i < len(parts) else 0
        if p - 1 > nxt or (p == 1 and i == len(parts)):
            out.append(ShiftedBox(i, i + p - 1))
    return out


def strict_partitions(n: int) -> list[StrictPartition]:
    """All strict partitions of ``n``, in reverse lexicographic order."""

    def rec(rest: int, bound: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for p in range(min(rest, bound), 0, -1):
            for tail in rec(rest - p, p - 1):
                yield (p,) + tail

    return [StrictPartition(p) for p in rec(n, n)]


def strict_partitions_upto(n: int, max_length: int | None = None) -> list[StrictPartition]:
    out = []
    for k in range(n + 1):
        out.extend(
            p for p in strict_partitions(k) if max_length is None or p.length <= max_length
        )
    return out


def g_lambda(lam: StrictPartition) -> int:
    """Number of standard shifted tableaux of shape ``lam`` (Schur's formula)."""
    parts = lam.parts
    value = Fraction(factorial(lam.n))
    for p in parts:
        value /= factorial(p)
    for a, b in combinations(parts, 2):
        value *= Fraction(a - b, a + b)
    assert value.denominator == 1
    return int(value)


def dim_simple(lam: StrictPartition) -> int:
    return 2 ** (lam.n - lam.length // 2) * g_lambda(lam)


def dim_hat(lam: StrictPartition) -> int:
    return 2**lam.n * g_lambda(lam)


@dataclass(frozen=True)
class BarredStandardTableau:
    """Standard shifted tableau; ``bars`` holds the barred (never diagonal) entries."""

    shape: StrictPartition
    rows: tuple[tuple[int, ...], ...]
    bars: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        object.__setattr__(self, "bars", frozenset(self.bars))

    @property
    def n(self) -> int:
        return self.shape.n

    @property
    def positions(self) -> dict[int, ShiftedBox]:
        return _positions(self.rows)

    def box_of(self, a: int) -> ShiftedBox:
        return self.positions[a]

    def content(self, a: int) -> int:
        return self.box_of(a).content

    def is_barred(self, a: int) -> bool:
        return a in self.bars

    def diagonal_entries(self) -> list[int]:
        return [row[0] for row in self.rows]

    def signed_content(self, a: int) -> Surd:
        root = sqrt_content(self.content(a))
        return -root if a in self.bars else root

    def signed_contents(self) -> list[Surd]:
        return [self.signed_content(a) for a in range(1, self.n + 1)]

    def unbarred(self) -> BarredStandardTableau:
        return BarredStandardTableau(self.shape, self.rows)

    def barred_entries(self) -> list[int]:
        return sorted(self.bars)

    def remove_last(self) -> BarredStandardTableau:
        """Drop the entry ``n`` (with its bar)."""
        n = self.n
        box = self.box_of(n)
        rows = [list(r) for r in self.rows]
        rows[box.row - 1].pop()
        if not rows[box.row - 1]:
            rows.pop()
        parts = tuple(len(r) for r in rows)
        return BarredStandardTableau(StrictPartition(parts), rows, self.bars - {n})

    def is_valid(self) -> bool:
        return is_standard_barred(self)

    def to_json(self) -> dict:
        return {
            "shape": self.shape.to_json(),
            "rows": [[{"v": v, "bar": v in self.bars} for v in row] for row in self.rows],
        }

    @classmethod
    def from_json(cls, obj: dict) -> BarredStandardTableau:
        rows = [[e["v"] for e in row] for row in obj["rows"]]
        bars = {e["v"] for row in obj["rows"] for e in row if e.get("bar")}
        return cls(StrictPartition(tuple(len(r) for r in rows)), rows, bars)

    def to_text(self) -> str:
        return ";".join(
            ",".join(f"{v}b" if v in self.bars else str(v) for v in row) for row in self.rows
        )

    @classmethod
    def parse(cls, text: str) -> BarredStandardTableau:
        """Parse the compact form ``"1,2b;3"``: rows split by ``;``, bars marked by ``b``."""
        rows, bars = [], set()
        for chunk in text.strip().split(";"):
            row = []
            for tok in chunk.split(","):
                tok = tok.strip()
                if tok.endswith(("b", "B")):
                    tok = tok[:-1]
                    bars.add(int(tok))
                row.append(int(tok))
            rows.append(row)
        t = cls(StrictPartition(tuple(len(r) for r in rows)), rows, bars)
        if not t.is_valid():
            raise ValueError(f"not a standard barred tableau: {text!r}")
        return t

    def __str__(self) -> str:
        return self.to_text()


@lru_cache(maxsize=None)
def _positions(rows: tuple[tuple[int, ...], ...]) -> dict[int, ShiftedBox]:
    return {
        v: ShiftedBox(i, i + j)
        for i, row in enumerate(rows, start=1)
        for j, v in enumerate(row)
    }


def is_standard_barred(t: BarredStandardTableau) -> bool:
    """Independent validity predicate: shape, bijection, monotonicity, bar placement."""
    if tuple(len(r) for r in t.rows) != t.shape.parts:
        return False
    values = sorted(v for row in t.rows for v in row)
    if values != list(range(1, t.n + 1)):
        return False
    grid = {}
    for i, row in enumerate(t.rows, start=1):
        for j, v in enumerate(row, start=i):
            grid[(i, j)] = v
    for (i, j), v in grid.items():
        if (i, j + 1) in grid and grid[(i, j + 1)] <= v:
            return False
        if (i + 1, j) in grid and grid[(i + 1, j)] <= v:
            return False
    diagonal = {grid[(i, i)] for i in range(1, t.shape.length + 1)}
    return not (t.bars & diagonal) and t.bars <= set(values)


@lru_cache(maxsize=None)
def _standard_rows(parts: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], ...], ...]:
    if not parts:
        return ((),)
    lam = StrictPartition(parts)
    n = lam.n
    out = []
    for box in removable_boxes(lam):
        smaller = list(parts)
        smaller[box.row - 1] -= 1
        while smaller and smaller[-1] == 0:
            smaller.pop()
        for rows in _standard_rows(tuple(smaller)):
            rows = [list(r) for r in rows]
            if box.row > len(rows):
                rows.append([])
            rows[box.row - 1].append(n)
            out.append(tuple(tuple(r) for r in rows))
    return tuple(sorted(out))


def standard_tableaux(lam: StrictPartition) -> list[BarredStandardTableau]:
    """Unbarred standard tableaux, built by adding boxes one at a time."""
    return [BarredStandardTableau(lam, rows) for rows in _standard_rows(lam.parts)]


def enumerate_standard_barred(lam: StrictPartition) -> list[BarredStandardTableau]:
    out = []
    for t in standard_tableaux(lam):
        diag = set(t.diagonal_entries())
        free = [v for v in range(1, lam.n + 1) if v not in diag]
        for k in range(len(free) + 1):
            for chosen in combinations(free, k):
                out.append(BarredStandardTableau(lam, t.rows, frozenset(chosen)))
    return out


def all_barred_tableaux(n: int) -> list[BarredStandardTableau]:
    return [u for lam in strict_partitions(n) for u in enumerate_standard_barred(lam)]


def row_reading_tableau(lam: StrictPartition) -> BarredStandardTableau:
    """The tableau filled row by row."""
    rows, v = [], 1
    for p in lam.parts:
        rows.append(tuple(range(v, v + p)))
        v += p
    return BarredStandardTableau(lam, rows)


def column_reading_tableau(lam: StrictPartition) -> BarredStandardTableau:
    """The tableau filled by successive columns from top to bottom."""
    boxes = sorted(lam.boxes(), key=lambda b: (b.col, b.row))
    label = {b: k for k, b in enumerate(boxes, start=1)}
    rows = [tuple(label[b] for b in lam.boxes() if b.row == i) for i in range(1, lam.length + 1)]
    return BarredStandardTableau(lam, rows)


# Marked shifted tableaux over the alphabet 1' < 1 < 2' < 2 < ... ; the letter
# k' is coded as 2k-1 and k as 2k.

def letter_value(code: int) -> int:
    return (code + 1) // 2


def letter_primed(code: int) -> bool:
    return code % 2 == 1


def letter_sign(code: int) -> int:
    return -1 if code % 2 else 1


def letter_str(code: int) -> str:
    return f"{letter_value(code)}'" if letter_primed(code) else str(letter_value(code))


@dataclass(frozen=True)
class MarkedShiftedTableau:
    shape: StrictPartition
    labels: tuple[tuple[int, ...], ...]  # row-wise letter codes

    def items(self) -> Iterator[tuple[ShiftedBox, int]]:
        for i, row in enumerate(self.labels, start=1):
            for j, code in enumerate(row, start=i):
                yield ShiftedBox(i, j), code

    def to_json(self) -> dict:
        return {
            "shape": self.shape.to_json(),
            "rows": [[letter_str(c) for c in row] for row in self.labels],
        }


def is_marked_valid(t: MarkedShiftedTableau) -> bool:
    grid = {box: code for box, code in t.items()}
    for (i, j), code in grid.items():
        right = grid.get(ShiftedBox(i, j + 1))
        if right is not None and (right < code or (right == code and letter_primed(code))):
            return False
        below = grid.get(ShiftedBox(i + 1, j))
        if below is not None and (below < code or (below == code and not letter_primed(code))):
            return False
    return True


def enumerate_marked(lam: StrictPartition, N: int) -> list[MarkedShiftedTableau]:
    boxes = lam.boxes()
    label: dict[ShiftedBox, int] = {}
    out = []
    top = 2 * N

    def fill(k: int):
        if k == len(boxes):
            rows = tuple(
                tuple(label[b] for b in boxes if b.row == i) for i in range(1, lam.length + 1)
            )
            out.append(MarkedShiftedTableau(lam, rows))
            return
        box = boxes[k]
        left = label.get(ShiftedBox(box.row, box.col - 1))
        above = label.get(ShiftedBox(box.row - 1, box.col))
        low = max(left or 1, above or 1)
        for code in range(low, top + 1):
            if code == left and letter_primed(code):
                continue
            if code == above and not letter_primed(code):
                continue
            label[box] = code
            fill(k + 1)
        label.pop(box, None)

    fill(0)
    return out
