"""Skew shapes, standard Young tableaux, and explicit cyclic descent maps.

Cells are ``(row, col)`` pairs with rows increasing downward (English
notation).  Direct sums keep absolute offsets, so "lower row" in the descent
rules is a literal comparison of row indices.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Sequence

from .perms import elements, popcount, shift_mask

Cell = tuple  # (row, col)


class ShapeError(ValueError):
    pass


class SkewShape:
    __slots__ = ("cells", "_components")

    def __init__(self, cells: Iterable[Cell]):
        cs = frozenset((int(r), int(c)) for r, c in cells)
        if cs:
            r0 = min(r for r, _ in cs)
            c0 = min(c for _, c in cs)
            cs = frozenset((r - r0, c - c0) for r, c in cs)
        _validate(cs)
        self.cells = cs
        self._components = None

    # construction ---------------------------------------------------------

    @classmethod
    def from_partitions(cls, lam: Sequence[int], mu: Sequence[int] = ()) -> "SkewShape":
        mu = list(mu) + [0] * (len(lam) - len(mu))
        if len(mu) > len(lam):
            raise ShapeError(f"inner shape {tuple(mu)} longer than outer {tuple(lam)}")
        cells = []
        for r, (a, b) in enumerate(zip(lam, mu)):
            if b > a:
                raise ShapeError(f"{tuple(mu)} is not contained in {tuple(lam)}")
            cells.extend((r, c) for c in range(b, a))
        return cls(cells)

    @classmethod
    def direct_sum(cls, *components: "SkewShape") -> "SkewShape":
        """Place components from southwest to northeast, in the given order."""
        comps = [c for c in components if c.cells]
        cells = []
        col_off = 0
        for i, comp in enumerate(comps):
            row_off = sum(c.height for c in comps[i + 1:])
            cells.extend((r + row_off, c + col_off) for r, c in comp.cells)
            col_off += comp.width
        return cls(cells)

    # basic data -----------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.cells)

    @property
    def height(self) -> int:
        return 1 + max(r for r, _ in self.cells) if self.cells else 0

    @property
    def width(self) -> int:
        return 1 + max(c for _, c in self.cells) if self.cells else 0

    def __eq__(self, other):
        return isinstance(other, SkewShape) and self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)

    def __repr__(self):
        return f"SkewShape({format_shape(self)!r})"

    def rows(self) -> list[list[int]]:
        """Columns of each row, top to bottom."""
        out: dict[int, list[int]] = {}
        for r, c in sorted(self.cells):
            out.setdefault(r, []).append(c)
        return [out[r] for r in sorted(out)]

    def components(self) -> list[frozenset]:
        """Edge-connected components, ordered southwest to northeast."""
        if self._components is None:
            todo = set(self.cells)
            comps = []
            while todo:
                start = todo.pop()
                comp = {start}
                stack = [start]
                while stack:
                    r, c = stack.pop()
                    for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                        if nb in todo:
                            todo.remove(nb)
                            comp.add(nb)
                            stack.append(nb)
                comps.append(frozenset(comp))
            comps.sort(key=lambda cs: min(c for _, c in cs))
            self._components = comps
        return self._components

    def component_shapes(self) -> list["SkewShape"]:
        return [SkewShape(c) for c in self.components()]

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def has_2x2(self) -> bool:
        cs = self.cells
        return any((r + 1, c) in cs and (r, c + 1) in cs and (r + 1, c + 1) in cs for r, c in cs)

    def is_connected_ribbon(self) -> bool:
        return bool(self.cells) and self.is_connected() and not self.has_2x2()

    def straight_partition(self) -> tuple | None:
        """The partition if this shape is a straight (non-skew) diagram."""
        rows = self.rows()
        lam = []
        for cols in rows:
            if cols[0] != 0:
                return None
            lam.append(len(cols))
        if any(a < b for a, b in zip(lam, lam[1:])):
            return None
        return tuple(lam)

    def is_strip(self) -> bool:
        for comp in self.components():
            rows = {r for r, _ in comp}
            cols = {c for _, c in comp}
            if len(rows) > 1 and len(cols) > 1:
                return False
        return True


def _validate(cells: frozenset):
    if not cells:
        return
    byrow: dict[int, list[int]] = {}
    for r, c in cells:
        byrow.setdefault(r, []).append(c)
    nrows = max(byrow) + 1
    prev = None
    for r in range(nrows):
        if r not in byrow:
            raise ShapeError(f"row {r} is empty inside the diagram")
        cols = sorted(byrow[r])
        lo, hi = cols[0], cols[-1] + 1
        if hi - lo != len(cols):
            raise ShapeError(f"row {r} is not an interval")
        if prev is not None and (lo > prev[0] or hi > prev[1]):
            raise ShapeError(f"row {r} breaks the skew-shape nesting")
        prev = (lo, hi)


def straight(lam: Sequence[int]) -> SkewShape:
    return SkewShape.from_partitions(lam)


def hook(a: int, k: int) -> SkewShape:
    """The hook ``(a, 1^k)``."""
    return straight((a,) + (1,) * k)


def strip_shape(i: int, n: int) -> SkewShape:
    """``1^i (+) (n - i)``: a column of height ``i`` southwest of a row of length ``n - i``."""
    parts = []
    if i:
        parts.append(straight((1,) * i))
    if n - i:
        parts.append(straight((n - i,)))
    return SkewShape.direct_sum(*parts)


def near_hook_shape(n: int, k: int) -> SkewShape:
    """``(n-1-k, 1^k) (+) (1)``."""
    if not 0 <= k < n - 1:
        raise ShapeError(f"near-hook needs 0 <= k < n - 1, got n={n}, k={k}")
    return SkewShape.direct_sum(hook(n - 1 - k, k), straight((1,)))


def partitions(n: int, max_part: int | None = None):
    """Partitions of ``n`` in decreasing lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def is_hook_partition(lam: Sequence[int]) -> bool:
    return len(lam) <= 1 or lam[1] <= 1


# --- shape text format ----------------------------------------------------


def _fmt_parts(lam: Sequence[int], compact: bool) -> str:
    if not compact:
        return ",".join(str(x) for x in lam)
    out = []
    i = 0
    while i < len(lam):
        j = i
        while j < len(lam) and lam[j] == lam[i]:
            j += 1
        out.append(f"{lam[i]}^{j - i}" if j - i > 1 else str(lam[i]))
        i = j
    return ",".join(out)


def format_shape(shape: SkewShape) -> str:
    """``"4,2"`` for straight shapes, ``"(1^2)+(4)"`` for sums of straight pieces, else ``"lam/mu"``."""
    lam = shape.straight_partition()
    if lam is not None:
        return _fmt_parts(lam, False)
    pieces = [c.straight_partition() for c in shape.component_shapes()]
    if all(p is not None for p in pieces):
        return "+".join(f"({_fmt_parts(p, True)})" for p in pieces)
    rows = shape.rows()
    outer = [cols[-1] + 1 for cols in rows]
    inner = [cols[0] for cols in rows]
    while inner and inner[-1] == 0:
        inner.pop()
    return _fmt_parts(outer, False) + "/" + _fmt_parts(inner, False)


def _parse_parts(text: str) -> list[int]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if "^" in tok:
            v, e = tok.split("^")
            out.extend([int(v)] * int(e))
        else:
            out.append(int(tok))
    return out


def parse_shape(text: str) -> SkewShape:
    """Parse ``"5,4,2/1,1"``, ``"(1^2)+(3)"``, ``"nh(n,k)"`` or a plain partition ``"3,2"``."""
    s = text.strip()
    m = re.fullmatch(r"nh\(\s*(\d+)\s*,\s*(\d+)\s*\)", s)
    if m:
        return near_hook_shape(int(m.group(1)), int(m.group(2)))
    try:
        if "+" in s or s.startswith("("):
            pieces = []
            for piece in s.split("+"):
                piece = piece.strip()
                if not (piece.startswith("(") and piece.endswith(")")):
                    raise ShapeError(f"bad direct-sum component {piece!r}")
                pieces.append(straight(_parse_parts(piece[1:-1])))
            return SkewShape.direct_sum(*pieces)
        if "/" in s:
            outer, inner = s.split("/")
            return SkewShape.from_partitions(_parse_parts(outer), _parse_parts(inner))
        return straight(_parse_parts(s))
    except ValueError as exc:
        raise ShapeError(f"cannot parse shape {text!r}: {exc}") from None


# --- tableaux -------------------------------------------------------------


class Tableau:
    """A standard filling: ``cell_of[i - 1]`` is the cell holding entry ``i``."""

    __slots__ = ("shape", "cell_of")

    def __init__(self, shape: SkewShape, cell_of: Sequence[Cell], check: bool = True):
        self.shape = shape
        self.cell_of = tuple(cell_of)
        if check:
            self._check()

    def _check(self):
        if set(self.cell_of) != self.shape.cells or len(self.cell_of) != self.shape.n:
            raise ShapeError("entries do not fill the shape bijectively")
        entry = self.entries()
        for (r, c), v in entry.items():
            right = entry.get((r, c + 1))
            below = entry.get((r + 1, c))
            if (right is not None and right < v) or (below is not None and below < v):
                raise ShapeError(f"filling is not standard at cell {(r, c)}")

    @classmethod
    def from_entries(cls, shape: SkewShape, entries: dict) -> "Tableau":
        cell_of = [None] * shape.n
        for cell, v in entries.items():
            if not 1 <= v <= shape.n or cell_of[v - 1] is not None:
                raise ShapeError(f"bad entry {v}")
            cell_of[v - 1] = cell
        return cls(shape, cell_of)

    @property
    def n(self) -> int:
        return len(self.cell_of)

    def entries(self) -> dict:
        return {cell: i for i, cell in enumerate(self.cell_of, 1)}

    def row_of(self, i: int) -> int:
        return self.cell_of[i - 1][0]

    def component_rows(self) -> list[list[list[int]]]:
        """Entries row by row within each component (southwest to northeast)."""
        entry = self.entries()
        out = []
        for comp in self.shape.components():
            rows: dict[int, list] = {}
            for r, c in sorted(comp):
                rows.setdefault(r, []).append(entry[(r, c)])
            out.append([rows[r] for r in sorted(rows)])
        return out

    def __eq__(self, other):
        return isinstance(other, Tableau) and self.shape == other.shape and self.cell_of == other.cell_of

    def __hash__(self):
        return hash((self.shape, self.cell_of))

    def __repr__(self):
        return f"Tableau({format_tableau(self)})"


def format_tableau(T: Tableau) -> str:
    return " + ".join(
        "[" + ",".join("[" + ",".join(str(v) for v in row) + "]" for row in comp) + "]"
        for comp in T.component_rows()
    )


def tableau_from_components(components: Sequence[Sequence[Sequence[int]]]) -> Tableau:
    """Build a tableau on a direct sum of straight shapes from row lists per component."""
    pieces = [straight([len(r) for r in comp]) for comp in components]
    shape = SkewShape.direct_sum(*pieces)
    entries = {}
    col_off = 0
    for i, comp in enumerate(components):
        row_off = sum(p.height for p in pieces[i + 1:])
        for r, row in enumerate(comp):
            for c, v in enumerate(row):
                entries[(r + row_off, c + col_off)] = v
        col_off += pieces[i].width
    return Tableau.from_entries(shape, entries)


def parse_tableau(text: str) -> Tableau:
    """Parse ``"[[1,2,5],[3],[4]] + [[6]]"``."""
    import json

    comps = [json.loads(piece) for piece in text.split("+")]
    return tableau_from_components(comps)


@lru_cache(maxsize=None)
def enumerate_syt(shape: SkewShape) -> tuple:
    """All standard Young tableaux of ``shape`` by forward backtracking."""
    cells = shape.cells
    n = len(cells)
    filled: set = set()
    cell_of: list = []
    out = []

    def addable(cell):
        r, c = cell
        up, left = (r - 1, c), (r, c - 1)
        return (up not in cells or up in filled) and (left not in cells or left in filled)

    def fill():
        if len(cell_of) == n:
            out.append(Tableau(shape, cell_of, check=False))
            return
        for cell in sorted(cells - filled):
            if addable(cell):
                filled.add(cell)
                cell_of.append(cell)
                fill()
                cell_of.pop()
                filled.remove(cell)

    fill()
    return tuple(out)


def des_set_syt(T: Tableau) -> int:
    m = 0
    for i in range(1, T.n):
        if T.row_of(i + 1) > T.row_of(i):
            m |= 1 << (i - 1)
    return m


# --- strips -----------------------------------------------------------------


def _require_strip(T: Tableau):
    if not T.shape.is_strip() or len(T.shape.components()) < 2:
        raise ShapeError("need a strip with at least two components")


def _is_vertical(comp: frozenset) -> bool:
    return len({c for _, c in comp}) == 1 and len(comp) > 1


def cdes_strip(T: Tableau) -> int:
    _require_strip(T)
    n = T.n
    m = des_set_syt(T)
    one, top = T.cell_of[0], T.cell_of[n - 1]
    same_vertical = any(one in comp and top in comp and _is_vertical(comp) for comp in T.shape.components())
    if one[0] > top[0] or same_vertical:
        m |= 1 << (n - 1)
    return m


def cdes_horizontal_strip(T: Tableau) -> int:
    """``{i : i + 1 (mod n) is in a lower row than i}``, valid for horizontal strips."""
    n = T.n
    m = 0
    for i in range(1, n + 1):
        nxt = i % n + 1
        if T.row_of(nxt) > T.row_of(i):
            m |= 1 << (i - 1)
    return m


def rotate_strip(T: Tableau, j: int) -> Tableau:
    """Add ``j`` to every entry modulo ``n`` and re-sort inside each component."""
    _require_strip(T)
    n = T.n
    entry = T.entries()
    new = {}
    for comp in T.shape.components():
        cells = sorted(comp)
        vals = sorted((entry[cell] + j - 1) % n + 1 for cell in cells)
        new.update(zip(cells, vals))
    return Tableau.from_entries(T.shape, new)


# --- near-hooks -------------------------------------------------------------


def near_hook_k(shape: SkewShape) -> int:
    """Return ``k`` if ``shape`` is ``(n-1-k, 1^k) (+) (1)``, else raise."""
    comps = shape.component_shapes()
    if len(comps) != 2 or comps[1].n != 1:
        raise ShapeError(f"{format_shape(shape)} is not a near-hook")
    lam = comps[0].straight_partition()
    if lam is None or not is_hook_partition(lam):
        raise ShapeError(f"{format_shape(shape)} is not a near-hook")
    return len(lam) - 1


def delta(T: Tableau) -> int:
    """Entry of the northeast single cell of a near-hook tableau."""
    near_hook_k(T.shape)
    ne = T.shape.components()[1]
    return T.entries()[next(iter(ne))]


def cdes_near_hook(T: Tableau) -> int:
    k = near_hook_k(T.shape)
    m = des_set_syt(T)
    if popcount(m) == k:
        m |= 1 << (T.n - 1)
    return m


def near_hook_column(T: Tableau) -> list[int]:
    """Entries below the corner in the first column of the hook part."""
    hook_cells = T.shape.components()[0]
    c0 = min(c for _, c in hook_cells)
    r0 = min(r for r, _ in hook_cells)
    entry = T.entries()
    return sorted(entry[(r, c)] for r, c in hook_cells if c == c0 and r > r0)


def build_near_hook(n: int, k: int, column: Iterable[int], ne_entry: int) -> Tableau:
    """Near-hook tableau with the given entries below the corner and in the NE cell.

    The corner receives the smallest remaining entry and the rest of the
    first row the others in increasing order; the result must be standard.
    """
    col = sorted(column)
    if len(col) != k:
        raise ShapeError(f"first column needs {k} entries below the corner, got {col}")
    rest = sorted(set(range(1, n + 1)) - set(col) - {ne_entry})
    if len(rest) != n - 1 - k:
        raise ShapeError("column and NE entry overlap")
    shape = near_hook_shape(n, k)
    hook_cells = shape.components()[0]
    r0 = min(r for r, _ in hook_cells)
    c0 = min(c for _, c in hook_cells)
    entries = {(r0, c0 + i): v for i, v in enumerate(rest)}
    entries.update({(r0 + 1 + i, c0): v for i, v in enumerate(col)})
    entries[next(iter(shape.components()[1]))] = ne_entry
    return Tableau.from_entries(shape, entries)


def rotate_near_hook(T: Tableau, j: int) -> Tableau:
    """The rotation ``j + T`` on near-hook tableaux, with ``delta(j+T) = j + delta(T)``."""
    k = near_hook_k(T.shape)
    n = T.n
    j %= n
    if j == 0:
        return T
    D = des_set_syt(T)
    cd = cdes_near_hook(T)
    if D >> (n - j - 1) & 1:
        base = cd & ~(1 << (n - j - 1))
    else:
        base = cd & ~(1 << (delta(T) - 1))
    column = elements(shift_mask(base, j + 1, n))
    return build_near_hook(n, k, column, (delta(T) + j - 1) % n + 1)


def near_hook_from_rows(row: Sequence[int], column: Sequence[int], ne_entry: int) -> Tableau:
    """Convenience constructor: first row (with corner), first column (with corner), NE entry."""
    if row[0] != column[0]:
        raise ShapeError("first row and first column must share the corner entry")
    n = len(row) + len(column)
    return build_near_hook(n, len(column) - 1, column[1:], ne_entry)


# --- vectorized statistics for strips ------------------------------------------------


def strip_components(shape: SkewShape) -> list[tuple[int, bool]]:
    """``(size, is_column)`` per component, southwest to northeast.  Single cells count as rows."""
    if not shape.is_strip():
        raise ShapeError(f"{format_shape(shape)} is not a strip")
    return [(len(c), len({col for _, col in c}) == 1 and len(c) > 1) for c in shape.components()]


def all_strips(n: int):
    """Every strip of size ``n`` with at least two components."""
    from .perms import compositions

    for gamma in compositions(n):
        if len(gamma) < 2:
            continue
        big = [i for i, g in enumerate(gamma) if g > 1]
        for bits in range(1 << len(big)):
            cols = {big[b] for b in range(len(big)) if bits >> b & 1}
            pieces = [straight((1,) * g) if i in cols else straight((g,)) for i, g in enumerate(gamma)]
            yield SkewShape.direct_sum(*pieces)


@lru_cache(maxsize=None)
def _component_words(sizes: tuple):
    """All words with letter ``c`` used ``sizes[c]`` times, as a uint8 matrix."""
    import numpy as np

    from .classes import _sn_array, _sn_inverse_des
    from .perms import composition_to_subset

    n = sum(sizes)
    J = composition_to_subset(sizes)
    # members of S(sizes) encode each word exactly once
    keep = (_sn_inverse_des(n) & np.uint64(~J & ((1 << n) - 1))) == 0
    owner = np.repeat(np.arange(len(sizes), dtype=np.uint8), sizes)
    W = owner[_sn_array(n)[keep].astype(np.intp) - 1]
    W.setflags(write=False)
    return W


def strip_statistics(shape: SkewShape):
    """``(des, cdes)`` mask arrays over ``SYT(shape)`` for a strip with at least two components.

    Entry ``i`` goes to component ``w_i`` of a component word ``w``; this is a
    bijection onto the tableaux and gives the same masks as ``des_set_syt`` and
    ``cdes_strip`` without building ``Tableau`` objects.
    """
    import numpy as np

    comps = strip_components(shape)
    if len(comps) < 2:
        raise ShapeError("need a strip with at least two components")
    sizes = tuple(s for s, _ in comps)
    n = sum(sizes)
    W = _component_words(sizes).astype(np.intp)
    heights = [s if col else 1 for s, col in comps]
    row_off = np.array([sum(heights[c + 1:]) for c in range(len(comps))])
    vertical = np.array([col for _, col in comps])
    # m-th occurrence of each letter along the word
    onehot = W[:, :, None] == np.arange(len(comps))[None, None, :]
    occ = np.cumsum(onehot, axis=1)[np.arange(W.shape[0])[:, None], np.arange(n)[None, :], W] - 1
    rows = row_off[W] + np.where(vertical[W], occ, 0)
    weights = np.left_shift(np.uint64(1), np.arange(max(n - 1, 0), dtype=np.uint64))
    des = ((rows[:, 1:] > rows[:, :-1]).astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)
    wrap = (rows[:, 0] > rows[:, -1]) | ((W[:, 0] == W[:, -1]) & vertical[W[:, 0]])
    cdes = des | (wrap.astype(np.uint64) << np.uint64(n - 1))
    return des, cdes
