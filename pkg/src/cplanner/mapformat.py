"""Plain-text grid map format.

    # comments run to end of line
    grid <width> <height> p=<p_success>
    <height> rows of <width> cell codes
    mask <cell-index> <directions>

Cell codes: S start, D destination, B building, X dead-end, U urban road,
H highway, @ start and destination in one cell. Direction subsets are written
as letters from NESW ("-" for an explicitly empty mask). Cells without a mask
line default to every in-bounds move that does not enter a building; the
destination is always absorbing.
"""
from __future__ import annotations

import re
from typing import List, Tuple

from .errors import MapFormatError
from .mdp import CellKind, GridMap, MotionNoise, MoveAction

_HEADER = re.compile(r"^grid$")
_NUMBER = re.compile(r"^\d+$")
_P_FIELD = re.compile(r"^p=(\d+(?:\.\d+)?(?:[eE][-+]?\d+)?)$")

_CODES = {kind.value: kind for kind in CellKind}
_COMBINED = "@"


def _tokenize(text: str) -> List[List[Tuple[str, int, int]]]:
    """Split into lines of (token, line, column), dropping comments/blanks."""
    lines = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = [
            (match.group(), line_no, match.start() + 1)
            for match in re.finditer(r"\S+", body)
        ]
        if tokens:
            lines.append(tokens)
    return lines


def parse_map(source) -> GridMap:
    """Parse a map from a string or a readable text stream."""
    text = source.read() if hasattr(source, "read") else source
    lines = _tokenize(text)
    if not lines:
        raise MapFormatError("empty map", 1, 1)

    header = lines[0]
    word, line_no, col = header[0]
    if not _HEADER.match(word):
        raise MapFormatError(f"expected 'grid' header, found {word!r}", line_no, col)
    if len(header) != 4:
        raise MapFormatError("header must be 'grid <width> <height> p=<value>'", line_no, col)
    width = _parse_count(header[1], "width")
    height = _parse_count(header[2], "height")
    p_success = _parse_p(header[3])

    if len(lines) < 1 + height:
        raise MapFormatError(
            f"expected {height} row lines, found {len(lines) - 1}",
            lines[-1][0][1],
            lines[-1][0][2],
        )

    cells: List[CellKind] = []
    start = None
    destination = None
    for row in range(height):
        tokens = lines[1 + row]
        if len(tokens) != width:
            word, line_no, col = tokens[0]
            raise MapFormatError(
                f"row {row} has {len(tokens)} cells, expected {width}", line_no, col
            )
        for token, line_no, col in tokens:
            index = len(cells)
            if token == _COMBINED:
                kind = CellKind.DESTINATION
                if start is not None:
                    raise MapFormatError("more than one start cell", line_no, col)
                if destination is not None:
                    raise MapFormatError("more than one destination cell", line_no, col)
                start = destination = index
            elif token in _CODES:
                kind = _CODES[token]
                if kind is CellKind.START:
                    if start is not None:
                        raise MapFormatError("more than one start cell", line_no, col)
                    start = index
                elif kind is CellKind.DESTINATION:
                    if destination is not None:
                        raise MapFormatError("more than one destination cell", line_no, col)
                    destination = index
            else:
                raise MapFormatError(f"unknown cell code {token!r}", line_no, col)
            cells.append(kind)

    if start is None:
        raise MapFormatError("map has no start cell", 1, 1)
    if destination is None:
        raise MapFormatError("map has no destination cell", 1, 1)

    overrides = {}
    for tokens in lines[1 + height:]:
        word, line_no, col = tokens[0]
        if word != "mask":
            raise MapFormatError(f"unexpected directive {word!r}", line_no, col)
        if len(tokens) != 3:
            raise MapFormatError("mask line must be 'mask <cell> <directions>'", line_no, col)
        index = _parse_count(tokens[1], "cell index")
        if index >= width * height:
            raise MapFormatError(
                f"cell index {index} outside a {width}x{height} grid",
                tokens[1][1],
                tokens[1][2],
            )
        if index in overrides:
            raise MapFormatError(f"duplicate mask for cell {index}", line_no, col)
        overrides[index] = _parse_directions(tokens[2])
        _check_mask_semantics(index, overrides[index], cells, width, height,
                              destination, tokens[2][1], tokens[2][2])

    def default_mask(index: int) -> frozenset:
        if cells[index] in (CellKind.BUILDING, CellKind.DESTINATION):
            return frozenset()
        row, column = divmod(index, width)
        allowed = []
        for action in MoveAction:
            n_row, n_col = row + action.row_step, column + action.col_step
            if 0 <= n_row < height and 0 <= n_col < width:
                if cells[n_row * width + n_col] is not CellKind.BUILDING:
                    allowed.append(action)
        return frozenset(allowed)

    masks = tuple(
        overrides.get(index, default_mask(index)) for index in range(len(cells))
    )
    return GridMap(
        width=width,
        height=height,
        cells=tuple(cells),
        masks=masks,
        noise=MotionNoise(p_success),
        start=start,
        destination=destination,
    )


def _parse_count(token_info, what: str) -> int:
    token, line_no, col = token_info
    if not _NUMBER.match(token):
        raise MapFormatError(f"{what} must be a non-negative integer, found {token!r}",
                             line_no, col)
    return int(token)


def _parse_p(token_info) -> float:
    token, line_no, col = token_info
    match = _P_FIELD.match(token)
    if not match:
        raise MapFormatError(f"expected p=<value>, found {token!r}", line_no, col)
    value = float(match.group(1))
    if not (0.0 < value <= 1.0):
        raise MapFormatError(f"p must be in (0, 1], got {value}", line_no, col)
    return value


def _parse_directions(token_info) -> frozenset:
    token, line_no, col = token_info
    if token == "-":
        return frozenset()
    seen = set()
    for letter in token:
        try:
            action = MoveAction.from_letter(letter)
        except ValueError:
            raise MapFormatError(f"unknown direction letter {letter!r}", line_no, col)
        if action in seen:
            raise MapFormatError(f"duplicate direction {letter!r}", line_no, col)
        seen.add(action)
    return frozenset(seen)


def _check_mask_semantics(index, mask, cells, width, height, destination,
                          line_no, col):
    kind = cells[index]
    if kind is CellKind.BUILDING:
        raise MapFormatError(f"cell {index} is a building and cannot be masked",
                             line_no, col)
    if index == destination and mask:
        raise MapFormatError("the destination mask must be empty", line_no, col)
    row, column = divmod(index, width)
    for action in mask:
        n_row = row + action.row_step
        n_col = column + action.col_step
        if not (0 <= n_row < height and 0 <= n_col < width):
            raise MapFormatError(
                f"cell {index}: move {action.label} leaves the grid", line_no, col
            )
        if cells[n_row * width + n_col] is CellKind.BUILDING:
            raise MapFormatError(
                f"cell {index}: move {action.label} enters a building", line_no, col
            )


def serialize_map(grid: GridMap) -> str:
    """Canonical text for a grid map; parse(serialize(g)) equals g."""
    lines = [f"grid {grid.width} {grid.height} p={_format_p(grid.noise.p_success)}"]
    for row in range(grid.height):
        codes = []
        for col in range(grid.width):
            index = grid.index(row, col)
            if index == grid.start == grid.destination:
                codes.append(_COMBINED)
            else:
                codes.append(grid.cells[index].value)
        lines.append(" ".join(codes))
    for index in range(len(grid.cells)):
        mask = grid.masks[index]
        if mask == grid.default_mask(index):
            continue
        letters = "".join(a.letter for a in MoveAction if a in mask)
        lines.append(f"mask {index} {letters or '-'}")
    return "\n".join(lines) + "\n"


def _format_p(value: float) -> str:
    text = f"{value:.6f}".rstrip("0").rstrip(".")
    return text if text else "0"
