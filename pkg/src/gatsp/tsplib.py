"""TSPLIB instance files to distance matrices.

Supports exactly the two weight conventions the solver needs: explicit
full matrices (the asymmetric benchmark instances) and 2-D Euclidean
coordinates with the standard nearest-integer rounding. Everything else
is rejected with a diagnostic rather than silently misread.

City indices are 1-based in the files and 0-based everywhere inside the
package; the conversion happens here and in report formatting only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

_HEADER_ONLY_KEYS = {"NAME", "TYPE", "COMMENT", "DIMENSION", "EDGE_WEIGHT_TYPE",
                     "EDGE_WEIGHT_FORMAT", "NODE_COORD_TYPE", "DISPLAY_DATA_TYPE"}
_SECTION_KEYS = {"EDGE_WEIGHT_SECTION", "NODE_COORD_SECTION"}
_UNSUPPORTED_SECTIONS = {"DISPLAY_DATA_SECTION", "FIXED_EDGES_SECTION", "DEPOT_SECTION",
                         "DEMAND_SECTION", "EDGE_DATA_SECTION", "TOUR_SECTION"}


class TsplibParseError(ValueError):
    """Malformed or inconsistent instance text; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnsupportedFormatError(TsplibParseError):
    """Recognized TSPLIB feature that this parser deliberately rejects."""


@dataclass
class Instance:
    """A parsed instance: the cost oracle for every tour evaluation."""

    name: str
    n: int
    symmetric: bool
    weights: np.ndarray  # (n, n), nonnegative, zero diagonal

    @property
    def kind(self) -> str:
        return "symmetric" if self.symmetric else "asymmetric"


def build_euc2d(coords) -> np.ndarray:
    """Distance matrix of 2-D points, TSPLIB nearest-integer rule.

    w(i, j) = floor(euclidean(i, j) + 0.5), integer valued, symmetric,
    zero diagonal. Raises ValueError on non-finite coordinates or fewer
    than 3 points.
    """
    pts = np.asarray(coords, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"expected n x 2 coordinates, got shape {pts.shape}")
    if pts.shape[0] < 3:
        raise ValueError(f"need at least 3 points, got {pts.shape[0]}")
    if not np.isfinite(pts).all():
        raise ValueError("coordinates must be finite")
    dx = pts[:, 0][:, None] - pts[:, 0][None, :]
    dy = pts[:, 1][:, None] - pts[:, 1][None, :]
    w = np.floor(np.hypot(dx, dy) + 0.5).astype(np.int64)
    np.fill_diagonal(w, 0)
    return w


def _header_value(line: str) -> tuple[str, str]:
    key, _, value = line.partition(":")
    return key.strip().upper(), value.strip()


def _tokens_to_matrix(tokens: list[str], n: int, declared_line: int | None) -> np.ndarray:
    if len(tokens) != n * n:
        raise TsplibParseError(
            f"edge weight section holds {len(tokens)} values, expected {n}*{n} = {n * n}",
            declared_line,
        )
    try:
        values = [int(t) for t in tokens]
        w = np.array(values, dtype=np.int64)
    except ValueError:
        try:
            w = np.array([float(t) for t in tokens], dtype=np.float64)
        except ValueError as exc:
            raise TsplibParseError(f"non-numeric edge weight: {exc}", declared_line) from None
    return w.reshape(n, n)


def parse_instance(text: str) -> Instance:
    """Parse TSPLIB text into an :class:`Instance`.

    Accepted: TYPE TSP or ATSP with EDGE_WEIGHT_TYPE EXPLICIT (format
    FULL_MATRIX) or EUC_2D. Raises :class:`TsplibParseError` naming the
    offending line, or :class:`UnsupportedFormatError` for recognized but
    unsupported TSPLIB features.
    """
    header: dict[str, str] = {}
    weight_tokens: list[str] = []
    coord_tokens: list[str] = []
    section: str | None = None
    section_line: int | None = None

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        bare = line.rstrip(":").strip().upper()
        if bare == "EOF":
            break
        if bare in _SECTION_KEYS:
            section = bare
            section_line = lineno
            continue
        if bare in _UNSUPPORTED_SECTIONS:
            raise UnsupportedFormatError(f"section {bare} is not supported", lineno)
        if ":" in line:
            key, value = _header_value(line)
            if key in _HEADER_ONLY_KEYS:
                if section is not None:
                    raise TsplibParseError(f"header keyword {key} after a data section", lineno)
                header[key] = value
                continue
            raise TsplibParseError(f"unknown keyword {key!r}", lineno)
        if section == "EDGE_WEIGHT_SECTION":
            weight_tokens.extend(line.split())
        elif section == "NODE_COORD_SECTION":
            coord_tokens.extend(line.split())
        else:
            raise TsplibParseError(f"unrecognized header line {line!r}", lineno)

    kind = header.get("TYPE", "").upper()
    if not kind:
        raise TsplibParseError("missing TYPE keyword")
    if kind not in ("TSP", "ATSP"):
        raise UnsupportedFormatError(f"TYPE {kind} is not supported (expected TSP or ATSP)")
    if "DIMENSION" not in header:
        raise TsplibParseError("missing DIMENSION keyword")
    try:
        n = int(header["DIMENSION"])
    except ValueError:
        raise TsplibParseError(f"DIMENSION is not an integer: {header['DIMENSION']!r}") from None
    if n < 3:
        raise TsplibParseError(f"DIMENSION must be at least 3, got {n}")

    ew_type = header.get("EDGE_WEIGHT_TYPE", "").upper()
    if ew_type == "EXPLICIT":
        ew_format = header.get("EDGE_WEIGHT_FORMAT", "").upper()
        if ew_format != "FULL_MATRIX":
            raise UnsupportedFormatError(
                f"EDGE_WEIGHT_FORMAT {ew_format or '(missing)'} is not supported (only FULL_MATRIX)"
            )
        if section != "EDGE_WEIGHT_SECTION":
            raise TsplibParseError("EXPLICIT instance has no EDGE_WEIGHT_SECTION")
        weights = _tokens_to_matrix(weight_tokens, n, section_line)
        if (weights < 0).any():
            i, j = np.argwhere(weights < 0)[0]
            raise TsplibParseError(f"negative weight at row {i + 1}, column {j + 1}")
        np.fill_diagonal(weights, 0)
        symmetric = kind == "TSP"
        if symmetric and not np.array_equal(weights, weights.T):
            raise TsplibParseError("TYPE is TSP but the weight matrix is asymmetric")
    elif ew_type == "EUC_2D":
        if section != "NODE_COORD_SECTION":
            raise TsplibParseError("EUC_2D instance has no NODE_COORD_SECTION")
        if len(coord_tokens) != 3 * n:
            raise TsplibParseError(
                f"coordinate section holds {len(coord_tokens)} tokens, expected 3*{n} for "
                f"'index x y' lines",
                section_line,
            )
        pts = np.full((n, 2), np.nan)
        seen = np.zeros(n, dtype=bool)
        for k in range(n):
            idx_tok, x_tok, y_tok = coord_tokens[3 * k : 3 * k + 3]
            try:
                idx = int(idx_tok)
                x, y = float(x_tok), float(y_tok)
            except ValueError:
                raise TsplibParseError(
                    f"bad coordinate entry {idx_tok!r} {x_tok!r} {y_tok!r}", section_line
                ) from None
            if not 1 <= idx <= n:
                raise TsplibParseError(f"coordinate index {idx} out of 1..{n}", section_line)
            if seen[idx - 1]:
                raise TsplibParseError(f"coordinate index {idx} appears twice", section_line)
            if not (math.isfinite(x) and math.isfinite(y)):
                raise TsplibParseError(f"non-finite coordinate for city {idx}", section_line)
            seen[idx - 1] = True
            pts[idx - 1] = (x, y)
        weights = build_euc2d(pts)
        symmetric = kind == "TSP"
    elif not ew_type:
        raise TsplibParseError("missing EDGE_WEIGHT_TYPE keyword")
    else:
        raise UnsupportedFormatError(f"EDGE_WEIGHT_TYPE {ew_type} is not supported")

    return Instance(name=header.get("NAME", ""), n=n, symmetric=symmetric, weights=weights)


def load_instance(path: str | Path) -> Instance:
    """Read and parse an instance file."""
    return parse_instance(Path(path).read_text())
