"""Text file formats: packets, base-field matrices, scheme configs.

Packet files hold one extension-field element per line as m base-q
digits, lowest degree first, contiguous for q <= 10 and space-separated
above.  Matrix files start with a "rows cols" header line followed by
one digit line per row.  Blank lines and `#` comments are ignored
everywhere.  Desk-scale data stays human-inspectable this way.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import ParameterError
from .gf import ExtField
from .scheme import SchemeParams


def strip_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _parse_digit_line(line: str, q: int, expected: int) -> list[int]:
    if q <= 10 and " " not in line and "\t" not in line:
        digits = [int(c) for c in line]
    else:
        digits = [int(tok) for tok in line.split()]
    if len(digits) != expected:
        raise ParameterError(
            f"expected {expected} digits on line {line!r}, got {len(digits)}"
        )
    for d in digits:
        if not 0 <= d < q:
            raise ParameterError(f"digit {d} out of range for GF({q})")
    return digits


def format_digits(digits, q: int) -> str:
    if q <= 10:
        return "".join(str(int(d)) for d in digits)
    return " ".join(str(int(d)) for d in digits)


# -- packet files ------------------------------------------------------

def parse_packets(text: str, F: ExtField) -> list[int]:
    return [F.parse_element(line) for line in strip_lines(text)]


def format_packets(xs, F: ExtField) -> str:
    return "".join(F.format_element(int(x)) + "\n" for x in xs)


def read_packets(path, F: ExtField) -> list[int]:
    with open(path) as fh:
        return parse_packets(fh.read(), F)


def write_packets(path, xs, F: ExtField) -> None:
    with open(path, "w") as fh:
        fh.write(format_packets(xs, F))


# -- matrix files ------------------------------------------------------

def parse_matrix_block(lines: list[str], q: int):
    """Consume one "rows cols" header plus rows from the line list.

    Returns the matrix; the consumed lines are removed from `lines`.
    """
    if not lines:
        raise ParameterError("expected a matrix header line, found end of file")
    head = lines.pop(0).split()
    if len(head) != 2 or not all(tok.isdigit() for tok in head):
        raise ParameterError(f"bad matrix header {' '.join(head)!r}")
    rows, cols = int(head[0]), int(head[1])
    if rows < 0 or cols < 0:
        raise ParameterError("matrix dimensions must be nonnegative")
    if len(lines) < rows:
        raise ParameterError(f"matrix body truncated: {len(lines)} of {rows} rows")
    body = [
        _parse_digit_line(lines.pop(0), q, cols) for _ in range(rows)
    ]
    return np.array(body, dtype=np.int64).reshape(rows, cols)


def format_matrix(M, q: int) -> str:
    M = np.asarray(M)
    out = [f"{M.shape[0]} {M.shape[1]}"]
    out.extend(format_digits(row, q) for row in M)
    return "\n".join(out) + "\n"


def parse_matrix(text: str, q: int):
    lines = strip_lines(text)
    M = parse_matrix_block(lines, q)
    if lines:
        raise ParameterError(f"{len(lines)} trailing lines after the matrix body")
    return M


def read_matrix(path, q: int):
    with open(path) as fh:
        return parse_matrix(fh.read(), q)


def write_matrix(path, M, q: int) -> None:
    with open(path, "w") as fh:
        fh.write(format_matrix(M, q))


def read_matrix_or_packets(path, F: ExtField):
    """Matrix file if the first line is a header, else a packet file.

    Packet files expand to an n x m base-field matrix, so either form
    describes an observation.
    """
    with open(path) as fh:
        lines = strip_lines(fh.read())
    if lines and len(lines[0].split()) == 2 and all(
        tok.isdigit() for tok in lines[0].split()
    ):
        return parse_matrix_block(lines, F.q)
    from . import linalg as la

    return la.expand(F, [F.parse_element(line) for line in lines])


# -- scheme parameter files (JSON) -------------------------------------

def parse_config(text: str):
    """Returns (SchemeParams, seed or None)."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParameterError(f"config is not valid JSON: {e}") from None
    if not isinstance(raw, dict):
        raise ParameterError("config must be a JSON object")
    required = ["q", "m", "n", "t", "mu", "k"]
    missing = [f for f in required if f not in raw]
    if missing:
        raise ParameterError(f"config missing fields: {', '.join(missing)}")
    extra = set(raw) - set(required) - {"modulus", "g", "seed"}
    if extra:
        raise ParameterError(f"config has unknown fields: {', '.join(sorted(extra))}")
    params = SchemeParams(
        q=int(raw["q"]),
        m=int(raw["m"]),
        n=int(raw["n"]),
        t=int(raw["t"]),
        mu=int(raw["mu"]),
        k=int(raw["k"]),
        modulus=tuple(int(c) for c in raw["modulus"]) if "modulus" in raw else None,
        g=tuple(int(x) for x in raw["g"]) if "g" in raw else None,
    )
    seed = int(raw["seed"]) if "seed" in raw else None
    return params, seed


def read_config(path):
    with open(path) as fh:
        return parse_config(fh.read())
