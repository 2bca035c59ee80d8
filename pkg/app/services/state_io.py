# app/services/state_io.py
"""
Density-matrix text files.

    # optional comments
    dims: 2 2
    0 0 0.5 0.0
    0 3 0.5 0.0
    ...

One `i j re im` line per matrix element (0-based), every element exactly once.
Floats are written with repr so a written file re-reads bit-exactly.
"""
import logging
import math
from pathlib import Path
from typing import List, Tuple

import numpy as np
from pydantic import ValidationError

from app.core.errors import InvalidStateError, OutputError, StateFileError
from app.models.quantum import ALLOWED_DIMENSIONS, DensityMatrix

logger = logging.getLogger(__name__)


def _content_lines(text: str) -> List[Tuple[int, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            lines.append((number, content))
    return lines


def _parse_dims(number: int, content: str) -> Tuple[int, ...]:
    key, sep, rest = content.partition(":")
    if not sep or key.strip().lower() != "dims":
        raise StateFileError("first entry must be 'dims: d1 d2 ...'", line=number, field="dims")
    try:
        dims = tuple(int(token) for token in rest.split())
    except ValueError:
        raise StateFileError(f"subsystem dimensions must be integers, got '{rest.strip()}'", line=number, field="dims")
    if not dims or any(d < 2 for d in dims):
        raise StateFileError(f"every subsystem dimension must be >= 2, got {dims}", line=number, field="dims")
    if math.prod(dims) not in ALLOWED_DIMENSIONS:
        raise StateFileError(
            f"total dimension {math.prod(dims)} not in {ALLOWED_DIMENSIONS}", line=number, field="dims"
        )
    return dims


def parse_operator(text: str) -> Tuple[np.ndarray, Tuple[int, ...]]:
    """Parses the file format into a raw matrix without checking it is a state."""
    lines = _content_lines(text)
    if not lines:
        raise StateFileError("file is empty", line=1, field="dims")
    dims = _parse_dims(*lines[0])
    dim = math.prod(dims)
    op = np.zeros((dim, dim), dtype=np.complex128)
    seen = np.zeros((dim, dim), dtype=bool)

    for number, content in lines[1:]:
        tokens = content.split()
        if len(tokens) != 4:
            raise StateFileError(f"expected 'i j re im', got {len(tokens)} field(s)", line=number)
        indices = []
        for name, token in zip(("i", "j"), tokens[:2]):
            try:
                index = int(token)
            except ValueError:
                raise StateFileError(f"'{token}' is not an integer index", line=number, field=name)
            if not 0 <= index < dim:
                raise StateFileError(f"index {index} out of range 0..{dim - 1}", line=number, field=name)
            indices.append(index)
        i, j = indices
        parts = []
        for name, token in zip(("re", "im"), tokens[2:]):
            try:
                value = float(token)
            except ValueError:
                raise StateFileError(f"'{token}' is not a number", line=number, field=name)
            if not math.isfinite(value):
                raise StateFileError(f"'{token}' is not finite", line=number, field=name)
            parts.append(value)
        if seen[i, j]:
            raise StateFileError(f"element ({i}, {j}) given twice", line=number, field="i")
        seen[i, j] = True
        op[i, j] = complex(parts[0], parts[1])

    missing = int(dim * dim - seen.sum())
    if missing:
        i, j = map(int, np.argwhere(~seen)[0])
        raise StateFileError(
            f"{missing} matrix element(s) missing, first is ({i}, {j})", line=lines[-1][0] + 1
        )
    return op, dims


def parse_state(text: str) -> DensityMatrix:
    op, dims = parse_operator(text)
    try:
        return DensityMatrix(op=op, subsystem_dims=dims)
    except ValidationError as exc:
        reason = "; ".join(error["msg"] for error in exc.errors())
        raise InvalidStateError(f"not a density matrix: {reason}") from exc


def format_operator(op: np.ndarray, subsystem_dims: Tuple[int, ...], comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {row}" for row in comment.splitlines())
    lines.append("dims: " + " ".join(str(d) for d in subsystem_dims))
    for (i, j), z in np.ndenumerate(np.asarray(op)):
        lines.append(f"{i} {j} {float(z.real)!r} {float(z.imag)!r}")
    return "\n".join(lines) + "\n"


def format_state(rho: DensityMatrix, comment: str | None = None) -> str:
    return format_operator(rho.op, rho.subsystem_dims, comment)


def read_state_file(path: str | Path) -> DensityMatrix:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise OutputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except UnicodeDecodeError as exc:
        raise StateFileError(f"{path} is not UTF-8 text") from exc
    logger.debug(f"Read state file {path}")
    return parse_state(text)


def write_text(path: str | Path, text: str) -> None:
    path = Path(path)
    try:
        path.write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror or exc}") from exc
    logger.info(f"Wrote {path}")


def write_state_file(rho: DensityMatrix, path: str | Path, comment: str | None = None) -> None:
    write_text(path, format_state(rho, comment))
