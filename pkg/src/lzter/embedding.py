"""Delay-embedding matrices and their extended-alphabet encoding.

A joint matrix for target series x and source series y with embedding
dimension m and lag tau has N = T - m*tau rows

    (y[t-m*tau], ..., y[t-tau], x[t-m*tau], ..., x[t-tau], x[t])

for t = m*tau .. T-1: the source past, the target past, and the target
present, each block ordered oldest to newest.  Encoding a row as
z = sum_i a^i * row[i] maps every distinct row to a distinct symbol of the
extended alphabet of size a^d, so joint complexity reduces to scalar LZ76
parsing of z.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lz import SymbolSequence

__all__ = [
    "EmbeddingMatrix",
    "build_joint_matrix",
    "target_submatrix",
    "encode_extended_alphabet",
]

SOURCE_PAST = "source-past"
TARGET_PAST = "target-past"
TARGET_PRESENT = "target-present"


@dataclass(frozen=True)
class EmbeddingMatrix:
    """N x d matrix of symbols with a role label per column."""

    rows: np.ndarray
    alphabet_size: int
    col_roles: tuple[str, ...]

    def __post_init__(self):
        rows = np.ascontiguousarray(self.rows, dtype=np.int64)
        if rows.ndim != 2:
            raise ValueError("rows must be two-dimensional")
        if rows.shape[1] != len(self.col_roles):
            raise ValueError("one role per column required")
        object.__setattr__(self, "rows", rows)

    @property
    def n_rows(self) -> int:
        return int(self.rows.shape[0])

    @property
    def n_cols(self) -> int:
        return int(self.rows.shape[1])


def build_joint_matrix(
    x: SymbolSequence, y: SymbolSequence, m: int, tau: int
) -> EmbeddingMatrix:
    """Embed target x and source y into the joint matrix described above.

    Parameters
    ----------
    x : SymbolSequence
        Target series (the one whose next symbol is being explained).
    y : SymbolSequence
        Candidate source series; must have the same length and alphabet.
    m : int
        Embedding dimension (number of past samples per block), >= 1.
    tau : int
        Embedding lag in samples, >= 1.
    """
    if m < 1 or tau < 1:
        raise ValueError("m and tau must be >= 1")
    if len(x) != len(y):
        raise ValueError("series must have equal length")
    if x.alphabet_size != y.alphabet_size:
        raise ValueError("series must share one alphabet")
    T = len(x)
    n = T - m * tau
    if n < 1:
        raise ValueError("series too short for embedding")
    cols = [y.symbols[j * tau : j * tau + n] for j in range(m)]
    cols += [x.symbols[j * tau : j * tau + n] for j in range(m)]
    cols.append(x.symbols[m * tau : m * tau + n])
    roles = (SOURCE_PAST,) * m + (TARGET_PAST,) * m + (TARGET_PRESENT,)
    return EmbeddingMatrix(np.column_stack(cols), x.alphabet_size, roles)


def target_submatrix(V: EmbeddingMatrix) -> EmbeddingMatrix:
    """The last m+1 columns of a joint matrix: target past and present."""
    d = V.n_cols
    if d < 3 or d % 2 == 0:
        raise ValueError("matrix is not a joint embedding")
    m = (d - 1) // 2
    expected = (SOURCE_PAST,) * m + (TARGET_PAST,) * m + (TARGET_PRESENT,)
    if V.col_roles != expected:
        raise ValueError("matrix is not a joint embedding")
    return EmbeddingMatrix(
        V.rows[:, m:], V.alphabet_size, V.col_roles[m:]
    )


def encode_extended_alphabet(V: EmbeddingMatrix) -> SymbolSequence:
    """Encode each row as one symbol of the extended alphabet.

    Row entries are weighted by increasing powers of the base alphabet size,
    first column least significant.  The output alphabet size is a**d, which
    must stay below 2**63 so symbols fit a signed 64-bit integer.
    """
    a = V.alphabet_size
    d = V.n_cols
    extended = a**d
    if extended >= 2**63:
        raise ValueError("alphabet overflow")
    weights = a ** np.arange(d, dtype=np.int64)
    z = V.rows @ weights
    return SymbolSequence(z, extended)
