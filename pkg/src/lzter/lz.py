"""Lempel-Ziv (LZ76) production parsing and the derived entropy-rate estimator.

The parser scans a symbol sequence left to right and cuts a new word whenever
the fragment grown so far has never occurred as a contiguous substring of the
text strictly before the fragment's current end position.  The search window
therefore grows with the fragment and may overlap it.  An unfinished trailing
fragment counts as one word.

For a length-T sequence over an alphabet of size a, the word count C gives the
entropy-rate estimate

    h = C * (ln a + ln C) / T    [nats per symbol]

a plug-in that approaches the true entropy rate of a stationary ergodic source
as T grows; no finite-size correction is applied.

The parser runs in O(T): a suffix automaton of the scanned prefix is kept one
symbol behind the scan position, so each novelty query is a single transition
lookup against exactly the allowed search window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

__all__ = [
    "SymbolSequence",
    "ParseResult",
    "lz76_parse",
    "lz76_word_count",
    "entropy_rate_lz",
]

# splitmix64 finalizer constants for the transition hash
_M1 = np.uint64(0x9E3779B97F4A7C15)
_M2 = np.uint64(0xC2B2AE3D27D4EB4F)
_M3 = np.uint64(0xBF58476D1CE4E5B9)
_M4 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)


@dataclass(frozen=True)
class SymbolSequence:
    """A finite sequence over the integer alphabet {0, ..., alphabet_size-1}.

    Parameters
    ----------
    symbols : array_like
        One-dimensional sequence of non-negative integers.
    alphabet_size : int
        Number of admissible symbols.  May exceed the largest symbol
        actually present.
    """

    symbols: np.ndarray
    alphabet_size: int

    def __post_init__(self):
        arr = np.asarray(self.symbols)
        if arr.ndim != 1:
            raise ValueError("symbols must be one-dimensional")
        if arr.size == 0:
            raise ValueError("empty input")
        if arr.dtype.kind == "f":
            if not np.all(np.isfinite(arr)) or np.any(arr != np.floor(arr)):
                raise ValueError("symbols must be integers")
        elif arr.dtype.kind not in "iu":
            raise ValueError("symbols must be integers")
        arr = np.ascontiguousarray(arr, dtype=np.int64)
        if self.alphabet_size < 1:
            raise ValueError("alphabet size must be positive")
        if int(arr.min()) < 0 or int(arr.max()) >= self.alphabet_size:
            raise ValueError("symbol out of alphabet")
        object.__setattr__(self, "symbols", arr)

    def __len__(self) -> int:
        return int(self.symbols.size)


@dataclass(frozen=True)
class ParseResult:
    """Outcome of one LZ76 parse.

    word_boundaries holds the 1-based inclusive end index of every word, so
    the last boundary always equals the sequence length and word_count equals
    the number of boundaries.
    """

    word_count: int
    word_boundaries: np.ndarray


@njit(cache=True, nogil=True)
def _lz76_boundaries(seq):
    """1-based end indices of the LZ76 words of an int64 symbol array.

    Builds a suffix automaton incrementally, one symbol behind the scan, so
    that at scan position e the automaton recognizes exactly the substrings
    of seq[0:e].  The candidate word seq[p..e] extends iff a transition for
    seq[e] exists from the automaton state matching seq[p..e-1].
    """
    T = seq.shape[0]
    max_states = 2 * T + 4
    max_trans = 3 * T + 8
    cap = 64
    while cap < 2 * max_trans:
        cap <<= 1
    mask = cap - 1
    umask = np.uint64(mask)

    sa_len = np.zeros(max_states, np.int64)
    sa_link = np.full(max_states, -1, np.int64)
    # open-addressing table for transitions keyed (state, symbol)
    key_state = np.full(cap, -1, np.int64)
    key_sym = np.zeros(cap, np.int64)
    val = np.zeros(cap, np.int64)
    # per-state linked list of outgoing symbols, needed when cloning
    head = np.full(max_states, -1, np.int64)
    lst_sym = np.zeros(max_trans, np.int64)
    lst_nxt = np.zeros(max_trans, np.int64)
    n_lst = 0

    size = 1            # state 0 is the root
    last = 0            # state of the whole inserted prefix
    held = 0            # state matching the current fragment seq[p..e-1]
    mlen = 0            # length of that fragment
    p = 0               # fragment start
    extended = 0        # automaton contains seq[0:extended]
    bounds = np.empty(T, np.int64)
    nw = 0

    for e in range(T):
        while extended < e:
            ch = seq[extended]
            cur = size
            size += 1
            sa_len[cur] = sa_len[last] + 1
            pp = last
            slot = np.int64(0)
            while pp != -1:
                h = np.uint64(pp) * _M1 + np.uint64(ch) * _M2
                h ^= h >> _S30
                h *= _M3
                h ^= h >> _S27
                h *= _M4
                h ^= h >> _S31
                slot = np.int64(h & umask)
                while key_state[slot] != -1 and not (
                    key_state[slot] == pp and key_sym[slot] == ch
                ):
                    slot = (slot + 1) & mask
                if key_state[slot] != -1:
                    break
                key_state[slot] = pp
                key_sym[slot] = ch
                val[slot] = cur
                lst_sym[n_lst] = ch
                lst_nxt[n_lst] = head[pp]
                head[pp] = n_lst
                n_lst += 1
                pp = sa_link[pp]
            if pp == -1:
                sa_link[cur] = 0
            else:
                q = val[slot]
                if sa_len[pp] + 1 == sa_len[q]:
                    sa_link[cur] = q
                else:
                    clone = size
                    size += 1
                    sa_len[clone] = sa_len[pp] + 1
                    sa_link[clone] = sa_link[q]
                    it = head[q]
                    while it != -1:
                        cs = lst_sym[it]
                        h = np.uint64(q) * _M1 + np.uint64(cs) * _M2
                        h ^= h >> _S30
                        h *= _M3
                        h ^= h >> _S27
                        h *= _M4
                        h ^= h >> _S31
                        s2 = np.int64(h & umask)
                        while not (key_state[s2] == q and key_sym[s2] == cs):
                            s2 = (s2 + 1) & mask
                        tv = val[s2]
                        h = np.uint64(clone) * _M1 + np.uint64(cs) * _M2
                        h ^= h >> _S30
                        h *= _M3
                        h ^= h >> _S27
                        h *= _M4
                        h ^= h >> _S31
                        s3 = np.int64(h & umask)
                        while key_state[s3] != -1:
                            s3 = (s3 + 1) & mask
                        key_state[s3] = clone
                        key_sym[s3] = cs
                        val[s3] = tv
                        lst_sym[n_lst] = cs
                        lst_nxt[n_lst] = head[clone]
                        head[clone] = n_lst
                        n_lst += 1
                        it = lst_nxt[it]
                    sa_link[q] = clone
                    sa_link[cur] = clone
                    while pp != -1:
                        h = np.uint64(pp) * _M1 + np.uint64(ch) * _M2
                        h ^= h >> _S30
                        h *= _M3
                        h ^= h >> _S27
                        h *= _M4
                        h ^= h >> _S31
                        s4 = np.int64(h & umask)
                        while key_state[s4] != -1 and not (
                            key_state[s4] == pp and key_sym[s4] == ch
                        ):
                            s4 = (s4 + 1) & mask
                        if key_state[s4] == -1 or val[s4] != q:
                            break
                        val[s4] = clone
                        pp = sa_link[pp]
                    # the fragment match may now belong to the clone's class
                    if held == q and mlen <= sa_len[clone]:
                        held = clone
            last = cur
            extended += 1
        c = seq[e]
        h = np.uint64(held) * _M1 + np.uint64(c) * _M2
        h ^= h >> _S30
        h *= _M3
        h ^= h >> _S27
        h *= _M4
        h ^= h >> _S31
        s5 = np.int64(h & umask)
        while key_state[s5] != -1 and not (
            key_state[s5] == held and key_sym[s5] == c
        ):
            s5 = (s5 + 1) & mask
        if key_state[s5] == -1:
            # seq[p..e] never occurred before: the word ends here
            bounds[nw] = e + 1
            nw += 1
            p = e + 1
            held = 0
            mlen = 0
        else:
            held = val[s5]
            mlen += 1
    if p < T:
        # unfinished trailing fragment counts as one word
        bounds[nw] = T
        nw += 1
    return bounds[:nw]


def lz76_parse(seq: SymbolSequence) -> ParseResult:
    """Parse a sequence into LZ76 words.

    Returns
    -------
    ParseResult
        Word count and the 1-based inclusive end index of every word.
    """
    bounds = _lz76_boundaries(seq.symbols)
    return ParseResult(word_count=int(bounds.size), word_boundaries=bounds)


def lz76_word_count(seq: SymbolSequence) -> int:
    """Number of LZ76 words in the sequence."""
    return int(_lz76_boundaries(seq.symbols).size)


def entropy_rate_lz(seq: SymbolSequence) -> float:
    """Entropy-rate estimate h = C (ln a + ln C) / T in nats per symbol.

    Requires T >= 2; single-symbol sequences carry no rate information.
    Finite-T estimates are biased upward and may exceed ln(a).
    """
    T = len(seq)
    if T < 2:
        raise ValueError("sequence too short")
    C = lz76_word_count(seq)
    return C * (math.log(seq.alphabet_size) + math.log(C)) / T
