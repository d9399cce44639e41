"""Independent reference implementations used as test oracles.

Everything here is deliberately naive: plain loops, string-based substring
search, no shared code with src/lzter.  The point is that these functions are
slow but obviously faithful to the parsing rule and the estimator definitions,
so the fast production code can be checked against them.

Run as a script to regenerate the Monte-Carlo null-calibration fixture:

    python3 tests/oracle.py --samples 200 --out tests/fixtures/null_band.json
"""

from __future__ import annotations

import argparse
import json
import math
import time

import numpy as np


# ---------------------------------------------------------------------------
# naive LZ76 parsing
#
# Rule: the word starting at position p ends at the smallest e >= p such that
# seq[p..e] does not occur as a contiguous substring of seq[0..e-1] (0-based;
# the search window grows with the candidate and may overlap it).  A final
# fragment that never becomes novel counts as one word.
# ---------------------------------------------------------------------------

def lz76_words_scan(symbols) -> list[tuple[int, int]]:
    """O(T^3) parse via explicit position-by-position scans.

    Returns (start, end) index pairs, 0-based inclusive.
    """
    seq = list(symbols)
    T = len(seq)
    words = []
    p = 0
    while p < T:
        e = p
        while e < T and _occurs_in_window(seq, p, e):
            e += 1
        words.append((p, min(e, T - 1)))
        p = e + 1
    return words


def _occurs_in_window(seq, p, e) -> bool:
    """Does seq[p..e] occur as a substring of seq[0..e-1]?"""
    cand = seq[p : e + 1]
    L = e - p + 1
    window = seq[:e]
    for q in range(len(window) - L + 1):
        if window[q : q + L] == cand:
            return True
    return False


def lz76_words_str(symbols) -> list[tuple[int, int]]:
    """Same parse, but using Python's substring search on a str.

    Each symbol maps to one character, so matches are symbol-aligned.  Fast
    enough for the Monte-Carlo runs below (T ~ 1e4).
    """
    s = "".join(chr(int(v)) for v in symbols)
    T = len(s)
    words = []
    p = 0
    while p < T:
        e = p
        while e < T and s[p : e + 1] in s[:e]:
            e += 1
        words.append((p, min(e, T - 1)))
        p = e + 1
    return words


def lz76_count_str(symbols) -> int:
    return len(lz76_words_str(symbols))


def entropy_rate_naive(symbols, alphabet_size) -> float:
    c = lz76_count_str(symbols)
    t = len(symbols)
    return c * (math.log(alphabet_size) + math.log(c)) / t


# ---------------------------------------------------------------------------
# naive embedding + directed-rate estimator
# ---------------------------------------------------------------------------

def embed_rows(x, y, m, tau) -> list[list[int]]:
    """Rows (y_{t-m tau},..,y_{t-tau}, x_{t-m tau},..,x_{t-tau}, x_t)."""
    T = len(x)
    n_rows = T - m * tau
    rows = []
    for n in range(n_rows):
        t = m * tau + n
        row = [int(y[t - (m - j) * tau]) for j in range(m)]
        row += [int(x[t - (m - j) * tau]) for j in range(m)]
        row.append(int(x[t]))
        rows.append(row)
    return rows


def encode_rows(rows, alpha) -> list[int]:
    out = []
    for row in rows:
        z = 0
        w = 1
        for v in row:
            z += w * v
            w *= alpha
        out.append(z)
    return out


def joint_rate(rows, alpha) -> float:
    d = len(rows[0])
    z = encode_rows(rows, alpha)
    c = lz76_count_str(z)
    return c * (d * math.log(alpha) + math.log(c)) / len(z)


def ter_directed_naive(x, y, m, tau, alpha=2) -> float:
    rows = embed_rows(x, y, m, tau)
    target_rows = [r[m:] for r in rows]
    return joint_rate(target_rows, alpha) - joint_rate(rows, alpha)


def global_ter_naive(x, y, m, tau, K, rng, alpha=2):
    """Surrogate-corrected antisymmetrized rate, bootstrap redraw.

    Returns (t_yx, t_xy, t_yx_surr, t_xy_surr, t_global, surrogate_dev) where
    surrogate_dev = |mean_k h(V_k) - h(V)| for the y->x direction (a
    consistency diagnostic under independence).
    """
    rows_yx = embed_rows(x, y, m, tau)
    rows_xy = embed_rows(y, x, m, tau)
    n_rows = len(rows_yx)

    t_yx = joint_rate([r[m:] for r in rows_yx], alpha) - joint_rate(rows_yx, alpha)
    t_xy = joint_rate([r[m:] for r in rows_xy], alpha) - joint_rate(rows_xy, alpha)

    idx_sets = [rng.integers(0, n_rows, size=n_rows) for _ in range(K)]

    def surr_mean(rows):
        hs = []
        for idx in idx_sets:
            rows_k = [list(rows[int(i)][:m]) + rows[n][m:] for n, i in enumerate(idx)]
            hs.append(joint_rate(rows_k, alpha))
        return sum(hs) / K

    h_yx = surr_mean(rows_yx)
    h_xy = surr_mean(rows_xy)
    t_yx_surr = -h_yx
    t_xy_surr = -h_xy
    t_global = t_yx - t_xy - (t_yx_surr - t_xy_surr)
    surrogate_dev = abs(h_yx - joint_rate(rows_yx, alpha))
    return t_yx, t_xy, t_yx_surr, t_xy_surr, t_global, surrogate_dev


# ---------------------------------------------------------------------------
# self-checks: the parse must reproduce the worked 7-word example
# ---------------------------------------------------------------------------

EXAMPLE_STRING = "100110111001010001011"
EXAMPLE_WORDS = ["1", "0", "01", "101", "1100", "1010", "001011"]


def self_check():
    seq = [int(ch) for ch in EXAMPLE_STRING]
    for parse in (lz76_words_scan, lz76_words_str):
        words = parse(seq)
        texts = ["".join(str(seq[i]) for i in range(a, b + 1)) for a, b in words]
        assert texts == EXAMPLE_WORDS, (parse.__name__, texts)
    assert len(lz76_words_scan([0])) == 1
    assert [e for _, e in lz76_words_scan([0, 0, 0, 0])] == [0, 3]
    alt = [0, 1] * 500
    assert len(lz76_words_str(alt)) == 3
    # the two parses must agree on random small inputs
    rng = np.random.default_rng(7)
    for _ in range(300):
        n = int(rng.integers(1, 40))
        a = int(rng.integers(2, 5))
        s = rng.integers(0, a, size=n)
        assert lz76_words_scan(s) == lz76_words_str(s)


# ---------------------------------------------------------------------------
# Monte-Carlo null calibration: independent fair-coin pairs
# ---------------------------------------------------------------------------

def run_null_calibration(samples, length, m, tau, K, seed):
    rng = np.random.default_rng(seed)
    t_globals, t_directed_abs, surrogate_devs = [], [], []
    t0 = time.time()
    for i in range(samples):
        x = rng.integers(0, 2, size=length)
        y = rng.integers(0, 2, size=length)
        t_yx, t_xy, _, _, t_glob, dev = global_ter_naive(x, y, m, tau, K, rng)
        t_globals.append(t_glob)
        t_directed_abs.append(abs(t_yx))
        t_directed_abs.append(abs(t_xy))
        surrogate_devs.append(dev)
        if (i + 1) % 10 == 0:
            el = time.time() - t0
            print(f"[{i + 1}/{samples}] elapsed {el:.1f}s "
                  f"(avg {el / (i + 1):.2f}s/sample)", flush=True)
    return {
        "config": {"length": length, "m": m, "tau": tau, "K": K,
                   "samples": samples, "seed": seed,
                   "process": "independent iid Bernoulli(1/2) pairs"},
        "t_global_band": [float(np.quantile(t_globals, 0.025)),
                          float(np.quantile(t_globals, 0.975))],
        "t_global_median": float(np.median(t_globals)),
        "t_global_p99_abs": float(np.quantile(np.abs(t_globals), 0.99)),
        "t_directed_p99_abs": float(np.quantile(t_directed_abs, 0.99)),
        "surrogate_dev_p99": float(np.quantile(surrogate_devs, 0.99)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--length", type=int, default=10_000)
    ap.add_argument("-m", type=int, default=3)
    ap.add_argument("--tau", type=int, default=1)
    ap.add_argument("-K", type=int, default=30)
    ap.add_argument("--seed", type=int, default=20260814)
    ap.add_argument("--out", default="tests/fixtures/null_band.json")
    args = ap.parse_args()

    self_check()
    print("self-check passed", flush=True)
    result = run_null_calibration(args.samples, args.length, args.m,
                                  args.tau, args.K, args.seed)
    with open(args.out, "w") as fh:
        json.dump(result, fh, indent=2)
    print(json.dumps(result, indent=2))


if __name__ == "__main__":
    main()
