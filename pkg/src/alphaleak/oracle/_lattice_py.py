"""NumPy fallback for the compiled lattice scan (same contract as ``_lattice``)."""

import numpy as np

POWER, LINEAR, MIN = 0, 1, 2


def _compositions(k, d):
    """All compositions of ``k`` into ``d`` parts, lexicographic, as an int array."""
    if d == 1:
        return np.array([[k]], dtype=np.int64)
    if d == 2:
        c0 = np.arange(k + 1, dtype=np.int64)
        return np.column_stack([c0, k - c0])
    # d == 3: group c0 holds k - c0 + 1 rows; c1 counts up from 0 inside each group.
    sizes = k + 1 - np.arange(k + 1, dtype=np.int64)
    c0 = np.repeat(np.arange(k + 1, dtype=np.int64), sizes)
    starts = np.repeat(np.cumsum(sizes) - sizes, sizes)
    c1 = np.arange(c0.size, dtype=np.int64) - starts
    return np.column_stack([c0, c1, k - c0 - c1])


def composition_blocks(k, d):
    """Yield the grid in lexicographic order, in blocks of bounded size."""
    if d <= 3:
        yield _compositions(k, d)
        return
    for c0 in range(k + 1):
        for blk in composition_blocks(k - c0, d - 1):
            yield np.hstack([np.full((blk.shape[0], 1), c0, dtype=np.int64), blk])


def _scores(u, mode, c, a, active):
    u = u[:, active]
    a = a[active]
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        if mode == LINEAR:
            return u @ a
        if mode == MIN:
            return (u + a).min(axis=1)
        t = a + c * u
        m = t.max(axis=1)
        finite = np.isfinite(m)
        s = m.copy()
        tf = t[finite] - m[finite, None]
        s[finite] = m[finite] + np.log(np.exp(tf).sum(axis=1))
        return s / c


def lattice_argmax(k, d, mode, c, a, active):
    """Return ``(composition, best_score, n_points)``."""
    if d < 1 or k < 1:
        raise ValueError("need d >= 1 and k >= 1")
    a = np.asarray(a, dtype=float)
    active = np.asarray(active, dtype=bool)
    if a.shape != (d,) or active.shape != (d,):
        raise ValueError("coefficient arrays must have length d")
    with np.errstate(divide="ignore"):
        logtab = np.log(np.arange(k + 1, dtype=float)) - np.log(k)
    best, best_score, n = None, -np.inf, 0
    for comps in composition_blocks(k, d):
        s = _scores(logtab[comps], mode, c, a, active)
        s = np.where(np.isnan(s), -np.inf, s)
        i = int(np.argmax(s))
        if best is None or s[i] > best_score:
            best, best_score = comps[i], float(s[i])
        n += comps.shape[0]
    return tuple(int(v) for v in best), best_score, n
