"""Compiled event loops (numba).  Random draws come from the numpy Generator
passed in, so a kernel call consumes the caller's stream deterministically."""
from __future__ import annotations

import math

import numpy as np
from numba import njit

OK = 0
BUDGET = 1
POOL_EMPTY = 2


@njit(cache=True, nogil=True)
def _grow(buf, n):
    if n < buf.shape[0]:
        return buf
    out = np.empty(max(2 * buf.shape[0], 16), dtype=buf.dtype)
    out[: buf.shape[0]] = buf
    return out


@njit(cache=True, nogil=True)
def hybrid_lineages(rng, birth_times, birth_rates, n0, d, u, t, n_star, max_events):
    """Evolve independent lineages from ``birth_times[i]`` to ``t``.

    Each lineage starts with ``n0[i]`` cells, birth rate ``birth_rates[i]``,
    death rate ``d`` and emits mutants at rate ``u`` per cell.  Exact
    event-driven dynamics run while the size is below ``n_star``; from the
    first time it reaches ``n_star`` the size continues as
    ``n_star * exp(lam (s - tau))`` and mutants are emitted by a Poisson
    process with that intensity.

    Returns sizes at t, hitting times of n_star (nan when never reached),
    child birth times, child parent indices, events used and a status code.
    """
    m = birth_times.shape[0]
    sizes = np.zeros(m)
    hit = np.full(m, np.nan)
    child_t = np.empty(64)
    child_p = np.empty(64, dtype=np.int64)
    n_child = 0
    events = 0
    for i in range(m):
        a = birth_rates[i]
        lam = a - d
        tot = a + d + u
        s = birth_times[i]
        n = n0[i]
        exact_end = True
        while n > 0:
            if n >= n_star:
                exact_end = False
                break
            s += rng.standard_exponential() / (n * tot)
            if s > t:
                break
            events += 1
            if events > max_events:
                return sizes, hit, child_t[:n_child], child_p[:n_child], events, BUDGET
            r = rng.random() * tot
            if r < a:
                n += 1
            elif r < a + d:
                n -= 1
            else:
                child_t = _grow(child_t, n_child)
                child_p = _grow(child_p, n_child)
                child_t[n_child] = s
                child_p[n_child] = i
                n_child += 1
        if exact_end:
            sizes[i] = n
            continue
        hit[i] = s
        span = t - s
        growth = math.expm1(lam * span)
        sizes[i] = n * (growth + 1.0)
        if u > 0.0:
            mean = u * n * growth / lam
            # each emitted child costs work downstream; refuse absurd counts
            if not mean < max_events - events:
                return sizes, hit, child_t[:n_child], child_p[:n_child], events, BUDGET
            k = rng.poisson(mean)
            events += k
            for _ in range(k):
                child_t = _grow(child_t, n_child)
                child_p = _grow(child_p, n_child)
                child_t[n_child] = s + math.log1p(rng.random() * growth) / lam
                child_p[n_child] = i
                n_child += 1
    return sizes, hit, child_t[:n_child], child_p[:n_child], events, OK


@njit(cache=True, nogil=True)
def naive_population(rng, n0, a0, d, u_out, t, increments, max_events, max_clones):
    """Direct-method Gillespie over clones (cells of a clone are exchangeable).

    ``u_out[k]`` is the per-cell mutation rate out of type k (0 beyond the
    last tracked type).  ``increments`` is consumed in order for new clones.
    """
    cap = 64
    ctype = np.zeros(cap, dtype=np.int64)
    crate = np.zeros(cap)
    ccount = np.zeros(cap, dtype=np.int64)
    cborn = np.zeros(cap)
    cx = np.zeros(cap)
    cparent = np.full(cap, -1, dtype=np.int64)
    n_clones = 1
    ctype[0] = 0
    crate[0] = a0
    ccount[0] = n0
    used = 0
    events = 0
    s = 0.0
    while True:
        total = 0.0
        for c in range(n_clones):
            if ccount[c] > 0:
                total += ccount[c] * (crate[c] + d + u_out[ctype[c]])
        if total <= 0.0:
            break
        s += rng.standard_exponential() / total
        if s > t:
            break
        events += 1
        if events > max_events:
            return ctype[:n_clones], crate[:n_clones], ccount[:n_clones], cborn[:n_clones], cx[:n_clones], cparent[:n_clones], events, BUDGET
        r = rng.random() * total
        c = -1
        acc = 0.0
        prop = 0.0
        for j in range(n_clones):
            if ccount[j] > 0:
                prop = ccount[j] * (crate[j] + d + u_out[ctype[j]])
                acc += prop
                c = j
                if r < acc:
                    break
        n = ccount[c]
        w = r - (acc - prop)
        if w < n * crate[c]:
            ccount[c] += 1
        elif w < n * (crate[c] + d):
            ccount[c] -= 1
        else:
            if used >= increments.shape[0]:
                return ctype[:n_clones], crate[:n_clones], ccount[:n_clones], cborn[:n_clones], cx[:n_clones], cparent[:n_clones], events, POOL_EMPTY
            if n_clones >= max_clones:
                return ctype[:n_clones], crate[:n_clones], ccount[:n_clones], cborn[:n_clones], cx[:n_clones], cparent[:n_clones], events, BUDGET
            if n_clones == cap:
                cap *= 2
                ctype = _grow(ctype, n_clones)
                crate = _grow(crate, n_clones)
                ccount = _grow(ccount, n_clones)
                cborn = _grow(cborn, n_clones)
                cx = _grow(cx, n_clones)
                cparent = _grow(cparent, n_clones)
            x = increments[used]
            used += 1
            ctype[n_clones] = ctype[c] + 1
            crate[n_clones] = crate[c] + x
            ccount[n_clones] = 1
            cborn[n_clones] = s
            cx[n_clones] = cx[c] + x
            cparent[n_clones] = c
            n_clones += 1
    return ctype[:n_clones], crate[:n_clones], ccount[:n_clones], cborn[:n_clones], cx[:n_clones], cparent[:n_clones], events, OK
