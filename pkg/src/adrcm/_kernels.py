"""Numba kernels backing the generator, clique enumeration and homology.

All kernels are deterministic functions of their inputs.  Randomness enters
only through explicit 64-bit seeds hashed per item (counter-based draws), so
results never depend on traversal or thread schedule.
"""

from __future__ import annotations

import numpy as np
from numba import njit
from numba.typed import List as TypedList

_U64 = np.uint64


@njit(cache=True, inline="always")
def _hash_uniform(seed, a, b):
    # splitmix64-style mixing of (seed, a, b) -> uniform in [0, 1)
    h = _U64(seed)
    h = (h ^ _U64(a)) * _U64(0x9E3779B97F4A7C15)
    h = (h ^ (h >> _U64(30))) * _U64(0xBF58476D1CE4E5B9)
    h = (h ^ _U64(b)) * _U64(0x94D049BB133111EB)
    h = h ^ (h >> _U64(31))
    h = h * _U64(0xD6E8FEB86659FD93)
    h = h ^ (h >> _U64(32))
    return np.float64(h >> _U64(11)) * (1.0 / 9007199254740992.0)


@njit(cache=True)
def _birth_layers(births):
    """Bucket vertices into dyadic birth layers u in (2^-k-1, 2^-k].

    Returns (offsets, order) where order[offsets[k]:offsets[k+1]] lists the
    vertex indices of layer k sorted by position (filled by caller).
    """
    n = births.shape[0]
    n_layers = int(np.ceil(-np.log2(births[0]))) + 1
    layer = np.empty(n, np.int64)
    for i in range(n):
        k = int(-np.log2(births[i]))
        if k < 0:
            k = 0
        elif k >= n_layers:
            k = n_layers - 1
        layer[i] = k
    counts = np.zeros(n_layers + 1, np.int64)
    for i in range(n):
        counts[layer[i] + 1] += 1
    offsets = np.cumsum(counts)
    order = np.empty(n, np.int64)
    fill = offsets[:-1].copy()
    for i in range(n):
        k = layer[i]
        order[fill[k]] = i
        fill[k] += 1
    return offsets, order


@njit(cache=True)
def _edge_pass(births, positions, beta, gamma, profile_a, window, torus,
               edge_seed, offsets, order, layer_pos, out_younger, out_older):
    """Scan candidate pairs; when out arrays are empty, only count.

    Vertices are indexed by birth rank (input sorted by birth ascending).
    The directed edge younger -> older exists when
    |x - y| <= a * beta * u^-gamma * v^(gamma-1), retained with probability
    1/(2a); a = 1/2 makes the rule deterministic.
    """
    n = births.shape[0]
    n_layers = offsets.shape[0] - 1
    retention = 1.0 / (2.0 * profile_a)
    count_only = out_younger.shape[0] == 0
    m = 0
    for j in range(n):
        v = births[j]
        xj = positions[j]
        vpow = v ** (gamma - 1.0)
        for k in range(n_layers):
            a0, b0 = offsets[k], offsets[k + 1]
            if a0 == b0:
                continue
            # every member of layer k is born after 2^-(k+1); skip layers
            # that cannot contain vertices older than j
            if 2.0 ** (-(k + 1)) >= v:
                continue
            rmax = profile_a * beta * (2.0 ** ((k + 1) * gamma)) * vpow
            n_windows = 1
            full_scan = torus and 2.0 * rmax >= window
            if torus and not full_scan:
                n_windows = 3
            for win in range(n_windows):
                shift = (win - 1) * window if n_windows == 3 else 0.0
                if full_scan:
                    s, e = a0, b0
                else:
                    lo = xj - rmax + shift
                    hi = xj + rmax + shift
                    s = np.searchsorted(layer_pos[a0:b0], lo) + a0
                    e = np.searchsorted(layer_pos[a0:b0], hi, side="right") + a0
                for t in range(s, e):
                    i = order[t]
                    if i >= j:
                        continue
                    r = profile_a * beta * births[i] ** (-gamma) * vpow
                    d = abs(positions[i] - xj)
                    if torus:
                        dwrap = window - d
                        if dwrap < d:
                            d = dwrap
                    if d > r:
                        continue
                    if retention < 1.0:
                        if _hash_uniform(edge_seed, i, j) >= retention:
                            continue
                    if not count_only:
                        out_younger[m] = j
                        out_older[m] = i
                    m += 1
    return m


@njit(cache=True)
def build_edges_ranked(births, positions, beta, gamma, profile_a, window,
                       torus, edge_seed):
    """Edge list over birth-rank indices; output sorted by (younger, older)."""
    n = births.shape[0]
    empty = np.empty(0, np.int64)
    if n == 0:
        return empty, empty
    offsets, order = _birth_layers(births)
    for k in range(offsets.shape[0] - 1):
        a0, b0 = offsets[k], offsets[k + 1]
        seg = order[a0:b0]
        order[a0:b0] = seg[np.argsort(positions[seg], kind="mergesort")]
    layer_pos = positions[order]
    m = _edge_pass(births, positions, beta, gamma, profile_a, window, torus,
                   edge_seed, offsets, order, layer_pos, empty, empty)
    younger = np.empty(m, np.int64)
    older = np.empty(m, np.int64)
    _edge_pass(births, positions, beta, gamma, profile_a, window, torus,
               edge_seed, offsets, order, layer_pos, younger, older)
    key = younger * np.int64(n) + older
    idx = np.argsort(key, kind="mergesort")
    return younger[idx], older[idx]


@njit(cache=True)
def undirected_csr(n, left, right):
    """Sorted CSR adjacency with parallel edge ids for the undirected view."""
    m = left.shape[0]
    deg = np.zeros(n, np.int64)
    for t in range(m):
        deg[left[t]] += 1
        deg[right[t]] += 1
    offsets = np.zeros(n + 1, np.int64)
    for i in range(n):
        offsets[i + 1] = offsets[i] + deg[i]
    adj = np.empty(2 * m, np.int64)
    eid = np.empty(2 * m, np.int64)
    fill = offsets[:-1].copy()
    for t in range(m):
        a, b = left[t], right[t]
        adj[fill[a]] = b
        eid[fill[a]] = t
        fill[a] += 1
        adj[fill[b]] = a
        eid[fill[b]] = t
        fill[b] += 1
    for i in range(n):
        a, b = offsets[i], offsets[i + 1]
        idx = np.argsort(adj[a:b], kind="mergesort")
        adj[a:b] = adj[a:b][idx]
        eid[a:b] = eid[a:b][idx]
    return offsets, adj, eid


@njit(cache=True)
def triangles(n, offsets, adj, eid, n_edges):
    """Enumerate triangles by ordered expansion (each emitted once, v<u<w).

    Returns (tri_vertices, tri_edges, per_edge_triangle_counts).
    """
    edge_tri = np.zeros(n_edges, np.int64)
    tri_v = np.empty((0, 3), np.int64)
    tri_e = np.empty((0, 3), np.int64)
    n_tri = 0
    for phase in range(2):
        if phase == 1:
            tri_v = np.empty((n_tri, 3), np.int64)
            tri_e = np.empty((n_tri, 3), np.int64)
            n_tri = 0
        for v in range(n):
            a, b = offsets[v], offsets[v + 1]
            s = np.searchsorted(adj[a:b], v + 1) + a
            for p in range(s, b):
                u = adj[p]
                au, bu = offsets[u], offsets[u + 1]
                su = np.searchsorted(adj[au:bu], u + 1) + au
                i1, i2 = p + 1, su
                while i1 < b and i2 < bu:
                    w1, w2 = adj[i1], adj[i2]
                    if w1 == w2:
                        if phase == 1:
                            tri_v[n_tri, 0] = v
                            tri_v[n_tri, 1] = u
                            tri_v[n_tri, 2] = w1
                            tri_e[n_tri, 0] = eid[p]
                            tri_e[n_tri, 1] = eid[i1]
                            tri_e[n_tri, 2] = eid[i2]
                            edge_tri[eid[p]] += 1
                            edge_tri[eid[i1]] += 1
                            edge_tri[eid[i2]] += 1
                        n_tri += 1
                        i1 += 1
                        i2 += 1
                    elif w1 < w2:
                        i1 += 1
                    else:
                        i2 += 1
    return tri_v, tri_e, edge_tri


@njit(cache=True)
def triangle_degrees(tri_v, offsets, adj):
    """Per-triangle count of common neighbors (tetrahedra containing it)."""
    n_tri = tri_v.shape[0]
    out = np.zeros(n_tri, np.int64)
    for t in range(n_tri):
        i0, b0 = offsets[tri_v[t, 0]], offsets[tri_v[t, 0] + 1]
        i1, b1 = offsets[tri_v[t, 1]], offsets[tri_v[t, 1] + 1]
        i2, b2 = offsets[tri_v[t, 2]], offsets[tri_v[t, 2] + 1]
        cnt = 0
        while i0 < b0 and i1 < b1 and i2 < b2:
            w0, w1, w2 = adj[i0], adj[i1], adj[i2]
            mx = max(w0, max(w1, w2))
            if w0 == w1 and w1 == w2:
                cnt += 1
                i0 += 1
                i1 += 1
                i2 += 1
            else:
                if w0 < mx:
                    i0 += np.searchsorted(adj[i0:b0], mx)
                if w1 < mx:
                    i1 += np.searchsorted(adj[i1:b1], mx)
                if w2 < mx:
                    i2 += np.searchsorted(adj[i2:b2], mx)
        out[t] = cnt
    return out


@njit(cache=True)
def extend_cliques(simplices, offsets, adj):
    """Extend k-cliques by common neighbors ranked above the last vertex."""
    n_rows, width = simplices.shape
    n_out = 0
    out = np.empty((0, width + 1), np.int64)
    for phase in range(2):
        if phase == 1:
            out = np.empty((n_out, width + 1), np.int64)
            n_out = 0
        for r in range(n_rows):
            v0 = simplices[r, 0]
            last = simplices[r, width - 1]
            a, b = offsets[v0], offsets[v0 + 1]
            s = np.searchsorted(adj[a:b], last + 1) + a
            common = adj[s:b].copy()
            for c in range(1, width):
                if common.shape[0] == 0:
                    break
                vc = simplices[r, c]
                ac, bc = offsets[vc], offsets[vc + 1]
                nxt = np.empty(common.shape[0], np.int64)
                i1 = 0
                i2 = ac
                k = 0
                while i1 < common.shape[0] and i2 < bc:
                    w1, w2 = common[i1], adj[i2]
                    if w1 == w2:
                        nxt[k] = w1
                        k += 1
                        i1 += 1
                        i2 += 1
                    elif w1 < w2:
                        i1 += 1
                    else:
                        i2 += 1
                common = nxt[:k]
            for t in range(common.shape[0]):
                if phase == 1:
                    for c in range(width):
                        out[n_out, c] = simplices[r, c]
                    out[n_out, width] = common[t]
                n_out += 1
    return out


@njit(cache=True)
def classify_protected_ranked(younger, older, births):
    """Protected flags for directed edges over birth-rank indices.

    Edge (z, w) -> (x, u) is protected when w <= 2u, or when z has another
    older neighbor born in [u/2, 2u].
    """
    m = younger.shape[0]
    flags = np.zeros(m, np.bool_)
    order = np.argsort(younger, kind="mergesort")
    i = 0
    while i < m:
        z = younger[order[i]]
        j = i
        while j < m and younger[order[j]] == z:
            j += 1
        w = births[z]
        k = j - i
        older_births = np.empty(k, np.float64)
        for t in range(k):
            older_births[t] = births[older[order[i + t]]]
        sorted_births = np.sort(older_births)
        for t in range(k):
            u = older_births[t]
            if w <= 2.0 * u:
                flags[order[i + t]] = True
                continue
            lo = np.searchsorted(sorted_births, u / 2.0)
            hi = np.searchsorted(sorted_births, 2.0 * u, side="right")
            # the window always contains (x, u) itself; a witness needs >= 2
            if hi - lo >= 2:
                flags[order[i + t]] = True
        i = j
    return flags


@njit(cache=True)
def thin_keep_mask(older_births, protected, eta, thin_seed):
    m = older_births.shape[0]
    keep = np.empty(m, np.bool_)
    for t in range(m):
        if protected[t]:
            keep[t] = True
        else:
            keep[t] = _hash_uniform(thin_seed, t, 1) < older_births[t] ** eta
    return keep


@njit(cache=True)
def union_find_components(n, left, right):
    """Component count and component sizes via union by path halving."""
    parent = np.arange(n)
    for t in range(left.shape[0]):
        a = left[t]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = right[t]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a != b:
            parent[a] = b
    sizes = np.zeros(n, np.int64)
    for i in range(n):
        r = i
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        sizes[r] += 1
    n_comp = 0
    largest = 0
    for i in range(n):
        if sizes[i] > 0:
            n_comp += 1
            if sizes[i] > largest:
                largest = sizes[i]
    return n_comp, largest


@njit(cache=True)
def _xor_sorted(a, b):
    out = np.empty(a.shape[0] + b.shape[0], np.int64)
    i = j = k = 0
    na, nb = a.shape[0], b.shape[0]
    while i < na and j < nb:
        if a[i] == b[j]:
            i += 1
            j += 1
        elif a[i] < b[j]:
            out[k] = a[i]
            i += 1
            k += 1
        else:
            out[k] = b[j]
            j += 1
            k += 1
    while i < na:
        out[k] = a[i]
        i += 1
        k += 1
    while j < nb:
        out[k] = b[j]
        j += 1
        k += 1
    return out[:k]


@njit(cache=True)
def gf2_rank(columns_flat, column_offsets, n_rows):
    """Rank over GF(2) by sparse column elimination with low-pivot lookup."""
    n_cols = column_offsets.shape[0] - 1
    pivot_of_row = np.full(n_rows, -1, np.int64)
    store = TypedList()
    store.append(np.empty(0, np.int64))  # sentinel so indices start at 1
    rank = 0
    for c in range(n_cols):
        col = np.sort(columns_flat[column_offsets[c]:column_offsets[c + 1]])
        while col.shape[0] > 0:
            low = col[col.shape[0] - 1]
            p = pivot_of_row[low]
            if p == -1:
                pivot_of_row[low] = len(store)
                store.append(col)
                rank += 1
                break
            col = _xor_sorted(col, store[p])
    return rank
