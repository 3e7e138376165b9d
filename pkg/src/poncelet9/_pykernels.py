"""Pure-Python versions of the search kernels.

Signatures mirror the compiled module: plain numpy inputs, plain outputs.
"""

from __future__ import annotations

import numpy as np

DEGREE_OVERFLOW = 1  # bit 0 of a cycle mask: some vertex had degree > 2


def arc_search(join, line_points, n_points, arc, target, max_results):
    """Depth-first completion of ``arc`` to ``target`` points.

    ``join`` is the flat n*n join table, ``line_points`` an (n_lines, k)
    array of the points on each line.  Added points are chosen in
    increasing index order, so every completion is reported once.
    """
    n = int(n_points)
    join = [int(v) for v in np.asarray(join).ravel()]
    line_masks = []
    for row in np.asarray(line_points):
        m = 0
        for p in row:
            m |= 1 << int(p)
        line_masks.append(m)
    full = (1 << n) - 1

    arc = [int(a) for a in arc]
    blocked = 0
    for a in arc:
        blocked |= 1 << a
    for i, a in enumerate(arc):
        for b in arc[i + 1 :]:
            blocked |= line_masks[join[a * n + b]]

    results = []

    def rec(blocked, start):
        need = target - len(arc)
        if need == 0:
            results.append(tuple(sorted(arc)))
            return len(results) >= max_results
        free = (full & ~blocked) >> start
        if free.bit_count() < need:
            return False
        while free:
            low = free & -free
            c = start + low.bit_length() - 1
            free ^= low
            nb = blocked | (1 << c)
            for a in arc:
                nb |= line_masks[join[a * n + c]]
            arc.append(c)
            stop = rec(nb, c + 1)
            arc.pop()
            if stop:
                return True
            if free.bit_count() < need:
                return False
        return False

    rec(blocked, 0)
    return results


def _cycle_mask(edges_a, edges_b, n_vertices):
    nb = [[] for _ in range(n_vertices)]
    for a, b in zip(edges_a, edges_b):
        nb[a].append(b)
        nb[b].append(a)
    if any(len(x) > 2 for x in nb):
        return DEGREE_OVERFLOW
    mask = 0
    seen = [False] * n_vertices
    # walk paths from their ends first, whatever is left lies on cycles
    for v in range(n_vertices):
        if len(nb[v]) == 1 and not seen[v]:
            prev, cur = -1, v
            while True:
                seen[cur] = True
                nxt = [w for w in nb[cur] if w != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
    for v in range(n_vertices):
        if len(nb[v]) == 2 and not seen[v]:
            length, prev, cur = 0, -1, v
            while True:
                seen[cur] = True
                length += 1
                a, b = nb[cur]
                nxt = b if a == prev else a
                prev, cur = cur, nxt
                if cur == v:
                    break
            mask |= 1 << length
    return mask


def cycle_masks(tangents, sec_a, sec_b, n_vertices):
    """Bitmask of closed polygon lengths for every (tangent oval, secant oval) pair.

    ``tangents[t]`` lists the tangent lines of oval t; ``sec_a[s, g]`` and
    ``sec_b[s, g]`` are the local indices of the two points of oval s on
    line g, or -1 when g is not a secant of s.  Result[t, s] has bit m set
    iff an m-gon closes; bit 0 flags a vertex of degree above two.
    """
    tangents = np.asarray(tangents)
    sec_a = np.asarray(sec_a)
    sec_b = np.asarray(sec_b)
    out = np.zeros((tangents.shape[0], sec_a.shape[0]), dtype=np.uint32)
    sa = sec_a.tolist()
    sb = sec_b.tolist()
    for t, tl in enumerate(tangents.tolist()):
        for s in range(len(sa)):
            ra, rb = sa[s], sb[s]
            ea = [ra[g] for g in tl if ra[g] >= 0]
            if len(ea) < 3:
                continue
            eb = [rb[g] for g in tl if ra[g] >= 0]
            out[t, s] = _cycle_mask(ea, eb, n_vertices)
    return out
