"""Pure-Python twin of the compiled minimum-ratio-cut kernel.

Same contract as _mincut_core.min_ratio_cut; used when the extension is not
built.  Roughly two orders of magnitude slower, fine below ~20 vertices.
"""

from __future__ import annotations


def _mask_connected(mask: int, adj: list[int]) -> bool:
    if mask == 0:
        return True
    bit = mask & -mask
    comp = bit
    frontier = bit
    while frontier:
        v = (frontier & -frontier).bit_length() - 1
        frontier &= frontier - 1
        new = adj[v] & mask & ~comp
        comp |= new
        frontier |= new
    return comp == mask


def _lex_less(a: int, b: int) -> bool:
    d = a ^ b
    if d == 0:
        return False
    return (a & (d & -d)) != 0


def min_ratio_cut(adj_masks, mult_matrix, nv: int, half: int):
    """Exact min of boundary/|S| over doubly-connected S, |S| <= half."""
    if nv < 1 or nv > 63:
        raise ValueError("kernel supports 1..63 vertices")
    adj = [int(x) for x in adj_masks]
    mult = [[int(mult_matrix[i][j]) for j in range(nv)] for i in range(nv)]
    degw = [sum(row) for row in mult]
    full = (1 << nv) - 1

    best_s, best_k, best_mask = 0, 0, 0
    visited = 0

    def consider(S: int, size: int, s: int) -> None:
        nonlocal best_s, best_k, best_mask, visited
        visited += 1
        if best_k == 0:
            better = True
        elif s * best_k != best_s * size:
            better = s * best_k < best_s * size
        elif size != best_k:
            better = size < best_k
        else:
            better = _lex_less(S, best_mask)
        if not better:
            return
        if not _mask_connected(full & ~S, adj):
            return
        best_s, best_k, best_mask = s, size, S

    def rec(S: int, nbrs: int, forbidden: int, size: int, s: int) -> None:
        consider(S, size, s)
        if size == half:
            return
        cand = nbrs & ~S & ~forbidden
        block = 0
        while cand:
            bit = cand & -cand
            v = bit.bit_length() - 1
            cand &= cand - 1
            s2 = s + degw[v]
            inside = adj[v] & S
            while inside:
                u = (inside & -inside).bit_length() - 1
                inside &= inside - 1
                s2 -= 2 * mult[v][u]
            rec(S | bit, nbrs | adj[v], forbidden | block, size + 1, s2)
            block |= bit

    for r in range(nv):
        rec(1 << r, adj[r], (1 << r) - 1, 1, degw[r])
    return best_s, best_k, best_mask, visited
