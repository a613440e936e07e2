"""Pure-Python blow-up simulation (reference for the compiled kernel)."""


def simulate(mults):
    """Replay point blow-ups with the given multiplicity sequence.

    Vertex ``i`` (0-based) is always proximate to ``i - 1``.  It is also
    proximate to a neighbour ``k`` of ``i - 1`` in the current tree when the
    residual capacity of ``k`` (its multiplicity minus the multiplicities of
    later points already proximate to it) is at least ``mults[i]``; ties go
    to the most recent divisor.  A satellite point is inserted on the edge
    between ``i - 1`` and its partner, a free point hangs as a leaf.

    Returns ``(partners, edges, ties)``: the satellite partner of each vertex
    (``-1`` when free), the final tree edges as sorted pairs, and the number of
    tie-breaks taken.
    """
    n = len(mults)
    cap = list(mults)
    adj = [[] for _ in range(n)]
    partners = [-1] * n
    ties = 0
    for i in range(1, n):
        m = mults[i]
        pred = i - 1
        cap[pred] -= m
        best = -1
        for k in adj[pred]:
            if cap[k] >= m:
                if best >= 0:
                    ties += 1
                if k > best:
                    best = k
        if best >= 0:
            cap[best] -= m
            partners[i] = best
            adj[pred].remove(best)
            adj[best].remove(pred)
            adj[pred].append(i)
            adj[best].append(i)
            adj[i].extend((pred, best))
        else:
            adj[pred].append(i)
            adj[i].append(pred)
    edges = sorted((a, b) for a in range(n) for b in adj[a] if a < b)
    return partners, edges, ties
