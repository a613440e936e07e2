"""Dual graphs of divisorial and (truncated) irrational valuations.

The multiplicity sequence is produced stage by stage with a subtractive
Euclidean algorithm, the blow-up sequence is replayed from it (see
:mod:`npiclass._kernels`), and the resulting tree is checked against the
continued-fraction digits of the class before it is returned.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby

from ._kernels import simulate
from .discrete_class import DiscreteClass, ValuationKind, contact_data
from .numeric import (
    DEFAULT_BUDGET,
    CertifiedIrrational,
    DomainError,
    cf_eval,
    cf_expand,
    cf_expand_prefix,
    format_exponent,
    parse_exponent,
)

__all__ = [
    "DualGraph",
    "GraphInvariantError",
    "build",
    "digit_runs",
    "euclid_sequence",
    "parse_structured",
    "proximity_from_tree",
    "render",
]

log = logging.getLogger(__name__)


class GraphInvariantError(RuntimeError):
    """The built graph breaks a structural law; carries a diagnostic."""


@dataclass(frozen=True)
class DualGraph:
    """Labelled dual tree; vertex ``v`` (1-based) is the v-th blow-up.

    Per-vertex tuples (``stage``, ``mult``, ``free``) are indexed by ``v - 1``.
    ``st`` holds st_1..st_g; ``ell`` holds l_0..l_{g+1}, the last entry being
    None when an irrational tail was truncated.
    """

    n: int
    g: int
    edges: tuple
    stage: tuple
    mult: tuple
    free: tuple
    st: tuple
    ell: tuple
    truncated: bool

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def adjacency(self) -> dict[int, list[int]]:
        adj = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        for v in adj:
            adj[v].sort()
        return adj

    def degree(self, v: int) -> int:
        return sum(v in e for e in self.edges)

    def markers(self, v: int) -> list[str]:
        out = [f"st{j}" for j, s in enumerate(self.st, start=1) if s == v]
        out += [f"l{j}" for j, x in enumerate(self.ell) if x == v]
        return out


def euclid_sequence(x: int, y: int) -> list[int]:
    """Subtractive Euclid on ``(x, y)``: emit ``min`` and subtract until a zero."""
    out: list[int] = []
    while x > 0 and y > 0:
        if x >= y:
            q, x = divmod(x, y)
            out.extend([y] * q)
        else:
            q, y = divmod(y, x)
            out.extend([x] * q)
    return out


def _tail_runs(first, runs):
    """Exact multiplicities of a truncated irrational tail.

    Replays the subtractive Euclid on ``(first, 1)`` with the run lengths
    already known, so no comparison of irrationals is needed.
    """
    x, y = first, Fraction(1)
    out = []
    emit_y = True
    for count in runs:
        if emit_y:
            out.extend([y] * count)
            x = x - count * y
        else:
            out.extend([x] * count)
            y = y - count * x
        emit_y = not emit_y
    return [int(v) if isinstance(v, Fraction) and v.denominator == 1 else v for v in out]


def _stage_sequences(t: DiscreteClass, tail_digits, budget):
    """Per-stage integer multiplicities (possibly scaled) and exact values."""
    cd = contact_data(t)
    g, e = t.g, cd.e
    stages: list[list[int]] = []
    if t.kind is ValuationKind.DIVISORIAL:
        stages.append(euclid_sequence(cd.beta_bar[1], cd.beta_bar[0]))
        for j in range(2, g + 2):
            x = e[j - 1] * (t.beta_prime(j) - 1)
            stages.append(euclid_sequence(int(x), e[j - 1]))
        exact = [v for s in stages for v in s]
        return stages, exact, None
    if tail_digits is None or tail_digits < 1:
        raise DomainError("irrational classes need tail_digits >= 1")
    alpha = t.last
    digits = cf_expand_prefix(alpha, tail_digits, budget)
    # a rational sharing the certified digits, whose own expansion continues
    surrogate = cf_eval((*digits, 2))
    scale = surrogate.denominator
    if g == 0:
        tail = euclid_sequence(surrogate.numerator, scale)
        count = sum(digits)
        stages.append(tail[:count])
        exact_tail = _tail_runs(alpha, digits)
    else:
        stages.append([v * scale for v in euclid_sequence(cd.beta_bar[1], cd.beta_bar[0])])
        for j in range(2, g + 1):
            x = e[j - 1] * (t.beta_prime(j) - 1)
            stages.append([v * scale for v in euclid_sequence(int(x), e[j - 1])])
        tail = euclid_sequence(surrogate.numerator - scale, scale)
        count = digits[0] - 1 + sum(digits[1:])
        stages.append(tail[:count])
        exact_tail = _tail_runs(alpha - 1, (digits[0] - 1, *digits[1:]))
    exact = [v // scale for s in stages[:-1] for v in s] + exact_tail
    return stages, exact, digits


def _path(adj, src, dst):
    prev = {src: None}
    stack = [src]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in prev:
                prev[w] = v
                stack.append(w)
    out = [dst]
    while out[-1] != src:
        out.append(prev[out[-1]])
    return out[::-1]


def build(
    t: DiscreteClass,
    tail_digits: int | None = None,
    budget: int = DEFAULT_BUDGET,
    backend: str | None = None,
) -> DualGraph:
    """Dual graph of ``t``; irrational tails are cut after ``tail_digits`` digits."""
    stages, exact, digits = _stage_sequences(t, tail_digits, budget)
    seq = [v for s in stages for v in s]
    stage_of = tuple(j for j, s in enumerate(stages, start=1) for _ in s)
    n = len(seq)
    partners, edges0, ties = simulate(seq, backend)
    if ties:
        log.info("capacity tie-break fired %d time(s) for %s", ties, t)
    edges = tuple((a + 1, b + 1) for a, b in edges0)
    free = tuple(p < 0 for p in partners)
    truncated = t.kind is ValuationKind.IRRATIONAL
    g = t.g

    # markers from bookkeeping: st_j is the last vertex created in stage j
    ends, pos = [], 0
    for s in stages:
        pos += len(s)
        ends.append(pos)
    st_book = tuple(ends[j - 1] for j in range(1, g + 1))

    adj = {v: [] for v in range(1, n + 1)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    spine = _path(adj, 1, n) if n else []
    st_shape = [v for v in spine if len(adj[v]) == 3]
    if g >= 1 and len(stages[-1]) == 0:
        st_shape.append(n)
    if tuple(st_shape) != st_book:
        raise GraphInvariantError(
            f"{t}: junctions from shape {st_shape} differ from stage ends {list(st_book)}"
        )
    ell = [1]
    on_spine = {v: i for i, v in enumerate(spine)}
    for s in st_book:
        i = on_spine[s]
        toward = {spine[i - 1]} if i > 0 else set()
        if i + 1 < len(spine):
            toward.add(spine[i + 1])
        arm = [w for w in adj[s] if w not in toward]
        if len(arm) != 1:
            raise GraphInvariantError(f"{t}: junction {s} has arm neighbours {arm}")
        prev, cur = s, arm[0]
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                raise GraphInvariantError(f"{t}: arm at {s} branches at {cur}")
            prev, cur = cur, nxt[0]
        ell.append(cur)
    ell.append(None if truncated else n)

    gr = DualGraph(
        n=n,
        g=g,
        edges=edges,
        stage=stage_of,
        mult=tuple(exact),
        free=free,
        st=st_book,
        ell=tuple(ell),
        truncated=truncated,
    )
    _check_laws(gr, t, stages, digits)
    return gr


def _expected_digits(t: DiscreteClass, j: int, digits):
    if j == t.g + 1 and digits is not None:
        return tuple(digits)
    return cf_expand(t.beta_prime(j))


def _check_laws(gr: DualGraph, t: DiscreteClass, stages, digits) -> None:
    def fail(msg):
        raise GraphInvariantError(f"{t}: {msg}")

    n, g = gr.n, gr.g
    adj = gr.adjacency()
    if len(gr.edges) != n - 1 or (n and len(_reachable(adj, 1)) != n):
        fail(f"not a tree ({n} vertices, {len(gr.edges)} edges)")
    high = [v for v in gr.vertices if len(adj[v]) > 3]
    if high:
        fail(f"vertices of degree > 3: {high}")
    deg3 = sum(len(adj[v]) == 3 for v in gr.vertices)
    want = g - 1 if g >= 1 and len(stages[-1]) == 0 else g
    if deg3 != want:
        fail(f"{deg3} degree-3 vertices, expected {want}")
    for j in range(1, g + 2):
        runs = digit_runs(gr, j)
        expect = _expected_digits(t, j, digits)
        if runs != expect:
            fail(f"stage {j} runs {runs} != digits {expect}")
    for j in range(1, g + 2):
        ints = stages[j - 1] if j == 1 else [stages[j - 2][-1], *stages[j - 1]]
        if any(a < b for a, b in zip(ints, ints[1:])):
            fail(f"stage {j} multiplicities increase")
    # free census
    for j in range(1, g + 2):
        new = [v for v in gr.vertices if gr.stage[v - 1] == j]
        nfree = sum(gr.free[v - 1] for v in new)
        if digits is not None and j == g + 1:
            a1 = digits[0] if g == 0 else digits[0] - 1
            expect = a1 + (1 if len(digits) > 1 else 0)
        else:
            b = t.beta_prime(j)
            expect = math.ceil(b if j == 1 else b - 1)
        if nfree != expect:
            fail(f"stage {j} has {nfree} free vertices, expected {expect}")
    # vertex count from digit sums
    if digits is None:
        sums = [sum(cf_expand(t.beta_prime(j))) for j in range(1, g + 2)]
        count = sums[0] + sum(s - 1 for s in sums[1:])
        if count != n:
            fail(f"digit-sum vertex count {count} != {n}")


def _reachable(adj, src):
    seen = {src}
    stack = [src]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _stage_vertices(gr: DualGraph, j: int) -> list[int]:
    vs = [v for v in gr.vertices if gr.stage[v - 1] == j]
    if j >= 2:
        vs.insert(0, gr.st[j - 2])
    return vs


def digit_runs(gr: DualGraph, j: int) -> tuple[int, ...]:
    """Lengths of runs of equal multiplicity in stage ``j`` (junction included)."""
    if not 1 <= j <= gr.g + 1:
        raise DomainError(f"no stage {j} in a graph with g = {gr.g}")
    mults = [gr.mult[v - 1] for v in _stage_vertices(gr, j)]
    return tuple(len(list(grp)) for _, grp in groupby(mults))


def proximity_from_tree(gr: DualGraph) -> dict[int, set[int]]:
    """Points each vertex is proximate to, recovered from the final tree alone.

    Undoing the blow-ups newest first: a leaf was a free point, a vertex of
    degree two was a satellite inserted on the edge joining its neighbours.
    """
    adj = {v: set(ws) for v, ws in gr.adjacency().items()}
    prox: dict[int, set[int]] = {1: set()}
    for v in range(gr.n, 1, -1):
        nbrs = adj.pop(v)
        if v - 1 not in nbrs or len(nbrs) > 2:
            raise GraphInvariantError(f"vertex {v} has neighbours {sorted(nbrs)} at creation")
        prox[v] = set(nbrs)
        for w in nbrs:
            adj[w].discard(v)
        if len(nbrs) == 2:
            a, b = nbrs
            adj[a].add(b)
            adj[b].add(a)
    return prox


# ---------------------------------------------------------------------------
# rendering


def render(gr: DualGraph, fmt: str = "structured") -> str:
    if fmt == "dot":
        return _render_dot(gr)
    if fmt == "ascii":
        return _render_ascii(gr)
    if fmt in ("structured", "structured-text", "text"):
        return _render_structured(gr)
    raise DomainError(f"unknown graph format {fmt!r}")


def _marker_token(gr, v):
    return ",".join(gr.markers(v)) or "-"


def _render_structured(gr: DualGraph) -> str:
    lines = [f"{gr.n} {gr.g} {int(gr.truncated)}"]
    for v in gr.vertices:
        lines.append(
            f"{v} {gr.stage[v - 1]} {format_exponent(gr.mult[v - 1])} "
            f"{int(gr.free[v - 1])} {_marker_token(gr, v)}"
        )
    lines.extend(f"{a} {b}" for a, b in gr.edges)
    return "\n".join(lines) + "\n"


def parse_structured(text: str) -> DualGraph:
    rows = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    n, g, trunc = (int(x) for x in rows[0])
    stage, mult, free = [], [], []
    st = [None] * g
    ell = [None] * (g + 2)
    for row in rows[1 : n + 1]:
        v, s, m, f, mk = row
        stage.append(int(s))
        val = parse_exponent(m)
        mult.append(int(val) if isinstance(val, Fraction) and val.denominator == 1 else val)
        free.append(f == "1")
        for tag in mk.split(",") if mk != "-" else []:
            if tag.startswith("st"):
                st[int(tag[2:]) - 1] = int(v)
            else:
                ell[int(tag[1:])] = int(v)
    edges = tuple(sorted((int(a), int(b)) for a, b in rows[n + 1 :]))
    return DualGraph(
        n=n,
        g=g,
        edges=edges,
        stage=tuple(stage),
        mult=tuple(mult),
        free=tuple(free),
        st=tuple(st),
        ell=tuple(ell),
        truncated=bool(trunc),
    )


def _render_dot(gr: DualGraph) -> str:
    out = ["graph dual {"]
    for v in gr.vertices:
        mk = _marker_token(gr, v)
        label = f"{v}" if mk == "-" else f"{v} ({mk})"
        out.append(
            f'  {v} [label="{label}", stage={gr.stage[v - 1]}, marker="{mk}", '
            f'mult="{format_exponent(gr.mult[v - 1])}", free={str(gr.free[v - 1]).lower()}];'
        )
    out.extend(f"  {a} -- {b};" for a, b in gr.edges)
    out.append("}")
    return "\n".join(out) + "\n"


def _render_ascii(gr: DualGraph) -> str:
    if gr.n == 0:
        return "\n"
    adj = gr.adjacency()
    spine = _path(adj, 1, gr.n)
    on_spine = set(spine)
    cols, line = {}, ""
    for v in spine:
        if line:
            line += "---"
        cols[v] = len(line)
        line += str(v)
    rows = [line]
    for v in spine:
        for w in adj[v]:
            if w in on_spine:
                continue
            arm, prev, cur = [], v, w
            while cur is not None:
                arm.append(cur)
                nxt = [x for x in adj[cur] if x != prev]
                prev, cur = cur, (nxt[0] if nxt else None)
                if len(nxt) > 1:
                    arm.append("...")
                    break
            for k, a in enumerate(arm):
                for r, text in ((2 * k + 1, "|"), (2 * k + 2, str(a))):
                    while len(rows) <= r:
                        rows.append("")
                    c = cols[v]
                    rows[r] = rows[r].ljust(c) + text + rows[r][c + len(text) :]
    legend = "st: " + (" ".join(map(str, gr.st)) or "-")
    legend += "   l: " + " ".join("?" if x is None else str(x) for x in gr.ell)
    return "\n".join(r.rstrip() for r in rows) + "\n" + legend + "\n"
