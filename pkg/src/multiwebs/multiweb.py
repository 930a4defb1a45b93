"""n-multiwebs: enumeration, edge colorings, web-traces and sampling.

A multiweb is a multiplicity function on edges with total multiplicity
``n`` at every vertex.  Its trace for a connection ``phi`` and cilia ``L``
is the signed sum over set-valued colorings

    sum  prod_v c_v  prod_{e=bw} det phi_e[S_e, T_e],

with ``S_e`` the colors on the white side and ``T_e`` those on the black
side.  For a fixed choice of the ``S`` sets the sum over the ``T`` sets at a
black vertex is a single n x n determinant (Laplace expansion along row
blocks), which is how :func:`trace` evaluates it.
"""
from __future__ import annotations

import bisect
import random
from collections import deque
from fractions import Fraction
from itertools import combinations, permutations

from .algebra import Matrix, det_fraction_free, permutation_sign
from .connection import Connection
from .surface import BLACK, EmbeddedGraph, GraphError


class Multiweb:
    """Immutable multiplicity function; edges not listed have multiplicity 0."""

    __slots__ = ("n", "mult", "_key")

    def __init__(self, n: int, mult: dict):
        self.n = int(n)
        self.mult = {int(e): int(k) for e, k in mult.items() if k}
        if any(k < 0 or k > self.n for k in self.mult.values()):
            raise ValueError(f"multiplicities must lie in 0..{self.n}")
        self._key = tuple(sorted(self.mult.items()))

    def __getitem__(self, e):
        return self.mult.get(e, 0)

    def support(self):
        return sorted(self.mult)

    def items(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Multiweb) and self.n == other.n and self._key == other._key

    def __lt__(self, other):
        return self._key < other._key

    def __hash__(self):
        return hash((self.n, self._key))

    def __repr__(self):
        return f"Multiweb({self.n}, {dict(self._key)})"

    def is_proper(self) -> bool:
        return all(k == 1 for k in self.mult.values())

    def is_valid(self, g: EmbeddedGraph) -> bool:
        deg = {v: 0 for v in g.vertices}
        for e, k in self.mult.items():
            if e not in g.edges:
                return False
            b, w = g.edges[e]
            deg[b] += k
            deg[w] += k
        return all(d == self.n for d in deg.values())

    def updated(self, changes: dict) -> "Multiweb":
        mult = dict(self.mult)
        for e, d in changes.items():
            mult[e] = mult.get(e, 0) + d
        return Multiweb(self.n, mult)

    def to_dict(self) -> dict:
        return {str(e): k for e, k in self._key}


def check_multiweb(g: EmbeddedGraph, m: Multiweb):
    if not m.is_valid(g):
        raise ValueError(f"{m} is not an {m.n}-multiweb of the graph")


# ---------------------------------------------------------------------------
# enumeration

def enumerate_multiwebs(g: EmbeddedGraph, n: int):
    """Yield every n-multiweb once; edges ascending, multiplicities descending."""
    if not g.is_balanced():
        return
    order = sorted(g.edges)
    remaining = {v: n for v in g.vertices}
    # number of edges at v still to be decided after position i
    left = {v: len(g.rotation[v]) for v in g.vertices}
    mult = {}

    def feasible(v):
        return remaining[v] <= n * left[v] and (left[v] > 0 or remaining[v] == 0)

    def rec(i):
        if i == len(order):
            yield Multiweb(n, mult)
            return
        e = order[i]
        b, w = g.edges[e]
        left[b] -= 1
        left[w] -= 1
        for k in range(min(remaining[b], remaining[w]), -1, -1):
            remaining[b] -= k
            remaining[w] -= k
            if feasible(b) and feasible(w):
                if k:
                    mult[e] = k
                yield from rec(i + 1)
                mult.pop(e, None)
            remaining[b] += k
            remaining[w] += k
        left[b] += 1
        left[w] += 1

    yield from rec(0)


# ---------------------------------------------------------------------------
# listing orders and vertex signs

def listing(g: EmbeddedGraph, m: Multiweb, v: int, cilia: dict) -> list:
    """Support edges at v in the order read from the cilium."""
    if v not in cilia:
        raise ValueError(f"missing cilium at vertex {v}")
    return [e for e in g.half_edge_order(v, cilia[v]) if m[e]]


def vertex_sign(sets) -> int:
    """Signature of the color sequence obtained by concatenating sorted sets."""
    return permutation_sign([c for s in sets for c in sorted(s)])


def ordered_set_partitions(colors, sizes):
    """Yield tuples of frozensets with the given sizes partitioning ``colors``."""
    colors = tuple(colors)
    if not sizes:
        if not colors:
            yield ()
        return
    for first in combinations(colors, sizes[0]):
        rest = tuple(c for c in colors if c not in first)
        for tail in ordered_set_partitions(rest, sizes[1:]):
            yield (frozenset(first),) + tail


# ---------------------------------------------------------------------------
# colorings

def _edge_order(g: EmbeddedGraph, m: Multiweb) -> list:
    """Support edges in BFS order so that the search frontier stays small."""
    support = set(m.support())
    order = []
    seen_v = set()
    for start in sorted(g.vertices):
        if start in seen_v:
            continue
        seen_v.add(start)
        q = deque([start])
        while q:
            v = q.popleft()
            for e in g.rotation[v]:
                if e in support and e not in order:
                    order.append(e)
                    u = g.other_end(e, v)
                    if u not in seen_v:
                        seen_v.add(u)
                        q.append(u)
    return order


def enumerate_colorings(g: EmbeddedGraph, m: Multiweb):
    """Yield edge-n-colorings as dicts edge -> frozenset of colors in 1..n."""
    n = m.n
    order = _edge_order(g, m)
    used = {v: 0 for v in g.vertices}
    choice = {}
    subsets = {k: [sum(1 << c for c in s) for s in combinations(range(n), k)]
               for k in range(n + 1)}

    def rec(i):
        if i == len(order):
            yield {e: frozenset(c + 1 for c in range(n) if choice[e] >> c & 1)
                   for e in order}
            return
        e = order[i]
        b, w = g.edges[e]
        busy = used[b] | used[w]
        for s in subsets[m[e]]:
            if s & busy:
                continue
            used[b] |= s
            used[w] |= s
            choice[e] = s
            yield from rec(i + 1)
            used[b] ^= s
            used[w] ^= s

    yield from rec(0)


def is_coloring(g: EmbeddedGraph, m: Multiweb, coloring: dict) -> bool:
    full = frozenset(range(1, m.n + 1))
    for e in m.support():
        if len(coloring.get(e, ())) != m[e]:
            return False
    for v in g.vertices:
        sets = [coloring[e] for e in g.rotation[v] if m[e]]
        if sum(len(s) for s in sets) != m.n or frozenset().union(*sets) != full:
            return False
    return True


def count_colorings(g: EmbeddedGraph, m: Multiweb) -> int:
    """Number of edge-n-colorings, as a product over support components."""
    total = 1
    for comp in _components(g, m):
        total *= _count_component(g, m, comp)
        if total == 0:
            return 0
    return total


def _components(g, m):
    support = m.support()
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in support:
        b, w = g.edges[e]
        parent[find(b)] = find(w)
    comps = {}
    for e in support:
        comps.setdefault(find(g.edges[e][0]), []).append(e)
    return list(comps.values())


def _count_component(g, m, edges):
    n = m.n
    edges = set(edges)
    order = [e for e in _edge_order(g, m) if e in edges]
    pos = {e: i for i, e in enumerate(order)}
    last = {}
    for e in order:
        for v in g.edges[e]:
            last[v] = max(last.get(v, -1), pos[e])
    subsets = {k: [sum(1 << c for c in s) for s in combinations(range(n), k)]
               for k in range(n + 1)}
    # memoized search; state = used-color masks of vertices still open
    memo = {}

    def rec(i, used):
        if i == len(order):
            return 1
        key = (i, used)
        if key in memo:
            return memo[key]
        e = order[i]
        b, w = g.edges[e]
        d = dict(used)
        ub, uw = d.get(b, 0), d.get(w, 0)
        busy = ub | uw
        total = 0
        for s in subsets[m[e]]:
            if s & busy:
                continue
            nd = dict(d)
            for v, u in ((b, ub), (w, uw)):
                if last[v] == i:
                    nd.pop(v, None)
                else:
                    nd[v] = u | s
            total += rec(i + 1, tuple(sorted(nd.items())))
        memo[key] = total
        return total

    return rec(0, ())


def signed_coloring_count(g: EmbeddedGraph, m: Multiweb, cilia: dict) -> int:
    """Sum over edge-n-colorings of the product of vertex signs."""
    lists = {v: listing(g, m, v, cilia) for v in g.vertices}
    total = 0
    for col in enumerate_colorings(g, m):
        s = 1
        for v, es in lists.items():
            s *= vertex_sign([col[e] for e in es])
        total += s
    return total


def height_coloring(g: EmbeddedGraph, m: Multiweb, base_face: int = 0) -> dict:
    """Edge-n-coloring from a Z/n height function on faces.

    Crossing an edge of multiplicity k from the face right of b->w to the
    face on its left raises the height by k; that edge gets the colors
    h, h+1, ..., h+k-1 (mod n, shifted to 1..n) where h is the height of the
    face on its right.
    """
    n = m.n
    h = {base_face: 0}
    q = deque([base_face])
    faces = g.faces()
    while q:
        f = q.popleft()
        for e, tail in faces[f].darts:
            other = g.face_left(g.reverse((e, tail)))
            # crossing from f (left of this dart) to the other side
            step = m[e] if g.vertices[tail] == BLACK else -m[e]
            val = (h[f] - step) % n
            if other in h:
                if h[other] != val:
                    raise GraphError(
                        f"height function is inconsistent across edge {e}")
            else:
                h[other] = val
                q.append(other)
    coloring = {}
    for e in m.support():
        b, w = g.edges[e]
        a = h[g.face_left((e, w))]
        coloring[e] = frozenset((a + i) % n + 1 for i in range(m[e]))
    if not is_coloring(g, m, coloring):
        raise GraphError("height function did not produce a valid coloring")
    return coloring


# ---------------------------------------------------------------------------
# traces

def _is_identity(c: Connection, edges) -> bool:
    return all(c[e].is_identity() for e in edges)


def trace(g: EmbeddedGraph, m: Multiweb, c: Connection | None, cilia: dict):
    """Web-trace of ``m`` for the connection ``c`` (identity if None)."""
    n = m.n
    if c is not None and c.n != n:
        raise ValueError(f"connection rank {c.n} does not match multiweb rank {n}")
    support = m.support()
    for v in g.vertices:
        if v not in cilia:
            raise ValueError(f"missing cilium at vertex {v}")
    if c is None or _is_identity(c, support):
        return signed_coloring_count(g, m, cilia)
    lists = {v: listing(g, m, v, cilia) for v in g.vertices}
    whites = _white_order(g, m)
    # a black vertex closes once its last white neighbour has been processed
    close_at = {}
    for b in g.black:
        idx = max(whites.index(g.edges[e][1]) for e in lists[b])
        close_at.setdefault(idx, []).append(b)
    colors = tuple(range(n))
    options = {}
    for w in whites:
        sizes = [m[e] for e in lists[w]]
        options[w] = [(parts, vertex_sign(parts))
                      for parts in ordered_set_partitions(colors, sizes)]
    det_cache = {}

    def black_factor(b, assign):
        key = (b, tuple(assign[e] for e in lists[b]))
        if key not in det_cache:
            rows = []
            for e in lists[b]:
                phi = c[e]
                rows.extend(phi.rows[i] for i in sorted(assign[e]))
            det_cache[key] = det_fraction_free(Matrix(rows))
        return det_cache[key]

    states = {(): 1}
    for i, w in enumerate(whites):
        new_states = {}
        closing = close_at.get(i, [])
        for state, val in states.items():
            assign = dict(state)
            for parts, sign in options[w]:
                a2 = dict(assign)
                for e, s in zip(lists[w], parts):
                    a2[e] = s
                factor = sign
                for b in closing:
                    factor = factor * black_factor(b, a2)
                    if factor == 0:
                        break
                if factor == 0:
                    continue
                for b in closing:
                    for e in lists[b]:
                        del a2[e]
                key = tuple(sorted(a2.items(), key=lambda t: t[0]))
                prev = new_states.get(key)
                new_states[key] = val * factor if prev is None else prev + val * factor
        states = new_states
    return sum(states.values(), 0) if states else 0


def _white_order(g, m):
    """Whites in BFS order through the support, so open black sets stay small."""
    order = []
    seen = set()
    for start in g.white:
        if start in seen:
            continue
        seen.add(start)
        q = deque([start])
        while q:
            w = q.popleft()
            order.append(w)
            for e in g.rotation[w]:
                if not m[e]:
                    continue
                b = g.edges[e][0]
                for f in g.rotation[b]:
                    if m[f]:
                        w2 = g.edges[f][1]
                        if w2 not in seen:
                            seen.add(w2)
                            q.append(w2)
    return order


def tensor_trace_oracle(g: EmbeddedGraph, m: Multiweb, c: Connection | None, cilia: dict):
    """Codeterminant contraction for a proper web, by explicit permutation sums."""
    if not m.is_proper():
        raise ValueError("tensor oracle needs a proper multiweb (all multiplicities 0/1)")
    n = m.n
    if c is None:
        eye = Matrix.identity(n)
        c = Connection(n, {e: eye for e in g.edges})
    lists = {v: listing(g, m, v, cilia) for v in g.vertices}
    perms = [(p, permutation_sign(p)) for p in permutations(range(n))]
    blacks = g.black
    total = 0

    def rec(i, alpha, sign):
        nonlocal total
        if i == len(blacks):
            value = sign
            for w in g.white:
                s = 0
                for tau, st in perms:
                    term = st
                    for pos, e in enumerate(lists[w]):
                        term = term * c[e][tau[pos], alpha[e]]
                        if term == 0:
                            break
                    s = s + term
                value = value * s
                if value == 0:
                    return
            total = total + value
            return
        b = blacks[i]
        for sigma, sb in perms:
            for pos, e in enumerate(lists[b]):
                alpha[e] = sigma[pos]
            rec(i + 1, alpha, sign * sb)

    rec(0, {}, 1)
    return total


def rotate_cilium(g: EmbeddedGraph, cilia: dict, v: int, steps: int = 1) -> dict:
    out = dict(cilia)
    out[v] = (cilia[v] + steps) % g.degree(v)
    return out


# ---------------------------------------------------------------------------
# partition function and sampling

def partition_function(g: EmbeddedGraph, n: int) -> int:
    return sum(count_colorings(g, m) for m in enumerate_multiwebs(g, n))


class MultiwebSampler:
    """Exact sampler: full enumeration, weights = number of edge-n-colorings."""

    def __init__(self, g: EmbeddedGraph, n: int):
        self.webs = []
        self.cumulative = []
        total = 0
        for m in enumerate_multiwebs(g, n):
            wgt = count_colorings(g, m)
            if wgt:
                total += wgt
                self.webs.append(m)
                self.cumulative.append(total)
        self.total = total
        if total == 0:
            raise ValueError("the graph has no multiwebs with positive weight (Z = 0)")

    def probability(self, m: Multiweb):
        i = self.webs.index(m)
        lo = self.cumulative[i - 1] if i else 0
        return Fraction(self.cumulative[i] - lo, self.total)

    def draw(self, rng: random.Random) -> Multiweb:
        r = rng.randrange(self.total)
        return self.webs[bisect.bisect_right(self.cumulative, r)]


def sample_multiweb(g: EmbeddedGraph, n: int, seed: int) -> Multiweb:
    return MultiwebSampler(g, n).draw(random.Random(seed))


def sample_multiwebs(g: EmbeddedGraph, n: int, count: int, seed: int) -> list:
    sampler = MultiwebSampler(g, n)
    rng = random.Random(seed)
    return [sampler.draw(rng) for _ in range(count)]
