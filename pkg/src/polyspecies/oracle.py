"""Brute-force checks that share no code with the series machinery.

* Unlabeled classes of each family are generated by closing the constructive
  rules (glue a polygon along an edge, glue a block at a vertex) and removing
  duplicates with :func:`canonical_form`.
* The labeled set on ``1..n`` is the union of the orbits of the class
  representatives under all ``n!`` relabelings, held as a sorted numpy array of
  edge bitmasks.
* Small labeled families can also be cut out of *all* graphs on ``n`` vertices
  with the recognizers :func:`is_polygonal_2tree` and :func:`is_succulent`.
* :func:`verify_s2_builtin` counts fixed points of ``gamma * sigma`` on linear
  and cyclic orders directly.
"""
from __future__ import annotations

import itertools
import math
from collections.abc import Iterator, Set
from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpq

__all__ = [
    "LabeledGraph",
    "CanonicalForm",
    "LabeledFamily",
    "S2BuiltinReport",
    "canonical_form",
    "unlabeled_classes",
    "enumerate_family",
    "oracle_counts",
    "oracle_unlabeled_counts",
    "is_polygonal_2tree",
    "is_succulent",
    "all_graphs",
    "graph_cycle_index",
    "verify_s2_builtin",
    "FAMILY_LIMITS",
]

# exhaustive-scale caps per family (labeled sets hold up to n! * classes masks)
FAMILY_LIMITS = {"polygonal": 8, "kgonal": 8, "succulent": 7}
MAX_VERTICES = 10  # 45 vertex pairs fit in an int64 bitmask (labeled sets)
CANONICAL_MAX_VERTICES = 16  # canonical codes are Python ints; this only bounds the search


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------

def _pair_index(i: int, j: int, n: int) -> int:
    """Index of the 0-based pair ``i < j`` in the lexicographic list of pairs."""
    return i * n - i * (i + 1) // 2 + (j - i - 1)


@dataclass(frozen=True)
class LabeledGraph:
    """A simple graph on vertices ``1..vertex_count``; edges are pairs ``(i, j)``, ``i < j``."""

    vertex_count: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        n = self.vertex_count
        clean = set()
        for e in self.edges:
            i, j = sorted(e)
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (1 <= i and j <= n):
                raise ValueError(f"edge {e} outside labels 1..{n}")
            clean.add((i, j))
        object.__setattr__(self, "edges", frozenset(clean))

    @classmethod
    def from_pairs(cls, n: int, pairs) -> LabeledGraph:
        return cls(n, frozenset(tuple(p) for p in pairs))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> LabeledGraph:
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                if mask >> _pair_index(i, j, n) & 1:
                    edges.append((i + 1, j + 1))
        return cls(n, frozenset(edges))

    def to_mask(self) -> int:
        n = self.vertex_count
        return sum(1 << _pair_index(i - 1, j - 1, n) for i, j in self.edges)

    def adjacency(self) -> list[set[int]]:
        """0-based adjacency sets."""
        adj = [set() for _ in range(self.vertex_count)]
        for i, j in self.edges:
            adj[i - 1].add(j - 1)
            adj[j - 1].add(i - 1)
        return adj

    def relabel(self, perm) -> LabeledGraph:
        """Vertex ``v`` becomes ``perm[v - 1]`` (``perm`` is a permutation of ``1..n``)."""
        return LabeledGraph(self.vertex_count, frozenset(tuple(sorted((perm[i - 1], perm[j - 1])))
                                                         for i, j in self.edges))


# ---------------------------------------------------------------------------
# canonical forms: colour refinement + individualization
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Isomorphism-class key: equal for two graphs iff they are isomorphic."""

    vertex_count: int
    code: int


def _refine(adj: list[set[int]], colors: list[int]) -> list[int]:
    # 1-dimensional Weisfeiler-Leman refinement.  New colours are ranks of
    # (old colour, sorted neighbour colours), so the ordering of cells is itself
    # isomorphism invariant.
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(len(adj))]
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def _code(edges, pos: list[int], n: int) -> int:
    code = 0
    for u, v in edges:
        a, b = pos[u], pos[v]
        if a > b:
            a, b = b, a
        code |= 1 << _pair_index(a, b, n)
    return code


def _canon(n: int, edges: list[tuple[int, int]], adj: list[set[int]]) -> int:
    best = None
    stack = [_refine(adj, [0] * n)]
    while stack:
        colors = stack.pop()
        if len(set(colors)) == n:
            c = _code(edges, colors, n)
            if best is None or c < best:
                best = c
            continue
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        target = min(c for c, s in sizes.items() if s > 1)
        for v in range(n):
            if colors[v] == target:
                ind = [2 * c + (1 if (c == target and u != v) else 0) for u, c in enumerate(colors)]
                stack.append(_refine(adj, ind))
    return best


def canonical_form(g: LabeledGraph) -> CanonicalForm:
    """Minimum edge bitmask over the leaves of the individualization-refinement tree.

    Every leaf is a relabeling compatible with an isomorphism-invariant ordered
    partition, and the tree is explored exhaustively, so the minimum is an
    invariant; two graphs share it iff one is a relabeling of the other.
    """
    n = g.vertex_count
    if n > CANONICAL_MAX_VERTICES:
        raise ValueError(f"canonical forms are limited to {CANONICAL_MAX_VERTICES} vertices")
    edges = [(i - 1, j - 1) for i, j in g.edges]
    if n == 0:
        return CanonicalForm(0, 0)
    return CanonicalForm(n, _canon(n, edges, g.adjacency()))


# ---------------------------------------------------------------------------
# closure generation of unlabeled classes
# ---------------------------------------------------------------------------

def _cycle(m: int) -> LabeledGraph:
    return LabeledGraph.from_pairs(m, [(i + 1, (i + 1) % m + 1) for i in range(m)])


def _attach_path(g: LabeledGraph, a: int, b: int, inner: int) -> LabeledGraph:
    """Add a path with ``inner`` new vertices from ``a`` to ``b``."""
    n = g.vertex_count
    path = [a] + list(range(n + 1, n + inner + 1)) + [b]
    new = set(g.edges)
    new.update(tuple(sorted(p)) for p in zip(path, path[1:]))
    return LabeledGraph(n + inner, frozenset(new))


def _glue_at_vertex(g: LabeledGraph, v: int, block: LabeledGraph, w: int) -> LabeledGraph:
    """Identify vertex ``w`` of ``block`` with vertex ``v`` of ``g``."""
    n = g.vertex_count
    relabel = {}
    nxt = n + 1
    for u in range(1, block.vertex_count + 1):
        if u == w:
            relabel[u] = v
        else:
            relabel[u] = nxt
            nxt += 1
    new = set(g.edges)
    new.update(tuple(sorted((relabel[i], relabel[j]))) for i, j in block.edges)
    return LabeledGraph(nxt - 1, frozenset(new))


def _add(classes: dict, g: LabeledGraph) -> None:
    key = canonical_form(g)
    classes[g.vertex_count].setdefault(key, g)


def _polygonal_classes(n_max: int, k: int | None) -> dict[int, dict[CanonicalForm, LabeledGraph]]:
    classes: dict[int, dict] = {n: {} for n in range(n_max + 1)}
    sizes = range(3, n_max + 1) if k is None else [k] if k <= n_max else []
    for m in sizes:
        _add(classes, _cycle(m))
    for m in range(3, n_max + 1):
        for g in list(classes[m].values()):
            inner_sizes = range(1, n_max - m + 1) if k is None else [k - 2]
            for a, b in sorted(g.edges):
                for j in inner_sizes:
                    if m + j <= n_max:
                        _add(classes, _attach_path(g, a, b, j))
    return classes


def _succulent_classes(n_max: int) -> dict[int, dict[CanonicalForm, LabeledGraph]]:
    blocks = _polygonal_classes(n_max, None)
    block_list = [b for m in range(3, n_max + 1) for b in blocks[m].values()]
    classes: dict[int, dict] = {n: {} for n in range(n_max + 1)}
    if n_max >= 1:
        _add(classes, LabeledGraph(1, frozenset()))
    for m in range(1, n_max + 1):
        for g in list(classes[m].values()):
            for v in range(1, m + 1):
                for b in block_list:
                    if m + b.vertex_count - 1 <= n_max:
                        for w in range(1, b.vertex_count + 1):
                            _add(classes, _glue_at_vertex(g, v, b, w))
    return classes


def _check_family(family: str, n: int, k: int | None, limit: int | None,
                  labeled: bool = True) -> None:
    if family not in FAMILY_LIMITS:
        raise ValueError(f"unknown family {family!r}; expected one of {sorted(FAMILY_LIMITS)}")
    if family == "kgonal" and (k is None or k < 3):
        raise ValueError("family 'kgonal' needs k >= 3")
    cap = FAMILY_LIMITS[family] if limit is None else limit
    hard = MAX_VERTICES if labeled else CANONICAL_MAX_VERTICES
    if n > min(cap, hard):
        raise ValueError(f"n = {n} is beyond the exhaustive bound {min(cap, hard)} for {family}")
    if n < 0:
        raise ValueError("n must be nonnegative")


def _all_classes(family: str, n_max: int, k: int | None):
    if family == "succulent":
        return _succulent_classes(n_max)
    return _polygonal_classes(n_max, k if family == "kgonal" else None)


def unlabeled_classes(family: str, n: int, k: int | None = None, limit: int | None = None) -> list[LabeledGraph]:
    """One representative per isomorphism class, in canonical-form order."""
    _check_family(family, n, k, limit, labeled=False)
    classes = _all_classes(family, n, k)[n]
    return [classes[key] for key in sorted(classes)]


# ---------------------------------------------------------------------------
# labeled sets by orbit expansion
# ---------------------------------------------------------------------------

class LabeledFamily(Set):
    """The set of labeled graphs on ``1..n`` in a family, stored as sorted edge bitmasks."""

    def __init__(self, vertex_count: int, masks: np.ndarray):
        self.vertex_count = vertex_count
        self.masks = masks

    def __len__(self) -> int:
        return int(self.masks.size)

    def __iter__(self) -> Iterator[LabeledGraph]:
        for m in self.masks:
            yield LabeledGraph.from_mask(self.vertex_count, int(m))

    def __contains__(self, g) -> bool:
        if not isinstance(g, LabeledGraph) or g.vertex_count != self.vertex_count:
            return False
        m = g.to_mask()
        i = int(np.searchsorted(self.masks, m))
        return i < self.masks.size and int(self.masks[i]) == m

    def __repr__(self) -> str:
        return f"LabeledFamily(n={self.vertex_count}, size={len(self)})"


def _orbit_masks(g: LabeledGraph, perms: np.ndarray) -> np.ndarray:
    n = g.vertex_count
    out = np.zeros(perms.shape[0], dtype=np.int64)
    for i, j in g.edges:
        a = perms[:, i - 1]
        b = perms[:, j - 1]
        lo = np.minimum(a, b)
        hi = np.maximum(a, b)
        idx = lo * n - lo * (lo + 1) // 2 + (hi - lo - 1)
        out |= np.left_shift(np.int64(1), idx.astype(np.int64))
    return out


def _orbits(reps: list[LabeledGraph], n: int) -> np.ndarray:
    if n == 0:
        return np.zeros(len(reps), dtype=np.int64)
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    chunks = [np.unique(_orbit_masks(g, perms)) for g in reps]
    if not chunks:
        return np.zeros(0, dtype=np.int64)
    return np.unique(np.concatenate(chunks))


def enumerate_family(family: str, n: int, k: int | None = None, limit: int | None = None) -> LabeledFamily:
    """All labeled members on ``1..n`` of ``family`` (``"polygonal"``, ``"kgonal"``, ``"succulent"``)."""
    _check_family(family, n, k, limit)
    reps = unlabeled_classes(family, n, k, limit)
    return LabeledFamily(n, _orbits(reps, n))


def oracle_counts(family: str, n_max: int, k: int | None = None, limit: int | None = None) -> list[tuple[int, int]]:
    """``(labeled, unlabeled)`` for ``n = 0..n_max`` from one closure run."""
    _check_family(family, n_max, k, limit)
    classes = _all_classes(family, n_max, k)
    rows = []
    for n in range(n_max + 1):
        reps = list(classes[n].values())
        rows.append((len(_orbits(reps, n)) if reps else 0, len(reps)))
    return rows


def oracle_unlabeled_counts(family: str, n_max: int, k: int | None = None) -> list[int]:
    """Number of isomorphism classes for ``n = 0..n_max`` (no labeled expansion).

    Reaches further than :func:`oracle_counts`; cost grows with the number of
    classes (about a minute for polygonal 2-trees through 11 vertices).
    """
    _check_family(family, n_max, k, limit=CANONICAL_MAX_VERTICES, labeled=False)
    classes = _all_classes(family, n_max, k)
    return [len(classes[n]) for n in range(n_max + 1)]


# ---------------------------------------------------------------------------
# recognizers (independent of the closure rules)
# ---------------------------------------------------------------------------

def _connected(adj: list[set[int]], verts) -> bool:
    verts = set(verts)
    if not verts:
        return False
    start = next(iter(verts))
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for u in adj[v]:
            if u in verts and u not in seen:
                seen.add(u)
                todo.append(u)
    return seen == verts


def _is_p2t(vertices: set[int], edges: set[tuple[int, int]]) -> bool:
    # Peel leaf polygons: a chain of degree-2 vertices whose two ends are
    # adjacent closes a polygon sharing only that edge with the rest.
    vertices = set(vertices)
    edges = set(edges)
    while True:
        adj = {v: set() for v in vertices}
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        if len(vertices) < 3 or not _connected(adj, vertices):
            return False
        if all(len(adj[v]) == 2 for v in vertices):
            return len(edges) == len(vertices)
        peeled = False
        for v in vertices:
            if len(adj[v]) != 2:
                continue
            chain = [v]
            ends = []
            for start in adj[v]:
                prev, cur = v, start
                while len(adj[cur]) == 2 and cur != v:
                    chain.append(cur)
                    prev, cur = cur, next(iter(adj[cur] - {prev}))
                ends.append(cur)
            a, b = ends
            if a != b and b in adj[a] and len(adj[a]) > 2 and len(adj[b]) > 2:
                vertices -= set(chain)
                edges = {e for e in edges if e[0] in vertices and e[1] in vertices}
                peeled = True
                break
        if not peeled:
            return False


def is_polygonal_2tree(g: LabeledGraph) -> bool:
    """Whether ``g`` can be built from one cycle by gluing cycles along edges."""
    return _is_p2t(set(range(g.vertex_count)), {(i - 1, j - 1) for i, j in g.edges})


def _blocks(n: int, adj: list[set[int]]) -> list[set[tuple[int, int]]]:
    # Hopcroft-Tarjan biconnected components (edge sets), iterative.
    disc = [-1] * n
    low = [0] * n
    blocks = []
    stack: list[tuple[int, int]] = []
    t = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        work = [(root, -1, iter(sorted(adj[root])))]
        while work:
            v, parent, it = work[-1]
            advanced = False
            for u in it:
                if disc[u] == -1:
                    stack.append((v, u))
                    disc[u] = low[u] = t
                    t += 1
                    work.append((u, v, iter(sorted(adj[u]))))
                    advanced = True
                    break
                if u != parent and disc[u] < disc[v]:
                    stack.append((v, u))
                    low[v] = min(low[v], disc[u])
            if advanced:
                continue
            work.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[v])
                if low[v] >= disc[parent]:
                    block = set()
                    while True:
                        e = stack.pop()
                        block.add(tuple(sorted(e)))
                        if e == (parent, v):
                            break
                    blocks.append(block)
    return blocks


def is_succulent(g: LabeledGraph) -> bool:
    """Connected, and every block is a polygonal 2-tree (a single vertex counts)."""
    n = g.vertex_count
    adj = g.adjacency()
    if n == 0 or not _connected(adj, range(n)):
        return False
    for block in _blocks(n, adj):
        verts = {v for e in block for v in e}
        if not _is_p2t(verts, block):
            return False
    return True


def all_graphs(n: int) -> Iterator[LabeledGraph]:
    """Every simple graph on ``1..n`` (``2^(n(n-1)/2)`` of them)."""
    if n > 7:
        raise ValueError("exhaustive graph listing is limited to 7 vertices")
    pairs = n * (n - 1) // 2
    for mask in range(1 << pairs):
        yield LabeledGraph.from_mask(n, mask)


def _permute_masks(masks: np.ndarray, perm: list[int], n: int) -> np.ndarray:
    """Relabel every graph in ``masks`` by the 0-based vertex permutation ``perm``."""
    out = np.zeros_like(masks)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = sorted((perm[i], perm[j]))
            bit = (masks >> np.int64(_pair_index(i, j, n))) & 1
            out |= bit << np.int64(_pair_index(a, b, n))
    return out


def graph_cycle_index(family: str, n: int, k: int | None = None) -> dict:
    """Layer ``n`` of a family's cycle index, straight from the labeled graphs.

    Returns ``{cycle type: coefficient}`` where the coefficient of the cycle type
    ``lam`` is ``|{(G, sigma): sigma of type lam, sigma(G) = G}| / n!``.  One
    representative per class suffices since the fixed-point count is a class
    function.
    """
    graphs = enumerate_family(family, n, k)
    nfact = math.factorial(n)
    out = {}
    for lam in _partitions(n):
        rep = [int(v) for v in _representative(lam)]
        fixed = int(np.count_nonzero(_permute_masks(graphs.masks, rep, n) == graphs.masks)) if n else len(graphs)
        if fixed:
            out[lam] = mpq(fixed * _class_size(lam), nfact)
    return out


# ---------------------------------------------------------------------------
# fixed-point counts for built-ins with order reversal
# ---------------------------------------------------------------------------

@dataclass
class S2BuiltinReport:
    kind: str
    n: int
    ok: bool
    computed: dict            # gamma -> {cycle type: coefficient}
    mismatches: list          # (gamma, cycle type, expected, computed)

    def __str__(self) -> str:
        if self.ok:
            return f"{self.kind}_{self.n}: ok"
        lines = [f"{self.kind}_{self.n}: {len(self.mismatches)} mismatch(es)"]
        for gamma, lam, exp, got in self.mismatches:
            lines.append(f"  gamma={gamma} cycle type={lam}: closed form {exp}, fixed points give {got}")
        return "\n".join(lines)


def _structures(kind: str, n: int) -> np.ndarray:
    if kind == "L":
        if n == 0:
            return np.zeros((1, 0), dtype=np.int8)
        return np.array(list(itertools.permutations(range(n))), dtype=np.int8)
    if kind == "C":
        if n <= 1:
            return np.zeros((n, n), dtype=np.int8)
        rest = np.array(list(itertools.permutations(range(1, n))), dtype=np.int8)
        return np.hstack([np.zeros((rest.shape[0], 1), dtype=np.int8), rest])
    if kind == "E":
        return np.zeros((1, 0), dtype=np.int8)
    raise ValueError(f"unknown built-in {kind!r}")


def _normalize(kind: str, s: np.ndarray) -> np.ndarray:
    if kind != "C" or s.shape[1] == 0:
        return s
    n = s.shape[1]
    start = np.argmin(s, axis=1)  # rotate each cyclic order so that 0 comes first
    idx = (start[:, None] + np.arange(n)[None, :]) % n
    return np.take_along_axis(s, idx, axis=1)


def _fixed(kind: str, structs: np.ndarray, sigma: np.ndarray, reverse: bool) -> int:
    if kind == "E":
        return 1
    s = structs[:, ::-1] if reverse else structs
    moved = _normalize(kind, sigma[s])
    return int(np.count_nonzero(np.all(moved == structs, axis=1)))


def _cycle_type(perm) -> tuple[int, ...]:
    n = len(perm)
    seen = [False] * n
    out = []
    for i in range(n):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            out.append(length)
    return tuple(sorted(out, reverse=True))


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _representative(lam: tuple[int, ...]) -> np.ndarray:
    perm = []
    start = 0
    for part in lam:
        perm.extend(range(start + 1, start + part))
        perm.append(start)
        start += part
    return np.array(perm, dtype=np.int8)


def _class_size(lam: tuple[int, ...]) -> int:
    z = 1
    for part in set(lam):
        m = lam.count(part)
        z *= part ** m * math.factorial(m)
    return math.factorial(sum(lam)) // z


def fixed_point_cycle_index(kind: str, n: int, exhaustive: bool = False) -> dict:
    """``{gamma: {cycle type: coefficient}}`` from direct fixed-point counts.

    By default one representative per conjugacy class is used (the count is a
    class function); ``exhaustive=True`` sums over every ``sigma`` in ``S_n``.
    """
    if n > MAX_VERTICES:
        raise ValueError(f"fixed-point counts are limited to n <= {MAX_VERTICES}")
    structs = _structures(kind, n)
    nfact = math.factorial(n)
    out = {}
    for gamma, reverse in (("e", False), ("tau", True)):
        coeffs: dict = {}
        if exhaustive:
            for perm in itertools.permutations(range(n)):
                sigma = np.array(perm, dtype=np.int8)
                lam = _cycle_type(perm)
                coeffs[lam] = coeffs.get(lam, 0) + _fixed(kind, structs, sigma, reverse)
            coeffs = {lam: mpq(c, nfact) for lam, c in coeffs.items()}
        else:
            for lam in _partitions(n):
                fix = _fixed(kind, structs, _representative(lam), reverse)
                coeffs[lam] = mpq(fix * _class_size(lam), nfact)
        out[gamma] = {lam: c for lam, c in coeffs.items() if c}
    return out


def verify_s2_builtin(kind: str, n: int, exhaustive: bool = False) -> S2BuiltinReport:
    """Compare both parts of the closed-form built-in ``kind_n`` with fixed-point counts."""
    from .cis import parts_monomial  # encoding only; the counts above are independent
    from .gamma2 import g_builtin

    names = {"L": "L_n", "C": "C_n"}
    computed = fixed_point_cycle_index(kind, n, exhaustive)
    if kind == "E":
        closed = g_builtin("E", truncation=n)
    elif kind in names:
        closed = g_builtin(names[kind], n, truncation=n)
    else:
        raise ValueError(f"unknown built-in {kind!r}")
    mismatches = []
    for gamma in ("e", "tau"):
        layer = dict(closed[gamma].layer(n).items())
        mine = {parts_monomial(lam): c for lam, c in computed[gamma].items()}
        for lam in _partitions(n):
            m = parts_monomial(lam)
            a, b = layer.get(m, mpq(0)), mine.get(m, mpq(0))
            if a != b:
                mismatches.append((gamma, lam, a, b))
    return S2BuiltinReport(kind, n, not mismatches, computed, mismatches)
