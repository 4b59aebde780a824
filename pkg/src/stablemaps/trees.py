"""Marked trees: enumeration, stratum classes, and the tree-sum potential.

The boundary geometry of a space of genus-zero stable maps is indexed by
trees whose vertices carry a curve class beta_v and a set S_v of marked-point
labels; admissibility ("stability") says a vertex with beta_v = 0 must have
valency + |S_v| >= 3.  The class of the stratum of a fixed marked tree is a
product over vertices,

    [W] * prod_v eps(beta_v, |v| + k_v) * N(W, beta_v)
             * C([P^1], |v| + k_v) * (|v| + k_v)!

with k_v = |S_v|, N the normalized map-space class and eps the stability
cutoff (zero iff beta_v = 0 and |v| + k_v <= 2).  Summing the strata over
all isomorphism classes of trees, weighted by 1/|Aut|, and over all weight
assignments v -> (beta_v, k_v) with t**k_v / k_v! and z**beta_v attached
yields the full generating series of the moduli classes.  That double sum,
evaluated directly, is this module's tree_sum_potential: the brute-force
oracle the closed-form solver is checked against.

Trees are enumerated without isomorphism duplicates: all canonical rooted
trees are generated as sorted nested tuples and then identified as free
trees by re-rooting at the tree center (at the central edge when there are
two centers).  Automorphism orders come from the same recursion: the
automorphisms of a rooted tree permute identical child subtrees, so |Aut|
is a product of multiplicity factorials times child automorphisms, with the
usual factor 2 for a bicentral tree whose halves are isomorphic.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .qfield import LINE_CLASS, RF_ZERO, RatFunc, binom_falling
from .series import MultiSeries, box_vectors
from .target import TargetSpace, nclass


# --- rooted tree enumeration (canonical nested tuples, children sorted) -------

def _tree_size(code) -> int:
    return 1 + sum(_tree_size(c) for c in code)


def _tree_key(code):
    return (_tree_size(code), code)


@lru_cache(maxsize=None)
def _rooted_trees(m: int) -> tuple:
    """All canonical rooted trees on m vertices.

    Canonical means the children tuple is sorted non-increasingly by
    (size, code), recursively; each isomorphism class appears exactly once.
    """
    if m == 1:
        return ((),)
    out = []
    for first_size in range(m - 1, 0, -1):
        for first in _rooted_trees(first_size):
            for rest in _forests(m - 1 - first_size, first_size, first):
                out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _forests(total: int, max_size: int, max_tree) -> tuple:
    """Multisets of canonical rooted trees with sizes summing to total, each
    at most (max_size, max_tree), listed as non-increasing tuples."""
    if total == 0:
        return ((),)
    out = []
    for size in range(min(total, max_size), 0, -1):
        for t in _rooted_trees(size):
            if size == max_size and t > max_tree:
                continue
            for rest in _forests(total - size, size, t):
                out.append((t,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _rooted_aut(code) -> int:
    """Automorphism order of a rooted tree: identical children commute."""
    aut = 1
    run_code, run_len = None, 0
    for child in code + (None,):
        if child == run_code:
            run_len += 1
            continue
        if run_code is not None:
            aut *= factorial(run_len) * _rooted_aut(run_code) ** run_len
        run_code, run_len = child, 1
    return aut


def _code_to_edges(code) -> list:
    """Edge list of the canonical representative, vertices in DFS preorder."""
    edges = []
    counter = itertools.count(0)

    def walk(node, parent):
        me = next(counter)
        if parent is not None:
            edges.append((parent, me))
        for child in node:
            walk(child, me)

    walk(code, None)
    return edges


def _adjacency(vcount, edges):
    adj = [[] for _ in range(vcount)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    return adj


def _centers(vcount, adj) -> list:
    """The one or two middle vertices of a tree (iterated leaf removal)."""
    if vcount == 1:
        return [0]
    degree = [len(nb) for nb in adj]
    layer = [v for v in range(vcount) if degree[v] == 1]
    remaining = vcount
    removed = [False] * vcount
    while remaining > 2:
        nxt = []
        for v in layer:
            removed[v] = True
        remaining -= len(layer)
        for v in layer:
            for w in adj[v]:
                if not removed[w]:
                    degree[w] -= 1
                    if degree[w] == 1:
                        nxt.append(w)
        layer = nxt
    return sorted(layer)


def _rooted_code_at(adj, root, blocked=None):
    """Canonical rooted code of the subtree at root, not crossing blocked."""
    def walk(v, parent):
        kids = [walk(w, v) for w in adj[v] if w != parent and w != blocked]
        kids.sort(key=_tree_key, reverse=True)
        return tuple(kids)

    return walk(root, None)


def _free_code(vcount, adj):
    """Canonical form of a free tree: root at the center, or at the central
    edge when the tree is bicentral."""
    centers = _centers(vcount, adj)
    if len(centers) == 1:
        return ("C", _rooted_code_at(adj, centers[0]))
    c1, c2 = centers
    h1 = _rooted_code_at(adj, c1, blocked=c2)
    h2 = _rooted_code_at(adj, c2, blocked=c1)
    if _tree_key(h1) < _tree_key(h2):
        h1, h2 = h2, h1
    return ("B", h1, h2)


def _free_aut(fcode) -> int:
    if fcode[0] == "C":
        return _rooted_aut(fcode[1])
    _, h1, h2 = fcode
    aut = _rooted_aut(h1) * _rooted_aut(h2)
    return 2 * aut if h1 == h2 else aut


def _render(code) -> str:
    return "(" + "".join(_render(c) for c in code) + ")"


def _code_bytes(fcode) -> bytes:
    if fcode[0] == "C":
        return ("C" + _render(fcode[1])).encode("ascii")
    return ("B" + _render(fcode[1]) + _render(fcode[2])).encode("ascii")


class Tree:
    """One isomorphism class of finite trees.

    Carries a concrete representative (vertices 0..vcount-1 with an edge
    list), the canonical code that identifies the class, and the order of
    the abstract automorphism group.
    """

    __slots__ = ("vcount", "edges", "canonical_code", "aut_order", "valencies")

    def __init__(self, vcount, edges, canonical_code, aut_order):
        self.vcount = vcount
        self.edges = tuple(tuple(sorted(e)) for e in edges)
        if len(self.edges) != vcount - 1:
            raise ValueError("a tree on v vertices has v - 1 edges")
        self.canonical_code = canonical_code
        self.aut_order = aut_order
        val = [0] * vcount
        for a, b in self.edges:
            val[a] += 1
            val[b] += 1
        self.valencies = tuple(val)

    def __eq__(self, other):
        return isinstance(other, Tree) and self.canonical_code == other.canonical_code

    def __hash__(self):
        return hash(self.canonical_code)

    def __repr__(self):
        return (f"Tree(vcount={self.vcount}, aut={self.aut_order}, "
                f"code={self.canonical_code.decode('ascii')})")


def tree_code(vcount: int, edges) -> bytes:
    """Canonical code of an arbitrary labelled tree; equal bytes iff the
    trees are isomorphic."""
    adj = _adjacency(vcount, [tuple(e) for e in edges])
    return _code_bytes(_free_code(vcount, adj))


@lru_cache(maxsize=None)
def _enum_trees_cached(vmax: int) -> tuple:
    found = {}
    for m in range(1, vmax + 1):
        for rooted in _rooted_trees(m):
            edges = _code_to_edges(rooted)
            adj = _adjacency(m, edges)
            fcode = _free_code(m, adj)
            if fcode in found:
                continue
            found[fcode] = Tree(m, edges, _code_bytes(fcode), _free_aut(fcode))
    return tuple(sorted(found.values(), key=lambda t: (t.vcount, t.canonical_code)))


def enum_trees(vmax: int) -> list:
    """All isomorphism classes of trees with at most vmax vertices, as
    (Tree, automorphism order) pairs."""
    if vmax < 1:
        raise ValueError("vmax must be >= 1")
    return [(t, t.aut_order) for t in _enum_trees_cached(vmax)]


# --- markings ------------------------------------------------------------------

class MarkedTree:
    """A tree with per-vertex curve class beta_v and label set S_v.

    The nonempty label sets must partition {1..k}; stability of individual
    vertices is not enforced here (unstable markings price to zero through
    the eps factor in stratum_class).
    """

    __slots__ = ("tree", "beta", "labels")

    def __init__(self, tree: Tree, beta, labels):
        beta = tuple(tuple(int(x) for x in b) for b in beta)
        labels = tuple(frozenset(s) for s in labels)
        if len(beta) != tree.vcount or len(labels) != tree.vcount:
            raise ValueError("need one (beta_v, S_v) per vertex")
        seen = set()
        for s in labels:
            if seen & s:
                raise ValueError("label sets must be disjoint")
            seen |= s
        if seen and seen != set(range(1, max(seen) + 1)):
            raise ValueError("labels must cover 1..k")
        self.tree = tree
        self.beta = beta
        self.labels = labels

    @property
    def k(self) -> int:
        return sum(len(s) for s in self.labels)

    def __repr__(self):
        return f"MarkedTree(vcount={self.tree.vcount}, beta={self.beta}, labels={self.labels})"


class WeightedMarking:
    """The (beta_v, k_v) weight assignment used by the tree sum: label sets
    replaced by their cardinalities."""

    __slots__ = ("tree", "beta", "kv")

    def __init__(self, tree: Tree, beta, kv):
        self.tree = tree
        self.beta = tuple(tuple(int(x) for x in b) for b in beta)
        self.kv = tuple(int(x) for x in kv)
        if len(self.beta) != tree.vcount or len(self.kv) != tree.vcount:
            raise ValueError("need one (beta_v, k_v) per vertex")
        if any(x < 0 for x in self.kv):
            raise ValueError("k_v must be >= 0")

    def __repr__(self):
        return f"WeightedMarking(vcount={self.tree.vcount}, beta={self.beta}, kv={self.kv})"


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _vector_compositions(total_vec, parts: int):
    """Ways to write total_vec as an ordered sum of `parts` nonnegative
    vectors, yielded as tuples of per-part vectors."""
    per_coord = [list(_compositions(c, parts)) for c in total_vec]
    for combo in itertools.product(*per_coord):
        yield tuple(tuple(coord[i] for coord in combo) for i in range(parts))


def enum_marked(tree: Tree, k: int, beta_total) -> list:
    """All admissible markings of the tree with labels {1..k} and total
    curve class beta_total, as labelled data (no quotient by Aut)."""
    beta_total = tuple(int(b) for b in beta_total)
    m = tree.vcount
    val = tree.valencies
    zero = (0,) * len(beta_total)
    out = []
    for beta in _vector_compositions(beta_total, m):
        # each label raises one vertex count by one, so the total stability
        # deficit must fit into the label budget
        deficit = sum(max(0, 3 - val[v]) for v in range(m) if beta[v] == zero)
        if deficit > k:
            continue
        for assign in itertools.product(range(m), repeat=k):
            sets = [set() for _ in range(m)]
            for label, v in zip(range(1, k + 1), assign):
                sets[v].add(label)
            if all(beta[v] != zero or val[v] + len(sets[v]) >= 3 for v in range(m)):
                out.append(MarkedTree(tree, beta, sets))
    return out


def stratum_class(w: TargetSpace, marked: MarkedTree) -> RatFunc:
    """Class of the stratum of stable maps with the given combinatorial type.

    Inadmissible markings return zero through the stability cutoff.
    """
    val = marked.tree.valencies
    zero = w.grading.zero
    acc = RatFunc(w.pw)
    for v in range(marked.tree.vcount):
        n_v = val[v] + len(marked.labels[v])
        if marked.beta[v] == zero and n_v <= 2:
            return RF_ZERO
        acc = acc * nclass(w, marked.beta[v]) \
                  * binom_falling(LINE_CLASS, n_v) * factorial(n_v)
    return acc


# --- the tree-sum oracle --------------------------------------------------------

def _vertex_factor(w: TargetSpace, valency: int, beta, kv: int) -> RatFunc:
    """eps * N(W, beta) * C([P^1], valency + kv) * (valency + kv)! / kv!"""
    key = ("vfac", valency, beta, kv)
    got = w._cache.get(key)
    if got is None:
        n_v = valency + kv
        if beta == (0,) * len(beta) and n_v <= 2:
            got = RF_ZERO
        else:
            got = nclass(w, beta) * binom_falling(LINE_CLASS, n_v) \
                * Fraction(factorial(n_v), factorial(kv))
        w._cache[key] = got
    return got


def vertex_bound(kmax: int, dmax) -> int:
    """Largest vertex count a tree can have and still contribute to the box.

    At most |dmax| vertices carry a nonzero class; every other vertex needs
    valency + k_v >= 3, and valencies over a tree sum to 2(vcount - 1), so
    3(vcount - a) <= 2(vcount - 1) + kmax with a <= |dmax| gives the bound.
    """
    return max(1, 3 * sum(dmax) + kmax - 2)


def _tree_cells(w: TargetSpace, tree: Tree, kmax: int, dmax) -> dict:
    """Sum over weight assignments of one tree: cell (k, beta) -> total of
    prod_v factor(v); the 1/|Aut| and [W] weights are applied by the caller."""
    m = tree.vcount
    val = tree.valencies
    r = len(dmax)
    zero = (0,) * r

    # prefix sums of the sorted suffix deficits: zeroing a deficit costs one
    # unit of remaining curve-class budget, so the best case removes the
    # largest deficits first
    deficits = [max(0, 3 - v) for v in val]
    suffix_best = []
    for i in range(m + 1):
        tail = sorted(deficits[i:], reverse=True)
        sums = [0]
        for x in tail:
            sums.append(sums[-1] + x)
        suffix_best.append(sums)

    def min_k_needed(i, dbudget):
        sums = suffix_best[i]
        return sums[-1] - sums[min(dbudget, len(sums) - 1)]

    cells = {}

    def rec(i, kused, dused, acc):
        if i == m:
            key = (kused, dused)
            prev = cells.get(key)
            cells[key] = acc if prev is None else prev + acc
            return
        kleft = kmax - kused
        dleft = tuple(dmax[j] - dused[j] for j in range(r))
        if kleft < min_k_needed(i, sum(dleft)):
            return
        for b in box_vectors(dleft):
            kmin = max(0, 3 - val[i]) if b == zero else 0
            if kmin > kleft:
                continue
            dnext = tuple(dused[j] + b[j] for j in range(r))
            for kv in range(kmin, kleft + 1):
                f = _vertex_factor(w, val[i], b, kv)
                if not f.is_zero:
                    rec(i + 1, kused + kv, dnext, acc * f)

    rec(0, 0, zero, RatFunc(1))
    return cells


def _chunk_cells(w: TargetSpace, trees, kmax: int, dmax) -> dict:
    total = {}
    for tree in trees:
        cells = _tree_cells(w, tree, kmax, dmax)
        weight = Fraction(1, tree.aut_order)
        for key, value in cells.items():
            add = value * weight
            prev = total.get(key)
            total[key] = add if prev is None else prev + add
    return total


def _chunk_worker(args):
    w, trees, kmax, dmax = args
    return _chunk_cells(w, trees, kmax, dmax)


def tree_sum_potential(w: TargetSpace, kmax: int, dmax=None, workers: int = 1) -> MultiSeries:
    """Generating series of moduli classes by direct summation over trees.

    The coefficient of t**k z**beta is

        sum_trees 1/|Aut| sum_{(beta_v, k_v): sums (beta, k)}
            [W] * prod_v factor(valency_v, beta_v, k_v)

    over all isomorphism classes of trees up to the vertex bound.  Exact and
    deterministic for any worker count (workers only chunk the tree list).
    """
    if dmax is None:
        dmax = w.grading.zero
    dmax = tuple(int(x) for x in dmax)
    if kmax < 0 or any(x < 0 for x in dmax):
        raise ValueError("kmax and dmax must be >= 0")
    trees = [t for t, _ in enum_trees(vertex_bound(kmax, dmax))]
    if workers > 1 and len(trees) > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [trees[i::workers] for i in range(workers)]
        chunks = [c for c in chunks if c]
        total = {}
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            for part in pool.map(_chunk_worker, [(w, c, kmax, dmax) for c in chunks]):
                for key, value in part.items():
                    prev = total.get(key)
                    total[key] = value if prev is None else prev + value
    else:
        total = _chunk_cells(w, trees, kmax, dmax)
    pw = RatFunc(w.pw)
    coeffs = {key: value * pw for key, value in total.items() if not value.is_zero}
    return MultiSeries(w.grading, kmax, dmax, coeffs)
