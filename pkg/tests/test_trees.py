import itertools
import random
from collections import Counter
from fractions import Fraction
from math import factorial

import pytest

from stablemaps.qfield import RatFunc, UPoly, is_palindromic
from stablemaps.series import MultiSeries
from stablemaps.target import point_target, projective_space
from stablemaps.trees import (MarkedTree, WeightedMarking, enum_marked,
                              enum_trees, stratum_class, tree_code,
                              tree_sum_potential, vertex_bound)

TREE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11}


def prufer_to_edges(seq, m):
    """Decode a Pruefer sequence into the edge list of a labelled tree."""
    degree = [1] * m
    for v in seq:
        degree[v] += 1
    edges = []
    seq = list(seq)
    leaves = sorted(v for v in range(m) if degree[v] == 1)
    import heapq

    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def all_labelled_trees(m):
    if m == 1:
        yield []
        return
    if m == 2:
        yield [(0, 1)]
        return
    for seq in itertools.product(range(m), repeat=m - 2):
        yield prufer_to_edges(seq, m)


class TestEnumeration:
    def test_counts(self):
        counts = Counter(t.vcount for t, _ in enum_trees(7))
        assert dict(counts) == TREE_COUNTS

    def test_single_vertex(self):
        (tree, aut), = [(t, a) for t, a in enum_trees(1)]
        assert tree.vcount == 1 and tree.edges == () and aut == 1

    def test_four_vertex_automorphisms(self):
        auts = sorted(a for t, a in enum_trees(4) if t.vcount == 4)
        assert auts == [2, 6]  # path and star

    def test_cayley_formula(self):
        trees = enum_trees(8)
        for m in range(2, 9):
            total = sum(Fraction(factorial(m), a) for t, a in trees if t.vcount == m)
            assert total == m ** (m - 2)

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6, 7])
    def test_against_labelled_census(self, m):
        # classify every labelled tree by canonical code: the class count
        # must match the enumeration and each orbit must have size m!/|Aut|
        orbits = Counter()
        for edges in all_labelled_trees(m):
            orbits[tree_code(m, edges)] += 1
        reps = {t.canonical_code: a for t, a in enum_trees(m) if t.vcount == m}
        assert set(orbits) == set(reps)
        for code, labelled_count in orbits.items():
            assert labelled_count == factorial(m) // reps[code]

    @pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
    def test_codes_decide_isomorphism(self, m):
        # distinct representatives admit no edge-preserving bijection, and
        # any relabelling of a representative keeps its code
        reps = [t for t, _ in enum_trees(m) if t.vcount == m]
        for t1, t2 in itertools.combinations(reps, 2):
            e1 = {frozenset(e) for e in t1.edges}
            found = any(
                {frozenset((perm[a], perm[b])) for a, b in t2.edges} == e1
                for perm in itertools.permutations(range(m)))
            assert not found
        rng = random.Random(m)
        for t in reps:
            perm = list(range(m))
            rng.shuffle(perm)
            relabelled = [(perm[a], perm[b]) for a, b in t.edges]
            assert tree_code(m, relabelled) == t.canonical_code

    def test_vmax_validation(self):
        with pytest.raises(ValueError):
            enum_trees(0)


class TestMarkings:
    def one_vertex(self):
        return next(t for t, _ in enum_trees(1))

    def path2(self):
        return next(t for t, _ in enum_trees(2) if t.vcount == 2)

    def test_one_vertex_three_labels(self):
        got = enum_marked(self.one_vertex(), 3, (0,))
        assert len(got) == 1
        assert got[0].labels == (frozenset({1, 2, 3}),)

    def test_one_vertex_two_labels_unstable(self):
        assert enum_marked(self.one_vertex(), 2, (0,)) == []

    def test_path_degree_two_split(self):
        got = enum_marked(self.path2(), 0, (2,))
        assert len(got) == 1
        assert got[0].beta == ((1,), (1,))  # (2,0) and (0,2) are unstable

    def test_partition_validation(self):
        tree = self.path2()
        with pytest.raises(ValueError, match="disjoint"):
            MarkedTree(tree, ((0,), (0,)), ({1, 2}, {2, 3}))
        with pytest.raises(ValueError, match="cover"):
            MarkedTree(tree, ((0,), (0,)), ({1}, {3}))

    def test_weighted_marking_validation(self):
        tree = self.path2()
        wm = WeightedMarking(tree, ((1,), (0,)), (0, 3))
        assert wm.kv == (0, 3)
        with pytest.raises(ValueError):
            WeightedMarking(tree, ((1,), (0,)), (0, -1))


class TestStratumClass:
    def test_open_cell_of_four_points(self):
        w = projective_space(2)
        tree = next(t for t, _ in enum_trees(1))
        m = MarkedTree(tree, ((0,),), ({1, 2, 3, 4},))
        expected = RatFunc(UPoly((1, 1, 1))) * RatFunc(UPoly((-2, 1)))  # [P^2](u-2)
        assert stratum_class(w, m) == expected

    def test_two_vertex_boundary(self):
        w = projective_space(2)
        tree = next(t for t, _ in enum_trees(2) if t.vcount == 2)
        m = MarkedTree(tree, ((0,), (0,)), ({1, 2}, {3, 4}))
        assert stratum_class(w, m) == RatFunc(w.pw)

    def test_unstable_is_zero(self):
        w = projective_space(2)
        tree = next(t for t, _ in enum_trees(1))
        m = MarkedTree(tree, ((0,),), ({1, 2},))
        assert stratum_class(w, m) == RatFunc(0)


class TestTreeSum:
    def test_unstable_cells_vanish(self, point_run):
        for k in (0, 1, 2):
            assert point_run["oracle"].coeff(k, ()).is_zero

    def test_line_degree_one_is_point(self):
        w = projective_space(1)
        pot = tree_sum_potential(w, 0, (1,))
        assert pot.coeff(0, (1,)) == RatFunc(1)

    def test_four_point_moduli_class(self, point_run):
        # open cell (u-2)/24 plus boundary 3/24
        assert point_run["oracle"].coeff(4, ()) * 24 == RatFunc(UPoly((1, 1)))

    def test_point_classes_palindromic(self, point_run):
        for k in range(3, 8):
            p = (point_run["oracle"].coeff(k, ()) * factorial(k)).as_upoly()
            assert is_palindromic(p, k - 3)

    def test_vertex_bound(self):
        assert vertex_bound(4, (2,)) == 8
        assert vertex_bound(0, (1,)) == 1
        assert vertex_bound(2, ()) == 1  # never below one vertex

    def test_workers_agree(self):
        w = projective_space(1)
        seq = tree_sum_potential(w, 4, (2,), workers=1)
        par = tree_sum_potential(w, 4, (2,), workers=2)
        assert seq == par

    def test_weighted_route_matches_explicit_sum(self):
        # recompute a small box from scratch with independently written
        # weights over explicit (beta_v, k_v) assignments
        from stablemaps.qfield import LINE_CLASS, binom_falling
        from stablemaps.target import nclass

        w = projective_space(1)
        kmax, dmax = 3, (1,)
        got = tree_sum_potential(w, kmax, dmax)
        cells = {}
        for tree, aut in enum_trees(vertex_bound(kmax, dmax)):
            m = tree.vcount
            for betas in itertools.product(range(dmax[0] + 1), repeat=m):
                if sum(betas) > dmax[0]:
                    continue
                for kvs in itertools.product(range(kmax + 1), repeat=m):
                    if sum(kvs) > kmax:
                        continue
                    term = RatFunc(w.pw) * Fraction(1, aut)
                    for v in range(m):
                        n_v = tree.valencies[v] + kvs[v]
                        if betas[v] == 0 and n_v <= 2:
                            term = RatFunc(0)
                            break
                        term = term * nclass(w, (betas[v],)) \
                            * binom_falling(LINE_CLASS, n_v) \
                            * Fraction(factorial(n_v), factorial(kvs[v]))
                    if term.is_zero:
                        continue
                    key = (sum(kvs), (sum(betas),))
                    cells[key] = cells.get(key, RatFunc(0)) + term
        expected = MultiSeries(w.grading, kmax, dmax,
                               {k: v for k, v in cells.items() if not v.is_zero})
        assert got == expected


def labelled_cell_sum(w, k, beta):
    """The stratum-class route: sum the class of every labelled marked tree,
    weighted by 1/|Aut|; must equal k! times the tree-sum coefficient."""
    total = RatFunc(0)
    for tree, aut in enum_trees(vertex_bound(k, beta)):
        for marked in enum_marked(tree, k, beta):
            total = total + stratum_class(w, marked) * Fraction(1, aut)
    return total


class TestLabelledWeightedConsistency:
    @pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
    @pytest.mark.parametrize("b", [0, 1, 2])
    def test_line_target(self, p1_run, k, b):
        expected = p1_run["oracle"].coeff(k, (b,)) * factorial(k)
        assert labelled_cell_sum(projective_space(1), k, (b,)) == expected

    @pytest.mark.parametrize("k", [3, 4])
    def test_point_target(self, point_run, k):
        expected = point_run["oracle"].coeff(k, ()) * factorial(k)
        assert labelled_cell_sum(point_target(), k, ()) == expected
