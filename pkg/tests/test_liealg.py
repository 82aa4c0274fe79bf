import os
import sys
import unittest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from lie.liealg import (
    automorphism_violations,
    build_chevalley,
    build_folded_algebra,
    eigen_grade,
    grading_violations,
    highest_weight_vector_count,
    jacobi_violations,
    sl2_violations,
)
from lie.rootdata import build_root_system
from utils.performance import parallel_map


class ChevalleyTestCase(unittest.TestCase):
    def test_dimensions(self):
        for t, n, dim in (("A", 1, 3), ("A", 2, 8), ("B", 2, 10), ("G", 2, 14), ("D", 4, 28)):
            self.assertEqual(build_chevalley(build_root_system(t, n)).dim, dim)

    def test_jacobi_exhaustive(self):
        for t, n in (("A", 3), ("G", 2), ("B", 2)):
            alg = build_chevalley(build_root_system(t, n))
            self.assertEqual(jacobi_violations(alg), [], f"{t}{n}")

    def test_simple_sl2_triples(self):
        alg = build_chevalley(build_root_system("A", 2))
        for k in range(alg.rs.rank):
            e, f = {alg.x_plus(k): 1}, {alg.x_minus(k): 1}
            h = alg.bracket(e, f)
            self.assertEqual(h, {alg.h(k): 1})
            self.assertEqual(sl2_violations(alg, e, f, h), [])

    def test_antisymmetry(self):
        alg = build_chevalley(build_root_system("A", 2))
        for a in range(alg.dim):
            for b in range(alg.dim):
                lhs = alg.bracket_basis(a, b)
                rhs = alg.bracket_basis(b, a)
                self.assertEqual(lhs, {k: -v for k, v in rhs.items()})


class FoldedAlgebraTestCase(unittest.TestCase):
    def test_graded_dimensions(self):
        self.assertEqual(build_folded_algebra("A", 2, (1, 0)).pieces.dims(), [3, 5])
        self.assertEqual(build_folded_algebra("A", 3, (2, 1, 0)).pieces.dims(), [10, 5])
        self.assertEqual(build_folded_algebra("D", 4, (2, 1, 3, 0)).pieces.dims(), [14, 7, 7])

    def test_automorphism_lifts(self):
        for args in (("A", 2, (1, 0)), ("A", 4, (3, 2, 1, 0)), ("D", 4, (2, 1, 3, 0))):
            folded = build_folded_algebra(*args)
            self.assertEqual(automorphism_violations(folded.lifted), [], args)
            self.assertEqual(grading_violations(folded.alg, folded.lifted, folded.pieces), [], args)

    def test_folded_cartan_two_ways(self):
        for args in (("A", 2, (1, 0)), ("A", 3, (2, 1, 0)), ("A", 4, (3, 2, 1, 0)), ("D", 4, (2, 1, 3, 0))):
            folded = build_folded_algebra(*args)
            expected = [list(row) for row in folded.fd.folded_cartan]
            self.assertEqual(folded.twisted.folded_cartan(), expected, args)

    def test_twisted_sl2_triples(self):
        folded = build_folded_algebra("A", 3, (2, 1, 0))
        for k0 in range(len(folded.fd.positive_roots0)):
            e, f, h = folded.twisted.sl2_triple(k0)
            self.assertEqual(sl2_violations(folded.alg, e, f, h), [])

    def test_a2n_has_x2alpha(self):
        folded = build_folded_algebra("A", 2, (1, 0))
        self.assertIn(0, folded.twisted.x2_plus)

    def test_graded_pieces_irreducible(self):
        for args in (("A", 2, (1, 0)), ("A", 3, (2, 1, 0)), ("D", 4, (2, 1, 3, 0))):
            folded = build_folded_algebra(*args)
            counts = [
                highest_weight_vector_count(folded.alg, folded.pieces, folded.twisted, s) for s in range(folded.m)
            ]
            self.assertEqual(counts, [1] * folded.m, args)

    def test_averaging_grades(self):
        triality = build_folded_algebra("D", 4, (2, 1, 3, 0))
        orbit, fixed = triality.twisted.averaging_report()
        self.assertEqual(orbit["grades"], [0, 1, 2])
        self.assertEqual(orbit["positive_exponent_grades"], [0, 2, 1])
        self.assertEqual(fixed["grades"], [0, None, None])
        (a2,) = build_folded_algebra("A", 2, (1, 0)).twisted.averaging_report()
        self.assertEqual(a2["grades"], a2["positive_exponent_grades"])

    def test_eigen_grade(self):
        folded = build_folded_algebra("D", 4, (2, 1, 3, 0))
        self.assertIsNone(eigen_grade(folded.lifted, {folded.alg.x_plus(0): 1}))
        self.assertEqual(eigen_grade(folded.lifted, {folded.alg.x_plus(1): 1}), 0)
        self.assertIsNone(eigen_grade(folded.lifted, {}))

    def test_cache(self):
        self.assertIs(build_folded_algebra("A", 2, (1, 0)), build_folded_algebra("a", 2, [1, 0]))

    def test_cache_under_threads(self):
        folded = parallel_map(lambda _: build_folded_algebra("C", 3), range(8), max_workers=4)
        self.assertEqual(len({id(f) for f in folded}), 1)
        self.assertIs(folded[0].alg, build_chevalley(build_root_system("C", 3)))


if __name__ == "__main__":
    unittest.main()
