import os
import sys
import unittest
from fractions import Fraction

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from arithmetic.linalg import vec_scale
from arithmetic.scalars import Scalar
from lie.liealg import build_folded_algebra
from lie.looplie import (
    LoopElement,
    ell_for_root,
    ideal_for_points,
    is_twisted_member,
    loop_bracket,
    small_subalgebra,
    truncate_at_points,
)


class LoopBracketTestCase(unittest.TestCase):
    def test_degrees_add(self):
        folded = build_folded_algebra("A", 1)
        alg = folded.alg
        x = LoopElement.monomial({alg.x_plus(0): 1}, 2)
        y = LoopElement.monomial({alg.x_minus(0): 1}, -1)
        self.assertEqual(loop_bracket(alg, x, y), LoopElement.monomial({alg.h(0): 1}, 1))

    def test_twisted_membership(self):
        folded = build_folded_algebra("A", 2, (1, 0))
        alg = folded.alg
        e0 = folded.twisted.x_plus[0][0]
        self.assertTrue(is_twisted_member(folded.lifted, LoopElement.monomial(e0, 0)))
        self.assertFalse(is_twisted_member(folded.lifted, LoopElement.monomial({alg.x_plus(0): 1}, 0)))


class TruncationTestCase(unittest.TestCase):
    def test_untwisted_dimension(self):
        folded = build_folded_algebra("A", 2)
        lie = truncate_at_points(folded, {Scalar(1): 2}, twisted=False)
        self.assertEqual(lie.dim, 16)
        self.assertEqual(len(lie.cartan_part()), 4)

    def test_twisted_dimension(self):
        folded = build_folded_algebra("A", 2, (1, 0))
        lie = truncate_at_points(folded, {Scalar(1, 0, 2): 1}, twisted=True)
        self.assertEqual(lie.dim, 8)
        self.assertEqual(lie.grade_dims(), [3, 5])

    def test_orbit_points_share_a_factor(self):
        q = ideal_for_points(2, {Scalar(1, 0, 2): 1, Scalar(-1, 0, 2): 1}, twisted=True)
        self.assertEqual(q.degree, 1)

    def test_jacobi_on_truncations(self):
        folded = build_folded_algebra("A", 2, (1, 0))
        for twisted in (False, True):
            lie = truncate_at_points(folded, {Scalar(2, 0, 2): 2}, twisted=twisted)
            self.assertEqual(lie.jacobi_violations(limit=1), [])
            self.assertEqual(lie.grading_violations(), [])

    def test_evaluation_at_a_single_point(self):
        folded = build_folded_algebra("A", 1)
        alg = folded.alg
        lie = truncate_at_points(folded, {Scalar(2): 1}, twisted=False)
        x = {alg.x_plus(0): 1}
        far = lie.coords(LoopElement.monomial(x, 3))
        near = lie.coords(LoopElement.monomial(x, 0))
        self.assertEqual(far, vec_scale(near, 8))
        inverse = lie.coords(LoopElement.monomial(x, -1))
        self.assertEqual(inverse, vec_scale(near, Fraction(1, 2)))

    def test_evaluation_rank(self):
        folded = build_folded_algebra("A", 1)
        lie = truncate_at_points(folded, {Scalar(1): 1, Scalar(2): 1}, twisted=False)
        self.assertEqual(lie.evaluation_rank([Scalar(1), Scalar(2)]), 6)

    def test_triangular_parts(self):
        folded = build_folded_algebra("A", 2, (1, 0))
        lie = truncate_at_points(folded, {Scalar(1, 0, 2): 1}, twisted=True)
        self.assertEqual(len(lie.n_minus()) + len(lie.cartan_part()) + len(lie.n_plus()), lie.dim)
        self.assertEqual(len(lie.n_minus()), len(lie.n_plus()))


class SmallSubalgebraTestCase(unittest.TestCase):
    def test_a2_fold_short_root(self):
        folded = build_folded_algebra("A", 2, (1, 0))
        sub = small_subalgebra(folded, 0)
        self.assertEqual([c.name for c in sub.copies], ["alpha", "2alpha"])
        self.assertEqual(sub.sl3_violations, [])
        for copy in sub.copies:
            self.assertEqual(copy.relation_violations(folded.alg), [], copy.name)
        self.assertEqual(ell_for_root(folded.fd, 0), 2)

    def test_a3_fold_copies(self):
        folded = build_folded_algebra("A", 3, (2, 1, 0))
        fd = folded.fd
        for k0 in range(len(fd.positive_roots0)):
            sub = small_subalgebra(folded, k0)
            self.assertEqual(len(sub.copies), 1)
            self.assertEqual(sub.main.relation_violations(folded.alg), [], k0)
            for q in range(-1, 2):
                self.assertTrue(is_twisted_member(folded.lifted, sub.main.e(q)))
                self.assertTrue(is_twisted_member(folded.lifted, sub.main.f(q)))
            self.assertEqual(ell_for_root(fd, k0), 1 if fd.is_short(k0) else 2)

    def test_untwisted_copy(self):
        folded = build_folded_algebra("A", 2)
        sub = small_subalgebra(folded, 0)
        self.assertEqual(sub.main.step, 1)
        self.assertEqual(sub.main.relation_violations(folded.alg), [])


if __name__ == "__main__":
    unittest.main()
