import os
import random
import sys
import unittest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from arithmetic.scalars import Scalar
from exceptions import XiFunctionError
from lie.rootdata import build_root_system, fold, make_automorphism
from spectrum.xi import (
    OrbitMultiset,
    XiFunction,
    admissible_choices,
    alpha_inv,
    alpha_iso,
    chi_admissible,
    equivariant_with_weight,
    for_fold,
    is_admissible,
    is_equivariant,
    projection_violations,
    symmetrize,
    untwisted_multiset,
    wt0,
)


def folded(type_label, rank, perm):
    rs = build_root_system(type_label, rank)
    return fold(rs, make_automorphism(rs, perm))


class XiFunctionTestCase(unittest.TestCase):
    def setUp(self):
        self.fd = folded("A", 2, (1, 0))

    def test_zero_weights_are_dropped(self):
        xi = for_fold(self.fd, {1: (0, 0), 2: (1, 0)})
        self.assertEqual(len(xi), 1)
        self.assertEqual(xi(1), (0, 0))
        self.assertEqual(xi.wt(), (1, 0))

    def test_rejects_bad_entries(self):
        with self.assertRaises(XiFunctionError):
            for_fold(self.fd, {0: (1, 0)})
        with self.assertRaises(XiFunctionError):
            for_fold(self.fd, {1: (1, -1)})
        with self.assertRaises(XiFunctionError):
            for_fold(self.fd, {1: (1,)})

    def test_addition_merges_points(self):
        a = for_fold(self.fd, {1: (1, 0)})
        b = for_fold(self.fd, {1: (0, 1), 3: (1, 0)})
        self.assertEqual((a + b).to_dict(), {"1": [1, 1], "3": [1, 0]})

    def test_from_dict(self):
        chi = symmetrize(for_fold(self.fd, {1: (1, 0)}), self.fd)
        self.assertEqual(XiFunction.from_dict({"1": [1, 0], "-1": [0, 1]}, 2, 2), chi)


class EquivarianceTestCase(unittest.TestCase):
    def setUp(self):
        self.fd = folded("A", 2, (1, 0))
        self.chi = symmetrize(for_fold(self.fd, {1: (1, 0)}), self.fd)

    def test_symmetrize(self):
        self.assertEqual(self.chi.to_dict(), {"-1": [0, 1], "1": [1, 0]})
        self.assertTrue(is_equivariant(self.chi, self.fd))
        self.assertFalse(is_equivariant(for_fold(self.fd, {1: (1, 0)}), self.fd))

    def test_admissible_restriction(self):
        self.assertFalse(is_admissible(self.chi, 2))
        self.assertEqual(len(admissible_choices(self.chi, self.fd)), 2)
        xi = chi_admissible(self.chi, self.fd)
        self.assertEqual(xi.to_dict(), {"-1": [0, 1]})
        self.assertTrue(is_admissible(xi, 2))
        other = chi_admissible(self.chi, self.fd, [Scalar(1, 0, 2)])
        self.assertEqual(other.to_dict(), {"1": [1, 0]})
        self.assertEqual(wt0(self.chi, self.fd), (1,))

    def test_non_equivariant_rejected(self):
        with self.assertRaises(XiFunctionError):
            chi_admissible(for_fold(self.fd, {1: (1, 0)}), self.fd)

    def test_bad_choice_rejected(self):
        with self.assertRaises(XiFunctionError):
            chi_admissible(self.chi, self.fd, [Scalar(1, 0, 2), Scalar(-1, 0, 2)])

    def test_projection(self):
        self.assertEqual(projection_violations(self.chi, self.fd), [])
        self.assertTrue(projection_violations(for_fold(self.fd, {1: (1, 0)}), self.fd))


class OrbitMultisetTestCase(unittest.TestCase):
    def test_alpha_on_a2_fold(self):
        fd = folded("A", 2, (1, 0))
        chi = symmetrize(for_fold(fd, {2: (1, 1)}), fd)
        fhat = alpha_iso(chi, fd)
        self.assertEqual(fhat.wt(), (2,))
        self.assertEqual(alpha_inv(fhat, fd), chi)

    def test_fixed_node_counts_halve(self):
        fd = folded("A", 3, (2, 1, 0))
        chi = symmetrize(for_fold(fd, {2: (0, 1, 0)}), fd)
        self.assertEqual(chi.to_dict(), {"-2": [0, 1, 0], "2": [0, 1, 0]})
        fhat = alpha_iso(chi, fd)
        self.assertEqual(fhat.wt(), (0, 1))
        self.assertEqual([str(k) for k in fhat.values(1)], ["4"])
        self.assertEqual(alpha_inv(fhat, fd), chi)

    def test_sum_and_equality(self):
        fd = folded("A", 3, (2, 1, 0))
        a = OrbitMultiset.for_fold(fd)
        a.add(0, Scalar(3, 0, 2))
        b = OrbitMultiset.for_fold(fd)
        b.add(0, Scalar(3, 0, 2), 2)
        b.add(1, Scalar(-1, 0, 2))
        total = a + b
        self.assertEqual(total.wt(), (3, 1))
        self.assertNotEqual(total, b)
        self.assertEqual(OrbitMultiset.from_dict(total.to_dict(), fd.stab_sizes, 2), total)

    def test_negative_multiplicity(self):
        fd = folded("A", 3, (2, 1, 0))
        with self.assertRaises(XiFunctionError):
            OrbitMultiset.for_fold(fd).add(0, Scalar(1, 0, 2), -1)

    def test_untwisted_multiset(self):
        fd = folded("A", 2, (1, 0))
        xi = for_fold(fd, {1: (2, 0), 3: (0, 1)})
        self.assertEqual(untwisted_multiset(xi).wt(), (2, 1))


class SamplingTestCase(unittest.TestCase):
    def test_equivariant_with_weight(self):
        rng = random.Random(7)
        for args, lam0 in (((("A", 3, (2, 1, 0))), (1, 1)), ((("D", 4, (2, 1, 3, 0))), (1, 0))):
            fd = folded(*args)
            for _ in range(3):
                chi = equivariant_with_weight(rng, fd, lam0)
                self.assertTrue(is_equivariant(chi, fd))
                self.assertEqual(wt0(chi, fd), lam0)


if __name__ == "__main__":
    unittest.main()
