import os
import sys
import unittest
from fractions import Fraction

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from arithmetic.linalg import EchelonBasis, nullspace, rank, vec_add
from arithmetic.polynomials import Poly, PowerTable, lcm_of_root_polys
from arithmetic.scalars import Scalar, zeta_power
from exceptions import TruncationError


class EchelonTestCase(unittest.TestCase):
    def test_rank_and_dependency(self):
        vectors = [{0: 1, 1: 2}, {1: 1, 2: 1}, {0: 1, 1: 3, 2: 1}]
        self.assertEqual(rank(vectors), 2)
        basis = EchelonBasis(track=True)
        self.assertTrue(basis.add(vectors[0]))
        self.assertTrue(basis.add(vectors[1]))
        self.assertFalse(basis.add(vectors[2]))
        self.assertEqual(basis.last_relation, {2: 1, 0: -1, 1: -1})

    def test_reduce_and_contains(self):
        basis = EchelonBasis()
        basis.add({"a": 2, "b": 2})
        self.assertTrue(basis.contains({"a": 1, "b": 1}))
        self.assertEqual(basis.reduce({"a": 1}), {"b": -1})

    def test_nullspace(self):
        columns = [{0: 1}, {1: 1}, {0: 1, 1: 1}]
        kernel = nullspace(columns)
        self.assertEqual(len(kernel), 1)
        total = {}
        for j, c in kernel[0].items():
            vec_add(total, columns[j], c)
        self.assertEqual(total, {})

    def test_solve_over_cyclotomic(self):
        z = zeta_power(3, 1)
        vectors = [{0: Scalar(1, 0, 3), 1: z}, {1: Scalar(1, 0, 3)}]
        target = {0: z, 1: z * z + 1}
        basis = EchelonBasis(track=True)
        for vector in vectors:
            basis.add(vector)
        coeffs = basis.express(target)
        self.assertIsNotNone(coeffs)
        self.assertEqual(coeffs[0], z)
        partial = EchelonBasis(track=True)
        partial.add(vectors[0])
        self.assertIsNone(partial.express({1: 1}))

    def test_custom_order(self):
        basis = EchelonBasis(order=lambda key: -key)
        basis.add({0: 1, 5: 1})
        self.assertEqual(basis.pivots(), [5])


class PolynomialTestCase(unittest.TestCase):
    def test_from_roots(self):
        q = Poly.from_roots({Scalar(1): 2}, 1)
        self.assertEqual(q.to_strings(), ["1", "-2", "1"])
        self.assertEqual(q(1), 0)

    def test_lcm(self):
        a = Poly.from_roots({Scalar(1): 2, Scalar(2): 1}, 1)
        b = Poly.from_roots({Scalar(1): 1, Scalar(3): 1}, 1)
        lcm = lcm_of_root_polys([a, b])
        self.assertEqual(lcm.degree, 4)
        self.assertTrue(a.divides(lcm))
        self.assertTrue(b.divides(lcm))

    def test_negative_powers(self):
        q = Poly.from_roots({Scalar(2): 2}, 1)
        table = PowerTable(q)
        product = table.multiply(table.power(3), table.power(-3))
        self.assertEqual(product, table.power(0))

    def test_zero_root_rejected(self):
        with self.assertRaises(TruncationError):
            PowerTable(Poly([0, 1], 1))

    def test_reduction_matches_evaluation(self):
        q = Poly.from_roots({Scalar(Fraction(1, 2)): 1, Scalar(3): 1}, 1)
        coords = PowerTable(q).power(5)
        # u^5 mod q agrees with u^5 at the simple roots of q
        for root in (Fraction(1, 2), 3):
            value = sum(c * root ** i for i, c in enumerate(coords))
            self.assertEqual(value, Fraction(root) ** 5)


if __name__ == "__main__":
    unittest.main()
