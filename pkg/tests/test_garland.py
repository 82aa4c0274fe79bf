import os
import sys
import unittest
from fractions import Fraction

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from lie.liealg import build_folded_algebra
from lie.looplie import ell_for_root, small_subalgebra
from spectrum.xi import for_fold, symmetrize
from weylmod.garland import garland_coeffs, garland_suite, series_violations, sympy_coefficients, verify_garland
from weylmod.local_weyl import build_local_weyl_twisted, build_local_weyl_untwisted, evaluation_module


class GarlandSeriesTestCase(unittest.TestCase):
    def test_low_order_coefficients(self):
        series = garland_coeffs(0, 1, 2)
        self.assertEqual(series.coefficients[0], {(0, 0): 1})
        self.assertEqual(series.coefficients[1], {(1, 0): -1})
        self.assertEqual(series.coefficients[2], {(2, 0): Fraction(1, 2), (0, 1): Fraction(-1, 2)})
        self.assertEqual(series.evaluate(2, {1: 2, 2: 2}), 1)
        self.assertEqual(series.variables_used(1), [1])

    def test_matches_symbolic_expansion(self):
        self.assertEqual(sympy_coefficients(3), garland_coeffs(0, 1, 3).coefficients)
        self.assertEqual(series_violations(5), [])


class GarlandIdentityTestCase(unittest.TestCase):
    def test_sl2_local_weyl(self):
        folded = build_folded_algebra("A", 1)
        module = build_local_weyl_untwisted(folded, for_fold(folded.fd, {2: (2,)}))
        checks = garland_suite(module, folded)
        self.assertTrue(checks)
        self.assertTrue(all(check.passed for check in checks), [c.to_dict() for c in checks if not c.passed])
        self.assertTrue(any(check.corollary_holds for check in checks))

    def test_twisted_a2(self):
        folded = build_folded_algebra("A", 2, (1, 0))
        chi = symmetrize(for_fold(folded.fd, {1: (1, 0)}), folded.fd)
        module = build_local_weyl_twisted(folded, chi)
        checks = garland_suite(module, folded, margin=2)
        self.assertEqual({check.copy for check in checks}, {"alpha", "2alpha"})
        self.assertTrue(all(check.passed for check in checks), [c.to_dict() for c in checks if not c.passed])

    def test_short_root_steps_by_two(self):
        folded = build_folded_algebra("A", 2, (1, 0))
        self.assertTrue(folded.fd.is_short(0))
        self.assertEqual(ell_for_root(folded.fd, 0), 2)
        sub = small_subalgebra(folded, 0)
        self.assertEqual(
            [(c.name, c.step, c.shifts) for c in sub.copies], [("alpha", 2, (0, 0, 0)), ("2alpha", 2, (1, -1, 0))]
        )
        module = build_local_weyl_twisted(folded, symmetrize(for_fold(folded.fd, {1: (2, 0)}), folded.fd))
        double = sub.copies[1]
        for r in range(4):
            check = verify_garland(module, double, r)
            self.assertTrue(check.passed, check.to_dict())

    def test_sl2_height_three(self):
        folded = build_folded_algebra("A", 1)
        module = build_local_weyl_untwisted(folded, for_fold(folded.fd, {2: (3,)}))
        self.assertEqual(module.dim, 8)
        checks = garland_suite(module, folded, margin=2)
        self.assertEqual({check.lam_alpha for check in checks}, {3})
        self.assertEqual(max(check.r for check in checks), 5)
        self.assertTrue(all(check.passed for check in checks), [c.to_dict() for c in checks if not c.passed])
        self.assertTrue(all(check.corollary_holds for check in checks if check.r >= 3))

    def test_twisted_a3(self):
        folded = build_folded_algebra("A", 3, (2, 1, 0))
        fd = folded.fd
        module = build_local_weyl_twisted(folded, symmetrize(for_fold(fd, {1: (1, 0, 0)}), fd))
        checks = garland_suite(module, folded, margin=2)
        self.assertEqual({check.k0 for check in checks}, set(range(len(fd.positive_roots0))))
        self.assertEqual({ell_for_root(fd, k0) for k0 in range(len(fd.positive_roots0))}, {1, 2})
        self.assertTrue(all(check.passed for check in checks), [c.to_dict() for c in checks if not c.passed])

    def test_corrupted_cartan_action_fails(self):
        folded = build_folded_algebra("A", 1)
        module = evaluation_module(folded, (1,), 2)
        copy = small_subalgebra(folded, 0).main
        self.assertTrue(verify_garland(module, copy, 1).passed)
        h = module.lie.cartan_part()[0]
        module.actions[h][0] = {0: 3}
        check = verify_garland(module, copy, 1)
        self.assertFalse(check.identity_holds)
        self.assertEqual(check.lam_alpha, 3)
        self.assertTrue(check.witness)


if __name__ == "__main__":
    unittest.main()
