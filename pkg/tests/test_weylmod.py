import os
import random
import sys
import unittest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from arithmetic.scalars import Scalar
from exceptions import DepthNotStabilizedError, ModuleConstructionError
from lie.liealg import build_folded_algebra
from lie.looplie import truncate_at_points
from spectrum.xi import for_fold, symmetrize
from weylmod.local_weyl import (
    build_local_weyl_direct,
    build_local_weyl_twisted,
    build_local_weyl_untwisted,
    evaluation_module,
    loop_character,
)
from weylmod.module import generated_submodule, pullback, tensor_modules
from weylmod.pbw import PBWContext, normal_form_action_violations, pbw_straighten, word_violations


class PBWTestCase(unittest.TestCase):
    def setUp(self):
        folded = build_folded_algebra("A", 2)
        self.lie = truncate_at_points(folded, {Scalar(1): 2}, twisted=False)
        xi = for_fold(folded.fd, {1: (1, 1)})
        self.ctx = PBWContext(self.lie, loop_character(self.lie, xi))

    def test_sorted_word_is_fixed(self):
        word = tuple(self.ctx.n_minus[:3])
        self.assertEqual(pbw_straighten(word, self.lie), {word: 1})

    def test_confluence(self):
        rng = random.Random(3)
        plus, minus = self.lie.n_plus(), self.lie.n_minus()
        words = [(plus[0], minus[0], plus[-1]), (plus[-1], minus[1], minus[0], plus[1])]
        for word in words:
            self.assertEqual(word_violations(self.ctx, word, rng), [])
            self.assertEqual(normal_form_action_violations(self.ctx, word), [])


class LocalWeylTestCase(unittest.TestCase):
    def test_sl2_dimensions(self):
        folded = build_folded_algebra("A", 1)
        for m, dim in ((1, 2), (2, 4), (3, 8)):
            module = build_local_weyl_untwisted(folded, for_fold(folded.fd, {1: (m,)}))
            self.assertEqual(module.dim, dim, m)

    def test_deepening_history(self):
        folded = build_folded_algebra("A", 1)
        module = build_local_weyl_untwisted(folded, for_fold(folded.fd, {2: (2,)}))
        self.assertEqual(module.stabilization.history, [3, 4, 4])
        self.assertEqual(module.stabilization.depth, 2)

    def test_depth_cap(self):
        folded = build_folded_algebra("A", 1)
        with self.assertRaises(DepthNotStabilizedError) as ctx:
            build_local_weyl_untwisted(folded, for_fold(folded.fd, {1: (2,)}), depth=1, max_depth=2)
        self.assertEqual(ctx.exception.history, [3, 4])

    def test_sl3_fundamental(self):
        folded = build_folded_algebra("A", 2)
        module = build_local_weyl_untwisted(folded, for_fold(folded.fd, {3: (1, 0)}))
        self.assertEqual(module.dim, 3)
        self.assertTrue(all(module.relation_flags().values()), module.relation_flags())
        self.assertEqual(module.bracket_violations(), [])

    def test_trivial_module(self):
        folded = build_folded_algebra("A", 2)
        self.assertEqual(build_local_weyl_untwisted(folded, for_fold(folded.fd)).dim, 1)

    def test_wrong_algebra(self):
        folded = build_folded_algebra("A", 2)
        other = build_folded_algebra("A", 2, (1, 0))
        with self.assertRaises(ModuleConstructionError):
            build_local_weyl_untwisted(folded, for_fold(other.fd, {1: (1, 0)}))


class EvaluationModuleTestCase(unittest.TestCase):
    def test_adjoint(self):
        folded = build_folded_algebra("A", 2)
        module = evaluation_module(folded, (1, 1), 1)
        self.assertEqual(module.dim, 8)
        self.assertEqual(module.character()[(0, 0)], 2)

    def test_zero_point(self):
        folded = build_folded_algebra("A", 1)
        with self.assertRaises(ModuleConstructionError):
            evaluation_module(folded, (1,), 0)

    def test_tensor_at_distinct_points_is_cyclic(self):
        folded = build_folded_algebra("A", 1)
        points = {Scalar(1): 1, Scalar(2): 1}
        left = evaluation_module(folded, (1,), 1, points)
        right = evaluation_module(folded, (1,), 2, points)
        product = tensor_modules([left, right])
        self.assertEqual(product.dim, 4)
        self.assertEqual(product.bracket_violations(), [])
        self.assertEqual(generated_submodule(product, product.hw_vector).dim, 4)

    def test_tensor_at_one_point_is_not_cyclic(self):
        folded = build_folded_algebra("A", 1)
        module = evaluation_module(folded, (1,), 1)
        product = tensor_modules([module, module])
        self.assertEqual(generated_submodule(product, product.hw_vector).dim, 3)

    def test_tensor_refines_truncations(self):
        folded = build_folded_algebra("A", 1)
        left = evaluation_module(folded, (1,), 1)
        right = evaluation_module(folded, (1,), 2)
        product = tensor_modules([left, right])
        self.assertEqual(product.lie.q.degree, 2)
        self.assertEqual(product.dim, 4)
        self.assertEqual(product.bracket_violations(), [])
        self.assertEqual(generated_submodule(product, product.hw_vector).dim, 4)

    def test_tensor_over_different_algebras(self):
        with self.assertRaises(ModuleConstructionError):
            tensor_modules(
                [
                    evaluation_module(build_folded_algebra("A", 1), (1,), 1),
                    evaluation_module(build_folded_algebra("A", 2), (1, 0), 1),
                ]
            )

    def test_pullback(self):
        folded = build_folded_algebra("A", 1)
        module = evaluation_module(folded, (1,), 1)
        self.assertIs(pullback(module, module.lie), module)
        bigger = truncate_at_points(folded, {Scalar(1): 2, Scalar(3): 1}, twisted=False)
        pulled = pullback(module, bigger)
        self.assertEqual(pulled.dim, 2)
        self.assertEqual(pulled.bracket_violations(), [])
        self.assertTrue(all(pulled.relation_flags().values()), pulled.relation_flags())
        with self.assertRaises(ModuleConstructionError):
            pullback(module, truncate_at_points(folded, {Scalar(3): 1}, twisted=False))

    def test_deep_truncation_at_point(self):
        folded = build_folded_algebra("A", 1)
        with self.assertRaises(ModuleConstructionError):
            evaluation_module(folded, (1,), 1, {Scalar(1): 2})


class TwistedModuleTestCase(unittest.TestCase):
    def setUp(self):
        self.folded = build_folded_algebra("A", 2, (1, 0))
        self.chi = symmetrize(for_fold(self.folded.fd, {1: (1, 0)}), self.folded.fd)

    def test_restriction(self):
        module = build_local_weyl_twisted(self.folded, self.chi)
        self.assertEqual(module.dim, 3)
        self.assertEqual(module.character_g0(), {(2,): 1, (0,): 1, (-2,): 1})
        self.assertEqual(generated_submodule(module, module.hw_vector, twisted_only=True).dim, 3)

    def test_direct_presentation(self):
        module = build_local_weyl_direct(self.folded, self.chi)
        self.assertEqual(module.dim, 3)
        self.assertTrue(module.lie.twisted)
        self.assertTrue(all(module.relation_flags().values()), module.relation_flags())

    def test_direct_at_stable_depth(self):
        chi = symmetrize(for_fold(self.folded.fd, {1: (2, 0)}), self.folded.fd)
        twisted = build_local_weyl_twisted(self.folded, chi)
        direct = build_local_weyl_direct(self.folded, chi, at_depth=twisted.stabilization.depth)
        self.assertEqual(direct.dim, twisted.dim)
        self.assertEqual(direct.dim, 9)
        self.assertEqual(direct.stabilization.history, [9])

    def test_untwisted_module_has_no_view(self):
        module = build_local_weyl_untwisted(self.folded, for_fold(self.folded.fd, {1: (1, 0)}))
        with self.assertRaises(ModuleConstructionError):
            generated_submodule(module, module.hw_vector, twisted_only=True)


if __name__ == "__main__":
    unittest.main()
