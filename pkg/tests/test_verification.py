import os
import sys
import unittest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from lie.liealg import build_folded_algebra
from spectrum.xi import for_fold, symmetrize
from weylmod.verification import fundamental_dims, verify_embedding_chain


class EmbeddingChainTestCase(unittest.TestCase):
    def setUp(self):
        self.folded = build_folded_algebra("A", 2, (1, 0))
        fd = self.folded.fd
        self.chis = [
            symmetrize(for_fold(fd, {1: (1, 0)}), fd),
            symmetrize(for_fold(fd, {2: (0, 1)}), fd),
            symmetrize(for_fold(fd, {3: (1, 0)}), fd),
        ]

    def test_a2_fold_fundamental(self):
        report = verify_embedding_chain(self.folded, (1,), self.chis)
        self.assertTrue(report.passed, report.to_dict())
        self.assertEqual([e.dimension for e in report.entries], [3, 3, 3])
        self.assertEqual([e.direct_dimension for e in report.entries], [3, 3, 3])
        self.assertEqual(report.fundamental_dims, {0: 3, 1: 3})
        self.assertEqual(report.control, {})

    def test_a2_fold_height_two(self):
        fd = self.folded.fd
        chis = [
            symmetrize(for_fold(fd, {1: (2, 0)}), fd),
            symmetrize(for_fold(fd, {1: (1, 0), 2: (1, 0)}), fd),
            symmetrize(for_fold(fd, {1: (1, 1)}), fd),
        ]
        report = verify_embedding_chain(self.folded, (2,), chis)
        self.assertTrue(report.passed, report.to_dict())
        self.assertEqual([e.dimension for e in report.entries], [9, 9, 9])
        self.assertEqual([e.direct_dimension for e in report.entries], [9, 9, 9])

    def test_non_admissible_control(self):
        fd = self.folded.fd
        report = verify_embedding_chain(self.folded, (2,), [symmetrize(for_fold(fd, {1: (2, 0)}), fd)], direct=False)
        control = report.control
        self.assertTrue(control)
        self.assertEqual(control["dimension"], 9)
        self.assertLess(control["twisted_generated"], control["dimension"])
        self.assertEqual(len(control["xi"]), 2)

    def test_wrong_restricted_weight(self):
        report = verify_embedding_chain(self.folded, (2,), self.chis[:1])
        self.assertFalse(report.checks["weights_match"])
        self.assertFalse(report.passed)
        self.assertTrue(report.witnesses)

    def test_report_serializes(self):
        data = verify_embedding_chain(self.folded, (1,), self.chis[:1], direct=False).to_dict()
        self.assertEqual(data["lambda0"], [1])
        self.assertIsNone(data["entries"][0]["direct_dimension"])
        self.assertEqual(data["fundamental_dimensions"], {"1": 3, "2": 3})

    def test_a3_fold(self):
        folded = build_folded_algebra("A", 3, (2, 1, 0))
        fd = folded.fd
        chis = [
            symmetrize(for_fold(fd, {2: (1, 0, 0)}), fd),
            symmetrize(for_fold(fd, {3: (0, 0, 1)}), fd),
            symmetrize(for_fold(fd, {5: (1, 0, 0)}), fd),
        ]
        report = verify_embedding_chain(folded, (1, 0), chis)
        self.assertTrue(report.passed, report.to_dict())
        self.assertEqual([e.dimension for e in report.entries], [4, 4, 4])
        self.assertEqual(report.fundamental_dims, {0: 4, 1: 6, 2: 4})
        self.assertEqual(fundamental_dims(folded), {0: 4, 1: 6, 2: 4})


if __name__ == "__main__":
    unittest.main()
