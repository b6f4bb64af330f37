#!/usr/bin/env python3
"""
Test Suite for Nilpotent Module
Tests Engel reductions, isotropic fixed vectors and conjugation into u_max
"""

import unittest
import sys
import os
import random

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

try:
    from backend.nilpotent import (
        NilpotentAlgebra,
        common_annihilated_vector,
        conjugate_into_umax,
        engel_harness,
        engel_reduction,
        isotropic_fixed_vector,
        isotropic_reduction,
        lie_span,
        null_vector_transport,
        random_lorentz_unipotent,
        random_orthogonal,
        random_parabolic_unipotent,
        reflection,
    )
    from backend.exactmath import ExactMatrix, SymmetricForm
    from backend.families import lorentz_gram, make_algebra, umax_labels
    from backend.config import Config
    from backend.errors import ContractViolation, DomainError
    HAS_NILPOTENT = True
except ImportError:
    HAS_NILPOTENT = False


def _unit(size, i, j):
    return ExactMatrix.unit(size, size, i, j)


@unittest.skipUnless(HAS_NILPOTENT, "Nilpotent module not available")
class TestEngelReduction(unittest.TestCase):

    def test_jordan_block(self):
        jordan = ExactMatrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        self.assertEqual(common_annihilated_vector(NilpotentAlgebra.of([jordan])), (1, 0, 0))

    def test_strictly_upper_triangular(self):
        alg = NilpotentAlgebra.of([_unit(4, 0, 1), _unit(4, 1, 2), _unit(4, 2, 3)])
        self.assertEqual(len(lie_span(alg.generators, 4)), 6)
        result = engel_reduction(alg)
        self.assertEqual(result.vector, (1, 0, 0, 0))
        self.assertLessEqual(result.steps, 4)
        self.assertEqual(result.dims[0], 4)

    def test_zero_algebra(self):
        alg = NilpotentAlgebra.of([ExactMatrix.zeros(3, 3)])
        self.assertTrue(alg.annihilates(common_annihilated_vector(alg)))

    def test_rejects_non_nilpotent_generator(self):
        with self.assertRaises(ContractViolation):
            NilpotentAlgebra.of([ExactMatrix.identity(2)])

    def test_rejects_bad_shapes(self):
        with self.assertRaises(DomainError):
            NilpotentAlgebra((ExactMatrix.zeros(2, 2),), 3)
        with self.assertRaises(DomainError):
            NilpotentAlgebra.of([])

    def test_rejects_non_skew_generator(self):
        with self.assertRaises(ContractViolation):
            NilpotentAlgebra.of([_unit(4, 0, 1)], form=lorentz_gram(4))


@unittest.skipUnless(HAS_NILPOTENT, "Nilpotent module not available")
class TestIsotropicVectors(unittest.TestCase):

    def setUp(self):
        g = make_algebra("o1k", k=3)
        self.root_vectors = [g.realization[i] for i in g.meta["layout"].alpha]
        self.form = SymmetricForm(lorentz_gram(4))

    def test_root_vector_fixes_first_basis_vector(self):
        alg = NilpotentAlgebra.of(self.root_vectors[:1], form=self.form)
        self.assertEqual(isotropic_fixed_vector(alg), (1, 0, 0, 0))

    def test_whole_root_space(self):
        alg = NilpotentAlgebra.of(self.root_vectors, form=self.form)
        v = isotropic_fixed_vector(alg)
        self.assertTrue(alg.annihilates(v))
        self.assertEqual(self.form.value(v, v), 0)

    def test_abelian_derived_algebra_convention(self):
        result = isotropic_reduction(NilpotentAlgebra.of([], form=self.form))
        self.assertEqual(result.vector, (1, 0, 0, 0))
        self.assertEqual(result.steps, 0)

    def test_needs_a_form(self):
        with self.assertRaises(DomainError):
            isotropic_reduction(NilpotentAlgebra.of(self.root_vectors[:1]))

    def test_random_conjugates(self):
        rng = random.Random(5)
        for _ in range(3):
            alg = random_lorentz_unipotent(rng, 3, generators=2)
            v = isotropic_fixed_vector(alg)
            self.assertTrue(alg.annihilates(v))
            self.assertEqual(alg.form.value(v, v), 0)


@unittest.skipUnless(HAS_NILPOTENT, "Nilpotent module not available")
class TestReflections(unittest.TestCase):

    def setUp(self):
        self.gram = lorentz_gram(4)

    def test_reflection_is_orthogonal(self):
        r = reflection(self.gram, (1, 1, 0, 0))
        self.assertEqual(r.transpose() @ self.gram @ r, self.gram)
        self.assertEqual(r @ r, ExactMatrix.identity(4))

    def test_null_vector_rejected(self):
        with self.assertRaises(DomainError):
            reflection(self.gram, (1, 0, 0, 0))

    def test_transport_to_null_vector(self):
        h = null_vector_transport(self.gram, (0, 0, 0, 1))
        self.assertEqual(h.apply((1, 0, 0, 0)), (0, 0, 0, 1))
        self.assertEqual(null_vector_transport(self.gram, (2, 0, 0, 0)), ExactMatrix.identity(4))

    def test_random_orthogonal_preserves_form(self):
        h = random_orthogonal(random.Random(2), self.gram, reflections=3)
        self.assertEqual(h.transpose() @ self.gram @ h, self.gram)


@unittest.skipUnless(HAS_NILPOTENT, "Nilpotent module not available")
class TestConjugation(unittest.TestCase):

    def test_umax_needs_no_conjugation(self):
        g = make_algebra("o2n", n=4)
        alg = NilpotentAlgebra.of([g.realization[g.index(label)] for label in umax_labels(4)])
        conjugator, inside = conjugate_into_umax(alg)
        self.assertTrue(inside)
        self.assertEqual(conjugator, ExactMatrix.identity(6))

    def test_random_conjugates_come_back(self):
        rng = random.Random(9)
        for n in (3, 4, 5):
            result = conjugate_into_umax(random_parabolic_unipotent(rng, n, generators=2))
            self.assertTrue(result.inside, result.to_dict())
            self.assertIsNone(result.offending)

    def test_generator_outside_parabolic(self):
        g = make_algebra("o2n", n=3)
        with self.assertRaises(DomainError):
            conjugate_into_umax(NilpotentAlgebra.of([g.realization[g.index("c")]]))

    def test_harness(self):
        config = Config()
        config.SHOW_PROGRESS = False
        report = engel_harness(4, trials=3, seed=5, config=config)
        self.assertTrue(report.passed, report.to_dict())
        self.assertEqual(report.isotropic_passed, 3)
        with self.assertRaises(DomainError):
            engel_harness(2, trials=1, config=config)

if __name__ == '__main__':
    unittest.main()
