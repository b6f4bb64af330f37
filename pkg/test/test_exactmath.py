#!/usr/bin/env python3
"""
Test Suite for Exact Math Module
Tests composition-algebra scalars and exact linear algebra
"""

import unittest
import sys
import os
from fractions import Fraction

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

try:
    from hypothesis import given, settings, strategies as st
    HAS_HYPOTHESIS = True
except ImportError:
    HAS_HYPOTHESIS = False

try:
    from backend.exactmath import (
        ExactMatrix,
        EchelonBasis,
        Scalar,
        SymmetricForm,
        algebra_mul,
        characteristic_polynomial,
        determinant,
        eigenspace_split,
        inverse,
        kernel,
        polynomial_at,
        rank,
        signature,
        solve,
        span_basis,
    )
    from backend.errors import ContractViolation, DecompositionError, DomainError, KindMismatchError
    HAS_EXACTMATH = True
except ImportError:
    HAS_EXACTMATH = False


def _scalars(kind, size):
    coefficient = st.fractions(min_value=-4, max_value=4, max_denominator=4)
    return st.lists(coefficient, min_size=size, max_size=size).map(lambda c: Scalar(kind, c))


@unittest.skipUnless(HAS_EXACTMATH, "Exact math module not available")
class TestScalars(unittest.TestCase):

    def test_quaternion_units(self):
        i, j, k = (Scalar.unit("quaternion", u) for u in (1, 2, 3))
        minus_one = Scalar.real("quaternion", -1)
        self.assertEqual(i * i, minus_one)
        self.assertEqual(i * j, k)
        self.assertEqual(j * i, -k)
        self.assertEqual(j * k, i)
        self.assertEqual(k * i, j)

    def test_gaussian_product(self):
        x = Scalar("gaussian", (1, 2))
        y = Scalar("gaussian", (3, -1))
        self.assertEqual(algebra_mul(x, y), Scalar("gaussian", (5, 5)))

    def test_octonions_are_not_associative(self):
        e = [Scalar.unit("octonion", u) for u in range(8)]
        found = any((e[a] * e[b]) * e[c] != e[a] * (e[b] * e[c])
                    for a in range(1, 8) for b in range(1, 8) for c in range(1, 8))
        self.assertTrue(found)

    def test_octonion_units_square_to_minus_one(self):
        for u in range(1, 8):
            e = Scalar.unit("octonion", u)
            self.assertEqual(e * e, Scalar.real("octonion", -1))

    def test_kind_mismatch(self):
        with self.assertRaises(KindMismatchError):
            algebra_mul(Scalar.one("gaussian"), Scalar.one("quaternion"))
        with self.assertRaises(KindMismatchError):
            Scalar.one("gaussian") + Scalar.one("octonion")

    def test_bad_coefficient_count(self):
        with self.assertRaises(DomainError):
            Scalar("quaternion", (1, 2))

    def test_inverse(self):
        x = Scalar("quaternion", (1, 2, -1, 3))
        self.assertEqual(x * x.inverse(), Scalar.one("quaternion"))
        with self.assertRaises(ZeroDivisionError):
            Scalar.zero("gaussian").inverse()


@unittest.skipUnless(HAS_EXACTMATH and HAS_HYPOTHESIS, "hypothesis not available")
class TestScalarLaws(unittest.TestCase):

    if HAS_EXACTMATH and HAS_HYPOTHESIS:
        @settings(max_examples=40, deadline=None)
        @given(_scalars("octonion", 8), _scalars("octonion", 8))
        def test_octonion_norm_is_multiplicative(self, x, y):
            self.assertEqual((x * y).norm(), x.norm() * y.norm())

        @settings(max_examples=40, deadline=None)
        @given(_scalars("quaternion", 4), _scalars("quaternion", 4))
        def test_quaternion_norm_is_multiplicative(self, x, y):
            self.assertEqual((x * y).norm(), x.norm() * y.norm())

        @settings(max_examples=40, deadline=None)
        @given(_scalars("octonion", 8))
        def test_conjugation_and_norm(self, x):
            self.assertEqual(x.conj().conj(), x)
            product = x * x.conj()
            self.assertTrue(product.is_real())
            self.assertEqual(product.re, x.norm())
            self.assertGreaterEqual(x.norm(), 0)
            self.assertEqual(x.norm() == 0, not x)

        @settings(max_examples=30, deadline=None)
        @given(_scalars("octonion", 8), _scalars("octonion", 8))
        def test_octonion_alternative_and_flexible_laws(self, x, y):
            self.assertEqual(x * (x * y), (x * x) * y)
            self.assertEqual((y * x) * x, y * (x * x))
            self.assertEqual((x * y) * x, x * (y * x))

        @settings(max_examples=30, deadline=None)
        @given(_scalars("octonion", 8), _scalars("octonion", 8))
        def test_conjugation_reverses_products(self, x, y):
            self.assertEqual((x * y).conj(), y.conj() * x.conj())


@unittest.skipUnless(HAS_EXACTMATH, "Exact math module not available")
class TestLinearAlgebra(unittest.TestCase):

    def setUp(self):
        self.m = ExactMatrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])

    def test_rank_and_kernel(self):
        self.assertEqual(rank(self.m), 2)
        basis = kernel(self.m)
        self.assertEqual(len(basis), 1)
        self.assertTrue(all(c == 0 for c in self.m.apply(basis[0])))
        self.assertEqual(rank(self.m) + len(basis), self.m.ncols)

    def test_solve(self):
        x = solve(self.m, (6, 12, 2))
        self.assertIsNotNone(x)
        self.assertEqual(self.m.apply(x), (6, 12, 2))
        self.assertIsNone(solve(self.m, (1, 0, 0)))

    def test_determinant_and_inverse(self):
        a = ExactMatrix([[2, 1], [1, 1]])
        self.assertEqual(determinant(a), 1)
        self.assertEqual(a @ inverse(a), ExactMatrix.identity(2))
        with self.assertRaises(DomainError):
            inverse(self.m)

    def test_fractions_stay_exact(self):
        a = ExactMatrix([[Fraction(1, 3), Fraction(1, 7)], [Fraction(2, 9), Fraction(5, 11)]])
        self.assertEqual(a @ inverse(a), ExactMatrix.identity(2))

    def test_characteristic_polynomial(self):
        rotation = ExactMatrix([[0, -1], [1, 0]])
        self.assertEqual(characteristic_polynomial(rotation), (1, 0, 1))
        self.assertTrue(polynomial_at((1, 0, 1), rotation).is_zero())

    def test_echelon_basis_express(self):
        echelon = EchelonBasis(3, [(1, 1, 0), (0, 1, 1)])
        self.assertEqual(echelon.express((1, 3, 2)), (1, 2))
        self.assertIsNone(echelon.express((0, 0, 1)))
        self.assertFalse(echelon.add((2, 3, 1)))
        self.assertEqual(len(span_basis([(1, 0), (2, 0), (0, 1)])), 2)

    def test_nilpotency_index(self):
        jordan = ExactMatrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        self.assertEqual(jordan.nilpotency_index(), 3)
        self.assertIsNone(ExactMatrix.identity(2).nilpotency_index())

    def test_realify_of_gaussian_matrix(self):
        i = Scalar.unit("gaussian", 1)
        m = ExactMatrix([[i]], kind="gaussian")
        real = m.realify()
        self.assertEqual(real.shape, (2, 2))
        self.assertEqual(real @ real, ExactMatrix.identity(2).scale(-1))


@unittest.skipUnless(HAS_EXACTMATH, "Exact math module not available")
class TestForms(unittest.TestCase):

    def test_lorentz_signature(self):
        form = SymmetricForm(ExactMatrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]]))
        self.assertEqual(form.signature(), (2, 1, 0))

    def test_zero_diagonal_pivot(self):
        self.assertEqual(signature(ExactMatrix([[0, 1], [1, 0]])), (1, 1, 0))

    def test_degenerate_form(self):
        form = SymmetricForm(ExactMatrix([[1, 1], [1, 1]]))
        pos, neg, null = form.signature()
        self.assertEqual((pos, neg, null), (1, 0, 1))
        self.assertEqual(len(form.radical()), null)

    def test_restriction_and_scaling(self):
        form = SymmetricForm(ExactMatrix([[0, 1], [1, 0]]))
        self.assertEqual(form.restrict([(1, 0)]).signature(), (0, 0, 1))
        self.assertEqual(form.scaled(3).value((1, 1), (1, 1)), 6)

    def test_non_symmetric_gram(self):
        with self.assertRaises(ContractViolation):
            SymmetricForm(ExactMatrix([[1, 2], [0, 1]]))


@unittest.skipUnless(HAS_EXACTMATH, "Exact math module not available")
class TestEigenspaces(unittest.TestCase):

    def test_semisimple_split(self):
        op = ExactMatrix.diagonal([1, -1, 0, 1])
        split = eigenspace_split(op, [-1, 0, 1])
        self.assertTrue(split.semisimple)
        self.assertEqual(split.dims, (1, 1, 2))

    def test_residual_is_reported(self):
        jordan = ExactMatrix([[0, 1], [0, 0]])
        split = eigenspace_split(jordan, [0])
        self.assertEqual(split.residual_dim, 1)
        with self.assertRaises(DecompositionError):
            eigenspace_split(jordan, [0], strict=True)

if __name__ == '__main__':
    unittest.main()
