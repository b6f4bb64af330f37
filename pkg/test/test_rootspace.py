#!/usr/bin/env python3
"""
Test Suite for Root Space Module
Tests Cartan data, root decompositions, the sl2 identity and the Meataxe
"""

import unittest
import sys
import os
import random

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

try:
    from backend.rootspace import (
        INCONCLUSIVE,
        IRREDUCIBLE,
        REDUCIBLE,
        ad_diagonal_profile,
        bracket_relations,
        cartan_data,
        commutant_dim,
        complex_structure,
        decompose,
        generates_everything,
        irreducible,
        is_invariant,
        module_action,
        real_slice,
        sl2_identity_certificate,
        trace_form,
        trace_pairing,
        verify_sl2_identity,
    )
    from backend.families import make_algebra
    from backend.exactmath import ExactMatrix
    from backend.errors import DomainError
    HAS_ROOTSPACE = True
except ImportError:
    HAS_ROOTSPACE = False


@unittest.skipUnless(HAS_ROOTSPACE, "Root space module not available")
class TestCartanData(unittest.TestCase):

    def test_theta_is_an_involutive_automorphism(self):
        for family, k in (("o1k", 3), ("su1k", 2), ("sp1k", 2)):
            cd = cartan_data(make_algebra(family, k=k))
            self.assertTrue(cd.is_involution())
            self.assertTrue(cd.is_automorphism())

    def test_abstract_algebra_has_no_cartan_data(self):
        with self.assertRaises(DomainError):
            cartan_data(make_algebra("heisC", dim=5))

    def test_trace_form_is_negative_definite(self):
        for family, k in (("o1k", 4), ("su1k", 3)):
            g = make_algebra(family, k=k)
            self.assertTrue(trace_form(g).negative_definite)

    def test_trace_pairing_matches_gram(self):
        g = make_algebra("su1k", k=2)
        form = trace_form(g)
        for i in range(g.dim):
            for j in range(g.dim):
                x, y = g.basis_vector(i), g.basis_vector(j)
                self.assertEqual(trace_pairing(g, x, y), form.value(x, y))


@unittest.skipUnless(HAS_ROOTSPACE, "Root space module not available")
class TestDecomposition(unittest.TestCase):

    def test_o13_roots(self):
        g = make_algebra("o1k", k=3)
        decomposition = decompose(g, cartan_data(g))
        self.assertTrue(decomposition.passed)
        self.assertEqual(decomposition.dims, {-1: 2, 0: 2, 1: 2})

    def test_su13_roots(self):
        g = make_algebra("su1k", k=3)
        decomposition = decompose(g, cartan_data(g))
        self.assertTrue(decomposition.passed)
        self.assertEqual(decomposition.dims, {-2: 1, -1: 4, 0: 5, 1: 4, 2: 1})

    def test_sp12_roots(self):
        g = make_algebra("sp1k", k=2)
        decomposition = decompose(g, cartan_data(g))
        self.assertEqual(decomposition.dims, {-2: 3, -1: 4, 0: 7, 1: 4, 2: 3})
        self.assertTrue(decomposition.is_direct_sum)

    def test_relations_and_generation(self):
        for family in ("o1k", "su1k"):
            g = make_algebra(family, k=3)
            decomposition = decompose(g, cartan_data(g))
            self.assertTrue(all(check.holds for check in bracket_relations(decomposition)))
            seed = g.basis_vector(g.meta["layout"].neg_alpha[0])
            self.assertTrue(generates_everything(decomposition, seed))

    def test_generation_rejects_bad_seed(self):
        g = make_algebra("o1k", k=3)
        decomposition = decompose(g, cartan_data(g))
        with self.assertRaises(DomainError):
            generates_everything(decomposition, g.basis_vector("A"))

    def test_no_relations_for_sp(self):
        g = make_algebra("sp1k", k=2)
        with self.assertRaises(DomainError):
            bracket_relations(decompose(g, cartan_data(g)))


@unittest.skipUnless(HAS_ROOTSPACE, "Root space module not available")
class TestSl2Identity(unittest.TestCase):

    def test_orthogonal_identity_holds(self):
        for k in (2, 3, 4):
            certificate = sl2_identity_certificate(make_algebra("o1k", k=k))
            self.assertTrue(certificate.holds, certificate.to_dict())

    def test_unitary_real_slice_holds(self):
        g = make_algebra("su1k", k=3)
        certificate = sl2_identity_certificate(g, indices=real_slice(g))
        self.assertTrue(certificate.holds)
        self.assertEqual(certificate.spanning_dim, 2)

    def test_unitary_needs_correction(self):
        g = make_algebra("su1k", k=3)
        self.assertGreater(sl2_identity_certificate(g).failure_count, 0)
        self.assertTrue(sl2_identity_certificate(g, corrected=True).holds)

    def test_arguments_must_lie_in_negative_root_space(self):
        g = make_algebra("o1k", k=3)
        cd = cartan_data(g)
        y = g.basis_vector(g.meta["layout"].neg_alpha[0])
        with self.assertRaises(DomainError):
            verify_sl2_identity(g, cd, g.basis_vector("A"), y)

    def test_complex_structure(self):
        self.assertIsNone(complex_structure(make_algebra("o1k", k=3)))
        g = make_algebra("su1k", k=2)
        j = complex_structure(g)
        for i in g.meta["layout"].neg_alpha:
            v = g.basis_vector(i)
            self.assertEqual(j(j(v)), tuple(-c for c in v))
        with self.assertRaises(DomainError):
            complex_structure(make_algebra("sp1k", k=2))


@unittest.skipUnless(HAS_ROOTSPACE, "Root space module not available")
class TestMeataxe(unittest.TestCase):

    def _zero_space_module(self, k):
        g = make_algebra("o1k", k=k)
        decomposition = decompose(g, cartan_data(g))
        return module_action(g, decomposition.zero_space, decomposition.space(-1))

    def test_o13_module_is_irreducible_but_not_absolutely(self):
        result = irreducible(self._zero_space_module(3), rng=random.Random(3))
        self.assertEqual(result.status, IRREDUCIBLE)
        self.assertEqual(result.commutant_dim, 2)
        self.assertFalse(result.absolutely_irreducible)

    def test_o14_module_is_absolutely_irreducible(self):
        result = irreducible(self._zero_space_module(4), rng=random.Random(4))
        self.assertTrue(result.absolutely_irreducible)
        self.assertIsNotNone(result.witness)

    def test_reducible_module(self):
        nilpotent = ExactMatrix([[0, 1], [0, 0]])
        result = irreducible([nilpotent], rng=random.Random(1))
        self.assertEqual(result.status, REDUCIBLE)
        self.assertTrue(is_invariant([nilpotent], list(result.invariant_subspace)))
        self.assertNotEqual(result.status, INCONCLUSIVE)

    def test_commutant_of_scalars(self):
        self.assertEqual(commutant_dim([ExactMatrix.identity(2)]), 4)

    def test_rejects_empty_module(self):
        with self.assertRaises(DomainError):
            irreducible([])


@unittest.skipUnless(HAS_ROOTSPACE, "Root space module not available")
class TestDiagonalProfile(unittest.TestCase):

    def test_unitary_profile(self):
        g = make_algebra("su1k", k=2)
        profile = ad_diagonal_profile(g, cartan_data(g))
        self.assertTrue(profile.passed)
        self.assertEqual(profile.eigenspace_dims, {-2: 1, -1: 2, 0: 2, 1: 2, 2: 1})
        self.assertEqual(profile.to_dict()["eigenspace_dims"]["-1"], 2)
        self.assertNotIn("eigenvalues", profile.to_dict())
        self.assertEqual(profile.nilpotency_bound, 5)

    def test_generator_outside_positive_part(self):
        g = make_algebra("o1k", k=3)
        label = g.labels[g.meta["layout"].neg_alpha[0]]
        with self.assertRaises(DomainError):
            ad_diagonal_profile(g, cartan_data(g), generators=[label])

if __name__ == '__main__':
    unittest.main()
