#!/usr/bin/env python3
"""
Test Suite for Lie Algebra and Families Modules
Tests structure constants, structural queries and the algebra constructors
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
    from backend.liealg import (
        LieAlgebra,
        LinearMap,
        dump_structure,
        parse_structure_dump,
        recognize_heisenberg,
        structure_report,
        subalgebra,
        subalgebra_closure,
        verify_isomorphism,
    )
    from backend.families import (
        heisenberg_embedding,
        make_algebra,
        omega_c,
        parabolic_labels,
        quaternionic_nilradical_embedding,
        umax_labels,
        umax_semidirect,
    )
    from backend.errors import ConstructionError, DomainError
    HAS_LIEALG = True
except ImportError:
    HAS_LIEALG = False


@unittest.skipUnless(HAS_LIEALG, "Lie algebra module not available")
class TestLieAlgebra(unittest.TestCase):

    def test_antisymmetry_enforced(self):
        with self.assertRaises(ConstructionError):
            LieAlgebra("bad", ["x", "y"], {(0, 1): {0: 1}, (1, 0): {0: 1}})
        with self.assertRaises(ConstructionError):
            LieAlgebra("bad", ["x"], {(0, 0): {0: 1}})
        with self.assertRaises(ConstructionError):
            LieAlgebra("bad", ["x", "x"], {})

    def test_bracket_is_antisymmetric(self):
        g = LieAlgebra("aff", ["x", "y"], {(0, 1): {1: 1}})
        x, y = g.basis_vector("x"), g.basis_vector("y")
        self.assertEqual(g.bracket(x, y), (0, 1))
        self.assertEqual(g.bracket(y, x), (0, -1))
        self.assertEqual(g.structure_constant(1, 0, 1), -1)

    def test_unknown_label(self):
        g = LieAlgebra("abelian", ["x"], {})
        with self.assertRaises(DomainError):
            g.index("nope")

    def test_structure_dump_reparses(self):
        g = make_algebra("heisC", dim=5)
        text = dump_structure(g)
        self.assertTrue(text.startswith("dim 5\n"))
        parsed = parse_structure_dump(text)
        self.assertEqual(parsed.labels, g.labels)
        self.assertEqual(dump_structure(parsed), text)

    def test_malformed_dumps(self):
        for text in ("", "dim x", "dim 2\nlabels a b\n0 1", "dim 2\n0 5 1 1", "labels a\n"):
            with self.assertRaises(DomainError):
                parse_structure_dump(text)

    def test_subspace_intersection(self):
        g = make_algebra("o2n", n=3)
        left = g.coordinate_subspace(["a", "b"])
        right = g.coordinate_subspace(["b", "c"])
        self.assertEqual(left.intersection(right).dim, 1)
        self.assertEqual((left + right).dim, 3)


@unittest.skipUnless(HAS_LIEALG, "Lie algebra module not available")
class TestFamilies(unittest.TestCase):

    def test_rank_one_dimensions(self):
        for k in (2, 3, 4):
            self.assertEqual(make_algebra("o1k", k=k).dim, (k + 1) * k // 2)
        for k in (2, 3):
            self.assertEqual(make_algebra("su1k", k=k).dim, (k + 1) ** 2 - 1)
        self.assertEqual(make_algebra("sp1k", k=2).dim, 21)

    def test_conformal_dimensions(self):
        for n in (3, 4, 5):
            self.assertEqual(make_algebra("o2n", n=n).dim, (n + 2) * (n + 1) // 2)
            self.assertEqual(make_algebra("umax", n=n).dim, 2 * n - 2)
            self.assertEqual(len(parabolic_labels(n)), (n + 2) * (n + 1) // 2 - n)
        self.assertEqual(make_algebra("parabolic", n=3).dim, 7)
        self.assertEqual(umax_labels(3), ["b", "u1", "v1", "alpha"])

    def test_jacobi_and_realization(self):
        for family, params in (("o1k", {"k": 3}), ("su1k", {"k": 2}), ("sp1k", {"k": 2}),
                               ("o2n", {"n": 4}), ("heisC", {"dim": 7}), ("heisH", {"dim": 7}),
                               ("f4_nilradical", {})):
            g = make_algebra(family, **params)
            self.assertEqual(g.jacobi_defect(), 0, g.name)
            self.assertEqual(g.realization_defect(), 0, g.name)

    def test_orthogonal_from_gram(self):
        g = make_algebra("o(p,q;J)", gram=[[0, 0, 1], [0, 1, 0], [1, 0, 0]])
        self.assertEqual(g.dim, 3)
        self.assertEqual(g.realization_defect(), 0)
        with self.assertRaises(DomainError):
            make_algebra("orthogonal", gram=[[1, 0], [0, 0]])

    def test_cached_instances(self):
        self.assertIs(make_algebra("o2n", n=3), make_algebra("o2n_coords", n=3))

    def test_bad_parameters(self):
        with self.assertRaises(DomainError):
            make_algebra("nope")
        with self.assertRaises(DomainError):
            make_algebra("o1k")
        with self.assertRaises(DomainError):
            make_algebra("heisC", dim=4)
        with self.assertRaises(DomainError):
            make_algebra("heisH", dim=9)
        with self.assertRaises(DomainError):
            make_algebra("o2n", n=2)
        with self.assertRaises(DomainError):
            make_algebra("umax", n="3")

    def test_realization_coordinates(self):
        g = make_algebra("su1k", k=2)
        x = g.vector({g.labels[1]: 3, g.labels[4]: Fraction(-1, 2)})
        self.assertEqual(g.coordinates(g.to_matrix(x)), x)

    def test_omega_c(self):
        self.assertEqual(omega_c((1, 0), (0, 1)), 2)
        self.assertEqual(omega_c((0, 1), (1, 0)), -2)


@unittest.skipUnless(HAS_LIEALG, "Lie algebra module not available")
class TestStructure(unittest.TestCase):

    def test_semisimple_has_no_center(self):
        report = structure_report(make_algebra("o1k", k=3))
        self.assertEqual(report.center.dim, 0)
        self.assertEqual(report.derived.dim, 6)
        self.assertIsNone(report.nilpotency_degree)

    def test_heisenberg_recognition(self):
        self.assertTrue(recognize_heisenberg(make_algebra("heisC", dim=5)).is_classical)
        self.assertTrue(recognize_heisenberg(make_algebra("heisH", dim=7)).is_quaternionic)
        self.assertFalse(recognize_heisenberg(make_algebra("o1k", k=3)).is_classical)
        abelian = LieAlgebra("abelian", ["x", "y", "z"], {})
        self.assertFalse(recognize_heisenberg(abelian).is_classical)

    def test_octonion_nilradical_is_two_step(self):
        report = structure_report(make_algebra("f4_nilradical"))
        self.assertEqual(report.center.dim, 7)
        self.assertEqual(report.nilpotency_degree, 2)

    def test_closure_of_umax_coordinates(self):
        g = make_algebra("o2n", n=4)
        space = g.coordinate_subspace(umax_labels(4))
        self.assertTrue(space.is_subalgebra())
        self.assertEqual(subalgebra_closure(g, space).dim, space.dim)

    def test_subalgebra_rejects_open_subspace(self):
        g = make_algebra("o2n", n=3)
        with self.assertRaises(DomainError):
            subalgebra(g, g.coordinate_subspace(["b", "c"]))

    def test_isomorphism_checks(self):
        g = make_algebra("heisC", dim=5)
        self.assertTrue(verify_isomorphism(LinearMap.identity(g), "heisC"))
        self.assertFalse(verify_isomorphism(LinearMap.zero(g, g)))
        with self.assertRaises(DomainError):
            verify_isomorphism(LinearMap.zero(g, make_algebra("heisC", dim=3)))


@unittest.skipUnless(HAS_LIEALG, "Lie algebra module not available")
class TestEmbeddings(unittest.TestCase):

    def test_heisenberg_embeddings(self):
        for k in (2, 3):
            self.assertTrue(heisenberg_embedding("su1k", k).verified)
        self.assertTrue(heisenberg_embedding("sp1k", 2).verified)
        with self.assertRaises(DomainError):
            heisenberg_embedding("o1k", 3)

    def test_quaternionic_nilradical(self):
        certificate = quaternionic_nilradical_embedding()
        self.assertTrue(certificate.verified)
        self.assertEqual(certificate.to_dict()["target"], "heisH(7)")

    def test_umax_semidirect(self):
        for n in (3, 4):
            report = umax_semidirect(n)
            self.assertTrue(report.passed, report.to_dict())
            self.assertEqual(report.ideal_dim, 2 * n - 3)
            self.assertEqual(report.to_dict()["splitting_complement"], ["t"])


@unittest.skipUnless(HAS_LIEALG and HAS_HYPOTHESIS, "hypothesis not available")
class TestBracketLaws(unittest.TestCase):

    if HAS_LIEALG and HAS_HYPOTHESIS:
        @settings(max_examples=25, deadline=None)
        @given(st.lists(st.integers(-3, 3), min_size=24, max_size=24))
        def test_random_jacobi_in_su12(self, values):
            g = make_algebra("su1k", k=2)
            x, y, z = (tuple(Fraction(a) for a in values[8 * i:8 * i + 8]) for i in range(3))
            total = [Fraction(0)] * g.dim
            for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                total = [s + t for s, t in zip(total, g.bracket(g.bracket(a, b), c))]
            self.assertTrue(all(t == 0 for t in total))
            self.assertEqual(g.bracket(x, y), tuple(-t for t in g.bracket(y, x)))

if __name__ == '__main__':
    unittest.main()
