from __future__ import annotations

import math
import unittest

import numpy as np

from conftest import _bv, _gr
from concom.bivector import (
    EXACT_UNIT_PHASES,
    Bivector,
    BivectorError,
    LorentzTransform,
    NotAntisymmetricError,
    Sixtor,
    dual,
    duality_transform,
    from_matrix,
    from_sixtor,
    lorentz_transform,
    make_boost,
    make_rotation,
    matrix_form,
    phase_rotate,
    random_bivector,
    random_lorentz,
    self_dual_parts,
    self_dual_products,
    sixtor_form,
)
from concom.scalar import FLOAT, RATIONAL
from concom.tensor import LOWER, UPPER, SmallTensor, adjust_index, flipped_epsilon


class RepresentationTests(unittest.TestCase):
    def test_matrix_layout(self) -> None:
        f = _bv((1, 2, 3), (4, 5, 6))
        m = matrix_form(f)
        self.assertEqual([m[1, 0], m[2, 0], m[3, 0]], [1, 2, 3])
        self.assertEqual([m[0, 1], m[0, 2], m[0, 3]], [-1, -2, -3])
        self.assertEqual([m[3, 2], m[1, 3], m[2, 1]], [4, 5, 6])
        self.assertEqual([m[i, i] for i in range(4)], [0, 0, 0, 0])

    def test_matrix_round_trip(self) -> None:
        f = random_bivector(3)
        self.assertEqual(from_matrix(matrix_form(f)), f)

    def test_from_matrix_accepts_lowered_slots(self) -> None:
        f = random_bivector(4)
        low = adjust_index(adjust_index(matrix_form(f), 0, LOWER), 1, LOWER)
        self.assertEqual(from_matrix(low), f)

    def test_from_matrix_rejects_symmetric_part(self) -> None:
        values = np.zeros((4, 4), dtype=int)
        values[1, 0] = values[0, 1] = 1
        with self.assertRaises(NotAntisymmetricError):
            from_matrix(SmallTensor.from_values(values, (UPPER, UPPER)))

    def test_from_matrix_rejects_diagonal(self) -> None:
        values = np.diag([0, 1, 0, 0])
        with self.assertRaises(NotAntisymmetricError):
            from_matrix(SmallTensor.from_values(values, (UPPER, UPPER)))

    def test_sixtor_round_trip(self) -> None:
        f = _bv((1, 2, 3), (4, 5, 6))
        s = sixtor_form(f)
        self.assertEqual(list(s.components), [1, 2, 3, 4, 5, 6])
        self.assertEqual(from_sixtor(s), f)

    def test_sixtor_needs_six_components(self) -> None:
        with self.assertRaises(BivectorError):
            Sixtor((1, 2, 3))

    def test_triples_must_have_three_entries(self) -> None:
        with self.assertRaises(BivectorError):
            Bivector((1, 2), (0, 0, 0))

    def test_unknown_backend(self) -> None:
        with self.assertRaises(BivectorError):
            Bivector((0, 0, 0), (0, 0, 0), "quad")


class DualityTests(unittest.TestCase):
    def test_dual_matches_field_rule(self) -> None:
        for seed in range(3):
            f = random_bivector(seed)
            self.assertEqual(dual(f), duality_transform(f))

    def test_dual_of_electric_field(self) -> None:
        star = dual(_bv((1, 0, 0)))
        self.assertEqual(star.e, (0, 0, 0))
        self.assertEqual(star.b, (1, 0, 0))

    def test_double_dual_is_minus_identity(self) -> None:
        f = random_bivector(7)
        self.assertEqual(dual(dual(f)), -f)

    def test_flipped_epsilon_reverses_dual(self) -> None:
        f = random_bivector(8)
        with flipped_epsilon():
            flipped = dual(f)
        self.assertEqual(flipped, -duality_transform(f))

    def test_self_dual_eigenvalues(self) -> None:
        f = random_bivector(9)
        parts = self_dual_parts(f)
        i = _gr(0, 1)
        self.assertEqual(dual(parts.minus), parts.minus.scale(-i))
        self.assertEqual(dual(parts.plus), parts.plus.scale(i))
        self.assertEqual(parts.minus + parts.plus, f)

    def test_conjugate_parts(self) -> None:
        f = random_bivector(10)
        parts = self_dual_parts(f)
        self.assertEqual(parts.conj_minus, parts.minus.conjugate())
        self.assertEqual(parts.conj_plus, parts.plus.conjugate())

    def test_self_dual_products_sum_to_full_product(self) -> None:
        f = random_bivector(11)
        prods = self_dual_products(f)
        fm = matrix_form(f)
        full = np.multiply.outer(fm.conj().components, fm.components)
        total = prods.mm + prods.pp + prods.mp + prods.pm
        self.assertTrue(total.equals(SmallTensor(full, (UPPER,) * 4)))

    def test_float_backend_agrees(self) -> None:
        f = random_bivector(12, FLOAT)
        self.assertTrue(dual(f).isclose(duality_transform(f)))


class PhaseTests(unittest.TestCase):
    def test_exact_unit_phases(self) -> None:
        f = random_bivector(1)
        for u in EXACT_UNIT_PHASES:
            self.assertEqual(phase_rotate(f, u), f.scale(u))

    def test_exact_rejects_non_unit(self) -> None:
        with self.assertRaises(BivectorError):
            phase_rotate(random_bivector(1), _gr(1, 1))

    def test_exact_rejects_angle(self) -> None:
        with self.assertRaises(BivectorError):
            phase_rotate(random_bivector(1), 0.3)
        f = random_bivector(1)
        self.assertEqual(phase_rotate(f, 0), f)

    def test_float_angle(self) -> None:
        f = random_bivector(2, FLOAT)
        rotated = phase_rotate(f, math.pi / 2)
        self.assertTrue(rotated.isclose(f.scale(1j)))

    def test_float_rejects_non_unit_factor(self) -> None:
        with self.assertRaises(BivectorError):
            phase_rotate(random_bivector(2, FLOAT), 2j)


class LorentzTests(unittest.TestCase):
    def test_boost_matrix(self) -> None:
        lam = make_boost((0.6, 0.0, 0.0)).matrix
        self.assertAlmostEqual(lam[0, 0], 1.25)
        self.assertAlmostEqual(lam[0, 1], -0.75)
        self.assertAlmostEqual(lam[2, 2], 1.0)

    def test_boost_rejects_light_speed(self) -> None:
        with self.assertRaises(BivectorError):
            make_boost((1.0, 0.0, 0.0))

    def test_rotation_needs_axis(self) -> None:
        with self.assertRaises(BivectorError):
            make_rotation((0.0, 0.0, 0.0), 1.0)

    def test_non_lorentz_matrix_rejected(self) -> None:
        with self.assertRaises(BivectorError):
            LorentzTransform(np.diag([2.0, 1.0, 1.0, 1.0]))

    def test_boost_mixes_electric_into_magnetic(self) -> None:
        f = _bv((0, 1, 0), backend=FLOAT)
        moved = lorentz_transform(f, make_boost((0.6, 0.0, 0.0)))
        self.assertTrue(moved.isclose(_bv((0, 1.25, 0), (0, 0, -0.75), FLOAT)))

    def test_rotation_rotates_vectors(self) -> None:
        f = _bv((1, 0, 0), (0, 1, 0), FLOAT)
        moved = lorentz_transform(f, make_rotation((0.0, 0.0, 1.0), math.pi / 2))
        self.assertTrue(moved.isclose(_bv((0, 1, 0), (-1, 0, 0), FLOAT)))

    def test_compose_with_inverse(self) -> None:
        lam = random_lorentz(5)
        product = lam.compose(lam.inverse()).matrix
        self.assertTrue(np.allclose(product, np.eye(4), atol=1e-9))

    def test_identity_leaves_field_alone(self) -> None:
        f = random_bivector(6, FLOAT)
        self.assertTrue(lorentz_transform(f, LorentzTransform.identity()).isclose(f))


class GeneratorTests(unittest.TestCase):
    def test_deterministic_per_seed(self) -> None:
        self.assertEqual(random_bivector(42), random_bivector(42))
        self.assertNotEqual(random_bivector(42), random_bivector(43))

    def test_exact_denominators_bounded(self) -> None:
        f = random_bivector(13)
        self.assertEqual(f.backend, RATIONAL)
        for z in f.components():
            self.assertLessEqual(z.real.denominator, 16)
            self.assertLessEqual(abs(z.real), 1)

    def test_real_flag(self) -> None:
        self.assertTrue(random_bivector(14, real=True).is_real())
        self.assertTrue(random_bivector(14, FLOAT, real=True).is_real())

    def test_random_lorentz_speed_bound(self) -> None:
        lam = random_lorentz(15, max_speed=0.5).matrix
        self.assertLessEqual(lam[0, 0], 1.0 / math.sqrt(1.0 - 0.25) + 1e-9)


if __name__ == "__main__":
    unittest.main()
