"""Property-based checks over random exact bivectors."""

from __future__ import annotations

import unittest

from hypothesis import given, settings, strategies as st

from concom.bivector import EXACT_UNIT_PHASES, Bivector, dual, duality_transform, phase_rotate
from concom.concomitants import T2, compute_concomitants, eb_oracle, metric_trace, scalar_invariants
from concom.scalar import RATIONAL, GaussianRational

_parts = st.fractions(min_value=-2, max_value=2, max_denominator=8)
_complex = st.builds(GaussianRational, _parts, _parts)
_triples = st.tuples(_complex, _complex, _complex)
bivectors = st.builds(lambda e, b: Bivector(e, b, RATIONAL), _triples, _triples)


class BivectorPropertyTests(unittest.TestCase):
    @settings(max_examples=25, deadline=None)
    @given(bivectors)
    def test_double_dual_is_negation(self, f: Bivector) -> None:
        self.assertEqual(dual(dual(f)), -f)

    @settings(max_examples=25, deadline=None)
    @given(bivectors)
    def test_scalars_flip_under_duality(self, f: Bivector) -> None:
        before = scalar_invariants(f)
        after = scalar_invariants(duality_transform(f))
        self.assertEqual(after.lplus, -before.lplus)
        self.assertEqual(after.lminus, -before.lminus)


class ConcomitantPropertyTests(unittest.TestCase):
    @settings(max_examples=10, deadline=None)
    @given(bivectors)
    def test_stress_is_trace_free_with_dominant_energy(self, f: Bivector) -> None:
        t = compute_concomitants(f).tensor(T2)
        self.assertEqual(metric_trace(t), 0)
        energy = t[0, 0].real
        flux = sum(t[0, i].real ** 2 for i in range(1, 4))
        self.assertGreaterEqual(energy, 0)
        self.assertGreaterEqual(energy**2, flux)

    @settings(max_examples=10, deadline=None)
    @given(bivectors)
    def test_abstract_and_vector_forms_agree(self, f: Bivector) -> None:
        self.assertTrue(compute_concomitants(f).matches(eb_oracle(f)))

    @settings(max_examples=10, deadline=None)
    @given(bivectors, st.sampled_from(EXACT_UNIT_PHASES))
    def test_global_phase_drops_out(self, f: Bivector, phase: GaussianRational) -> None:
        rotated = compute_concomitants(phase_rotate(f, phase))
        self.assertTrue(rotated.matches(compute_concomitants(f)))


if __name__ == "__main__":
    unittest.main()
