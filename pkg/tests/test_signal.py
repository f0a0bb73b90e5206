from __future__ import annotations

import tempfile
import unittest
from pathlib import Path
from typing import Any

import numpy as np

from concom.signal import (
    CIRCULAR_LEFT,
    CIRCULAR_RIGHT,
    COLUMN_REGISTRY,
    COMPLEX_COLUMNS,
    DEFAULT_SELECTION,
    LINEAR,
    AnalyticBivectorSeries,
    FieldSampleSeries,
    SelectionError,
    SignalError,
    analytic_signal,
    concomitant_series,
    field_frame,
    frame_to_csv,
    parse_selection,
    read_complex_csv,
    read_field_csv,
    synth_plane_wave,
    write_field_csv,
    write_series_csv,
)

ATOL = 1e-9


def _columns(polarization: str, **kwargs: Any) -> dict[str, np.ndarray]:
    wave = synth_plane_wave(frequency=8.0, polarization=polarization, **kwargs)
    return concomitant_series(analytic_signal(wave), list(COLUMN_REGISTRY)).columns


class PlaneWaveTests(unittest.TestCase):
    def test_left_circular_wave(self) -> None:
        cols = _columns(CIRCULAR_LEFT)
        self.assertTrue(np.allclose(cols["T00"], 2.0, atol=ATOL))
        self.assertTrue(np.allclose(cols["T30"], 2.0, atol=ATOL))
        self.assertTrue(np.allclose(cols["Q00"], 2.0, atol=ATOL))
        self.assertTrue(np.allclose(cols["Q30"], 2.0, atol=ATOL))
        self.assertTrue(np.allclose(cols["Lplus"], 0.0, atol=ATOL))
        self.assertTrue(np.allclose(cols["Lminus"], 0.0, atol=ATOL))

    def test_right_circular_wave_flips_helicity(self) -> None:
        cols = _columns(CIRCULAR_RIGHT)
        self.assertTrue(np.allclose(cols["T00"], 2.0, atol=ATOL))
        self.assertTrue(np.allclose(cols["Q30"], -2.0, atol=ATOL))

    def test_linear_wave_has_no_spin(self) -> None:
        cols = _columns(LINEAR)
        self.assertTrue(np.allclose(cols["T00"], 1.0, atol=ATOL))
        self.assertTrue(np.allclose(cols["T30"], 1.0, atol=ATOL))
        self.assertTrue(np.allclose(cols["Q00"], 0.0, atol=ATOL))
        self.assertTrue(np.allclose(cols["Q30"], 0.0, atol=ATOL))

    def test_phase_delay_leaves_every_column_unchanged(self) -> None:
        for polarization in (CIRCULAR_LEFT, CIRCULAR_RIGHT, LINEAR):
            with self.subTest(polarization=polarization):
                base = _columns(polarization)
                delayed = _columns(polarization, phase=0.7)
                for name, values in base.items():
                    self.assertTrue(np.allclose(delayed[name], values, atol=ATOL), name)

    def test_amplitude_scales_quadratically(self) -> None:
        cols = _columns(CIRCULAR_LEFT, amplitude=0.5)
        self.assertTrue(np.allclose(cols["T00"], 0.5, atol=ATOL))

    def test_propagation_axis(self) -> None:
        cols = _columns(CIRCULAR_LEFT, axis="x")
        self.assertTrue(np.allclose(cols["T10"], 2.0, atol=ATOL))
        self.assertTrue(np.allclose(cols["T30"], 0.0, atol=ATOL))

    def test_null_field_irreducible_pair_vanishes(self) -> None:
        cols = _columns(CIRCULAR_LEFT)
        for name in ("D01", "D12", "X01", "X23"):
            self.assertTrue(np.allclose(cols[name], 0.0, atol=ATOL), name)

    def test_constant_field(self) -> None:
        wave = synth_plane_wave(frequency=0.0, polarization=LINEAR, n=64, sample_rate=64.0)
        cols = concomitant_series(analytic_signal(wave)).columns
        self.assertTrue(np.allclose(cols["T00"], 1.0, atol=ATOL))

    def test_zero_field(self) -> None:
        t = np.arange(16) / 16.0
        zero = FieldSampleSeries(t, np.zeros((16, 3)), np.zeros((16, 3)))
        cols = concomitant_series(analytic_signal(zero)).columns
        for values in cols.values():
            self.assertTrue(np.all(values == 0.0))

    def test_analytic_real_part_is_input(self) -> None:
        wave = synth_plane_wave(frequency=5.0, polarization=CIRCULAR_LEFT, n=128, sample_rate=128.0)
        back = analytic_signal(wave).real_part()
        self.assertTrue(np.allclose(back.e, wave.e))
        self.assertTrue(np.allclose(back.b, wave.b))

    def test_bivector_access(self) -> None:
        wave = synth_plane_wave(frequency=8.0, polarization=CIRCULAR_LEFT)
        analytic = analytic_signal(wave)
        f = analytic.bivector(0)
        self.assertAlmostEqual(f.e[0], 1.0)
        self.assertAlmostEqual(f.e[1], -1j)
        self.assertEqual(len(analytic.bivectors()), 1024)

    def test_sample_rate(self) -> None:
        wave = synth_plane_wave(frequency=1.0, n=32, sample_rate=32.0)
        self.assertAlmostEqual(wave.sample_rate, 32.0)
        self.assertEqual(len(wave), 32)


class ValidationTests(unittest.TestCase):
    def test_frequency_bounds(self) -> None:
        with self.assertRaises(SignalError):
            synth_plane_wave(frequency=512.0)
        with self.assertRaises(SignalError):
            synth_plane_wave(frequency=-1.0)

    def test_unknown_polarization_and_axis(self) -> None:
        with self.assertRaises(SignalError):
            synth_plane_wave(frequency=1.0, polarization="elliptic")
        with self.assertRaises(SignalError):
            synth_plane_wave(frequency=1.0, axis="w")

    def test_too_few_samples(self) -> None:
        t = np.arange(3) / 3.0
        with self.assertRaises(SignalError):
            FieldSampleSeries(t, np.zeros((3, 3)), np.zeros((3, 3)))

    def test_non_uniform_times(self) -> None:
        t = np.array([0.0, 0.1, 0.2, 0.35, 0.4])
        with self.assertRaises(SignalError):
            FieldSampleSeries(t, np.zeros((5, 3)), np.zeros((5, 3)))

    def test_decreasing_times(self) -> None:
        t = np.array([0.3, 0.2, 0.1, 0.0])
        with self.assertRaises(SignalError):
            FieldSampleSeries(t, np.zeros((4, 3)), np.zeros((4, 3)))

    def test_non_finite_samples(self) -> None:
        t = np.arange(4) / 4.0
        e = np.zeros((4, 3))
        e[2, 1] = np.nan
        with self.assertRaises(SignalError):
            FieldSampleSeries(t, e, np.zeros((4, 3)))

    def test_channel_shape(self) -> None:
        t = np.arange(4) / 4.0
        with self.assertRaises(SignalError):
            AnalyticBivectorSeries(t, np.zeros((4, 2)), np.zeros((4, 3)))


class SelectionTests(unittest.TestCase):
    def test_default(self) -> None:
        self.assertEqual(parse_selection(None), list(DEFAULT_SELECTION))

    def test_comma_list(self) -> None:
        self.assertEqual(parse_selection(" T00, Q30 ,Lplus"), ["T00", "Q30", "Lplus"])

    def test_empty_selection(self) -> None:
        with self.assertRaises(SelectionError):
            parse_selection(" , ")

    def test_unknown_columns(self) -> None:
        for bad in ("T44", "D00", "energy"):
            with self.assertRaises(SelectionError):
                parse_selection(bad)

    def test_selection_error_is_a_signal_error(self) -> None:
        self.assertTrue(issubclass(SelectionError, SignalError))


class CsvTests(unittest.TestCase):
    def test_field_csv_round_trip(self) -> None:
        wave = synth_plane_wave(frequency=3.0, polarization=CIRCULAR_LEFT, n=64, sample_rate=64.0)
        with tempfile.TemporaryDirectory() as tmpdir:
            p = write_field_csv(wave, Path(tmpdir) / "field.csv")
            self.assertEqual(p.read_text(encoding="utf-8").splitlines()[0], "t,Ex,Ey,Ez,Bx,By,Bz")
            back = read_field_csv(p)
        self.assertTrue(np.allclose(back.t, wave.t))
        self.assertTrue(np.allclose(back.e, wave.e))
        self.assertTrue(np.allclose(back.b, wave.b))

    def test_series_csv(self) -> None:
        wave = synth_plane_wave(frequency=8.0, polarization=CIRCULAR_LEFT, n=64, sample_rate=64.0)
        series = concomitant_series(analytic_signal(wave), "T00,Lplus")
        with tempfile.TemporaryDirectory() as tmpdir:
            p = write_series_csv(series, Path(tmpdir) / "out" / "series.csv")
            lines = p.read_text(encoding="utf-8").splitlines()
        self.assertEqual(lines[0], "t,T00,Lplus")
        self.assertEqual(len(lines), 65)

    def test_frame_to_csv_uses_lf(self) -> None:
        wave = synth_plane_wave(frequency=1.0, n=8, sample_rate=8.0)
        self.assertNotIn("\r", frame_to_csv(field_frame(wave)))

    def test_complex_csv(self) -> None:
        wave = synth_plane_wave(frequency=4.0, polarization=CIRCULAR_LEFT, n=32, sample_rate=32.0)
        analytic = analytic_signal(wave)
        rows = [",".join(COMPLEX_COLUMNS)]
        for k in range(len(analytic)):
            values = [repr(float(analytic.t[k]))]
            for channel in (analytic.e[k], analytic.b[k]):
                for z in channel:
                    values += [repr(float(z.real)), repr(float(z.imag))]
            rows.append(",".join(values))
        with tempfile.TemporaryDirectory() as tmpdir:
            p = Path(tmpdir) / "complex.csv"
            p.write_text("\n".join(rows) + "\n", encoding="utf-8")
            back = read_complex_csv(p)
        self.assertTrue(np.allclose(back.e, analytic.e))
        cols = concomitant_series(back, "Q30").columns
        self.assertTrue(np.allclose(cols["Q30"], 2.0, atol=ATOL))

    def test_wrong_header(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            p = Path(tmpdir) / "bad.csv"
            p.write_text("t,Ex,Ey\n0,1,2\n", encoding="utf-8")
            with self.assertRaises(SignalError):
                read_field_csv(p)

    def test_non_numeric_value(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            p = Path(tmpdir) / "bad.csv"
            rows = ["t,Ex,Ey,Ez,Bx,By,Bz"] + [f"{k},1,0,0,0,1,0" for k in range(4)]
            rows[2] = "1,abc,0,0,0,1,0"
            p.write_text("\n".join(rows) + "\n", encoding="utf-8")
            with self.assertRaises(SignalError):
                read_field_csv(p)

    def test_missing_file(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            with self.assertRaises(SignalError):
                read_field_csv(Path(tmpdir) / "nope.csv")


if __name__ == "__main__":
    unittest.main()
