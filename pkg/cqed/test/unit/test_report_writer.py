#!/usr/bin/env python3

# Copyright (c) 2026 nv-cqed contributors
#
# This program is free software: you can redistribute it and/or modify it under the
# terms of the GNU Affero General Public License as published by the Free Software
# Foundation, either version 3 of the License, or (at your option) any later version.
#
# This program is distributed in the hope that it will be useful, but WITHOUT ANY
# WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A
# PARTICULAR PURPOSE. See the GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License along
# with this program. If not, see <https://www.gnu.org/licenses/>.
"""
 ****************************************************************************
 Description:       Result tables, run manifests and plot scripts.
 ****************************************************************************
"""

import json
import math
import os
import tempfile
import unittest

import numpy as np

from cqed import const
from cqed.cli.report_writer import (MANIFEST_FILE, PEAKS_FILE, PLOT_FILE, RunManifest,
                                    format_number, load_manifest, output_files, write_report)
from cqed.core.analytics.peaks import Peak, SpectrumPeaks
from cqed.core.config.units import params_from_preset
from cqed.core.error import ConfigError, ReportIOError
from cqed.core.experiments.factory import run_experiment
from cqed.core.experiments.report import Curve, ExperimentReport, PointResult
from cqed.core.experiments.spec import ExperimentSpec


def sample_report() -> ExperimentReport:
    report = ExperimentReport(preset="fig3b")
    report.add_curve("spectrum_eta_0", Curve.from_columns(drive_detuning_hz=[-1.0, 0.0, 1.0],
                                                          photon_number=[0.1, 0.2, 0.30000000000000004]))
    report.peaks["spectrum_eta_0"] = SpectrumPeaks(peaks=(Peak(const.TWO_PI * 1e6, 2.0, 3),))
    report.points.append(PointResult(label="eta_0", status="converged"))
    report.summary["eta_0"] = {"peak_separation_hz": 1.5}
    report.wall_time = 0.25
    return report


class TestFormatting(unittest.TestCase):
    """
    Numbers round-trip through their text form
    """

    def test_full_precision(self):
        self.assertEqual(format_number(0.1), "0.10000000000000001")
        self.assertEqual(format_number(2.0), "2")
        self.assertEqual(float(format_number(math.pi)), math.pi)

    def test_output_files(self):
        report = sample_report()
        self.assertEqual(output_files(report, False), ["spectrum_eta_0.csv", PEAKS_FILE, MANIFEST_FILE])
        self.assertEqual(output_files(ExperimentReport(preset="fig2b"), True), [MANIFEST_FILE, PLOT_FILE])


class TestWriteReport(unittest.TestCase):
    """
    Writing a run into an output directory
    """

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.out = os.path.join(self.tmp.name, "results", "fig3b")
        self.spec = ExperimentSpec.default("fig3b")
        self.report = sample_report()

    def tearDown(self):
        self.tmp.cleanup()

    def read(self, name: str) -> list:
        with open(os.path.join(self.out, name)) as fi:
            return fi.read().splitlines()

    def test_tables(self):
        manifest = write_report(self.report, self.spec, self.out)
        lines = self.read("spectrum_eta_0.csv")
        self.assertEqual(lines[0], "drive_detuning_hz,photon_number")
        self.assertEqual(lines[1], "-1,0.10000000000000001")
        self.assertEqual(lines[3], "1,0.30000000000000004")
        peaks = self.read(PEAKS_FILE)
        self.assertEqual(peaks[0], "series,peak_index,drive_detuning_hz,photon_number")
        series, index, frequency, height = peaks[1].split(",")
        self.assertEqual((series, index, height), ("spectrum_eta_0", "0", "2"))
        self.assertAlmostEqual(float(frequency), 1e6, delta=1e-6)
        self.assertEqual(manifest.outputs, ["spectrum_eta_0.csv", PEAKS_FILE, MANIFEST_FILE])
        self.assertFalse(os.path.exists(os.path.join(self.out, PLOT_FILE)))

    def test_spin_axis_peaks(self):
        self.report.peak_axis = "spin_detuning"
        write_report(self.report, self.spec, self.out)
        self.assertEqual(self.read(PEAKS_FILE)[0], "series,peak_index,spin_detuning_hz,photon_number")

    def test_refuses_to_overwrite(self):
        write_report(self.report, self.spec, self.out)
        with self.assertRaises(ReportIOError) as ctx:
            write_report(self.report, self.spec, self.out)
        self.assertEqual(ctx.exception.rc, const.EXIT_IO_ERROR)
        write_report(self.report, self.spec, self.out, force=True)

    def test_unwritable_directory(self):
        blocker = os.path.join(self.tmp.name, "blocker")
        with open(blocker, "w") as fo:
            fo.write("x")
        with self.assertRaises(ReportIOError):
            write_report(self.report, self.spec, blocker)

    def test_manifest_content(self):
        write_report(self.report, self.spec, self.out)
        data = json.loads("\n".join(self.read(MANIFEST_FILE)))
        self.assertEqual(data["preset"], "fig3b")
        self.assertEqual(data["param_preset"], "fig3")
        self.assertEqual(data["tool_version"], const.VERSION)
        self.assertEqual(data["convergence"], {"eta_0": "converged"})
        self.assertEqual(data["summary"]["eta_0"]["peak_separation_hz"], 1.5)
        self.assertIsNone(data["integration"]["max_step"])
        self.assertEqual(data["constants"]["hbar"], const.HBAR)
        self.assertEqual(data["wall_time"], 0.25)

    def test_manifest_reproduces_spec(self):
        write_report(self.report, self.spec, self.out)
        manifest = load_manifest(os.path.join(self.out, MANIFEST_FILE))
        self.assertEqual(manifest.to_spec(), self.spec)

    def test_plot_script(self):
        manifest = write_report(self.report, self.spec, self.out, plot=True)
        self.assertIn(PLOT_FILE, manifest.outputs)
        self.assertTrue(manifest.plot)
        script = "\n".join(self.read(PLOT_FILE))
        self.assertIn("matplotlib", script)
        self.assertIn("'spectrum_eta_0'", script)
        compile(script, PLOT_FILE, "exec")


class TestManifestErrors(unittest.TestCase):
    """
    Malformed manifests are configuration errors
    """

    def test_invalid_json(self):
        with self.assertRaises(ConfigError):
            RunManifest.from_json("{not json")

    def test_unknown_and_missing_keys(self):
        with self.assertRaises(ConfigError):
            RunManifest.from_json(json.dumps({"preset": "fig3b", "colour": "red"}))
        with self.assertRaises(ConfigError):
            RunManifest.from_json(json.dumps({"preset": "fig3b"}))

    def test_invalid_experiment(self):
        manifest = RunManifest.from_run(ExperimentSpec.default("fig3b"))
        manifest.grids["eta_s"] = [1.0, 0.0]
        with self.assertRaises(ConfigError):
            manifest.to_spec()

    def test_missing_manifest(self):
        with self.assertRaises(ReportIOError):
            load_manifest("/nonexistent/manifest.json")


class TestWorkerIndependence(unittest.TestCase):
    """
    Result tables do not depend on the number of worker processes
    """

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, workers: int) -> str:
        params = params_from_preset("oracle").replace(g_s=1.0)
        spec = ExperimentSpec.default(
            "fig3b", param_preset="oracle", params=params, workers=workers,
            grids={"eta_s": (0.5, 1.0), "drive_detuning": tuple(float(x) for x in np.linspace(-3.0, 3.0, 21))},
            settings={"drive_amplitude": 0.05})
        out = os.path.join(self.tmp.name, f"workers_{workers}")
        write_report(run_experiment(spec), spec, out)
        return out

    def test_tables_identical(self):
        serial, parallel = self.write(1), self.write(2)
        names = sorted(name for name in os.listdir(serial) if name.endswith(".csv"))
        self.assertIn(PEAKS_FILE, names)
        self.assertEqual(names, sorted(name for name in os.listdir(parallel) if name.endswith(".csv")))
        for name in names:
            with open(os.path.join(serial, name), "rb") as first, \
                    open(os.path.join(parallel, name), "rb") as second:
                self.assertEqual(first.read(), second.read(), name)


if __name__ == '__main__':
    unittest.main()
