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
 Description:       Write experiment results: one CSV per table, the peak
                    table, a JSON run manifest and an optional plot script.
 ****************************************************************************
"""

import csv
import json
import math
import os
from dataclasses import asdict, dataclass, field

from cqed import const
from cqed.core.error import CQEDError, ConfigError, ReportIOError
from cqed.core.experiments.report import ExperimentReport
from cqed.core.experiments.spec import ExperimentSpec
from cqed.core.integrator.dopri5 import IntegrationConfig
from cqed.core.integrator.steady_state import SteadyStateSettings
from cqed.core.model.params import SystemParams
from cqed.util.log import Log

MANIFEST_FILE = "manifest.json"
PEAKS_FILE = "peaks.csv"
PLOT_FILE = "plot.py"

PLOT_TEMPLATE = '''\
"""
Plots for the {preset} run stored next to this script. Needs matplotlib.
"""

import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))
TABLES = {tables!r}

for name in TABLES:
    with open(os.path.join(HERE, name + ".csv")) as fi:
        rows = list(csv.reader(fi))
    header = rows[0]
    data = [[float(x) for x in row] for row in rows[1:]]
    fig, ax = plt.subplots()
    for column in range(1, len(header)):
        ax.plot([row[0] for row in data], [row[column] for row in data], label=header[column])
    ax.set_xlabel(header[0])
    ax.set_title(name)
    ax.legend()
    fig.savefig(os.path.join(HERE, name + ".png"), dpi=150)
    plt.close(fig)
'''


def format_number(value) -> str:
    return format(float(value), ".17g")


def physical_constants() -> dict:
    return {"hbar": const.HBAR, "k_b": const.K_B, "two_pi": const.TWO_PI,
            "nv_zero_field_splitting": const.NV_ZERO_FIELD_SPLITTING,
            "nv_gyromagnetic_ratio": const.NV_GYROMAGNETIC_RATIO}


@dataclass
class RunManifest:
    """
    Everything needed to re-run an experiment, with the outcome of the run.
    Rates are stored in rad/s.
    """
    preset: str
    param_preset: str
    params: dict
    grids: dict
    settings: dict
    integration: dict
    steady_state: dict
    overrides: dict = field(default_factory=dict)
    workers: int = 1
    plot: bool = False
    unit_interpretation: dict = field(default_factory=dict)
    tool_version: str = const.VERSION
    constants: dict = field(default_factory=physical_constants)
    outputs: list = field(default_factory=list)
    convergence: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @classmethod
    def from_run(cls, spec: ExperimentSpec, report: ExperimentReport = None,
                 outputs: list = None) -> "RunManifest":
        manifest = cls(preset=spec.preset, param_preset=spec.param_preset,
                       params=spec.params.to_dict(),
                       grids={name: list(values) for name, values in spec.grids.items()},
                       settings=dict(spec.settings), integration=spec.integration.to_dict(),
                       steady_state=spec.steady.to_dict(), overrides=dict(spec.overrides),
                       workers=spec.workers, plot=spec.plot,
                       unit_interpretation=dict(spec.unit_interpretation),
                       outputs=list(outputs or []))
        if report is not None:
            manifest.convergence = report.convergence()
            manifest.summary = report.summary
            manifest.wall_time = report.wall_time
        return manifest

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunManifest":
        try:
            data = json.loads(text)
        except ValueError as err:
            raise ConfigError(f"Invalid run manifest: {err}")
        names = set(cls.__dataclass_fields__)
        unknown = sorted(set(data) - names)
        if unknown:
            raise ConfigError(f"Unknown manifest keys {unknown}")
        try:
            return cls(**data)
        except TypeError as err:
            raise ConfigError(f"Incomplete run manifest: {err}")

    def to_spec(self) -> ExperimentSpec:
        """
        ExperimentSpec that reproduces the recorded run.
        """
        integration = dict(self.integration)
        if integration.get("max_step") is None:
            integration["max_step"] = math.inf
        try:
            return ExperimentSpec(preset=self.preset, params=SystemParams.from_dict(self.params),
                                  param_preset=self.param_preset,
                                  grids={name: tuple(values) for name, values in self.grids.items()},
                                  settings=dict(self.settings), overrides=dict(self.overrides),
                                  integration=IntegrationConfig(**integration),
                                  steady=SteadyStateSettings(**self.steady_state),
                                  workers=self.workers, plot=self.plot,
                                  unit_interpretation=dict(self.unit_interpretation))
        except (CQEDError, TypeError) as err:
            raise ConfigError(f"Run manifest does not describe a valid experiment: {err}")


def load_manifest(path: str) -> RunManifest:
    try:
        with open(path, "r") as fi:
            text = fi.read()
    except OSError as err:
        raise ReportIOError(f"Cannot read manifest {path}: {err}")
    return RunManifest.from_json(text)


def write_csv(path: str, header, rows) -> None:
    with open(path, "w", newline="") as fo:
        writer = csv.writer(fo, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([value if isinstance(value, str) else format_number(value) for value in row])


def _peak_rows(report: ExperimentReport):
    for label, peaks in report.peaks.items():
        for index, peak in enumerate(peaks.peaks):
            yield label, index, peak.frequency / const.TWO_PI, peak.height


def output_files(report: ExperimentReport, plot: bool) -> list:
    files = [f"{name}.csv" for name in report.curves]
    if report.peaks:
        files.append(PEAKS_FILE)
    files.append(MANIFEST_FILE)
    if plot:
        files.append(PLOT_FILE)
    return files


def write_report(report: ExperimentReport, spec: ExperimentSpec, out_dir: str,
                 force: bool = False, plot: bool = None) -> RunManifest:
    """
    Write every output of a run into out_dir. Existing outputs are only
    replaced with force.
    """
    plot = spec.plot if plot is None else plot
    files = output_files(report, plot)
    existing = [name for name in files if os.path.exists(os.path.join(out_dir, name))]
    if existing and not force:
        raise ReportIOError(f"{out_dir} already holds {existing}; use --force to overwrite")
    manifest = RunManifest.from_run(spec.replace(plot=plot), report, files)
    try:
        os.makedirs(out_dir, exist_ok=True)
        for name, curve in report.curves.items():
            write_csv(os.path.join(out_dir, f"{name}.csv"), curve.columns, curve.rows.tolist())
        if report.peaks:
            write_csv(os.path.join(out_dir, PEAKS_FILE),
                      ("series", "peak_index", f"{report.peak_axis}_hz", "photon_number"),
                      _peak_rows(report))
        with open(os.path.join(out_dir, MANIFEST_FILE), "w") as fo:
            fo.write(manifest.to_json())
        if plot:
            with open(os.path.join(out_dir, PLOT_FILE), "w") as fo:
                fo.write(PLOT_TEMPLATE.format(preset=spec.preset, tables=list(report.curves)))
    except OSError as err:
        raise ReportIOError(f"Cannot write results to {out_dir}: {err}")
    Log.info(f"Wrote {len(files)} file(s) to {out_dir}")
    return manifest
