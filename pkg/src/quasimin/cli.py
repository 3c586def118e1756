"""Command-line interface.

Three subcommands:

* ``quasimin list-families`` — the constructible families, their ambient
  spaces, required data functions and non-vanishing conditions.
* ``quasimin generate`` — evaluate a configured chart on a grid and write the
  points as CSV (optionally with a rendered figure).
* ``quasimin certify`` — run all certifications on a configured surface and
  write a JSON report.  Exit status: 0 when every certification passes, 1
  when any fails, 2 when the config describes an inadmissible family (the
  non-vanishing condition hits zero on the requested span).

Reports carry a ``meta`` block (timestamp, tool version) next to a fully
deterministic ``payload``; byte-for-byte reproducibility is guaranteed for
the payload and for generated CSV.
"""

from __future__ import annotations

import csv
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import click
import numpy as np

from . import __version__
from .config import build_immersion, describe_families, load_config
from .exceptions import InadmissibleFamily
from .verify import ode_convergence, residual_convergence, run_certifications


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        ns, nt = int(a), int(b)
    except ValueError:
        raise click.ClickException(f"--grid must look like '9x9', got {text!r}")
    if ns < 2 or nt < 2:
        raise click.ClickException("--grid needs at least 2 samples per axis")
    return ns, nt


def _load(config_path):
    try:
        cfg = load_config(config_path)
        imm = build_immersion(cfg)
    except InadmissibleFamily as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except (ValueError, KeyError) as exc:
        raise click.ClickException(str(exc))
    return cfg, imm


def _write_json_report(path, payload: dict) -> None:
    doc = {
        "meta": {
            "tool": "quasimin",
            "version": __version__,
            "created": datetime.now(timezone.utc).isoformat(),
        },
        "payload": payload,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


@click.group()
@click.version_option(version=__version__, prog_name="quasimin")
def main():
    """Construct quasi-minimal surfaces with positive relative nullity and
    certify their asserted properties from the raw parametrizations."""


@main.command("list-families")
def list_families():
    """List constructible families with their admissibility conditions."""
    rows = describe_families()
    width = max(len(r["family"]) for r in rows)
    for r in rows:
        fns = f" [functions: {r['functions']}]" if r["functions"] else ""
        click.echo(
            f"{r['family']:<{width}}  {r['ambient']}; condition: {r['condition']}{fns}"
        )


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False), help="Run-configuration JSON file.")
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False), help="Destination CSV file.")
@click.option("--grid", default="41x41", show_default=True, help="Sample grid as NSxNT.")
@click.option("--figures", "figures_dir", default=None, type=click.Path(file_okay=False), help="Also render figures into this directory.")
def generate(config_path, out_path, grid, figures_dir):
    """Evaluate a configured chart on a grid and write the points as CSV."""
    cfg, imm = _load(config_path)
    ns, nt = _parse_grid(grid)
    ss = np.linspace(imm.s_range[0], imm.s_range[1], ns)
    ts = np.linspace(imm.t_range[0], imm.t_range[1], nt)
    S, T = np.meshgrid(ss, ts, indexing="ij")
    vals = imm.chart(S, T)
    dim = vals.shape[-1]

    out_path = Path(out_path)
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["s", "t"] + [f"x{i}" for i in range(dim)])
        for i in range(ns):
            for j in range(nt):
                row = [repr(float(S[i, j])), repr(float(T[i, j]))]
                row += [repr(float(v)) for v in vals[i, j]]
                writer.writerow(row)
    click.echo(f"{imm.name}: wrote {ns * nt} points to {out_path}")

    if figures_dir is not None:
        from .figures import surface_figure

        fig_dir = Path(figures_dir)
        fig_dir.mkdir(parents=True, exist_ok=True)
        fig = surface_figure(imm, fig_dir / f"{out_path.stem}_surface.png")
        click.echo(f"figure: {fig}")


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False), help="Run-configuration JSON file.")
@click.option("--report", "report_path", required=True, type=click.Path(dir_okay=False), help="Destination JSON report.")
@click.option("--grid", default="9x9", show_default=True, help="Certification grid as NSxNT.")
@click.option("--tol", default=1e-6, show_default=True, type=float, help="Tolerance for lightlike/frame residuals.")
@click.option("--curvature-tol", default=1e-4, show_default=True, type=float, help="Tolerance for Gauss/Codazzi/Ricci residuals.")
@click.option("--convergence", is_flag=True, help="Also run step-halving convergence probes.")
@click.option("--figures", "figures_dir", default=None, type=click.Path(file_okay=False), help="Also render figures into this directory.")
def certify(config_path, report_path, grid, tol, curvature_tol, convergence, figures_dir):
    """Certify a configured surface and write a JSON report."""
    cfg, imm = _load(config_path)
    ns, nt = _parse_grid(grid)
    reports = run_certifications(
        imm, grid=(ns, nt), frame_tol=tol, curvature_tol=curvature_tol
    )

    payload = {
        "config": cfg.to_payload(),
        "grid": [ns, nt],
        "certifications": {name: rep.to_payload() for name, rep in reports.items()},
        "overall_pass": bool(all(rep.passed for rep in reports.values())),
    }
    if convergence:
        payload["convergence"] = {
            "residuals": residual_convergence(imm),
            "ode": ode_convergence(),
        }

    report_path = Path(report_path)
    _write_json_report(report_path, payload)

    for name, rep in reports.items():
        status = "PASS" if rep.passed else "FAIL"
        click.echo(
            f"{name}: {status} (evaluated {rep.evaluated}, "
            f"skipped {len(rep.points) - rep.evaluated})"
        )
    if convergence:
        res = payload["convergence"]["residuals"]
        ode = payload["convergence"]["ode"]
        click.echo(
            f"convergence: frame ratio {res['frame']['ratio']:.1f}, "
            f"curvature ratio {res['curvature']['ratio']:.1f}, "
            f"ode ratio {ode['ratio']:.1f} under step halving"
        )
    click.echo(f"report: {report_path}")

    if figures_dir is not None:
        from .figures import convergence_figure, report_figure

        fig_dir = Path(figures_dir)
        fig_dir.mkdir(parents=True, exist_ok=True)
        fig = report_figure(reports, fig_dir / f"{report_path.stem}_residuals.png")
        click.echo(f"figure: {fig}")
        if convergence:
            fig = convergence_figure(
                payload["convergence"]["residuals"],
                fig_dir / f"{report_path.stem}_convergence.png",
            )
            click.echo(f"figure: {fig}")

    if not payload["overall_pass"]:
        sys.exit(1)


if __name__ == "__main__":
    main()
