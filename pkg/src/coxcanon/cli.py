"""Command-line front end.

Usage: ``coxcanon <subcommand> --input job.json [--box lo:hi,...] [--format json|csv]
[--sublattice 1,0;0,1] [--out FILE]``.

Exit status: 0 on success (possibly with warnings), 2 for malformed input,
3 when a mathematical precondition fails.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from importlib import resources

import jsonschema

from . import catalog, toric
from .backends import BlowupBackend, LatticeBackend, ToricBackend, UnsupportedOperation
from .blowup import BlowupDivisor, PointConfig
from .multisection import (
    DependentClassesError,
    NoAmpleWitnessError,
    canonical_piece_dimension,
    canonical_table,
    cl_R_group,
    class_in_cl_R,
    freeness_test,
    graded_dimension,
    graded_table,
    local_domain_probe,
    make_box,
    module_table,
    new_ring,
    restriction_check,
    serre_duality_check,
)

SUBCOMMANDS = ("classgroup", "sections", "canonical", "freeness", "restrict", "duality", "probe", "examples")


class JobError(ValueError):
    """Malformed job specification (exit 2)."""


class PreconditionError(ValueError):
    """A mathematical precondition failed (exit 3)."""


def load_schema() -> dict:
    return json.loads(resources.files("coxcanon").joinpath("job.schema.json").read_text())


def parse_box(text: str) -> list[tuple[int, int]]:
    out = []
    for part in text.split(","):
        try:
            lo, hi = part.split(":")
            out.append((int(lo), int(hi)))
        except ValueError as exc:
            raise JobError(f"bad box axis {part!r}, expected lo:hi") from exc
    return out


def parse_sublattice(text: str) -> list[list[int]]:
    try:
        return [[int(x) for x in row.split(",")] for row in text.split(";")]
    except ValueError as exc:
        raise JobError(f"bad sublattice {text!r}, expected e.g. 1,0;0,1") from exc


def _rational(x) -> Fraction:
    return Fraction(x) if isinstance(x, str) else Fraction(int(x))


def build_backend(variety: dict):
    """Backend plus, for products of projective spaces, the factor layout."""
    ((kind, spec),) = variety.items()
    if kind == "builtin":
        params = {k: v for k, v in spec.items() if k != "name"}
        try:
            fan = catalog.builtin_fan(spec["name"], **params)
        except (KeyError, ValueError) as exc:
            raise JobError(str(exc)) from exc
        return ToricBackend(fan), catalog.product_layout(spec["name"], **params)
    if kind == "toric":
        fan = toric.Fan(tuple(map(tuple, spec["rays"])), tuple(map(tuple, spec["cones"])))
        diags = toric.validate_fan(fan)
        if diags:
            raise JobError("invalid fan: " + "; ".join(diags))
        return ToricBackend(fan), None
    if kind == "blowup":
        try:
            config = PointConfig(spec["n"], tuple(tuple(_rational(x) for x in p) for p in spec["points"]))
        except ValueError as exc:
            raise JobError(str(exc)) from exc
        return BlowupBackend(config), None
    if kind == "weighted_blowup":
        try:
            return catalog.weighted_blowup_backend(spec["a"], spec["b"], spec["c"]), None
        except ValueError as exc:
            raise JobError(str(exc)) from exc
    raise JobError(f"unknown variety kind {kind!r}")  # pragma: no cover - schema guards this


def build_divisor(backend, vector):
    """Divisor from coefficients in the backend's basis: ray order for toric,
    (E_1, ..., E_r, A) for blow-ups, class coordinates for lattice data."""
    vals = [_rational(x) for x in vector]
    if isinstance(backend, ToricBackend):
        if len(vals) != backend.fan.nrays:
            raise JobError(f"toric divisor needs {backend.fan.nrays} coefficients, got {len(vals)}")
        return toric.ToricDivisor(vals)
    if any(v.denominator != 1 for v in vals):
        raise JobError("only toric divisors may have rational coefficients")
    ints = [int(v) for v in vals]
    if isinstance(backend, BlowupBackend):
        r = backend.config.r
        if len(ints) != r + 1:
            raise JobError(f"blow-up divisor needs {r + 1} coefficients (E_1..E_r, A)")
        return BlowupDivisor(ints[r], tuple(-x for x in ints[:r]))
    if isinstance(backend, LatticeBackend):
        if len(ints) != len(backend.basis_names):
            raise JobError("lattice divisor has the wrong length")
        return backend.divisor(ints)
    raise JobError("unsupported backend")  # pragma: no cover


def load_job(path: str) -> dict:
    try:
        with open(path) as fh:
            job = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise JobError(f"cannot read job file: {exc}") from exc
    try:
        jsonschema.validate(job, load_schema())
    except jsonschema.ValidationError as exc:
        raise JobError(f"schema violation at {list(exc.absolute_path)}: {exc.message}") from exc
    return job


def _box(box, s):
    try:
        return make_box(box, s)
    except ValueError as exc:
        raise JobError(str(exc)) from exc


def _ring(job, backend):
    if not job.get("divisors"):
        raise JobError("this subcommand needs a non-empty 'divisors' list")
    divisors = [build_divisor(backend, v) for v in job["divisors"]]
    try:
        return new_ring(backend, divisors, witness_bound=job.get("witness_bound", 8))
    except DependentClassesError as exc:
        raise PreconditionError(str(exc)) from exc


def _warnings(ring) -> list[str]:
    out = []
    if not ring.hypothesis_verified:
        out.append("no ample Cartier divisor found in the degree lattice; results are unverified")
    if ring.ample_status == "assumed":
        out.append("ample divisor in the degree lattice assumed, not verified")
    out.append("Noetherian property of R assumed, not verified")
    return out


def _base_report(subcommand, backend, ring=None) -> dict:
    report = {"subcommand": subcommand, "variety": backend.describe()}
    if ring is not None:
        report["hypotheses"] = ring.hypotheses()
        report["warnings"] = _warnings(ring)
    return report


def run(subcommand: str, job: dict, *, box=None, sublattice=None) -> dict:
    """Execute a subcommand on a parsed job and return the report."""
    if subcommand == "examples":
        return examples_report()
    backend, layout = build_backend(job["variety"])
    box = box or job.get("box")
    if subcommand == "classgroup":
        report = _base_report(subcommand, backend)
        report["cl_X"] = backend.class_group().to_dict()
        report["canonical_class"] = list(backend.divisor_class(backend.canonical_divisor()).coordinates)
        if job.get("divisors"):
            ring = _ring(job, backend)
            report.update(_base_report(subcommand, backend, ring))
            report["cl_R"] = cl_R_group(ring, allow_unverified=True).to_dict()
            report["canonical_class_in_cl_R"] = list(
                class_in_cl_R(ring, backend.canonical_divisor(), allow_unverified=True).coordinates)
        return report

    ring = _ring(job, backend)
    report = _base_report(subcommand, backend, ring)
    try:
        if subcommand == "sections":
            if "twist" in job:
                F = build_divisor(backend, job["twist"])
                report["table"] = module_table(ring, F, _box(box, ring.s)).to_dict()
            else:
                report["table"] = graded_table(ring, _box(box, ring.s)).to_dict()
        elif subcommand == "canonical":
            report["table"] = canonical_table(ring, _box(box, ring.s), allow_unverified=True).to_dict()
        elif subcommand == "freeness":
            report["verdict"] = freeness_test(ring, allow_unverified=True).to_dict()
        elif subcommand == "restrict":
            sub = sublattice or job.get("sublattice")
            if not sub:
                raise JobError("restrict needs a sublattice")
            sub_box = _box(box, len(sub)) if box else None
            report["restriction"] = restriction_check(ring, sub, sub_box, allow_unverified=True).to_dict()
        elif subcommand == "duality":
            if layout is None:
                raise JobError("duality needs a builtin product of projective spaces")
            report["duality"] = serre_duality_check(ring, layout, _box(box, ring.s)).to_dict()
        elif subcommand == "probe":
            report["probe"] = local_domain_probe(ring, _box(box, ring.s)).to_dict()
        else:
            raise JobError(f"unknown subcommand {subcommand!r}")
    except DependentClassesError as exc:
        raise PreconditionError(str(exc)) from exc
    except (UnsupportedOperation, NoAmpleWitnessError) as exc:
        raise PreconditionError(str(exc)) from exc
    return report


def examples_report() -> dict:
    """Regenerate the standard example tables."""
    ex1 = catalog.weighted_blowup_freeness_table(2, 3, 5, range(1, 7), range(1, 7))
    ex2 = {}
    for m in [(1, 1), (2, 2), (2, 3), (3, 3)]:
        ring = catalog.point_blowup_ring(3, m)
        ex2[",".join(map(str, m))] = freeness_test(ring).to_dict()
    cox = catalog.cox_p1xp1()
    box = make_box(None, 2)
    omega = canonical_table(cox, box)
    shifted_ok = all(omega[n] == graded_dimension(cox, (n[0] - 2, n[1] - 2)) for n in omega.degrees())
    segre = {
        f"{a},{b}": [canonical_piece_dimension(catalog.segre_ring(a, b), (n,)) for n in range(1, 6)]
        for a, b in [(1, 1), (2, 3)]
    }
    return {
        "subcommand": "examples",
        "weighted_blowup_2_3_5": {
            "free": sorted([f"{a},{b}" for (a, b), v in ex1.items() if v]),
            "table": {f"{a},{b}": v for (a, b), v in sorted(ex1.items())},
        },
        "point_blowup_P3_r2": ex2,
        "p1xp1": {
            "freeness": freeness_test(cox).to_dict(),
            "canonical_table": omega.to_dict(),
            "canonical_equals_graded_shifted_by_2_2": shifted_ok,
            "restriction_1_0": restriction_check(cox, [(1, 0)]).to_dict(),
            "restriction_1_1": restriction_check(cox, [(1, 1)]).to_dict(),
            "segre_canonical_n_1_to_5": segre,
        },
    }


def render(report: dict, fmt: str) -> str:
    if fmt == "csv":
        table = report.get("table")
        if table is None:
            raise JobError("csv output is only available for table subcommands")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "dim"])
        for e in table["entries"]:
            w.writerow([",".join(str(x) for x in e["degree"]), e["dim"]])
        return buf.getvalue()
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coxcanon", description="Graded canonical modules of multi-section rings.")
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    p.add_argument("--input", help="job JSON file")
    p.add_argument("--box", help="degree box, lo:hi per axis (comma separated) or one lo:hi for all")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--sublattice", help="sublattice basis rows, e.g. '1,0;0,1'")
    p.add_argument("--out", help="write the report here instead of stdout")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = {} if args.subcommand == "examples" else None
        if job is None:
            if not args.input:
                raise JobError("--input is required")
            job = load_job(args.input)
        box = parse_box(args.box) if args.box else None
        sub = parse_sublattice(args.sublattice) if args.sublattice else None
        report = run(args.subcommand, job, box=box, sublattice=sub)
        text = render(report, args.format)
    except JobError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PreconditionError, toric.InvalidFanError) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return 3
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
