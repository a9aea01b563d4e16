"""Command line front end.

Each subcommand reads one JSON job file and writes one JSON report::

    freeshift breadth --input job.json --output report.json

Exit codes: 0 ok, 2 invalid input, 3 scale gate hit, 4 certification
failed, 5 resample budget exhausted. Reports are deterministic: keys are
sorted and nothing time dependent is recorded.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from .constructor import (AugmentationPlan, assemble_augmented_cover,
                          augmented_instance, freeness_patterns,
                          orbit_escape_check, period_check)
from .covers import BreadthCertificate, family_breadth, family_width, rho, sigma
from .errors import (CertificationError, FreeshiftError, NonAmenableGroup,
                     NotCorrectError, RadiusExceeded, ResampleBudgetExhausted,
                     ScaleExceeded, ValidationError, WindowTooSmall)
from .io import (SCHEMA_VERSION, elements_from_json, family_from_json,
                 family_to_json, group_from_json, window_from_json)
from .lll import (WindowInstance, brute_force_count, canonical_witness,
                  check_correctness, counting_lower_bound, largest_passing_h)
from .sampler import (SamplerConfig, folner_entropy_estimate, sample_with_stats,
                      verify_avoidance)
from .sofic import (approx_coloring_count, cyclic_approximation,
                    permutation_approximation, proper_set, transfer_patterns,
                    vertex_lll_count_bound)

THREADS_ENV = "FREESHIFT_THREADS"

EXIT_OK, EXIT_VALIDATION, EXIT_SCALE, EXIT_CERT, EXIT_BUDGET = 0, 2, 3, 4, 5


class CertificationFailed(Exception):
    """Carries a report that should still be written before exiting with 4."""

    def __init__(self, report):
        super().__init__("certification failed")
        self.report = report


def _clean(obj):
    """Replace non-finite floats by strings so the output is strict JSON."""
    if isinstance(obj, float) and not math.isfinite(obj):
        return "inf" if obj > 0 else ("-inf" if obj < 0 else "nan")
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _load_common(job):
    if not isinstance(job, dict):
        raise ValidationError("job file must hold a JSON object")
    if job.get("schema_version", SCHEMA_VERSION) != SCHEMA_VERSION:
        raise ValidationError(f"unsupported schema_version {job.get('schema_version')!r}")
    group = group_from_json(job.get("group", {"kind": "zd", "d": 1}))
    k = job.get("k", 2)
    if type(k) is not int or k < 2:
        raise ValidationError("k must be an integer >= 2")
    return group, k


def _family(job, group, k, key="family"):
    return family_from_json(job.get(key, []), group, k)


def _h_for(inst, job, args):
    if "h" in job:
        h = job["h"]
        if not isinstance(h, (int, float)) or isinstance(h, bool) or h <= 0:
            raise ValidationError("h must be a positive number")
        return float(h)
    return largest_passing_h(inst, grid=args.grid)


def cmd_width(job, args):
    group, k = _load_common(job)
    fam = _family(job, group, k)
    w = family_width(fam, tol=args.tol)
    return {"width": w, "rho_at_width": rho(fam, w) if len(fam) else 0.0,
            "n_patterns": len(fam)}


def cmd_breadth(job, args):
    group, k = _load_common(job)
    fam = _family(job, group, k)
    b = family_breadth(fam, grid=args.grid, tol=args.tol)
    rec = {"h": b, "rho": rho(fam, b) if b > 0 else float(len(fam)),
           "sigma": sigma(fam, b) if b > 0 else 0.0,
           "slack": math.log2(k) - b - (sigma(fam, b) if b > 0 else 0.0)}
    return rec


def cmd_certify(job, args):
    group, k = _load_common(job)
    fam = _family(job, group, k)
    inst = WindowInstance(window_from_json(job, group, args.window_radius), fam)
    h = _h_for(inst, job, args)
    if h is None:
        raise CertificationFailed({"ok": False, "h": None,
                                   "reason": "no grid value of h certifies the instance"})
    report = check_correctness(inst, canonical_witness(inst, h))
    out = {"h": h, "ok": report.ok, "worst_slack": report.worst_slack,
           "n_constraints": len(inst), "n_cells": inst.n_cells,
           "slacks": report.table(inst)}
    if not report.ok:
        raise CertificationFailed(out)
    out["log2_lower_bound"] = counting_lower_bound(inst, canonical_witness(inst, h))
    return out


def _config_record(x):
    G = x.group
    return {"window": [G.format(g) for g in x.window], "values": list(x.values)}


def cmd_sample(job, args):
    group, k = _load_common(job)
    fam = _family(job, group, k)
    inst = WindowInstance(window_from_json(job, group, args.window_radius), fam)
    h = _h_for(inst, job, args)
    if h is None or not check_correctness(inst, canonical_witness(inst, h)).ok:
        raise NotCorrectError("the canonical witness does not certify this instance")
    cfg = SamplerConfig(seed=args.seed, max_resamples=args.max_resamples)
    x, stats = sample_with_stats(inst, cfg, threads=args.threads)
    return {"h": h, "configuration": _config_record(x),
            "attestation": {"verified": verify_avoidance(x, inst),
                            "resamples": stats.resamples,
                            "n_constraints": len(inst)}}


def cmd_count(job, args):
    group, k = _load_common(job)
    fam = _family(job, group, k)
    inst = WindowInstance(window_from_json(job, group, args.window_radius), fam)
    out = {"count": brute_force_count(inst), "n_cells": inst.n_cells,
           "n_constraints": len(inst)}
    h = _h_for(inst, job, args)
    if h is not None:
        report = check_correctness(inst, canonical_witness(inst, h))
        out["h"] = h
        out["witness_ok"] = report.ok
        if report.ok:
            out["log2_lower_bound"] = counting_lower_bound(inst, canonical_witness(inst, h))
    return out


def cmd_construct_free(job, args):
    group, k = _load_common(job)
    h = job.get("h")
    if not isinstance(h, (int, float)) or isinstance(h, bool):
        raise ValidationError("construct-free needs a numeric h")
    radius = job.get("freeness_radius", 0)
    if type(radius) is not int or radius < 0:
        raise ValidationError("freeness_radius must be a nonnegative integer")
    gammas = group.ball(radius)[1:]
    bad = [freeness_patterns(group, g, k) for g in gammas]
    bad += [family_from_json(f, group, k) for f in job.get("bad_families", [])]
    base = _family(job, group, k, "base_cover")
    plan = AugmentationPlan(base, float(h), bad)
    cover = assemble_augmented_cover(plan)
    window = window_from_json(job, group, args.window_radius)
    inst = augmented_instance(window, cover)
    cfg = SamplerConfig(seed=args.seed, max_resamples=args.max_resamples)
    x, stats = sample_with_stats(inst, cfg, threads=args.threads)
    periods = [{"gamma": group.format(g), "periodic": period_check(x, g)} for g in gammas]
    escapes = []
    for n, fam in enumerate(bad):
        for side in ("left", "right"):
            try:
                ok = orbit_escape_check(x, fam, side)
            except WindowTooSmall:
                ok = None
            escapes.append({"family": n, "side": side, "escapes": ok})
    return {"certificate": {**cover.certificate.record(), **cover.record()},
            "configuration": _config_record(x),
            "attestation": {"verified": verify_avoidance(x, inst),
                            "resamples": stats.resamples,
                            "n_events": len(inst) + len(inst.extra_events)},
            "period_check": periods, "orbit_escape": escapes}


def _action(spec, group, radius):
    kind = spec.get("kind") if isinstance(spec, dict) else None
    if kind == "cyclic":
        if group.kind != "zd" or group.rank != 1:
            raise ValidationError("cyclic approximations are for Z")
        return cyclic_approximation(int(spec["n"]), radius)
    if kind == "perm":
        return permutation_approximation(group, int(spec["v"]), int(spec.get("seed", 0)),
                                         radius)
    raise ValidationError("action must be {'kind': 'cyclic'|'perm', ...}")


def cmd_sofic_bound(job, args):
    group, k = _load_common(job)
    fam = _family(job, group, k)
    h = job.get("h")
    if not isinstance(h, (int, float)) or isinstance(h, bool) or h <= 0:
        raise ValidationError("sofic-bound needs a positive h")
    if "S" in job:
        S = group.symmetrize(elements_from_json(job["S"], group))
    else:
        S = group.ball(int(job.get("S_radius", 1)))
    rS = max(group.length(s) for s in S)
    alpha = _action(job.get("action"), group, 4 * rS)
    eps = float(job.get("epsilon", 0.1))
    F = elements_from_json(job.get("F", [group.format(group.identity)]), group)
    S3, S4 = group.powers(S, 3), group.powers(S, 4)
    vf = transfer_patterns(fam, alpha, S)
    bound = vertex_lll_count_bound(vf, k, float(h), base=fam)
    out = {"n_vertices": alpha.n_vertices,
           "prop_S3": proper_set(alpha, S3).record(),
           "prop_S4": proper_set(alpha, S4).record(),
           "n_vertex_patterns": len(vf), "bound": bound.record(),
           "sigma": sigma(fam, float(h)), "log2k_minus_sigma": math.log2(k) - sigma(fam, float(h))}
    try:
        out["coloring"] = approx_coloring_count(alpha, fam, eps, F, S).record()
    except ScaleExceeded:
        out["coloring"] = None
    return out


def cmd_folner_entropy(job, args):
    group, k = _load_common(job)
    fam = _family(job, group, k)
    n = job.get("n", 1)
    if type(n) is not int or n < 0:
        raise ValidationError("n must be a nonnegative integer")
    padding = job.get("padding")
    est = folner_entropy_estimate(fam, n, padding)
    return {"estimate": est, "empty": est == -math.inf, "n": n, "padding": padding}


COMMANDS = {
    "width": cmd_width,
    "breadth": cmd_breadth,
    "certify": cmd_certify,
    "sample": cmd_sample,
    "count": cmd_count,
    "construct-free": cmd_construct_free,
    "sofic-bound": cmd_sofic_bound,
    "folner-entropy": cmd_folner_entropy,
}


def _default_threads():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def build_parser():
    p = argparse.ArgumentParser(prog="freeshift", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--input", required=True, help="JSON job file")
    p.add_argument("--output", help="report path (default: stdout)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--grid", type=int, default=4096)
    p.add_argument("--max-resamples", type=int, default=1_000_000)
    p.add_argument("--window-radius", type=int, default=None)
    p.add_argument("--threads", type=int, default=_default_threads(),
                   help=f"scan threads (default from ${THREADS_ENV}, else 1)")
    return p


def _write(report, args):
    text = json.dumps(_clean(report), sort_keys=True, indent=2, allow_nan=False) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    header = {"version": __version__, "schema_version": SCHEMA_VERSION,
              "command": args.command, "seed": args.seed, "tol": args.tol}
    try:
        if args.tol <= 0 or args.grid < 1 or args.threads < 1:
            raise ValidationError("tol, grid and threads must be positive")
        with open(args.input, encoding="utf-8") as fh:
            job = json.load(fh)
        result = COMMANDS[args.command](job, args)
    except CertificationFailed as exc:
        _write({**header, "result": exc.report}, args)
        return EXIT_CERT
    except (ValidationError, NonAmenableGroup, json.JSONDecodeError, OSError,
            KeyError, TypeError, ValueError) as exc:
        print(f"freeshift: invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ScaleExceeded, RadiusExceeded, WindowTooSmall) as exc:
        print(f"freeshift: scale gate: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except CertificationError as exc:
        print(f"freeshift: certification failed: {exc}", file=sys.stderr)
        return EXIT_CERT
    except ResampleBudgetExhausted as exc:
        print(f"freeshift: resample budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except FreeshiftError as exc:
        print(f"freeshift: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    _write({**header, "result": result}, args)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
