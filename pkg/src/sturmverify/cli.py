"""Command-line front end: verification suites and image computations.

Exit codes: 0 all checks pass, 1 at least one check failed, 2 invalid
flags or malformed input, 3 parameter regime outside what the closed
forms support.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import suites
from .errors import PoleError, UnsupportedRegimeError
from .cone_integration import MonteCarloParams
from .maass_operator import FourierExpansion, maass_coeff_factor
from .report import CheckRecord, VerificationReport
from .sturm_operator import a_closed, phantom_series, sturm_limit, sturm_numeric

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_UNSUPPORTED = 3

SUITES = ("pm", "exterior", "sandwich", "maass", "cone", "sturm", "all")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sturmverify",
        description="Cross-check the closed forms of the coefficient calculus against independent oracles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a named verification suite")
    verify.add_argument("suite", choices=SUITES)
    verify.add_argument("--m", type=int, default=2, help="genus for the cone suite (default 2)")
    verify.add_argument("--k", type=int, default=1, help="weight for the genus-2 coefficient cross-check")
    verify.add_argument("--s", type=float, default=2.5, help="shift for the cone suite (default 2.5)")
    verify.add_argument("--q", type=int, default=None, help="restrict the cone suite to one exterior degree")
    verify.add_argument("--samples", type=int, default=suites.DEFAULT_SAMPLES)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--nu", type=float, default=None, help="override proposal degrees of freedom")
    verify.add_argument("--max-genus", type=int, default=12, dest="max_genus")
    verify.add_argument("--quick", action="store_true", help="cap samples at 1e5 and genus at 3")
    verify.add_argument("--out", default=None, help="write the JSON report here instead of stdout")

    phantom = sub.add_parser("phantom", help="compute the image expansion of a Fourier-data file")
    phantom.add_argument("file", help="FourierExpansion JSON")
    phantom.add_argument("--crosscheck", action="store_true", help="Monte Carlo comparison at s = 1")
    phantom.add_argument("--samples", type=int, default=200_000)
    phantom.add_argument("--seed", type=int, default=0)
    phantom.add_argument("--out", default=None)
    return parser


def _validate_verify(args) -> str | None:
    if args.m < 1:
        return f"--m must be >= 1 (got {args.m})"
    if args.k < 1:
        return f"--k must be >= 1 (got {args.k})"
    if args.samples < 1:
        return f"--samples must be >= 1 (got {args.samples})"
    if args.max_genus < 1:
        return f"--max-genus must be >= 1 (got {args.max_genus})"
    if args.q is not None and not 0 <= args.q <= args.m:
        return f"--q must lie in 0..{args.m} (got {args.q})"
    if args.nu is not None and args.nu <= args.m - 1:
        return f"--nu must exceed m-1 = {args.m - 1} (got {args.nu})"
    return None


def cmd_verify(args) -> int:
    problem = _validate_verify(args)
    if problem is not None:
        print(f"error: {problem}", file=sys.stderr)
        return EXIT_BAD_INPUT

    samples = min(args.samples, suites.QUICK_SAMPLES) if args.quick else args.samples
    max_genus = min(args.max_genus, suites.QUICK_GENUS) if args.quick else args.max_genus
    instances = 50 if args.quick else 200
    max_m = suites.QUICK_GENUS if args.quick else 5

    started = time.perf_counter()
    try:
        if args.suite == "pm":
            checks = suites.run_pm(max_genus)
        elif args.suite == "exterior":
            checks = suites.run_exterior(args.seed, instances=instances, max_m=max_m)
        elif args.suite == "sandwich":
            checks = suites.run_sandwich(args.seed, instances=instances, max_m=max_m)
        elif args.suite == "maass":
            checks = suites.run_maass(args.seed, quick=args.quick) + suites.run_fd(
                args.seed, quick=args.quick
            )
        elif args.suite == "cone":
            checks = suites.run_cone(
                m=args.m,
                s=args.s,
                samples=samples,
                seed=args.seed,
                nu=args.nu,
                q_only=args.q,
                quick=args.quick,
            )
        elif args.suite == "sturm":
            checks = suites.run_sturm(samples=samples, seed=args.seed, quick=args.quick, k2=args.k)
        else:
            checks = suites.run_all(
                seed=args.seed, samples=samples, max_genus=max_genus, quick=args.quick
            )
    except PoleError as exc:
        print(f"error: parameters hit a pole: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except UnsupportedRegimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED

    report = VerificationReport(
        suite=args.suite,
        seed=args.seed,
        checks=checks,
        wall_time_s=time.perf_counter() - started,
    )
    report.write(args.out)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _phantom_payload(h: FourierExpansion, args) -> tuple[dict, int]:
    m = h.m
    if h.k == m - 1:
        image = phantom_series(h)
        results = [sturm_limit(m, h.k, form, b).to_json() for form, b in h.terms.items()]
        payload = {
            "schema": "1",
            "regime": "phantom",
            "input": h.to_json(),
            "image": image.to_json(),
            "results": results,
        }
        code = EXIT_OK
        if args.crosscheck:
            checks = []
            for i, (form, b) in enumerate(h.terms.items()):
                coeff = lambda f, y, _b=b: _b * maass_coeff_factor(m, h.k, f, y)
                est = sturm_numeric(
                    m, h.k + 2, coeff, form, 1.0, MonteCarloParams(samples=args.samples, seed=args.seed)
                )
                checks.append(
                    CheckRecord.compare(
                        f"phantom.crosscheck.term{i}",
                        "Monte Carlo coefficient integral at s=1 matches the closed form",
                        a_closed(m, h.k, 1.0, form, b),
                        est.value,
                        3.0,
                        mode="sigma",
                        stderr=est.stderr,
                    )
                )
            payload["crosscheck"] = [c.to_json() for c in checks]
            if not all(c.passed for c in checks):
                code = EXIT_CHECK_FAILED
        return payload, code

    # k >= m: the normalized limit vanishes identically
    zero_image = FourierExpansion(m, h.k + 2, {form: 0.0 for form in h.terms})
    results = [sturm_limit(m, h.k, form, b).to_json() for form, b in h.terms.items()]
    payload = {
        "schema": "1",
        "regime": "vanishing",
        "note": "the normalized limit is exactly 0 for every index at this weight",
        "input": h.to_json(),
        "image": zero_image.to_json(),
        "results": results,
    }
    return payload, EXIT_OK


def cmd_phantom(args) -> int:
    try:
        h = FourierExpansion.load(args.file)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: cannot read expansion: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT

    if h.k < h.m - 1:
        print(
            f"error: weight k={h.k} below the supported range for genus m={h.m}; "
            "the coefficient limit diverges there",
            file=sys.stderr,
        )
        return EXIT_UNSUPPORTED

    payload, code = _phantom_payload(h, args)
    text = json.dumps(payload, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "verify":
        return cmd_verify(args)
    return cmd_phantom(args)


if __name__ == "__main__":
    sys.exit(main())
