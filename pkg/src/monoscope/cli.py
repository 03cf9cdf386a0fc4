"""Command-line front end: ``monoscope <subcommand> [flags]``."""

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import verify as _verify
from .experiments import Experiment, ExperimentConfig, run_experiment
from .ggm import ggm
from .monogamy import (
    minimal_activation_copies,
    monogamy_score,
    monogamy_score_m_copies,
    score_parts,
)
from .states import ClassLabel, GGHZParams, PureState, ghz_state, gghz_state, three_tangle, w_state

logger = logging.getLogger("monoscope")

RENORMALIZE_LIMIT = 1e-8

_CLASSES = {
    "ghz": (ClassLabel.GHZ_CLASS,),
    "w": (ClassLabel.W_CLASS,),
    "both": (ClassLabel.GHZ_CLASS, ClassLabel.W_CLASS),
}
_NAMES = {ClassLabel.GHZ_CLASS: "GHZ-class", ClassLabel.W_CLASS: "W-class"}
# reference values quoted next to measured ones
_REFERENCE = {
    "fraction": {"ghz": 0.088, "w": 0.433},
    "m2": {"ghz": 0.88, "w": 0.47},
}


def read_state_file(path):
    """
    Parse a state file: one amplitude per line as ``re im``, qubit 0 most
    significant.  Blank lines and ``#`` comments are ignored.
    """
    values = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(f"{path}:{lineno}: expected 're im', got {line!r}")
        try:
            values.append(complex(float(fields[0]), float(fields[1])))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    amps = np.array(values, dtype=np.complex128)
    if amps.size < 2 or amps.size & (amps.size - 1):
        raise ValueError(f"{path}: amplitude count {amps.size} is not a power of two >= 2")
    norm = float(np.vdot(amps, amps).real)
    if abs(norm - 1.0) > RENORMALIZE_LIMIT:
        raise ValueError(f"{path}: amplitudes not normalized (|psi|^2 = {norm!r})")
    if abs(norm - 1.0) > 1e-14:
        logger.warning("renormalizing %s (|psi|^2 = %r)", path, norm)
        amps = amps / np.sqrt(norm)
    return PureState(amps)


def parse_state(spec):
    """``ghz``, ``w``, ``gghz:alpha[:phi]`` or a path to a state file."""
    low = spec.lower()
    if low == "ghz":
        return ghz_state()
    if low == "w":
        return w_state()
    if low.startswith("gghz:"):
        fields = spec.split(":")[1:]
        if not 1 <= len(fields) <= 2:
            raise ValueError(f"expected gghz:alpha[:phi], got {spec!r}")
        alpha = float(fields[0])
        phi = float(fields[1]) if len(fields) == 2 else 0.0
        return gghz_state(GGHZParams(alpha, phi))
    return read_state_file(spec)


def inspect_report(psi, m_max=10_000):
    parts = score_parts(psi)
    report = {
        "n_one_rest": parts.n_one_rest,
        "n_pair": list(parts.n_pair),
        "delta1": monogamy_score(parts),
        "delta2": monogamy_score_m_copies(parts, 2),
        "m_min": minimal_activation_copies(parts, m_max),
    }
    if psi.dims == (2, 2, 2):
        report["three_tangle"] = three_tangle(psi)
        report["ggm"] = ggm(psi).value
    else:
        report["three_tangle"] = None
        report["ggm"] = None
    return report


def _fmt(v):
    if v is None:
        return "n/a"
    if isinstance(v, list):
        return "[" + ", ".join(f"{x:.6f}" for x in v) + "]"
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def cmd_inspect(args):
    report = inspect_report(parse_state(args.state), args.m_max)
    if args.json:
        print(json.dumps(report, indent=2))
        return 0
    width = max(len(k) for k in report)
    for k, v in report.items():
        print(f"{k:<{width}}  {_fmt(v)}")
    return 0


def cmd_activate(args):
    parts = score_parts(parse_state(args.state))
    m_min = minimal_activation_copies(parts, args.m_max)
    last = m_min if m_min is not None else min(args.m_max, 20)
    print(f"{'m':>6}  delta_m")
    for m in range(1, last + 1):
        print(f"{m:>6}  {monogamy_score_m_copies(parts, m):.6g}")
    if m_min is None:
        print(f"not activated within m <= {args.m_max}")
    else:
        print(f"minimal activating copies: {m_min}")
    return 0


def _config(args, experiment, **extra):
    return ExperimentConfig(
        experiment=experiment,
        classes=_CLASSES[args.cls],
        samples=args.samples,
        master_seed=args.seed,
        m_max=args.m_max,
        partner_pool=args.pool,
        output_dir=args.out,
        format=args.format,
        threads=args.threads,
        **extra,
    )


def cmd_fig2(args):
    res = run_experiment(_config(args, Experiment.ACTIVATION_HIST))
    for key, s in res.summary.items():
        name = _NAMES[ClassLabel(key)]
        print(f"{name} P(m_min = 2 | nonmonogamous): {s['p_m2_given_nonmonogamous']:.4f} "
              f"(paper: {_REFERENCE['m2'][key]})")
        print(f"{name} largest m_min: {s['max_m']}, not found: {s['not_found']} (paper: 0)")
    print(f"wrote {args.out}")
    return 0


def cmd_fig3(args):
    res = run_experiment(_config(args, Experiment.SCORE_DIST))
    for key, s in res.summary.items():
        name = _NAMES[ClassLabel(key)]
        print(f"{name} nonmonogamous fraction: {s['fraction_delta1_negative']:.4f} "
              f"(paper: {_REFERENCE['fraction'][key]})")
        print(f"{name} two-copy nonmonogamous fraction: {s['fraction_delta2_negative']:.4f}")
    print(f"wrote {args.out}")
    return 0


def _cmd_scatter(args, key, label):
    res = run_experiment(_config(args, Experiment.GGM_SCATTER))
    for cls, s in res.summary.items():
        print(f"{_NAMES[ClassLabel(cls)]} {label} boundary violations: {s[key]} (paper: 0)")
    print(f"wrote {args.out}")
    return 0


def cmd_fig4(args):
    return _cmd_scatter(args, "violations_one_copy", "one-copy")


def cmd_fig5(args):
    return _cmd_scatter(args, "violations_two_copy", "two-copy")


def cmd_pair(args):
    res = run_experiment(_config(args, Experiment.PAIR_ACTIVATION, pair_mode=args.mode))
    _, rows = res.tables["pair_activation"]
    for rho, sigma, mode, attempted, activated, rate in rows:
        print(f"rho {rho:<3} sigma {sigma:<4} {mode:<5} attempted {attempted:>7} "
              f"activated {activated:>7} failure_rate {rate:.4f}")
    print("paper: GHZ-class always activated; W-class three-party failures < 1%, "
          "four-party failures 0")
    print(f"wrote {args.out}")
    return 0


def cmd_verify(args):
    if args.list:
        for name in _verify.CHECKS:
            print(name)
        return 0
    return 0 if _verify.run_checks(args.checks or None) else 1


def _add_run_flags(p):
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--class", dest="cls", choices=sorted(_CLASSES), default="both")
    p.add_argument("--m-max", type=int, default=10_000)
    p.add_argument("--pool", type=int, default=1000)
    p.add_argument("--out", default=os.environ.get("MONOSCOPE_OUT", "monoscope_out"))
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--threads", type=int, default=0, help="worker threads, 0 = auto")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="monoscope",
        description="Negativity monogamy scores and their activation for multiqubit states.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inspect", help="scores, activation and GGM of one state")
    p.add_argument("state", help="ghz | w | gghz:alpha[:phi] | path to amplitude file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--m-max", type=int, default=10_000)
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("activate", help="m-copy score of one state up to activation")
    p.add_argument("state")
    p.add_argument("--m-max", type=int, default=10_000)
    p.set_defaults(func=cmd_activate)

    for name, func, text in (
        ("fig2", cmd_fig2, "histogram of minimal activating copies"),
        ("fig3", cmd_fig3, "distribution of one- and two-copy scores"),
        ("fig4", cmd_fig4, "score vs GGM scatter, one-copy boundary"),
        ("fig5", cmd_fig5, "score vs GGM scatter, two-copy boundary"),
    ):
        p = sub.add_parser(name, help=text)
        _add_run_flags(p)
        p.set_defaults(func=func)

    p = sub.add_parser("pair", help="activation by pairing with a partner state")
    _add_run_flags(p)
    p.add_argument("--mode", choices=("three", "four", "both"), default="both")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("verify", help="run oracle and property checks")
    p.add_argument("--list", action="store_true", help="print check names only")
    p.add_argument("checks", nargs="*", help="subset of checks to run")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if getattr(args, "checks", None):
        unknown = [c for c in args.checks if c not in _verify.CHECKS]
        if unknown:
            print(f"unknown checks: {', '.join(unknown)}", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"monoscope: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
