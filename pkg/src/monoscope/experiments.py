"""
Seeded Monte-Carlo experiments over three-qubit pure states.

Sample ``i`` of class ``c`` is drawn from the stream
``mix(mix(master_seed, stream_id(c)), i)``.  Work is split into fixed index
chunks which may run on any number of threads; per-row computations never
mix rows, so output files are byte-identical for any thread count.
"""

import enum
import hashlib
import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .monogamy import (
    MONOGAMY_TOL,
    minimal_activation_copies_array,
    multicopy_scores,
    negativity_product,
    pure_parts_array,
)
from .ggm import BOUND_SLACK, gghz_boundary, gghz_boundary_two_copies
from .rng import child_seeds, mix
from .states import ClassLabel, ghz_class_block, w_class_block

__all__ = [
    "Experiment",
    "ExperimentConfig",
    "HistogramRow",
    "ExperimentResult",
    "SampleSet",
    "SCORE_BINS",
    "sample_seeds",
    "sample_amplitudes",
    "measure_class",
    "run_activation_histogram",
    "run_score_distribution",
    "run_pair_activation",
    "run_ggm_scatter",
    "run_experiment",
]

logger = logging.getLogger(__name__)

SCORE_BINS = np.round(-0.6 + 0.05 * np.arange(45), 10)

_STREAM = {ClassLabel.GHZ_CLASS: 1, ClassLabel.W_CLASS: 2}
_PARTNER_STREAM = {ClassLabel.GHZ_CLASS: 101, ClassLabel.W_CLASS: 102}
_SAMPLERS = {ClassLabel.GHZ_CLASS: ghz_class_block, ClassLabel.W_CLASS: w_class_block}


class Experiment(enum.Enum):
    ACTIVATION_HIST = "activation_hist"
    SCORE_DIST = "score_dist"
    PAIR_ACTIVATION = "pair_activation"
    GGM_SCATTER = "ggm_scatter"


@dataclass
class ExperimentConfig:
    experiment: Experiment
    classes: tuple = (ClassLabel.GHZ_CLASS, ClassLabel.W_CLASS)
    samples: int = 100_000
    master_seed: int = 0
    m_max: int = 10_000
    partner_pool: int = 1000
    output_dir: str | None = "monoscope_out"
    format: str = "csv"
    threads: int = 0
    chunk_size: int = 8192
    pair_mode: str = "both"

    def __post_init__(self):
        self.experiment = Experiment(self.experiment)
        self.classes = tuple(ClassLabel(c) for c in self.classes)
        bad = [c for c in self.classes if c not in _STREAM]
        if bad or not self.classes:
            raise ValueError(f"classes must be a non-empty subset of GHZ/W, got {self.classes}")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.m_max < 1:
            raise ValueError("m_max must be >= 1")
        if self.partner_pool < 1:
            raise ValueError("partner_pool must be >= 1")
        if self.format not in ("csv", "json"):
            raise ValueError(f"format must be 'csv' or 'json', got {self.format!r}")
        if self.pair_mode not in ("three", "four", "both"):
            raise ValueError(f"pair_mode must be three, four or both, got {self.pair_mode!r}")
        if self.chunk_size < 1 or self.threads < 0:
            raise ValueError("chunk_size must be >= 1 and threads >= 0")

    def echo(self):
        d = asdict(self)
        d["experiment"] = self.experiment.value
        d["classes"] = [c.value for c in self.classes]
        d["output_dir"] = None if self.output_dir is None else str(self.output_dir)
        return d


@dataclass(frozen=True)
class HistogramRow:
    label: ClassLabel
    m: int
    count: int
    probability: float


@dataclass
class ExperimentResult:
    """Rows per output table, scalar summary, and the run manifest."""

    tables: dict
    summary: dict
    manifest: dict
    histogram: list = field(default_factory=list)


@dataclass
class SampleSet:
    """Per-sample measurements for one class, in index order."""

    label: ClassLabel
    n_one_rest: np.ndarray
    n_pair: np.ndarray
    lam_max: np.ndarray
    rejected: int

    @property
    def delta1(self):
        return self.n_one_rest - self.n_pair.sum(axis=1)

    @property
    def delta2(self):
        return multicopy_scores(self.n_one_rest, self.n_pair, 2)

    @property
    def ggm(self):
        return 1.0 - self.lam_max.max(axis=1)

    @property
    def nonmonogamous(self):
        return self.delta1 < -MONOGAMY_TOL

    def __len__(self):
        return self.n_one_rest.size


def sample_seeds(label, master_seed, indices, partner=False):
    """Per-sample stream seeds for ``indices`` of class ``label``."""
    stream = (_PARTNER_STREAM if partner else _STREAM)[ClassLabel(label)]
    base = int(mix(int(master_seed), stream)[0])
    return child_seeds(base, np.asarray(indices, dtype=np.uint64))


def sample_amplitudes(label, master_seed, start, stop, partner=False):
    """Amplitudes ``(stop - start, 8)`` and the rejection count for an index range."""
    seeds = sample_seeds(label, master_seed, np.arange(start, stop), partner)
    return _SAMPLERS[ClassLabel(label)](seeds)


def _workers(threads):
    return threads if threads > 0 else (os.cpu_count() or 1)


def _chunked(fn, n, chunk, threads):
    bounds = [(s, min(s + chunk, n)) for s in range(0, n, chunk)]
    if _workers(threads) == 1 or len(bounds) == 1:
        return [fn(a, b) for a, b in bounds]
    with ThreadPoolExecutor(max_workers=_workers(threads)) as pool:
        return list(pool.map(lambda ab: fn(*ab), bounds))


def _measure_range(label, master_seed, start, stop, partner=False):
    amps, rejected = sample_amplitudes(label, master_seed, start, stop, partner)
    n_rest, pairs, lam = pure_parts_array(amps)
    return n_rest, pairs, lam, rejected


def measure_class(label, cfg, samples=None, start=0, partner=False):
    """Sample and measure ``samples`` states of one class."""
    n = cfg.samples if samples is None else samples
    parts = _chunked(
        lambda a, b: _measure_range(label, cfg.master_seed, start + a, start + b, partner),
        n, cfg.chunk_size, cfg.threads,
    )
    return SampleSet(
        label=ClassLabel(label),
        n_one_rest=np.concatenate([p[0] for p in parts]),
        n_pair=np.concatenate([p[1] for p in parts]),
        lam_max=np.concatenate([p[2] for p in parts]),
        rejected=sum(p[3] for p in parts),
    )


# ---------------------------------------------------------------- output

def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return "" if np.isnan(v) else repr(float(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


def _json_value(v):
    if v is None:
        return None
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (float, np.floating)):
        return None if np.isnan(v) else float(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    return v


def _encode_table(header, rows, fmt):
    if fmt == "csv":
        lines = [",".join(header)]
        lines.extend(",".join(_cell(v) for v in row) for row in rows)
        return ("\n".join(lines) + "\n").encode()
    records = [{h: _json_value(v) for h, v in zip(header, row)} for row in rows]
    return (json.dumps(records, indent=1) + "\n").encode()


def _finish(cfg, tables, summary, started):
    digests = {}
    if cfg.output_dir is not None:
        out = Path(cfg.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        for name, (header, rows) in tables.items():
            data = _encode_table(header, rows, cfg.format)
            fname = f"{name}.{cfg.format}"
            (out / fname).write_bytes(data)
            digests[fname] = hashlib.sha256(data).hexdigest()
    manifest = {
        "experiment": cfg.experiment.value,
        "config": cfg.echo(),
        "master_seed": cfg.master_seed,
        "version": __version__,
        "files": digests,
        "timings": {"wall_seconds": time.perf_counter() - started},
        "summary": summary,
    }
    if cfg.output_dir is not None:
        (Path(cfg.output_dir) / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
        logger.info("wrote %d files to %s", len(digests) + 1, cfg.output_dir)
    return ExperimentResult(tables=tables, summary=summary, manifest=manifest)


def _require(cfg, kind):
    if cfg.experiment is not kind:
        raise ValueError(f"config is for {cfg.experiment.value}, expected {kind.value}")


# ----------------------------------------------------------- experiments

def run_activation_histogram(cfg):
    """
    Distribution of the minimal activating number of copies among
    nonmonogamous samples, per class.
    """
    _require(cfg, Experiment.ACTIVATION_HIST)
    started = time.perf_counter()
    rows, hist, summary = [], [], {}
    for label in cfg.classes:
        s = measure_class(label, cfg)
        neg = s.nonmonogamous
        m = minimal_activation_copies_array(s.n_one_rest[neg], s.n_pair[neg], cfg.m_max)
        n_neg = int(neg.sum())
        found = m[m > 0]
        top = int(found.max()) if found.size else 1
        counts = np.bincount(found, minlength=top + 1)
        for mm in range(2, top + 1):
            p = counts[mm] / n_neg
            rows.append((label.value, mm, int(counts[mm]), float(p)))
            hist.append(HistogramRow(label, mm, int(counts[mm]), float(p)))
        summary[label.value] = {
            "samples": len(s),
            "rejected_draws": s.rejected,
            "nonmonogamous": n_neg,
            "nonmonogamous_fraction": n_neg / len(s),
            "p_m2_given_nonmonogamous": float(counts[2] / n_neg) if n_neg and top >= 2 else 0.0,
            "not_found": int((m == 0).sum()),
            "max_m": int(found.max()) if found.size else None,
        }
    tables = {"activation_hist": (["class", "m", "count", "probability"], rows)}
    result = _finish(cfg, tables, summary, started)
    result.histogram = hist
    return result


def run_score_distribution(cfg):
    """
    Histograms of one- and two-copy monogamy scores on fixed 0.05-wide bins
    over [-0.6, 1.6]; out-of-range values are clipped into the end bins.
    """
    _require(cfg, Experiment.SCORE_DIST)
    started = time.perf_counter()
    rows, summary = [], {}
    lo, hi = SCORE_BINS[0], SCORE_BINS[-1]
    for label in cfg.classes:
        s = measure_class(label, cfg)
        d1, d2 = s.delta1, s.delta2
        for copies, d in ((1, d1), (2, d2)):
            counts, _ = np.histogram(np.clip(d, lo, hi), bins=SCORE_BINS)
            for k, c in enumerate(counts):
                rows.append((label.value, copies, float(SCORE_BINS[k]), float(SCORE_BINS[k + 1]),
                             int(c), float(c / len(s))))
        summary[label.value] = {
            "samples": len(s),
            "rejected_draws": s.rejected,
            "fraction_delta1_negative": float(np.mean(d1 < -MONOGAMY_TOL)),
            "fraction_delta2_negative": float(np.mean(d2 < -MONOGAMY_TOL)),
            "clipped": int(np.sum((d1 < lo) | (d1 > hi)) + np.sum((d2 < lo) | (d2 > hi))),
        }
    header = ["class", "m_copies", "bin_lo", "bin_hi", "count", "probability"]
    return _finish(cfg, {"score_dist": (header, rows)}, summary, started)


def _partner_pool(label, cfg):
    """First ``partner_pool`` nonmonogamous states of the partner stream."""
    a_list, b_list = [], []
    have, start = 0, 0
    block = max(cfg.chunk_size, 4 * cfg.partner_pool)
    while have < cfg.partner_pool:
        s = measure_class(label, cfg, samples=block, start=start, partner=True)
        neg = s.nonmonogamous
        a_list.append(s.n_one_rest[neg])
        b_list.append(s.n_pair[neg])
        have += int(neg.sum())
        start += block
        if start > 10**9:
            raise RuntimeError("could not fill partner pool")
    a = np.concatenate(a_list)[: cfg.partner_pool]
    b = np.concatenate(b_list)[: cfg.partner_pool]
    return a, b


def _pair_hits(ra, rb, sa, sb, cfg, four):
    """Whether each rho row has a partner with non-negative pair score."""

    def block(i, j):
        a = ra[i:j, None]
        b = rb[i:j, None, :]
        joint = negativity_product(a, sa[None, :])
        if four:
            score = (joint - b[..., 0]
                     - negativity_product(b[..., 1], sb[None, :, 1]) - sb[None, :, 0])
        else:
            score = (joint - negativity_product(b[..., 0], sb[None, :, 0])
                     - negativity_product(b[..., 1], sb[None, :, 1]))
        return np.any(score >= -MONOGAMY_TOL, axis=1)

    if ra.size == 0:
        return np.zeros(0, dtype=bool)
    rows = max(1, 2**21 // max(sa.size, 1))
    return np.concatenate(_chunked(block, ra.size, rows, cfg.threads))


def run_pair_activation(cfg):
    """
    For each nonmonogamous sample, search a pool of nonmonogamous partners
    for a pair with non-negative three-party score; failures are re-tested
    with the four-party score.
    """
    _require(cfg, Experiment.PAIR_ACTIVATION)
    started = time.perf_counter()
    pools = {label: _partner_pool(label, cfg) for label in cfg.classes}
    rows, summary = [], {}
    for rho_label in cfg.classes:
        s = measure_class(rho_label, cfg)
        neg = s.nonmonogamous
        ra, rb = s.n_one_rest[neg], s.n_pair[neg]
        any3 = np.zeros(ra.size, dtype=bool)
        hits = {}
        for sig_label in cfg.classes:
            sa, sb = pools[sig_label]
            h3 = _pair_hits(ra, rb, sa, sb, cfg, four=False)
            h4 = _pair_hits(ra[~h3], rb[~h3], sa, sb, cfg, four=True)
            hits[sig_label.value] = (h3, h4)
            any3 |= h3
        if len(cfg.classes) > 1:
            fail = ~any3
            any4 = np.zeros(int(fail.sum()), dtype=bool)
            for sig_label in cfg.classes:
                sa, sb = pools[sig_label]
                any4 |= _pair_hits(ra[fail], rb[fail], sa, sb, cfg, four=True)
            hits["any"] = (any3, any4)
        summary[rho_label.value] = {"samples": len(s), "nonmonogamous": int(neg.sum())}
        for sig, (h3, h4) in hits.items():
            n3, a3 = h3.size, int(h3.sum())
            n4, a4 = h4.size, int(h4.sum())
            r3 = (n3 - a3) / n3 if n3 else 0.0
            r4 = (n4 - a4) / n4 if n4 else 0.0
            if cfg.pair_mode in ("three", "both"):
                rows.append((rho_label.value, sig, "three", n3, a3, float(r3)))
            if cfg.pair_mode in ("four", "both"):
                rows.append((rho_label.value, sig, "four", n4, a4, float(r4)))
            summary[rho_label.value][f"sigma_{sig}"] = {
                "three_attempted": n3, "three_activated": a3, "three_failure_rate": r3,
                "four_attempted": n4, "four_activated": a4, "four_failure_rate": r4,
            }
    header = ["class_rho", "class_sigma", "mode", "attempted", "activated", "failure_rate"]
    return _finish(cfg, {"pair_activation": (header, rows)}, summary, started)


def gghz_curve(points=1000):
    """gGHZ family for ``alpha`` in [1/2, 1]: scores and GGM, measured on the states."""
    alpha = np.linspace(0.5, 1.0, points)
    amps = np.zeros((points, 8), dtype=np.complex128)
    amps[:, 0] = np.sqrt(alpha)
    amps[:, 7] = np.sqrt(1.0 - alpha)
    n_rest, pairs, lam = pure_parts_array(amps)
    d1 = n_rest - pairs.sum(axis=1)
    d2 = multicopy_scores(n_rest, pairs, 2)
    return alpha, d1, d2, 1.0 - lam.max(axis=1)


def run_ggm_scatter(cfg):
    """
    Per-sample (score, GGM) rows with the gGHZ lower bounds, plus the
    boundary curve.  Bounds and flags are blank where the score is negative.
    """
    _require(cfg, Experiment.GGM_SCATTER)
    started = time.perf_counter()
    rows, summary = [], {}
    for label in cfg.classes:
        s = measure_class(label, cfg)
        d1, d2, g = s.delta1, s.delta2, s.ggm
        nodal_max = s.lam_max[:, 0] >= s.lam_max.max(axis=1) - 1e-12
        ok1 = d1 >= -MONOGAMY_TOL
        ok2 = d2 >= -MONOGAMY_TOL
        b1 = np.full(len(s), np.nan)
        b2 = np.full(len(s), np.nan)
        b1[ok1] = gghz_boundary(np.clip(d1[ok1], 0.0, 0.5))
        b2[ok2] = gghz_boundary_two_copies(np.clip(d2[ok2], 0.0, 1.5))
        h1 = g >= b1 - BOUND_SLACK
        h2 = g >= b2 - BOUND_SLACK
        for i in range(len(s)):
            rows.append((label.value, d1[i], d2[i], g[i], bool(nodal_max[i]),
                         b1[i], b2[i], bool(h1[i]) if ok1[i] else None,
                         bool(h2[i]) if ok2[i] else None))
        summary[label.value] = {
            "samples": len(s),
            "monogamous": int(ok1.sum()),
            "two_copy_monogamous": int(ok2.sum()),
            "violations_one_copy": int(np.sum(ok1 & ~h1)),
            "violations_two_copy": int(np.sum(ok2 & ~h2)),
            "monogamous_without_nodal_max": int(np.sum(ok1 & ~nodal_max)),
        }
    alpha, c1, c2, cg = gghz_curve()
    curve = [(alpha[i], c1[i], c2[i], cg[i]) for i in range(alpha.size)]
    tables = {
        "ggm_scatter": (["class", "delta1", "delta2", "ggm", "nodal_attains_max",
                         "bound1", "bound2", "holds1", "holds2"], rows),
        "gghz_curve": (["alpha", "delta1", "delta2", "ggm"], curve),
    }
    return _finish(cfg, tables, summary, started)


_RUNNERS = {
    Experiment.ACTIVATION_HIST: run_activation_histogram,
    Experiment.SCORE_DIST: run_score_distribution,
    Experiment.PAIR_ACTIVATION: run_pair_activation,
    Experiment.GGM_SCATTER: run_ggm_scatter,
}


def run_experiment(cfg):
    """Dispatch on ``cfg.experiment``."""
    return _RUNNERS[cfg.experiment](cfg)
