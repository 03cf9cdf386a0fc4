"""
Self-checks: closed forms against brute-force spectra, and the multicopy
statements as executable properties on seeded random samples.

Each check returns ``(passed, detail)``.  Checks look functions up through
their modules at call time, so a patched implementation is what gets tested.
"""

import numpy as np

from . import linalg, monogamy, states
from .rng import SeededRng, block_normals, child_seeds

__all__ = ["CHECKS", "random_density_matrices", "run_checks"]

_SEED = 20240601


def random_density_matrices(n, dim, seed, rank=None):
    """``n`` random mixed states ``G G^H / tr`` with ``G`` a ``dim x rank`` Ginibre matrix."""
    rank = dim if rank is None else rank
    g = block_normals(child_seeds(seed, np.arange(n)), 2 * dim * rank)
    g = (g[:, : dim * rank] + 1j * g[:, dim * rank:]).reshape(n, dim, rank)
    rho = g @ np.conj(np.swapaxes(g, -1, -2))
    return rho / np.trace(rho, axis1=-2, axis2=-1).real[:, None, None]


def check_multicopy_oracle(n=200):
    rho = random_density_matrices(n, 4, _SEED, rank=2)
    single = monogamy.negativity(rho, (2, 2), (True, False))
    closed = np.array([monogamy.negativity_m_copies(x, 2) for x in single])
    brute = monogamy.explicit_multicopy_oracle(rho, (2, 2), (True, False), 2)
    worst = float(np.max(np.abs(closed - brute)))
    return worst < 1e-9, f"max |closed - explicit| = {worst:.2e} over {n} states"


def check_product_oracle(n=200):
    rhos = random_density_matrices(n, 4, _SEED + 1, rank=2)
    sigmas = random_density_matrices(n, 4, _SEED + 2, rank=3)
    nr = monogamy.negativity(rhos, (2, 2), (True, False))
    ns = monogamy.negativity(sigmas, (2, 2), (True, False))
    closed = np.array([monogamy.negativity_product(a, b) for a, b in zip(nr, ns)])
    brute = monogamy.explicit_product_oracle(rhos, sigmas, (2, 2), (True, False))
    worst = float(np.max(np.abs(closed - brute)))
    return worst < 1e-9, f"max |closed - explicit| = {worst:.2e} over {n} pairs"


def check_pure_shortcut(n=500):
    amps = states.haar_block(child_seeds(_SEED + 3, np.arange(n)))
    rho = np.einsum("bi,bj->bij", amps, amps.conj())
    full = monogamy.negativity(rho, (2, 2, 2), (True, False, False), validate=False)
    short, _, _ = monogamy.pure_parts_array(amps)
    worst = float(np.max(np.abs(full - short)))
    return worst < 1e-9, f"max |spectrum - sqrt(l(1-l))| = {worst:.2e} over {n} states"


def _three_qubit_parts(n, seed):
    ghz, _ = states.ghz_class_block(child_seeds(seed, np.arange(n)))
    w, _ = states.w_class_block(child_seeds(seed + 1, np.arange(n)))
    a, b, _ = monogamy.pure_parts_array(np.concatenate([ghz, w]))
    return a, b


def _multicopy_counterexamples(a, b, m_hi=50):
    mono = (a - b.sum(axis=1)) >= 0.0
    bad = 0
    for m in range(1, m_hi + 1):
        bad += int(np.sum(monogamy.multicopy_scores(a[mono], b[mono], m) < -monogamy.MONOGAMY_TOL))
    return bad, int(mono.sum())


def check_copies_three_qubit(n=5000):
    a, b = _three_qubit_parts(n, _SEED + 4)
    bad, tested = _multicopy_counterexamples(a, b)
    return bad == 0, f"{bad} counterexamples among {tested} monogamous states, m = 1..50"


def check_copies_four_qubit(n=1000):
    amps = states.haar_block(child_seeds(_SEED + 6, np.arange(n)), dim=16)
    a, b = monogamy.score_parts_array(amps, (2, 2, 2, 2))
    bad, tested = _multicopy_counterexamples(a, b)
    return bad == 0, f"{bad} counterexamples among {tested} monogamous four-qubit states"


def check_activation_finite(n=5000, m_max=10_000):
    a, b = _three_qubit_parts(n, _SEED + 7)
    neg = (a - b.sum(axis=1)) < -monogamy.MONOGAMY_TOL
    m = monogamy.minimal_activation_copies_array(a[neg], b[neg], m_max)
    missing = int(np.sum(m == 0))
    return missing == 0, f"{missing} of {int(neg.sum())} nonmonogamous states not activated by m = {m_max}"


def _random_parts(n, seed):
    rng = SeededRng(seed)
    out = []
    for _ in range(n):
        u = rng.uniforms(3)
        out.append(monogamy.ScoreParts(0.5 * u[0], (0.5 * u[1], 0.5 * u[2])))
    return out


def check_pair_condition(n=2000):
    parts = _random_parts(2 * n, _SEED + 8)
    bad = 0
    for r, s in zip(parts[:n], parts[n:]):
        dr, ds = monogamy.monogamy_score(r), monogamy.monogamy_score(s)
        score = monogamy.pair_score_three_party(r, s)
        ident = (2 * r.n_one_rest * s.n_one_rest - 2 * r.n_pair[0] * s.n_pair[0]
                 - 2 * r.n_pair[1] * s.n_pair[1] + dr + ds)
        bad += abs(score - ident) > 1e-12
        if dr < 0 and ds < 0:
            lhs = (2 * r.n_one_rest * s.n_one_rest
                   - (2 * r.n_pair[0] * s.n_pair[0] + 2 * r.n_pair[1] * s.n_pair[1])
                   - (abs(dr) + abs(ds)))
            bad += np.sign(lhs) != np.sign(score)
        four = monogamy.pair_score_four_party(r, s)
        bad += abs((four - score) - 2 * r.n_pair[0] * s.n_pair[0]) > 1e-12
    return bad == 0, f"{bad} mismatches over {n} random pairs"


def check_partial_transpose(n=200):
    rho = random_density_matrices(n, 8, _SEED + 9)
    pt = linalg.partial_transpose(rho, (2, 2, 2), (True, False, True))
    herm = float(np.max(np.abs(pt - np.conj(np.swapaxes(pt, -1, -2)))))
    tr = float(np.max(np.abs(np.trace(pt, axis1=-2, axis2=-1) - 1.0)))
    back = float(np.max(np.abs(linalg.partial_transpose(pt, (2, 2, 2), (True, False, True)) - rho)))
    ok = herm < 1e-12 and tr < 1e-12 and back == 0.0
    return ok, f"hermiticity {herm:.1e}, trace {tr:.1e}, involution {back:.1e}"


CHECKS = {
    "partial_transpose_invariants": check_partial_transpose,
    "multicopy_negativity_vs_explicit": check_multicopy_oracle,
    "product_negativity_vs_explicit": check_product_oracle,
    "pure_state_shortcut": check_pure_shortcut,
    "monogamy_preserved_three_qubit": check_copies_three_qubit,
    "monogamy_preserved_four_qubit": check_copies_four_qubit,
    "activation_always_finite": check_activation_finite,
    "pair_score_identities": check_pair_condition,
}


def run_checks(names=None, echo=print):
    """Run the named checks (default all); return True iff every one passes."""
    names = list(CHECKS) if names is None else list(names)
    all_ok = True
    for name in names:
        try:
            ok, detail = CHECKS[name]()
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        all_ok &= bool(ok)
        echo(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return all_ok
