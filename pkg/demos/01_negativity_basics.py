"""
Negativity and the monogamy score
=================================

Build the GHZ and W states, look at their bipartite negativities from the
first qubit's point of view, and compare the two routes to N(1:23).
"""

import numpy as np

import monoscope as ms
from monoscope.experiments import Experiment, ExperimentConfig, measure_class

###############################################################################
# The partial transpose of a Bell pair has one negative eigenvalue, -1/2.

bell = np.zeros((4, 4))
bell[0, 0] = bell[0, 3] = bell[3, 0] = bell[3, 3] = 0.5
print("Bell negativity:", ms.negativity(bell, (2, 2), (True, False)))

###############################################################################
# For a pure three-qubit state the cut 1:23 only needs the largest eigenvalue
# of qubit 1's marginal.

for name, psi in (("GHZ", ms.ghz_state()), ("W", ms.w_state())):
    full = ms.negativity(psi.density().matrix, (2, 2, 2), (True, False, False))
    short = ms.pure_negativity_one_vs_rest(psi)
    print(f"{name}: spectrum {full:.6f}  shortcut {short:.6f}")

###############################################################################
# The score subtracts the two pairwise negativities.  GHZ has none, W has
# two of (sqrt(5) - 1) / 6 each.

for name, psi in (("GHZ", ms.ghz_state()), ("W", ms.w_state())):
    parts = ms.score_parts(psi)
    print(name, parts.n_pair, "delta =", round(ms.monogamy_score(parts), 6))

###############################################################################
# A random GHZ-class state is usually monogamous, but not always.  Large
# ensembles go through the batched routines.

cfg = ExperimentConfig(Experiment.SCORE_DIST, samples=20000, master_seed=3, output_dir=None)
sample = measure_class(ms.ClassLabel.GHZ_CLASS, cfg)
print("fraction with delta < 0:", np.mean(sample.delta1 < 0))
