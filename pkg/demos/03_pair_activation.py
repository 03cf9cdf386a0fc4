"""
Activation by a partner state
=============================

Instead of copies of the same state, pair it with a different
nonmonogamous state and score the merged parties.
"""

import monoscope as ms
from monoscope.experiments import Experiment, ExperimentConfig, run_experiment

###############################################################################
# Two nonmonogamous W-class states.

rng = ms.SeededRng(5)
found = []
i = 0
while len(found) < 2:
    parts = ms.score_parts(ms.sample_w_class(rng.child(i)))
    if ms.monogamy_score(parts) < 0:
        found.append(parts)
    i += 1
rho, sigma = found
print("delta(rho)   =", ms.monogamy_score(rho))
print("delta(sigma) =", ms.monogamy_score(sigma))
print("three-party pair score:", ms.pair_score_three_party(rho, sigma))
print("four-party pair score: ", ms.pair_score_four_party(rho, sigma))

###############################################################################
# The same question over many samples and a pool of partners.

cfg = ExperimentConfig(Experiment.PAIR_ACTIVATION, samples=5000, partner_pool=200,
                       master_seed=1, output_dir=None)
header, rows = run_experiment(cfg).tables["pair_activation"]
print(header)
for row in rows:
    print(row)
