"""
Activation with several copies
==============================

A nonmonogamous state becomes monogamous once enough copies are taken
together.  The m-copy negativity has a closed form, so the search is cheap.
"""

import numpy as np

import monoscope as ms

###############################################################################
# Two copies of a Bell pair: the closed form against the 16x16 spectrum.

bell = np.zeros((4, 4))
bell[0, 0] = bell[0, 3] = bell[3, 0] = bell[3, 3] = 0.5
print("closed form:", ms.negativity_m_copies(0.5, 2))
print("explicit   :", ms.explicit_multicopy_oracle(bell, (2, 2), (True, False), 2))

###############################################################################
# Find a nonmonogamous W-class state and follow its score copy by copy.

rng = ms.SeededRng(11)
for i in range(1000):
    psi = ms.sample_w_class(rng.child(i))
    parts = ms.score_parts(psi)
    if ms.monogamy_score(parts) < -0.01:
        break

m_min = ms.minimal_activation_copies(parts)
for m in range(1, m_min + 1):
    print(m, ms.monogamy_score_m_copies(parts, m))
print("activated at m =", m_min)

###############################################################################
# A monogamous state stays monogamous for every m.

ghz_parts = ms.score_parts(ms.ghz_state())
print([round(ms.monogamy_score_m_copies(ghz_parts, m), 3) for m in range(1, 6)])
