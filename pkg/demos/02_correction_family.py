"""The consistent correction family and what it does to a risk estimate.

Every member is non-negative, Lipschitz, and the identity on [0, inf): the
hard max drops negative group values, the absolute value reflects them, and
the generalized leaky rectifier interpolates with a slope between 0 and -1.
"""

import numpy as np

from uulearn import CorrectionSpec, UURiskParts, correction_apply, uu_corrected_risk, uu_unbiased_risk

specs = [
    CorrectionSpec.hard_max(),
    CorrectionSpec.leaky(-0.25),
    CorrectionSpec.leaky(-0.5),
    CorrectionSpec.leaky(-1.0),
]

xs = np.linspace(-2.0, 2.0, 9)
print("x:        " + "  ".join(f"{x:+.2f}" for x in xs))
for spec in specs:
    ys = correction_apply(spec, xs)
    print(f"{spec.label:<10}" + "  ".join(f"{y:+.2f}" for y in ys))

# A partial-risk fixture where the positive group is negative: the unbiased
# value dips below zero, every corrected value stays non-negative and
# dominates it.
parts = UURiskParts(pos_larger=0.2, neg_larger=0.1, pos_smaller=0.5, neg_smaller=0.3,
                    n=100, n_prime=100)
print("\ngroups: positive %.2f, negative %.2f" % (parts.pos_group, parts.neg_group))
print("unbiased estimate: %+.2f" % uu_unbiased_risk(parts))
for spec in specs:
    value, pos, neg = uu_corrected_risk(parts, spec)
    print(f"corrected ({spec.label:<10}): {value:+.2f}   [f(pos)={pos:+.2f}, f(neg)={neg:+.2f}]")
