"""How the supervised risk is rebuilt from two unlabeled pools.

Walks through the prior-to-coefficient mapping, shows the algebraic
identities that tie the coefficients to the test prior, and demonstrates
that the rewritten estimator agrees with the supervised one when the pools
are actually clean.
"""

import numpy as np

from uulearn import (
    LossKind,
    compute_coefficients,
    empirical_pn_risk,
    loss_eval,
    uu_risk_parts,
    uu_unbiased_risk,
)

# Two unlabeled pools drawn at class priors 0.8 and 0.2, evaluated at test
# prior 0.4: the rewriting needs exactly four constants.
k = compute_coefficients(theta=0.8, theta_prime=0.2, pi_p=0.4)
print("coefficients: a=%.4f b=%.4f c=%.4f d=%.4f" % (k.a, k.b, k.c, k.d))
print("a - c = %.12f  (the test prior)" % (k.a - k.c))
print("d - b = %.12f  (one minus the test prior)" % (k.d - k.b))

# A constant-zero classifier loses ln 2 on every example under the logistic
# loss, and the rewriting collapses to exactly that number.
outputs = np.zeros(1000)
outputs_prime = np.zeros(800)
parts = uu_risk_parts(k, outputs, outputs_prime, LossKind.LOGISTIC)
print("\nconstant-zero classifier:")
print("  rewritten risk = %.6f   (ln 2 = %.6f)" % (uu_unbiased_risk(parts), np.log(2)))

# With boundary priors (1, 0) the pools are perfectly labeled and the
# rewritten estimator IS the supervised estimator.
rng = np.random.default_rng(0)
out_pos = rng.normal(1.0, 1.0, size=500)   # scores on true positives
out_neg = rng.normal(-1.0, 1.0, size=500)  # scores on true negatives
clean = compute_coefficients(1.0, 0.0, 0.4, allow_boundaries=True)
parts_clean = uu_risk_parts(clean, out_pos, out_neg, LossKind.LOGISTIC)
pn = empirical_pn_risk(
    loss_eval(LossKind.LOGISTIC, out_pos),
    loss_eval(LossKind.LOGISTIC, -out_neg),
    pi_p=0.4,
)
print("\nclean-pool reduction:")
print("  rewritten  = %.12f" % uu_unbiased_risk(parts_clean))
print("  supervised = %.12f" % pn)

# On genuinely mixed pools the estimator is a signed combination and can go
# negative on unlucky finite samples; that is the phenomenon the correction
# family exists to handle.
mixed = uu_risk_parts(k, rng.normal(2.0, 1.0, 50), rng.normal(2.5, 1.0, 50), LossKind.LOGISTIC)
print("\na small mixed sample: rewritten risk = %+.4f (negative values are legal here)"
      % uu_unbiased_risk(mixed))
