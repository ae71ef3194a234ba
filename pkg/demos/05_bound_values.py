"""Evaluating the closed-form guarantees for a concrete configuration.

The bias of the corrected estimator and its deviation from the true risk
admit explicit bounds in the rewriting coefficients, the sample sizes, a
loss ceiling, and the correction's Lipschitz constant.  This script prints
them over a range of sample sizes; all three shrink monotonically.
"""

from uulearn import (
    BoundInputs,
    bias_bound,
    compute_coefficients,
    deviation_bound,
    estimation_error_bound_mlp,
    format_bound_report,
)

coeffs = compute_coefficients(0.6, 0.4, 0.5)

print(f"{'n':>6}{'neg-region mass':>17}{'bias bound':>12}{'deviation':>11}{'mlp bound':>11}")
for n in (100, 400, 1600, 6400, 25600):
    inputs = BoundInputs(
        alpha=0.09, beta=0.09,          # lower bounds on the weighted class risks
        loss_ceiling=7.0,               # explicit cap for the logistic loss
        correction_lipschitz=1.0,       # hard max / absolute value
        coeffs=coeffs, n=n, n_prime=n, delta=0.05,
    )
    mass, bias_upper = bias_bound(inputs)
    dev = deviation_bound(inputs)
    net = estimation_error_bound_mlp(inputs, depth=3, frob_norms=[2.0, 2.0, 1.0],
                                     input_norm_ceiling=4.0, loss_lipschitz=1.0)
    print(f"{n:>6}{mass:>17.6f}{bias_upper:>12.4f}{dev:>11.4f}{net:>11.4f}")

print("\nmachine-readable block for one configuration:")
inputs = BoundInputs(alpha=0.09, beta=0.09, loss_ceiling=7.0, correction_lipschitz=1.0,
                     coeffs=coeffs, n=1600, n_prime=1600, delta=0.05)
mass, bias_upper = bias_bound(inputs)
print(format_bound_report({
    "negative_region_mass": mass,
    "bias_upper": bias_upper,
    "deviation_bound": deviation_bound(inputs),
}), end="")
