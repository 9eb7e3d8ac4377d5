"""Why the finite sup-inf constant matters: the divergent-weight family.

The net operator T places scaled identities on a spiral of points |lam_k|
= 1 - 2^-k while the norm weights the k-th summand by 2^k.  Any X with
phi(X) < 1 is crushed blockwise (||X Z_k|| <= 2^-k), so each eigenvalue of
T + X stays glued to its net point and the spectrum remains connected at
the net's own resolution: no small perturbation can split it.  Against a
norm with finite c_phi the same request succeeds instantly.
"""

import numpy as np

from specgap import (InfiniteCPhi, counterexample_operator, disconnect,
                     eigenvalues, net_spacing, verify_counterexample)

K = 10
T, spec = counterexample_operator(K)
lams = np.array([b[0, 0] for _, b in T.summands])
print(f"net operator: {K} summands, |lam_k| up to {np.abs(lams).max():.6f}")
print(f"weights: {[int(w) for w in spec.weights]} (doubling tail -> "
      f"c_phi = inf)")

spacing = net_spacing(lams, K)
print(f"covering radius of the net: {spacing:.3f}")

try:
    disconnect(T, 0.5, spec)
except InfiniteCPhi as exc:
    print(f"\ndisconnect refuses, as it must: {exc}")

rep = verify_counterexample(T, spec, trials=50, phi_budget=0.99, seed=1)
print(f"\n{rep.trials} random X with phi(X) < {rep.phi_budget}:")
print(f"  block bound ||X Z_k|| <= {rep.phi_budget} * 2^-k violated: "
      f"{rep.bound_violations} times")
print(f"  sigma(T + X) stayed {rep.delta:.3f}-connected: "
      f"{rep.passes}/{rep.trials}")
assert rep.all_passed

# contrast: the same spiral against unit weights splits with ease
from specgap import operator_norm_spec

flat = operator_norm_spec(K)
cert = disconnect(T, 0.5, flat)
print(f"\nsame operator, unit weights: phi(X) = {cert.phi_X:.3e} splits "
      f"sigma into {cert.components_after.n_components} components")
print(f"isolated point: {cert.lam + cert.eps0:.4f}; "
      f"spectrum had {len(eigenvalues(T))} eigenvalues")
