"""Small-norm perturbations that disconnect spectra.

The main pipeline: shift the rightmost spectrum point lambda to the origin,
set ``eps0 = eps / (2 (1 + c_phi))``, find a rank-one projection ``E`` whose
column lies in a tiny spectral window of ``(T - lambda)* (T - lambda)`` (so
that ``phi((T - lambda) E)`` is below a safety budget ``delta``), and add

    X = ((lambda + eps0) I - T) E.

Then ``T + X = (lambda I + eps0 E) + (T - lambda I)(I - E)`` is upper
triangular with respect to ``ran E`` and its complement, so its spectrum is
``{lambda + eps0}`` together with a compressed part confined to the half
plane ``Re z < Re lambda + eps0`` — two components, bought at norm cost
``phi(X) <= eps0 phi(E) + phi((T - lambda) E) < eps``.

``delta`` is chosen by bisection against a rigorous enclosure: Gershgorin
discs of the diagonally rescaled Schur form, which bound how far a
perturbation of norm ``delta`` can push eigenvalues to the right.  The
resulting certificate is still validated a posteriori against exact
eigenvalues.

The operator-norm variant (`disconnect_rr0`) cuts the spectral window
directly at ``delta^2`` and uses ``eps0 = eps / 2``.

`counterexample_operator` builds the opposite phenomenon: with weights
doubling per summand (so the sup-inf constant is infinite), no small
perturbation can disconnect anything — every block of a norm-bounded ``X``
is crushed by the weight, and the spectrum stays one connected net.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .algebra import (
    BlockOperator,
    IdealSpec,
    Projection,
    identity_like,
    minimal_subprojection,
    operator_to_dict,
    operator_from_dict,
    validate_projection,
)
from .errors import (
    BadLambda,
    BudgetNotLessThanOne,
    ConvergenceFailure,
    DimensionOne,
    EmptySpectralWindow,
    InfiniteCPhi,
    NotDominating,
    ShapeMismatch,
    ZeroProjection,
)
from .norms import (
    BaseNorm,
    NormSpec,
    OPERATOR,
    norm_to_dict,
    norm_from_dict,
    operator_norm_spec,
    phi_eval,
)
from .spectral import (
    SpectrumReport,
    cluster_points,
    eigenvalues,
    rightmost_boundary_point,
    spectrum_components,
)
from . import __version__ as _version

__all__ = [
    "PerturbationCertificate",
    "subprojection_in_ideal",
    "small_te",
    "disconnect",
    "disconnect_rr0",
    "counterexample_operator",
    "counterexample_net",
    "net_spacing",
    "CounterexampleReport",
    "verify_counterexample",
    "certificate_to_dict",
    "certificate_from_dict",
    "write_certificate",
]

LAMBDA_TOL = 1e-8          # how close lambda must sit to the spectrum
_MARGIN_FACTOR = 1.0 - 1e-3   # enclosures must stay left of eps0 * this


def _c_phi_of(spec: NormSpec) -> float:
    top = max(spec.weights)
    if spec.tail_weights == "divergent":
        return math.inf
    if spec.tail_weights == "bounded":
        top = max(top, float(spec.tail_sup))
    return float(top)


def _dominating(spec: NormSpec) -> bool:
    bottom = min(spec.weights)
    if spec.tail_weights == "bounded":
        bottom = min(bottom, float(spec.tail_sup))
    elif spec.tail_weights == "divergent":
        bottom = min(bottom, spec.weight_of(spec.n_realized))
    return bottom >= 1.0


def subprojection_in_ideal(P: Projection, ideal: IdealSpec) -> Projection:
    """A rank-one subprojection of ``P`` inside the ideal.

    Always reduces to rank one in the lowest-index supported summand:
    rank-one projections are finitely supported, hence lie in either ideal
    kind, and they minimize every weighted norm over subprojections.
    """
    if P.rank == 0:
        raise ZeroProjection("cannot pick a subprojection of the zero projection")
    return minimal_subprojection(P, P.support[0])


def _window_projection(shifted: BlockOperator, sigma_max: float) -> Projection:
    """Projection onto the right singular subspace of ``shifted`` with
    singular values <= ``sigma_max`` — identically the spectral projection
    of ``shifted* shifted`` onto ``[0, sigma_max^2]``, but computed without
    squaring away the tiny singular values it exists to capture."""
    blocks = []
    hit = False
    for sid, b in shifted.summands:
        _, s, vh = np.linalg.svd(b)
        sel = vh.conj().T[:, s <= sigma_max]
        if sel.shape[1]:
            hit = True
            blocks.append((sid, sel @ sel.conj().T))
        else:
            blocks.append((sid, np.zeros_like(b)))
    if not hit:
        raise EmptySpectralWindow(
            f"no singular values of T - lambda at or below {sigma_max}")
    return validate_projection(BlockOperator(tuple(blocks)), tol=1e-9)


def small_te(T: BlockOperator, lam: complex, eps: float, spec: NormSpec,
             ideal: IdealSpec = IdealSpec("full")) -> Projection:
    """Rank-one E with ``phi(E) < 1 + c_phi`` and ``phi((T - lam I) E) < eps``.

    ``lam`` must sit in the spectrum (within ``1e-8``); the column of ``E``
    is drawn from the spectral window ``[0, (eps / (1 + c_phi))^2]`` of
    ``(T - lam I)* (T - lam I)``, which is nonempty because
    ``sigma_min(T - lam I) ~ 0``.
    """
    cphi = _c_phi_of(spec)
    if math.isinf(cphi):
        raise InfiniteCPhi("c_phi is infinite; no small-TE window exists")
    if eps <= 0:
        raise ValueError("eps must be positive")
    ev = eigenvalues(T)
    if np.abs(ev - complex(lam)).min() > LAMBDA_TOL:
        raise BadLambda(f"lambda={lam} is {np.abs(ev - complex(lam)).min():.3e} "
                        f"away from the spectrum (tol {LAMBDA_TOL})")
    shifted = T - complex(lam) * identity_like(T)
    P = _window_projection(shifted, eps / (1.0 + cphi))
    return subprojection_in_ideal(P, ideal)


# -- delta selection ------------------------------------------------------

_T_GRID = 2.0 ** np.arange(0, 41)


def _schur_forms(T: BlockOperator):
    return [scipy.linalg.schur(np.asarray(b), output="complex")[0]
            for _, b in T.summands]


def _gershgorin_right_edge(schur_blocks, delta: float) -> float:
    """Upper bound on Re of any eigenvalue of A with ||A - T|| <= delta.

    Gershgorin discs of D (U + Delta) D^-1 where U is the Schur form and
    D = diag(t^0 .. t^{n-1}): scaling by t > 1 shrinks the strictly upper
    part of U geometrically while inflating the (entrywise delta-bounded)
    perturbation by at most sum_m t^{+-m}.  The reported edge is minimized
    over a geometric grid of t.
    """
    edge = -math.inf
    for U in schur_blocks:
        n = U.shape[0]
        diag_re = np.real(np.diagonal(U))
        if n == 1:
            edge = max(edge, float(diag_re[0]) + delta)
            continue
        # row sums of |U| by diagonal offset m: offs[m-1, i] = |U[i, i+m]|
        absU = np.abs(U)
        offs = np.zeros((n - 1, n))
        for m in range(1, n):
            offs[m - 1, : n - m] = absU[np.arange(n - m), np.arange(m, n)]
        best = math.inf
        idx = np.arange(n)
        with np.errstate(over="ignore", invalid="ignore"):
            for t in _T_GRID:
                tneg = t ** (-np.arange(1.0, n))
                shrink = tneg @ offs                       # off-diagonal radii
                up = np.concatenate(([0.0], np.cumsum(t ** np.arange(1.0, n))))
                s_up = up[idx]                             # sum_{m<=i} t^m
                down = np.concatenate(([0.0], np.cumsum(tneg)))
                s_down = down[n - 1 - idx]                 # sum_{m<=n-1-i} t^-m
                radii = shrink + delta * (1.0 + s_up + s_down)
                cand = float(np.max(diag_re + radii))
                if not math.isnan(cand):
                    best = min(best, cand)
        edge = max(edge, best)
    return edge


def _choose_delta(schur_blocks, eps0: float):
    """Largest delta <= eps0/2 keeping the enclosure left of eps0*(1-1e-3).

    The result is floored at ``eps0 * 1e-3``: for strongly nonnormal blocks
    the enclosure only certifies uselessly small deltas (below eigensolver
    noise), so the floor takes over and the a-posteriori eigenvalue check in
    the certificate guards correctness instead.
    """
    target = eps0 * _MARGIN_FACTOR
    floor = eps0 * 1e-3
    hi = eps0 / 2.0
    if _gershgorin_right_edge(schur_blocks, hi) < target:
        return hi
    if _gershgorin_right_edge(schur_blocks, 0.0) >= target:
        return floor
    lo = 0.0
    for _ in range(60):
        mid = (lo + hi) / 2.0
        if _gershgorin_right_edge(schur_blocks, mid) < target:
            lo = mid
        else:
            hi = mid
    return max(lo, floor)


# -- certificates ----------------------------------------------------------


@dataclass(frozen=True)
class PerturbationCertificate:
    """Everything needed to audit one disconnection."""

    X: BlockOperator
    phi_X: float
    lam: complex
    eps0: float
    delta: float
    E: Projection
    phi_E: float
    phi_TE: float
    components_before: SpectrumReport
    components_after: SpectrumReport
    gap_achieved: float
    norm: NormSpec
    route: str = "sup_inf"

    @property
    def disconnected(self) -> bool:
        return self.components_after.n_components >= 2


def _build_certificate(T, spec, ideal, eps, eps0, lam, delta, route):
    E = small_te(T, lam, delta, spec, ideal) if route == "sup_inf" else \
        _rr0_cut(T, lam, delta, ideal)
    shifted = T - complex(lam) * identity_like(T)
    X = (complex(lam) + eps0) * E.base - T @ E.base
    phi_X = phi_eval(spec, X)
    phi_E = phi_eval(spec, E.base)
    phi_TE = phi_eval(spec, shifted @ E.base)
    if not (phi_X < eps):
        raise ConvergenceFailure(f"phi(X)={phi_X} failed the < eps={eps} bound")

    mu = complex(lam) + eps0
    after = eigenvalues(T + X)
    others = np.abs(after - mu)
    others = others[others > max(LAMBDA_TOL, 1e-12 * max(T.norm(), 1.0))]
    d = float(others.min()) if others.size else math.inf
    threshold = max(1e-8, min(eps0 / 4.0, d / 2.0))
    comp_after = spectrum_components(after, threshold)
    comp_before = spectrum_components(eigenvalues(T), threshold)
    return PerturbationCertificate(
        X=X, phi_X=phi_X, lam=complex(lam), eps0=float(eps0), delta=float(delta),
        E=E, phi_E=phi_E, phi_TE=phi_TE,
        components_before=comp_before, components_after=comp_after,
        gap_achieved=comp_after.gap, norm=spec, route=route)


def disconnect(T: BlockOperator, eps: float, spec: NormSpec,
               ideal: IdealSpec = IdealSpec("full")) -> PerturbationCertificate:
    """Disconnect ``sigma(T)`` with ``phi(X) < eps``.

    Requires total dimension >= 2, finite ``c_phi``, and a norm dominating
    the operator norm.  Returns a certificate whose after-spectrum has at
    least two single-linkage components, the new one being the singleton
    ``{lambda + eps0}`` of multiplicity >= rank(E) = 1.
    """
    if T.total_dim < 2:
        raise DimensionOne("cannot disconnect a 1-dimensional spectrum")
    if eps <= 0:
        raise ValueError("eps must be positive")
    cphi = _c_phi_of(spec)
    if math.isinf(cphi):
        raise InfiniteCPhi("c_phi is infinite: arbitrarily small perturbations "
                           "cannot disconnect (see counterexample_operator)")
    if not _dominating(spec):
        raise NotDominating("norm must dominate the operator norm (f_phi(I) >= 1)")
    if ideal.kind == "finitely_supported" and spec.tail_weights == "none":
        raise ShapeMismatch("finitely_supported ideal needs an infinite tail")

    lam = rightmost_boundary_point(T)
    eps0 = eps / (2.0 * (1.0 + cphi))
    shifted = T - lam * identity_like(T)
    schur_blocks = _schur_forms(shifted)
    delta = _choose_delta(schur_blocks, eps0)
    last = None
    for shrink in (1.0, 8.0, 64.0):
        cert = _build_certificate(T, spec, ideal, eps, eps0, lam,
                                  delta / shrink, "sup_inf")
        if cert.disconnected:
            return cert
        last = cert
    raise ConvergenceFailure(
        f"spectrum stayed connected after perturbation (gap threshold "
        f"{last.components_after.threshold:.3e}); T may be too defective "
        f"for the requested eps={eps}")


def _rr0_cut(T, lam, delta, ideal):
    # spectral cut at delta^2 on (T-lam)*(T-lam): the real-rank-zero route,
    # where spectral projections of selfadjoint elements are available
    # directly rather than through the norm machinery.
    shifted = T - complex(lam) * identity_like(T)
    P = _window_projection(shifted, float(delta))
    return subprojection_in_ideal(P, ideal)


def disconnect_rr0(T: BlockOperator, eps: float,
                   ideal: IdealSpec = IdealSpec("full")) -> PerturbationCertificate:
    """Operator-norm disconnection with the wider budget ``eps0 = eps / 2``.

    Same pipeline as :func:`disconnect` but the projection comes from a
    direct spectral cut of ``(T - lam)*(T - lam)`` at ``delta^2`` and the
    certificate is measured in the plain operator norm.
    """
    if T.total_dim < 2:
        raise DimensionOne("cannot disconnect a 1-dimensional spectrum")
    if eps <= 0:
        raise ValueError("eps must be positive")
    spec = operator_norm_spec(max(T.ids) + 1)
    lam = rightmost_boundary_point(T)
    eps0 = eps / 2.0
    shifted = T - lam * identity_like(T)
    schur_blocks = _schur_forms(shifted)
    delta = min(_choose_delta(schur_blocks, eps0), eps0 * (1.0 - 1e-9))
    last = None
    for shrink in (1.0, 8.0, 64.0):
        cert = _build_certificate(T, spec, ideal, eps, eps0, lam,
                                  delta / shrink, "rr0")
        if cert.disconnected:
            return cert
        last = cert
    raise ConvergenceFailure(
        f"spectrum stayed connected after perturbation (gap threshold "
        f"{last.components_after.threshold:.3e})")


# -- the divergent-weight counterexample -----------------------------------

_GOLDEN_CONJ = (math.sqrt(5.0) - 1.0) / 2.0


def counterexample_net(K: int) -> np.ndarray:
    """Golden-angle spiral scaled to radii ``1 - 2^-k``, k = 1..K."""
    k = np.arange(1, K + 1)
    radii = 1.0 - 2.0 ** (-k.astype(float))
    angles = 2.0 * math.pi * _GOLDEN_CONJ * k
    return radii * np.exp(1j * angles)


def counterexample_operator(K: int, dims=None):
    """Scalar blocks on a spiral net, with weights doubling per summand.

    Returns ``(T, spec)`` where ``T`` is the direct sum of ``lam_k I`` with
    ``|lam_k| = 1 - 2^-k`` and the norm has weight ``2^k`` on summand ``k``
    (ids 0..K-1 carry k = 1..K), sup aggregation and a divergent tail — so
    ``c_phi`` is infinite and any ``X`` with ``phi(X) < 1`` satisfies
    ``||X Z_k|| <= 2^-k phi(X)`` on each central summand ``Z_k``.
    """
    if K < 2:
        raise ValueError("need at least two summands")
    if dims is None:
        dims = (2,) * K
    dims = tuple(int(d) for d in dims)
    if len(dims) != K or any(d < 1 for d in dims):
        raise ShapeMismatch(f"need {K} dims >= 1")
    lams = counterexample_net(K)
    T = BlockOperator(tuple((i, lams[i] * np.eye(d)) for i, d in enumerate(dims)))
    weights = tuple(2.0 ** (i + 1) for i in range(K))
    spec = NormSpec(base=(OPERATOR,) * K, weights=weights, agg="sup",
                    tail_weights="divergent")
    return T, spec


def net_spacing(lams, K: int, grid_step: float = 0.004) -> float:
    """Covering radius of the net within the disk of radius ``1 - 2^-K``,
    estimated on a fine polar grid."""
    lams = np.asarray(lams, dtype=complex)
    R = 1.0 - 2.0 ** (-K)
    radii = np.arange(0.0, R + grid_step, grid_step)
    worst = 0.0
    for r in radii:
        n_ang = max(8, int(math.ceil(2.0 * math.pi * max(r, grid_step) / grid_step)))
        z = r * np.exp(2j * math.pi * np.arange(n_ang) / n_ang)
        worst = max(worst, float(np.abs(z[:, None] - lams[None, :]).min(axis=1).max()))
    return worst


@dataclass(frozen=True)
class CounterexampleReport:
    trials: int
    passes: int
    delta: float
    net_spacing: float
    phi_budget: float
    bound_violations: int
    connectivity_failures: int

    @property
    def all_passed(self) -> bool:
        return self.passes == self.trials


def verify_counterexample(T: BlockOperator, spec: NormSpec, trials: int = 100,
                          phi_budget: float = 0.99, seed: int = 0) -> CounterexampleReport:
    """Check that norm-bounded perturbations cannot disconnect the net.

    For ``trials`` random ``X`` rescaled to ``phi(X) = 0.99 * phi_budget``:
    every central compression obeys ``||X Z_k|| <= 2^-k phi_budget`` (the
    weights crush each block), hence every eigenvalue stays within ``2^-k``
    of its net point and the whole spectrum remains delta-connected at

        delta = net_spacing(K) + 2 * max_k 2^-k.
    """
    if not phi_budget < 1.0:
        raise BudgetNotLessThanOne(f"phi_budget={phi_budget} must be < 1")
    K = len(T.summands)
    lams = np.array([b[0, 0] for _, b in T.summands])
    spacing = net_spacing(lams, K)
    delta = spacing + 2.0 * max(2.0 ** (-(i + 1)) for i in range(K))

    from .sampling import spawn_rngs
    bound_viol = 0
    conn_fail = 0
    passes = 0
    for rng in spawn_rngs(seed, trials):
        raw = BlockOperator(tuple(
            (sid, rng.standard_normal((b.shape[0],) * 2)
             + 1j * rng.standard_normal((b.shape[0],) * 2))
            for sid, b in T.summands))
        X = raw * (0.99 * phi_budget / phi_eval(spec, raw))
        ok = True
        for i, (sid, xb) in enumerate(X.summands):
            # ||X Z_k|| is just the block norm of the k-th block
            if np.linalg.norm(xb, 2) > phi_budget * 2.0 ** (-(i + 1)):
                ok = False
        if not ok:
            bound_viol += 1
        ev = eigenvalues(T + X)
        if cluster_points(ev, delta).max() != 0:
            conn_fail += 1
            ok = False
        if ok:
            passes += 1
    return CounterexampleReport(trials=trials, passes=passes, delta=float(delta),
                                net_spacing=float(spacing), phi_budget=phi_budget,
                                bound_violations=bound_viol,
                                connectivity_failures=conn_fail)


# -- persistence ------------------------------------------------------------


def _report_dict(report: SpectrumReport) -> dict:
    return {
        "eigenvalues": [[z.real, z.imag] for z in report.eigenvalues],
        "labels": list(report.labels),
        "threshold": report.threshold,
        "gap": (report.gap if math.isfinite(report.gap) else "inf"),
        "n_components": report.n_components,
    }


def certificate_to_dict(cert: PerturbationCertificate, seed=None) -> dict:
    return {
        "version": _version,
        "seed": seed,
        "route": cert.route,
        "X": operator_to_dict(cert.X),
        "phi_X": cert.phi_X,
        "lambda": [cert.lam.real, cert.lam.imag],
        "eps0": cert.eps0,
        "delta": cert.delta,
        "E": operator_to_dict(cert.E.base),
        "phi_E": cert.phi_E,
        "phi_TE": cert.phi_TE,
        "gap_achieved": (cert.gap_achieved if math.isfinite(cert.gap_achieved)
                         else "inf"),
        "norm": norm_to_dict(cert.norm),
        "components_before": _report_dict(cert.components_before),
        "components_after": _report_dict(cert.components_after),
    }


def certificate_from_dict(data: dict) -> dict:
    """Light-weight reader: operators and the norm are reconstructed, the
    spectral reports come back as plain dicts."""
    out = dict(data)
    out["X"] = operator_from_dict(data["X"])[0]
    out["E"] = operator_from_dict(data["E"])[0]
    out["lambda"] = complex(*data["lambda"])
    out["norm"] = norm_from_dict(data["norm"])
    return out


def write_certificate(cert: PerturbationCertificate, path, seed=None):
    with open(path, "w") as fh:
        json.dump(certificate_to_dict(cert, seed=seed), fh, sort_keys=True,
                  separators=(",", ":"))
        fh.write("\n")
