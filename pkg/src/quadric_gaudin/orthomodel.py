"""The rank-2 skew-adjoint model inside the pencil of quadrics.

For a constrained point, the N x N matrix

    A_ij(z) = (x_i y_j - y_i x_j) / (z - mu_i)

is skew-adjoint for the diagonal form q_z with weights (z - mu_i), kills x,
and has rank at most 2 (it is diag(1/(z - mu_i)) (x y^T - y x^T)).  On the
lifted vectors v_z = (v_i / (z - mu_i)) it reproduces the 2 x 2 Higgs field:

    A(x_z) = B(z) x_z - C(z) y_z,      A(y_z) = A'(z) x_z - B(z) y_z,

with B = sum x_i y_i/(z - mu_i), C = sum x_i^2/(z - mu_i) and
A' = sum y_i^2/(z - mu_i); under the frame e_1 = y_z, e_2 = -x_z these are
exactly the entries of Phi, and multiplied by p_D they are (b, c, a) of the
Hecke triple up to the pinned signs (+b, -c, -a, -b) for (alpha, beta,
gamma, delta).
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Matrix, rank_kernel
from .phase import PhasePoint, Pencil
from .scalars import as_complex, is_exact


class PencilForm:
    """The family of diagonal bilinear forms q_z with entries z - mu_i."""

    def __init__(self, pencil: Pencil):
        self.pencil = pencil

    def weights(self, z):
        return [z - m for m in self.pencil.mu]

    def apply(self, z, u, w):
        acc = None
        for wt, ui, wi in zip(self.weights(z), u, w):
            t = wt * ui * wi
            acc = t if acc is None else acc + t
        return acc

    def degenerate_at(self, z) -> bool:
        return any(_is_zero(z - m) for m in self.pencil.mu)


def _is_zero(v) -> bool:
    return v.is_zero() if is_exact(v) else v == 0


def _check_off_poles(pencil: Pencil, z):
    for i, m in enumerate(pencil.mu):
        if _is_zero(z - m):
            raise ValueError(f"z collides with the pole mu_{i + 1}")


def build_A(point: PhasePoint, z) -> Matrix:
    """A_ij = (x_i y_j - y_i x_j) / (z - mu_i) at z off the marked points."""
    _check_off_poles(point.pencil, z)
    x, y, mu = point.x, point.y, point.pencil.mu
    N = point.pencil.N
    rows = []
    for i in range(N):
        inv = 1 / (z - mu[i])
        rows.append([(x[i] * y[j] - y[i] * x[j]) * inv for j in range(N)])
    return Matrix(rows)


def skew_adjoint_defect(point: PhasePoint, z) -> Matrix:
    """D(z) A + A^T D(z); identically zero, constraints not even needed."""
    A = build_A(point, z)
    w = [z - m for m in point.pencil.mu]
    N = point.pencil.N
    rows = []
    for i in range(N):
        rows.append([w[i] * A.rows[i][j] + A.rows[j][i] * w[j] for j in range(N)])
    return Matrix(rows)


def lift_vz(v, point: PhasePoint, z):
    """v_z = (v_1/(z - mu_1), ..., v_N/(z - mu_N)) for v with sum v_i x_i = 0."""
    _check_off_poles(point.pencil, z)
    dot = None
    for vi, xi in zip(v, point.x):
        t = vi * xi
        dot = t if dot is None else dot + t
    if is_exact(dot):
        if not dot.is_zero():
            raise ValueError("lift needs sum v_i x_i = 0")
    elif abs(as_complex(dot)) > 1e-9 * max(1.0, max(abs(as_complex(a)) for a in v)):
        raise ValueError("lift needs sum v_i x_i = 0")
    return [vi / (z - m) for vi, m in zip(v, point.pencil.mu)]


@dataclass(frozen=True)
class EquivalenceSample:
    z: object
    coefficients: tuple  # (alpha, beta, gamma, delta) of A in the basis (x_z, y_z)
    phi_entries: tuple  # ((Phi11, Phi12), (Phi21, Phi22))
    frame_match: bool
    hecke_match: bool
    skipped: bool = False
    note: str = ""


@dataclass(frozen=True)
class EquivalenceReport:
    samples: tuple

    @property
    def passed(self) -> bool:
        return all(s.frame_match and s.hecke_match for s in self.samples if not s.skipped)

    @property
    def checked(self) -> int:
        return sum(1 for s in self.samples if not s.skipped)


def verify_equivalence(point: PhasePoint, z_samples) -> EquivalenceReport:
    """Match A on the lifted frame with the Higgs field, exactly.

    At each sample z, A(x_z) and A(y_z) are expressed in the basis
    (x_z, y_z); under e_1 = y_z, e_2 = -x_z the coefficients must equal the
    Phi entries, and multiplied by p_D(z) the Hecke polynomials.
    """
    from .higgs import HiggsField, hecke_transform

    phi = HiggsField(point)
    triple = hecke_transform(point)
    pd = point.pencil.vanishing_poly()
    out = []
    for z in z_samples:
        x_z = lift_vz(point.x, point, z)
        y_z = lift_vz(point.y, point, z)
        A = build_A(point, z)
        try:
            alpha, beta = _express(A.matvec(x_z), x_z, y_z, point.exact)
            gamma, delta = _express(A.matvec(y_z), x_z, y_z, point.exact)
        except _DependentFrame:
            out.append(
                EquivalenceSample(
                    z=z,
                    coefficients=(),
                    phi_entries=(),
                    frame_match=True,
                    hecke_match=True,
                    skipped=True,
                    note="x_z and y_z linearly dependent at this sample",
                )
            )
            continue
        m = phi.at(z)
        frame_ok = all(
            _close(got, want, point.exact)
            for got, want in (
                (delta, m[0][0]),  # Phi11 = -B
                (-beta, m[0][1]),  # Phi12 = C
                (-gamma, m[1][0]),  # Phi21 = -A'
                (alpha, m[1][1]),  # Phi22 = B
            )
        )
        pdz = pd(z)
        hecke_ok = all(
            _close(got, want, point.exact)
            for got, want in (
                (alpha * pdz, triple.b(z)),
                (beta * pdz, -triple.c(z)),
                (gamma * pdz, -triple.a(z)),
                (delta * pdz, -triple.b(z)),
            )
        )
        out.append(
            EquivalenceSample(
                z=z,
                coefficients=(alpha, beta, gamma, delta),
                phi_entries=(tuple(m[0]), tuple(m[1])),
                frame_match=frame_ok,
                hecke_match=hecke_ok,
            )
        )
    return EquivalenceReport(samples=tuple(out))


class _DependentFrame(Exception):
    pass


def _express(w, u, v, exact: bool):
    """Coefficients (a, b) with w = a u + b v, requiring u, v independent."""
    n = len(u)
    if exact:
        scale = 1.0
    else:
        scale = 1.0 + max(abs(as_complex(t)) for vec in (w, u, v) for t in vec)
    best = None
    for i in range(n):
        for j in range(i + 1, n):
            det = u[i] * v[j] - u[j] * v[i]
            if _is_zero(det):
                continue
            if not exact and abs(as_complex(det)) <= 1e-12 * scale * scale:
                continue
            a = (w[i] * v[j] - w[j] * v[i]) / det
            b = (u[i] * w[j] - u[j] * w[i]) / det
            resid = [w[k] - a * u[k] - b * v[k] for k in range(n)]
            if exact:
                if all(r.is_zero() for r in resid):
                    return a, b
                raise ValueError("vector not in the span of the frame")
            worst = max(abs(as_complex(r)) for r in resid)
            if worst <= 1e-9 * scale * (1.0 + abs(as_complex(a)) + abs(as_complex(b))):
                return a, b
            if best is None or worst < best[0]:
                best = (worst, a, b)
    if best is not None:
        raise ValueError("vector not in the span of the frame")
    raise _DependentFrame


def _zero(v, exact: bool) -> bool:
    if exact:
        return v.is_zero()
    return abs(as_complex(v)) <= 1e-9


def _close(got, want, exact: bool, tol: float = 1e-9) -> bool:
    diff = got - want
    if exact:
        return diff.is_zero()
    scale = 1.0 + abs(as_complex(got)) + abs(as_complex(want))
    return abs(as_complex(diff)) <= tol * scale


@dataclass(frozen=True)
class SubbundleProbe:
    z1_coefficient: object  # sum x_i^2
    z2_coefficient: object  # sum mu_i x_i^2
    both_vanish: bool


def trivial_subbundle_probe(point: PhasePoint) -> SubbundleProbe:
    """Asymptotics of sum_i x_i (x_z)_i = C(z) as z -> infinity.

    The 1/z and 1/z^2 coefficients are the two x-constraints resurfacing;
    both vanish exactly on constrained points.
    """
    x, mu = point.x, point.pencil.mu
    c1 = None
    c2 = None
    for xi, m in zip(x, mu):
        t1 = xi * xi
        t2 = m * xi * xi
        c1 = t1 if c1 is None else c1 + t1
        c2 = t2 if c2 is None else c2 + t2
    return SubbundleProbe(
        z1_coefficient=c1,
        z2_coefficient=c2,
        both_vanish=_zero(c1, point.exact) and _zero(c2, point.exact),
    )


def rank_and_kernel_of_A(point: PhasePoint, z, tol: float = 1e-9):
    """Exact (or float) rank of A(z); contains x in the kernel, rank <= 2."""
    A = build_A(point, z)
    return rank_kernel(A, tol=tol)
