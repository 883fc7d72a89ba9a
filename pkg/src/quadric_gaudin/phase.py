"""Pencils of diagonal quadrics and constrained phase points.

A phase point is a representative (x, y) in C^N x C^N of a cotangent vector
to the affine cone over X = {q = 0} cap {q1 = 0}:

    sum x_i^2 = 0,   sum mu_i x_i^2 = 0,
    sum x_i y_i = 0, sum mu_i x_i y_i = 0,

with the gauge action y -> y + t x.  Public quantities built from a point
are gauge invariant; the test suite enforces this.

Exact sampling notes.  Solving the two x-constraints for a coordinate pair
leaves Gaussian-rational squares that almost never admit exact square
roots, so exact mode uses two honest constructions instead:

* :func:`sample_pencil_point` draws an exact isotropic x by reflecting a
  fixed isotropic seed vector (a chord of q = 0) and then solves the real
  2x2 linear system for mu_1, mu_2, co-sampling a rational pencil with the
  point.  Always succeeds, fully seeded.
* :func:`sample_point_x` with an explicit exact pencil enumerates small
  Gaussian-integer solutions of both constraints (meet-in-the-middle on the
  two moment sums) and picks seed-deterministically among them.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .scalars import GaussianRational, ZERO, ONE, I, gr, as_complex, is_exact
from .unipoly import Polynomial


class DegeneratePointError(ValueError):
    """No usable pivot pair exists for the requested solve."""


class Pencil:
    """N >= 5 pairwise-distinct marked points mu_i; n = N - 3 = dim X."""

    def __init__(self, mu, allow_small: bool = False):
        mu = tuple(mu)
        if len(mu) < 5 and not allow_small:
            raise ValueError("pencil needs N >= 5 marked points")
        if len(mu) < 3:
            raise ValueError("pencil needs at least 3 marked points")
        for a, b in itertools.combinations(mu, 2):
            if _same_scalar(a, b):
                raise ValueError("marked points must be pairwise distinct")
        self.mu = mu
        self.N = len(mu)
        self.n = self.N - 3
        self._lagrange = None

    @property
    def exact(self) -> bool:
        return is_exact(self.mu[0])

    def to_float(self) -> "Pencil":
        return Pencil([as_complex(m) for m in self.mu], allow_small=True)

    def vanishing_poly(self) -> Polynomial:
        """p_D(z) = prod (z - mu_i)."""
        return Polynomial.from_roots(self.mu)

    def lagrange_numerators(self) -> list[Polynomial]:
        """L_i(z) = prod_{j != i} (z - mu_j), cached."""
        if self._lagrange is None:
            self._lagrange = [
                Polynomial.from_roots([m for j, m in enumerate(self.mu) if j != i])
                for i in range(self.N)
            ]
        return self._lagrange

    def node_weights(self):
        """d_i = prod_{j != i} (mu_i - mu_j) = L_i(mu_i)."""
        return [L(m) for L, m in zip(self.lagrange_numerators(), self.mu)]

    def __repr__(self):
        return f"Pencil(N={self.N}, mu={list(self.mu)!r})"


def _same_scalar(a, b) -> bool:
    if is_exact(a) and is_exact(b):
        return a == b
    return as_complex(a) == as_complex(b)


def _dot(u, v):
    acc = None
    for a, b in zip(u, v):
        ab = a * b
        acc = ab if acc is None else acc + ab
    return acc


class PhasePoint:
    """A constrained pair (x, y) over a pencil, exact or float."""

    def __init__(self, pencil: Pencil, x, y, check: bool = True, tol: float = 1e-9):
        self.pencil = pencil
        self.x = tuple(x)
        self.y = tuple(y)
        if len(self.x) != pencil.N or len(self.y) != pencil.N:
            raise ValueError("vector length must equal N")
        if all(_is_zero(v) for v in self.x):
            raise ValueError("x must be nonzero")
        if check:
            self.validate(tol)

    @property
    def exact(self) -> bool:
        return is_exact(self.x[0])

    @property
    def mode(self) -> str:
        return "exact" if self.exact else "float"

    def constraint_residuals(self):
        """(sum x^2, sum mu x^2, sum x y, sum mu x y)."""
        mu = self.pencil.mu
        x, y = self.x, self.y
        xx = _dot(x, x)
        mxx = _dot([m * v for m, v in zip(mu, x)], x)
        xy = _dot(x, y)
        mxy = _dot([m * v for m, v in zip(mu, x)], y)
        return (xx, mxx, xy, mxy)

    def validate(self, tol: float = 1e-9) -> None:
        res = self.constraint_residuals()
        if self.exact:
            if any(not r.is_zero() for r in res):
                raise ValueError(f"constraints violated exactly: {res}")
        else:
            scale = max(1.0, max(abs(as_complex(v)) for v in self.x) ** 2)
            scale = max(
                scale, max((abs(as_complex(v)) for v in self.y), default=0.0) ** 2
            )
            if any(abs(as_complex(r)) > tol * scale for r in res):
                raise ValueError(f"constraints violated beyond tol: {res}")

    def to_float(self) -> "PhasePoint":
        return PhasePoint(
            self.pencil.to_float(),
            [as_complex(v) for v in self.x],
            [as_complex(v) for v in self.y],
            check=False,
        )

    def __repr__(self):
        return f"PhasePoint(N={self.pencil.N}, mode={self.mode})"


def _is_zero(v) -> bool:
    return v.is_zero() if is_exact(v) else v == 0


# -- invariants and gauge ----------------------------------------------------

def pair_invariant(p: PhasePoint, i: int, j: int):
    """<v_i, v_j> = x_i y_j - x_j y_i (0-based indices); gauge invariant."""
    return p.x[i] * p.y[j] - p.x[j] * p.y[i]


def gauge_shift(p: PhasePoint, t) -> PhasePoint:
    """(x, y) -> (x, y + t x); preserves all four constraints."""
    return PhasePoint(
        p.pencil, p.x, [yi + t * xi for xi, yi in zip(p.x, p.y)], check=False
    )


def poisson_bracket(p: PhasePoint, a: int, b: int):
    """{f_a, f_b} at p for the canonical bracket {x_k, y_l} = delta_kl.

    Uses the closed-form gradients of f_i = sum_{j != i} w_ij^2/(mu_i-mu_j)
    through the pair invariants w_ij = x_i y_j - x_j y_i.
    """
    mu, x, y = p.pencil.mu, p.x, p.y
    N = p.pencil.N

    def grads(i):
        gx = [None] * N
        gy = [None] * N
        sx = None
        sy = None
        for j in range(N):
            if j == i:
                continue
            w = x[i] * y[j] - x[j] * y[i]
            c = (w + w) / (mu[i] - mu[j])
            gx[j] = -c * y[i]
            gy[j] = c * x[i]
            tx = c * y[j]
            ty = c * x[j]
            sx = tx if sx is None else sx + tx
            sy = ty if sy is None else sy + ty
        gx[i] = sx
        gy[i] = -sy
        return gx, gy

    ax, ay = grads(a)
    bx, by = grads(b)
    acc = None
    for k in range(N):
        t = ax[k] * by[k] - ay[k] * bx[k]
        acc = t if acc is None else acc + t
    return acc


# -- sampling -----------------------------------------------------------------

def _draw_gaussian_int(rng: random.Random, bound: int = 9) -> GaussianRational:
    return gr(rng.randint(-bound, bound), rng.randint(-bound, bound))


def sample_isotropic_x(N: int, rng: random.Random) -> list[GaussianRational]:
    """Exact Gaussian-integer x with sum x_i^2 = 0.

    Reflects the isotropic seed P = (1, i, 0, ...) through a random chord:
    x = q(d) P - 2 q(P, d) d  lands on the cone {q = 0} for every d.
    """
    P = [ONE, I] + [ZERO] * (N - 2)
    while True:
        d = [_draw_gaussian_int(rng, 6) for _ in range(N)]
        qd = _dot(d, d)
        qpd = d[0] + I * d[1]
        if qd.is_zero() or qpd.is_zero():
            continue
        x = [qd * pi - gr(2) * qpd * di for pi, di in zip(P, d)]
        nonzero = sum(0 if v.is_zero() else 1 for v in x)
        if nonzero < max(3, N - 2):
            continue
        return x


def sample_pencil_point(
    N: int, seed: int, mu_bound: int = 12
) -> tuple[Pencil, list[GaussianRational]]:
    """Exact x plus a co-sampled rational pencil with both constraints exact.

    mu_3..mu_N are drawn as distinct small integers and (mu_1, mu_2) solve
    the real 2x2 linear system imposed by sum mu_i x_i^2 = 0.
    """
    if N < 5:
        raise ValueError("need N >= 5")
    rng = random.Random(seed)
    while True:
        x = sample_isotropic_x(N, rng)
        s = [v * v for v in x]
        det = s[0].re * s[1].im - s[1].re * s[0].im
        if det == 0:
            continue
        tail = rng.sample(range(-mu_bound, mu_bound + 1), N - 2)
        rhs_re = -sum((Fraction(m) * s[i + 2].re for i, m in enumerate(tail)), Fraction(0))
        rhs_im = -sum((Fraction(m) * s[i + 2].im for i, m in enumerate(tail)), Fraction(0))
        mu1 = (rhs_re * s[1].im - s[1].re * rhs_im) / det
        mu2 = (s[0].re * rhs_im - rhs_re * s[0].im) / det
        mu = [gr(mu1), gr(mu2)] + [gr(m) for m in tail]
        if len({(m.re, m.im) for m in mu}) != N:
            continue
        pencil = Pencil(mu)
        assert _dot([m * v for m, v in zip(mu, x)], x).is_zero()
        return pencil, x


def _solve_x_squares(pencil: Pencil, tail):
    """(x_1^2, x_2^2) forced by the two constraints given x_3..x_N."""
    mu = pencil.mu
    if _same_scalar(mu[0], mu[1]):
        raise ValueError("singular solve: mu_1 = mu_2")
    s0 = _dot(tail, tail)
    s1 = _dot([mu[i + 2] * v for i, v in enumerate(tail)], tail)
    d = mu[0] - mu[1]
    x1sq = (mu[1] * s0 - s1) / d
    x2sq = (s1 - mu[0] * s0) / d
    return x1sq, x2sq


def sample_point_x(pencil: Pencil, seed: int, mode: str = "exact"):
    """Sample x on the constraint cone of an explicit pencil.

    Float mode implements the direct construction: draw x_3..x_N, solve the
    2x2 system for (x_1^2, x_2^2), take complex square roots.  Exact mode
    enumerates small Gaussian-integer solutions of both constraints instead,
    since the solved squares almost never have Gaussian-rational roots.
    """
    if mode == "float":
        rng = random.Random(seed)
        fp = pencil if not pencil.exact else pencil.to_float()
        while True:
            tail = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(pencil.N - 2)]
            x1sq, x2sq = _solve_x_squares(fp, tail)
            x = [x1sq ** 0.5, x2sq ** 0.5] + tail
            if all(v == 0 for v in x):
                continue
            return x
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    if not pencil.exact:
        raise ValueError("exact sampling needs an exact pencil")
    solutions = _integer_cone_points(pencil)
    if not solutions:
        raise ValueError(
            "no small Gaussian-integer points found on this pencil; "
            "use float mode or sample_pencil_point"
        )
    rng = random.Random(seed)
    base = list(solutions[rng.randrange(len(solutions))])
    # sign flips and exact rational scalings preserve both constraints
    flips = [rng.choice((1, -1)) for _ in base]
    scale = gr(Fraction(rng.randint(1, 5), rng.randint(1, 3)))
    return [scale * (v if f > 0 else -v) for v, f in zip(base, flips)]


_CONE_CACHE: dict = {}


def _integer_cone_points(pencil: Pencil, bound: int = 2, cap: int = 4096):
    """All x in Z[i]^N, entries bounded, on both quadrics (meet-in-middle)."""
    key = (tuple((m.re, m.im) for m in pencil.mu), bound)
    if key in _CONE_CACHE:
        return _CONE_CACHE[key]
    N = pencil.N
    mu = pencil.mu
    vals = [
        gr(a, b)
        for a in range(-bound, bound + 1)
        for b in range(-bound, bound + 1)
    ]
    half = N // 2
    left: dict = {}
    for combo in itertools.product(vals, repeat=half):
        k0 = _dot(combo, combo)
        k1 = _dot([mu[i] * v for i, v in enumerate(combo)], combo)
        left.setdefault(_scalar_key(k0, k1), []).append(combo)
    out = []
    for combo in itertools.product(vals, repeat=N - half):
        k0 = _dot(combo, combo)
        k1 = _dot([mu[half + i] * v for i, v in enumerate(combo)], combo)
        want = _scalar_key(-k0, -k1)
        for lead in left.get(want, ()):
            x = list(lead) + list(combo)
            nz = sum(0 if v.is_zero() else 1 for v in x)
            if nz >= 3:
                out.append(tuple(x))
                if len(out) >= cap:
                    _CONE_CACHE[key] = out
                    return out
    _CONE_CACHE[key] = out
    return out


def _scalar_key(a: GaussianRational, b: GaussianRational):
    return (a.re, a.im, b.re, b.im)


def sample_point_y(pencil: Pencil, x, seed: int, mode: str = "exact"):
    """Draw a covector representative: solve two linear constraints for a pivot pair.

    Requires two indices i, j with x_i, x_j != 0; re-pivots automatically and
    raises DegeneratePointError when no usable pair exists.
    """
    N = pencil.N
    mu = pencil.mu
    rng = random.Random(seed)
    usable = [i for i in range(N) if not _is_zero(x[i])]
    if len(usable) < 2:
        raise DegeneratePointError("need two indices with x_i != 0 to solve for y")
    i0, i1 = usable[0], usable[1]
    rest = [i for i in range(N) if i not in (i0, i1)]
    if mode == "exact":
        draw = {i: _draw_gaussian_int(rng, 9) for i in rest}
    elif mode == "float":
        draw = {i: complex(rng.gauss(0, 1), rng.gauss(0, 1)) for i in rest}
    else:
        raise ValueError(f"unknown mode {mode!r}")
    # x_{i0} y_{i0} + x_{i1} y_{i1} = -sum_rest x_i y_i   (and mu-weighted)
    r0 = [x[i] * draw[i] for i in rest]
    s0 = -_dot(r0, [ONE if mode == "exact" else 1.0] * len(rest)) if rest else None
    if s0 is None:
        s0 = ZERO if mode == "exact" else 0j
    s1 = None
    for i in rest:
        t = mu[i] * x[i] * draw[i]
        s1 = t if s1 is None else s1 + t
    s1 = -(s1 if s1 is not None else (ZERO if mode == "exact" else 0j))
    det = x[i0] * x[i1] * (mu[i1] - mu[i0])
    if _is_zero(det):
        raise DegeneratePointError("pivot system singular for every usable pair")
    # Cramer on [[x0, x1], [mu0 x0, mu1 x1]]
    y0 = (s0 * mu[i1] * x[i1] - x[i1] * s1) / det
    y1 = (x[i0] * s1 - mu[i0] * x[i0] * s0) / det
    y = [None] * N
    y[i0], y[i1] = y0, y1
    for i in rest:
        y[i] = draw[i]
    return y


def sample_phase_point(N: int, seed: int) -> PhasePoint:
    """Seeded exact constrained point with its co-sampled pencil."""
    pencil, x = sample_pencil_point(N, seed)
    y = sample_point_y(pencil, x, seed ^ 0x9E3779B9, mode="exact")
    return PhasePoint(pencil, x, y)
