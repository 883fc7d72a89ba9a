"""Sparse multivariate polynomials with exact coefficients.

Terms map exponent tuples (length = number of variables) to Gaussian
rationals; zero coefficients are never stored.  This is the substrate for
the rotation operators and for normal forms modulo the two diagonal
quadrics q = sum x_i^2 and q1 = sum mu_i x_i^2.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .scalars import GaussianRational, ZERO, ONE, gr


class MultiPoly:
    """Polynomial in N variables, sparse exponent-vector representation."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, GaussianRational] | None = None):
        self.nvars = nvars
        clean: dict[tuple, GaussianRational] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError("exponent vector length mismatch")
                if not c.is_zero():
                    clean[tuple(e)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "MultiPoly":
        return MultiPoly(nvars)

    @staticmethod
    def constant(nvars: int, c) -> "MultiPoly":
        c = c if isinstance(c, GaussianRational) else gr(c)
        return MultiPoly(nvars, {(0,) * nvars: c})

    @staticmethod
    def variable(nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return MultiPoly(nvars, {tuple(e): ONE})

    @staticmethod
    def monomial(nvars: int, exps: Iterable[int], c=ONE) -> "MultiPoly":
        c = c if isinstance(c, GaussianRational) else gr(c)
        return MultiPoly(nvars, {tuple(exps): c})

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "MultiPoly(0)"
        bits = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"x{i}^{p}" for i, p in enumerate(e) if p)
            bits.append(f"({c}){'*' + mono if mono else ''}")
        return " + ".join(bits)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        r = MultiPoly.__new__(MultiPoly)
        r.nvars = self.nvars
        r.terms = out
        return r

    def __neg__(self) -> "MultiPoly":
        r = MultiPoly.__new__(MultiPoly)
        r.nvars = self.nvars
        r.terms = {e: -c for e, c in self.terms.items()}
        return r

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        out: dict[tuple, GaussianRational] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        r = MultiPoly.__new__(MultiPoly)
        r.nvars = self.nvars
        r.terms = out
        return r

    def scale(self, c) -> "MultiPoly":
        c = c if isinstance(c, GaussianRational) else gr(c)
        if c.is_zero():
            return MultiPoly.zero(self.nvars)
        r = MultiPoly.__new__(MultiPoly)
        r.nvars = self.nvars
        r.terms = {e: c * v for e, v in self.terms.items()}
        return r

    def mul_monomial(self, exps: tuple, c=ONE) -> "MultiPoly":
        if c.is_zero():
            return MultiPoly.zero(self.nvars)
        r = MultiPoly.__new__(MultiPoly)
        r.nvars = self.nvars
        r.terms = {
            tuple(a + b for a, b in zip(e, exps)): c * v for e, v in self.terms.items()
        }
        return r

    def diff(self, i: int) -> "MultiPoly":
        out: dict[tuple, GaussianRational] = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            ne = list(e)
            ne[i] = k - 1
            out[tuple(ne)] = c * k
        r = MultiPoly.__new__(MultiPoly)
        r.nvars = self.nvars
        r.terms = out
        return r

    def evaluate(self, point: Iterable[GaussianRational]) -> GaussianRational:
        xs = list(point)
        if len(xs) != self.nvars:
            raise ValueError("evaluation point length mismatch")
        acc = ZERO
        for e, c in self.terms.items():
            v = c
            for xi, p in zip(xs, e):
                if p:
                    v = v * xi**p
            acc = acc + v
        return acc


def quadric(nvars: int) -> MultiPoly:
    """q = x_1^2 + ... + x_N^2."""
    terms = {}
    for i in range(nvars):
        e = [0] * nvars
        e[i] = 2
        terms[tuple(e)] = ONE
    return MultiPoly(nvars, terms)


def weighted_quadric(mu) -> MultiPoly:
    """q1 = mu_1 x_1^2 + ... + mu_N x_N^2."""
    n = len(mu)
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = 2
        m = mu[i] if isinstance(mu[i], GaussianRational) else gr(mu[i])
        if not m.is_zero():
            terms[tuple(e)] = m
    return MultiPoly(n, terms)


def reduce_mod_quadrics(f: MultiPoly, pencil, mode: str = "q-and-q1") -> MultiPoly:
    """Normal form of f modulo q = 0 (mode "q-only") or q = q1 = 0.

    Rewrites x_1^2 (and x_2^2 in two-quadric mode) using the relations; the
    leading terms x_1^2, x_2^2 are coprime so the rewriting is confluent and
    the result is zero exactly when f lies in the chosen ideal.
    """
    if mode not in ("q-only", "q-and-q1"):
        raise ValueError(f"unknown reduction mode {mode!r}")
    mu = pencil.mu
    n = f.nvars
    if len(mu) != n:
        raise ValueError("pencil size does not match variable count")
    if mode == "q-and-q1" and mu[0] == mu[1]:
        raise ValueError("degenerate pencil: mu_1 = mu_2")

    # rewrite rules as polynomials in the remaining variables
    def sq(i):
        e = [0] * n
        e[i] = 2
        return tuple(e)

    rule1 = MultiPoly(n, {sq(i): -ONE for i in range(1, n)})  # x1^2 -> -(x2^2+...)
    rules = {0: rule1}
    if mode == "q-and-q1":
        d = mu[0] - mu[1]
        # mu2*q - q1 eliminates x2^2:  x1^2 = sum_{i>=3} (mu2-mu_i)/(mu1-mu2) x_i^2
        rules[0] = MultiPoly(n, {sq(i): (mu[1] - mu[i]) / d for i in range(2, n)})
        rules[1] = MultiPoly(n, {sq(i): (mu[i] - mu[0]) / d for i in range(2, n)})

    work = f
    while True:
        target = None
        for e in work.terms:
            for v in rules:
                if e[v] >= 2:
                    target = (e, v)
                    break
            if target:
                break
        if target is None:
            return work
        e, v = target
        c = work.terms[e]
        rest = list(e)
        rest[v] -= 2
        work = work - MultiPoly(n, {e: c}) + rules[v].mul_monomial(tuple(rest), c)
