"""Exact branch parametrizations of plane curves over Q.

Every rational place of a curve gets a parametrization (x(t), y(t)) by
truncated Laurent series with rational coefficients:

* at a smooth affine point the implicit function theorem applies and a
  Newton iteration on the curve equation delivers the series directly;

* over a point on the line at infinity (smooth or not) the equation in
  the chart Y=1 or X=1 is expanded by Newton-polygon iteration.  Each
  polygon edge of slope q/e contributes places v ~ m * s^(q/e); the
  ramified case e > 1 is handled with the rational normalization
  s = lambda * t^e, v = t^q * (m + ...), choosing lambda as a power of
  the edge root so every coefficient stays in Q.  A place whose edge
  root is irrational raises NonRationalSupportError ("non-rational
  branch"), matching the engine's rational-support contract.

Branch indices at one projective point follow the deterministic order
(valuation of y, valuation of x, leading coefficients).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .bipoly import BiPoly
from .curves import CurvePoint, PlaneCurve
from .errors import (InsufficientPrecisionError, NonRationalSupportError,
                     PreconditionError, VerificationError)
from .series import PowerSeries
from .unipoly import UniPoly


@dataclass(frozen=True)
class _Frame:
    """One Newton-polygon substitution s -> lambda*s1^e, v -> s1^q*(m + v1)."""

    e: int
    q: int
    lam: Fraction
    m: Fraction


class _ChartPlace:
    """A place of H(s, v) = 0 at the origin, given by a frame chain.

    The last frame leaves a regular equation: H_final(0,0) = 0 with
    a nonzero v-derivative, so plain Newton iteration finishes the job.
    """

    def __init__(self, frames: List[_Frame], final: BiPoly):
        self.frames = frames
        self.final = final
        self.e_total, self.lam_total = _compose_monomial(frames)

    def sv_series(self, prec: int) -> Tuple[PowerSeries, PowerSeries]:
        """(s(t), v(t)) with both series known at least mod t^prec."""
        n = max(prec, 2)
        for _ in range(8):
            v = _newton_series(self.final, n)
            lam, e = Fraction(1), 1  # current level's s as lam * t^e
            for fr in reversed(self.frames):
                # v_prev = s_i^q * (m + v_i) with s_i the current monomial
                mono = PowerSeries.t_power(e * fr.q, v.prec + e * fr.q, lam**fr.q)
                v = mono * (v + PowerSeries.const(fr.m, v.prec))
                lam, e = fr.lam * lam**fr.e, fr.e * e
            s = PowerSeries.t_power(self.e_total, v.prec + self.e_total, self.lam_total)
            if v.prec >= prec and s.prec >= prec:
                return s.truncate(max(prec, s.val + 1)), v
            n *= 2
        raise InsufficientPrecisionError("place expansion did not reach requested precision")


def _compose_monomial(frames: List[_Frame]) -> Tuple[int, Fraction]:
    e_total = 1
    lam_total = Fraction(1)
    for fr in reversed(frames):
        lam_total = fr.lam * lam_total**fr.e
        e_total = fr.e * e_total
    return e_total, lam_total


def _newton_series(h: BiPoly, prec: int) -> PowerSeries:
    """Solve h(t, v(t)) = 0 for v with v(0) = 0; needs dh/dv(0,0) != 0."""
    hv = h.partial("y")
    if h(0, 0) != 0 or hv(0, 0) == 0:
        raise VerificationError("internal: Newton iteration needs a regular root")
    v = PowerSeries.zero(prec)
    t = PowerSeries.t_power(1, prec + 4)
    correct = 1
    while correct < prec:
        num = _eval_series(h, t, v, prec)
        den = _eval_series(hv, t, v, prec)
        v = v - num / den
        v = v.truncate(prec)
        correct *= 2
    return v


def _eval_series(p: BiPoly, s: PowerSeries, v: PowerSeries, prec: int) -> PowerSeries:
    """p(s(t), v(t)) truncated to prec."""
    coeffs = p.as_poly_in("y")
    acc = PowerSeries.zero(prec)
    for c in reversed(coeffs):
        acc = (acc * v + _eval_unipoly_series(c, s, prec)).truncate(prec)
    return acc


def _eval_unipoly_series(c: UniPoly, s: PowerSeries, prec: int) -> PowerSeries:
    acc = PowerSeries.zero(prec)
    for coeff in reversed(c.coeffs):
        acc = (acc * s + PowerSeries.const(coeff, prec)).truncate(prec)
    return acc


def _divide_out_x_power(p: BiPoly, k: int) -> BiPoly:
    terms = {}
    for (i, j), c in p.terms.items():
        if i < k:
            raise VerificationError("internal: monomial division failed in polygon step")
        terms[(i - k, j)] = c
    return BiPoly(terms)


def _modinv(a: int, m: int) -> int:
    a %= m
    x0, x1 = 0, 1
    r0, r1 = m, a
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        x0, x1 = x1, x0 - q * x1
    if r0 != 1:
        raise VerificationError("internal: modular inverse does not exist")
    return x0 % m


def _polygon_places(h: BiPoly, depth: int = 0) -> List[_ChartPlace]:
    """All places of h = 0 at the origin with s not identically zero."""
    if depth > 40:
        raise VerificationError("Newton polygon recursion did not terminate")
    if h(0, 0) != 0:
        return []
    support = list(h.terms.keys())
    if all(j >= 1 for _, j in support):
        raise NonRationalSupportError("curve has the chart axis as a component")
    if all(i >= 1 for i, _ in support):
        raise NonRationalSupportError("curve has the vertical chart axis as a component")
    # smooth with non-vertical tangent: a single place, no polygon needed
    if h.partial("y")(0, 0) != 0:
        return [_ChartPlace([], h)]
    places: List[_ChartPlace] = []
    slopes = set()
    for (i1, j1) in support:
        for (i2, j2) in support:
            if j1 == j2:
                continue
            mu = Fraction(i2 - i1, j1 - j2)
            if mu > 0:
                slopes.add(mu)
    for mu in sorted(slopes):
        nu = min(Fraction(i) + mu * j for i, j in support)
        edge = [(i, j) for (i, j) in support if Fraction(i) + mu * j == nu]
        jvals = sorted({j for _, j in edge})
        if len(jvals) < 2:
            continue
        e, q = mu.denominator, mu.numerator
        j0 = jvals[0]
        psi_terms = {}
        for (i, j) in edge:
            k = (j - j0) // e
            if (j - j0) % e != 0:
                raise VerificationError("internal: edge exponents not in arithmetic progression")
            psi_terms[k] = h.terms[(i, j)]
        psi = UniPoly([psi_terms.get(k, Fraction(0)) for k in range(max(psi_terms) + 1)])
        roots = psi.rational_roots()
        covered = sum(mult for root, mult in roots if root != 0)
        nonzero_deg = psi.degree - psi.root_multiplicity(Fraction(0)) if psi.coeff(0) == 0 else psi.degree
        if covered < nonzero_deg:
            raise NonRationalSupportError(
                "non-rational branch: polygon edge polynomial has an irrational root",
                details={"edge_poly": list(psi.coeffs)},
            )
        alpha = 0 if e == 1 else (-_modinv(q, e)) % e
        for rho, mult in roots:
            if rho == 0:
                continue
            lam = rho**alpha
            m = rho ** ((1 + alpha * q) // e)
            h1 = _shift_frame(h, e, q, lam, m)
            frame = _Frame(e, q, lam, m)
            if h1(0, 0) == 0 and h1.partial("y")(0, 0) != 0:
                places.append(_ChartPlace([frame], h1))
            else:
                for sub in _polygon_places(h1, depth + 1):
                    places.append(_ChartPlace([frame] + sub.frames, sub.final))
    return places


def _shift_frame(h: BiPoly, e: int, q: int, lam: Fraction, m: Fraction) -> BiPoly:
    """h(lam*s^e, s^q*(m + v)) with the total s-power divided out."""
    s_img = BiPoly({(e, 0): lam})
    v_img = BiPoly({(q, 0): m, (q, 1): Fraction(1)})
    g = h.substitute(s_img, v_img)
    k = min((i for (i, _) in g.terms), default=0)
    return _divide_out_x_power(g, k)


# ---------------------------------------------------------------------------
# public branch objects
# ---------------------------------------------------------------------------

class Branch:
    """Parametrized place of a plane curve with exact series coordinates."""

    def __init__(self, curve: PlaneCurve, point: CurvePoint, kind: str, data):
        self.curve = curve
        self.point = point
        self._kind = kind  # "affine-y" | "affine-x" | "inf-Y" | "inf-X"
        self._data = data
        self._cached: Optional[Tuple[PowerSeries, PowerSeries]] = None

    def xy(self, prec: int) -> Tuple[PowerSeries, PowerSeries]:
        """Affine coordinate series (x(t), y(t)), both known mod t^prec at least."""
        if self._cached is not None and self._cached[0].prec >= prec and self._cached[1].prec >= prec:
            return self._cached
        out = self._xy_uncached(prec)
        if self._cached is None or out[0].prec > self._cached[0].prec:
            self._cached = out
        return out

    def _xy_uncached(self, prec: int) -> Tuple[PowerSeries, PowerSeries]:
        if self._kind in ("affine-y", "affine-x"):
            h, px, py = self._data
            v = _newton_series(h, max(prec, 2))
            t = PowerSeries.t_power(1, v.prec)
            if self._kind == "affine-y":
                return (t + PowerSeries.const(px, v.prec), v + PowerSeries.const(py, v.prec))
            return (v + PowerSeries.const(px, v.prec), t + PowerSeries.const(py, v.prec))
        place, u0 = self._data
        n = max(prec, 4)
        for _ in range(10):
            s, v = place.sv_series(n + 2 * self.curve.degree + 8)
            w = v  # chart second coordinate
            u = s + PowerSeries.const(u0, s.prec)
            try:
                if self._kind == "inf-Y":
                    x = u / w
                    y = w.invert()
                else:  # inf-X: (v, w) = (Y/X, Z/X)
                    x = w.invert()
                    y = u / w
            except InsufficientPrecisionError:
                n *= 2
                continue
            if x.prec >= prec and y.prec >= prec:
                return x.truncate(prec), y.truncate(prec)
            n *= 2
        raise InsufficientPrecisionError("branch series did not reach requested precision")

    def residual_ok(self, prec: int = None) -> bool:
        """Check F(x(t), y(t)) = 0 to the working truncation."""
        prec = prec or (2 * self.curve.degree + 6)
        x, y = self.xy(prec)
        val = _eval_series(self.curve.affine, x, y, min(x.prec, y.prec))
        return val.is_zero()

    def __repr__(self):
        return f"Branch({self.point.label()})"


def branch_at_affine(curve: PlaneCurve, p: CurvePoint) -> Branch:
    """Local parametrization at a smooth affine rational point."""
    if not p.is_affine:
        raise PreconditionError("branch_at_affine needs an affine point")
    if not curve.contains(p):
        raise PreconditionError("point does not lie on the curve")
    fx, fy = curve.gradient_at(p)
    shifted = curve.affine.substitute(
        BiPoly.x() + BiPoly.const(p.x), BiPoly.y() + BiPoly.const(p.y)
    )
    if fy != 0:
        return Branch(curve, p, "affine-y", (shifted, p.x, p.y))
    if fx != 0:
        swapped = shifted.substitute(BiPoly.y(), BiPoly.x())
        return Branch(curve, p, "affine-x", (swapped, p.x, p.y))
    raise PreconditionError(f"point {p.label()} is singular; no unique branch")


def branches_at_infinity(curve: PlaneCurve) -> List[Branch]:
    """All places of the curve over the line Z = 0 (rational ones, or raise).

    Output is sorted deterministically and branch indices are assigned
    per projective point by (val y, val x, leading coefficient of y,
    leading coefficient of x).
    """
    pts, complete = curve.rational_infinity_points()
    if not complete:
        raise NonRationalSupportError("non-rational branch: irrational point at infinity")
    out: List[Branch] = []
    for (X, Y) in pts:
        if Y != 0:
            chart = curve.chart("Y")  # variables (u, w) = (X/Y, Z/Y)
            u0 = X / Y
            shifted = chart.substitute(BiPoly.x() + BiPoly.const(u0), BiPoly.y())
            places = _polygon_places(shifted)
            kind = "inf-Y"
        else:
            chart = curve.chart("X")  # variables (v, w) = (Y/X, Z/X)
            u0 = Fraction(0)
            places = _polygon_places(chart)
            kind = "inf-X"
        probe = 2 * curve.degree + 6
        keyed = []
        for pl in places:
            br = Branch(curve, CurvePoint.at_infinity(X, Y, 0), kind, (pl, u0))
            x, y = br.xy(probe)
            if x.is_zero() or y.is_zero():
                raise InsufficientPrecisionError("branch coordinates vanished to truncation")
            keyed.append(((y.val, x.val, y.leading(), x.leading()), pl))
        keyed.sort(key=lambda kv: kv[0])
        for idx, (_, pl) in enumerate(keyed):
            point = CurvePoint.at_infinity(X, Y, idx)
            out.append(Branch(curve, point, kind, (pl, u0)))
    out.sort(key=lambda b: (b.point.x, b.point.y, b.point.branch))
    return out
