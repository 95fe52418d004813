"""Exact truncated power series with integer-polynomial coefficients.

A :class:`TruncSeries` is a series in X with valuation at least 1,
truncated at order Nx; each X-coefficient is a :class:`CoeffPoly`, a
sparse polynomial in three auxiliary variables (Y, A, B) with
arbitrary-precision integer coefficients and fixed truncation bounds.
Exponents only ever add, so truncating the auxiliary degrees is sound:
no discarded term can influence a kept one.

The central operation is :func:`f_transform`, solving M = R(X·(1+M)) for
M order by order; applying it twice maps irreducible-pair statistics to
the statistics of all pairs.  Change of variable and polynomial
extraction turn the transformed series into the closed rational forms
the pipeline asserts and exports.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import BoundsMismatchError, CoverageError, StructureViolationError

Key = tuple[int, int, int]


class CoeffPoly:
    """Sparse integer polynomial in (Y, A, B) under truncation bounds."""

    __slots__ = ("terms", "bounds")

    def __init__(self, terms: dict[Key, int], bounds: Key):
        self.terms = {k: v for k, v in terms.items() if v != 0}
        self.bounds = bounds

    @classmethod
    def const(cls, value: int, bounds: Key) -> "CoeffPoly":
        return cls({(0, 0, 0): value} if value else {}, bounds)

    @classmethod
    def zero(cls, bounds: Key) -> "CoeffPoly":
        return cls({}, bounds)

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(k == (0, 0, 0) for k in self.terms)

    def const_value(self) -> int:
        if not self.is_const():
            raise ValueError(f"not a constant: {self.terms}")
        return self.terms.get((0, 0, 0), 0)

    def coeff(self, y: int, a: int, b: int) -> int:
        return self.terms.get((y, a, b), 0)

    def _check(self, other: "CoeffPoly") -> None:
        if self.bounds != other.bounds:
            raise BoundsMismatchError(f"{self.bounds} vs {other.bounds}")

    def __add__(self, other: "CoeffPoly") -> "CoeffPoly":
        self._check(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                del out[k]
        res = CoeffPoly.__new__(CoeffPoly)
        res.terms = out
        res.bounds = self.bounds
        return res

    def __sub__(self, other: "CoeffPoly") -> "CoeffPoly":
        return self + other.scaled(-1)

    def scaled(self, c: int) -> "CoeffPoly":
        if c == 0:
            return CoeffPoly.zero(self.bounds)
        res = CoeffPoly.__new__(CoeffPoly)
        res.terms = {k: c * v for k, v in self.terms.items()}
        res.bounds = self.bounds
        return res

    def __mul__(self, other: "CoeffPoly") -> "CoeffPoly":
        self._check(other)
        ny, na, nb = self.bounds
        out: dict[Key, int] = {}
        get = out.get
        small, big = self.terms, other.terms
        if len(small) > len(big):
            small, big = big, small
        for (y1, a1, b1), v1 in small.items():
            for (y2, a2, b2), v2 in big.items():
                y = y1 + y2
                if y > ny:
                    continue
                a = a1 + a2
                if a > na:
                    continue
                b = b1 + b2
                if b > nb:
                    continue
                k = (y, a, b)
                s = get(k, 0) + v1 * v2
                if s:
                    out[k] = s
                else:
                    del out[k]
        res = CoeffPoly.__new__(CoeffPoly)
        res.terms = out
        res.bounds = self.bounds
        return res

    def substitute_ab_one(self, new_bounds: Key) -> "CoeffPoly":
        out: dict[Key, int] = {}
        for (y, _a, _b), v in self.terms.items():
            k = (y, 0, 0)
            out[k] = out.get(k, 0) + v
        return CoeffPoly({k: v for k, v in out.items() if v}, new_bounds)

    def __eq__(self, other):
        return (isinstance(other, CoeffPoly)
                and self.bounds == other.bounds and self.terms == other.terms)

    def __hash__(self):
        return hash((self.bounds, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return "CoeffPoly(0)"
        bits = [f"{v}*Y{y}A{a}B{b}" for (y, a, b), v in sorted(self.terms.items())]
        return "CoeffPoly(" + " + ".join(bits) + ")"


class TruncSeries:
    """Series in one formal variable, valuation >= 1, truncated at nx.

    ``coeffs[i]`` is the coefficient of the (i+1)-st power.  ``var`` only
    labels the variable for display ("X" or "w"); it has no arithmetic
    effect.
    """

    __slots__ = ("nx", "bounds", "coeffs", "var")

    def __init__(self, coeffs: Sequence[CoeffPoly], bounds: Key, var: str = "X"):
        self.coeffs = tuple(coeffs)
        self.nx = len(self.coeffs)
        self.bounds = bounds
        self.var = var
        for c in self.coeffs:
            if c.bounds != bounds:
                raise BoundsMismatchError(f"{c.bounds} vs series bounds {bounds}")

    @classmethod
    def zero(cls, nx: int, bounds: Key, var: str = "X") -> "TruncSeries":
        z = CoeffPoly.zero(bounds)
        return cls([z] * nx, bounds, var)

    @classmethod
    def from_ints(cls, values: Sequence[int], bounds: Key = (0, 0, 0),
                  var: str = "X") -> "TruncSeries":
        return cls([CoeffPoly.const(v, bounds) for v in values], bounds, var)

    def coeff(self, n: int) -> CoeffPoly:
        """Coefficient of the n-th power, 1-based; zero beyond nx."""
        if n < 1:
            raise ValueError(f"series have valuation >= 1; no order {n}")
        if n > self.nx:
            return CoeffPoly.zero(self.bounds)
        return self.coeffs[n - 1]

    def _check(self, other: "TruncSeries") -> None:
        if self.bounds != other.bounds or self.nx != other.nx:
            raise BoundsMismatchError(
                f"(nx={self.nx}, {self.bounds}) vs (nx={other.nx}, {other.bounds})")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries([a + b for a, b in zip(self.coeffs, other.coeffs)],
                           self.bounds, self.var)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        return TruncSeries([a - b for a, b in zip(self.coeffs, other.coeffs)],
                           self.bounds, self.var)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        zero = CoeffPoly.zero(self.bounds)
        out = [zero] * self.nx
        for i in range(1, self.nx):
            ci = self.coeffs[i - 1]
            if ci.is_zero():
                continue
            for j in range(1, self.nx - i + 1):
                cj = other.coeffs[j - 1]
                if cj.is_zero():
                    continue
                out[i + j - 1] = out[i + j - 1] + ci * cj
        return TruncSeries(out, self.bounds, self.var)

    def scale(self, poly: CoeffPoly) -> "TruncSeries":
        return TruncSeries([c * poly for c in self.coeffs], self.bounds, self.var)

    def truncated(self, nx: int) -> "TruncSeries":
        if nx > self.nx:
            raise BoundsMismatchError(f"cannot extend nx {self.nx} to {nx}")
        return TruncSeries(self.coeffs[:nx], self.bounds, self.var)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def as_int_list(self) -> list[int]:
        """Coefficients 1..nx for a series whose coefficients are
        constants in the auxiliary variables."""
        return [c.const_value() for c in self.coeffs]

    def y_coefficient_ints(self, r: int) -> list[int]:
        """Integer coefficients of Y^r, orders 1..nx; requires the A and B
        exponents at that slice to vanish (substitute first)."""
        out = []
        for c in self.coeffs:
            v = 0
            for (y, a, b), t in c.terms.items():
                if y == r:
                    if (a, b) != (0, 0):
                        raise ValueError(
                            "A/B exponents present; substitute before slicing")
                    v += t
            out.append(v)
        return out

    def terms_through_y(self, y_max: int) -> dict[tuple[int, int, int, int], int]:
        """All nonzero terms with Y-degree <= y_max as
        (n, y, a, b) -> coefficient."""
        out = {}
        for n in range(1, self.nx + 1):
            for (y, a, b), v in self.coeffs[n - 1].terms.items():
                if y <= y_max:
                    out[(n, y, a, b)] = v
        return out

    def dump_lines(self) -> list[str]:
        """Stable text dump: lines ``n y a b coefficient``, sorted."""
        lines = []
        for n in range(1, self.nx + 1):
            for (y, a, b), v in sorted(self.coeffs[n - 1].terms.items()):
                lines.append(f"{n} {y} {a} {b} {v}")
        return lines

    def __eq__(self, other):
        return (isinstance(other, TruncSeries) and self.nx == other.nx
                and self.bounds == other.bounds and self.coeffs == other.coeffs)

    def __repr__(self):
        return f"TruncSeries(var={self.var!r}, nx={self.nx}, bounds={self.bounds})"


def series_add(lhs: TruncSeries, rhs: TruncSeries) -> TruncSeries:
    return lhs + rhs


def series_mul(lhs: TruncSeries, rhs: TruncSeries) -> TruncSeries:
    return lhs * rhs


class IntPolynomial:
    """Univariate polynomial with exact integer coefficients, ascending."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self == IntPolynomial(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"


def f_transform(r_series: TruncSeries) -> TruncSeries:
    """Solve M = R(X·(1+M)) for M, order by order, exactly.

    Writing S = X·(1+M), the coefficient of X^n in S is 1 for n = 1 and
    the (n-1)-st coefficient of M otherwise, so each order of M only
    needs lower orders of the powers of S; P[k][n] below is the n-th
    coefficient of S^k.  Equivalent to summing products of R-coefficients
    over non-crossing partitions (the small-order test oracle).
    """
    nx = r_series.nx
    bounds = r_series.bounds
    zero = CoeffPoly.zero(bounds)
    one = CoeffPoly.const(1, bounds)
    rc = r_series.coeffs
    s_coeffs: list[CoeffPoly] = [zero] * (nx + 1)
    m_coeffs: list[CoeffPoly] = [zero] * (nx + 1)
    power: list[list[CoeffPoly]] = [[zero] * (nx + 1) for _ in range(nx + 1)]
    for n in range(1, nx + 1):
        s_coeffs[n] = one if n == 1 else m_coeffs[n - 1]
        power[1][n] = s_coeffs[n]
        for k in range(2, n + 1):
            acc = zero
            prow = power[k - 1]
            for j in range(1, n - k + 2):
                sj = s_coeffs[j]
                if sj.is_zero():
                    continue
                pk = prow[n - j]
                if pk.is_zero():
                    continue
                acc = acc + sj * pk
            power[k][n] = acc
        m = zero
        for k in range(1, n + 1):
            rk = rc[k - 1]
            if rk.is_zero():
                continue
            pk = power[k][n]
            if pk.is_zero():
                continue
            m = m + rk * pk
        m_coeffs[n] = m
    return TruncSeries(m_coeffs[1:], bounds, r_series.var)


def shifted_argument(m_series: TruncSeries) -> TruncSeries:
    """The series X·(1+M) for a given M: coefficient 1 at order 1, then
    M shifted up by one order."""
    one = CoeffPoly.const(1, m_series.bounds)
    coeffs = [one] + list(m_series.coeffs[:-1])
    return TruncSeries(coeffs, m_series.bounds, m_series.var)


def compose(outer: TruncSeries, inner: TruncSeries) -> TruncSeries:
    """outer∘inner for inner of valuation >= 1, truncated at inner.nx.
    Computed by accumulating powers of inner, a route independent of the
    f_transform recurrence."""
    if outer.bounds != inner.bounds:
        raise BoundsMismatchError(f"{outer.bounds} vs {inner.bounds}")
    nx = inner.nx
    acc = TruncSeries.zero(nx, inner.bounds, inner.var)
    power = inner
    kmax = min(outer.nx, nx)
    for k in range(1, kmax + 1):
        ck = outer.coeff(k)
        if not ck.is_zero():
            acc = acc + power.scale(ck)
        if k < kmax:
            power = power * inner
    return acc


def series_from_table(table, nx: int, ny: int, na: int, nb: int) -> TruncSeries:
    """The irreducible generating series from enumerated counts: the X^n
    coefficient collects Y^r A^a B^b counts, truncated at the bounds.
    Orders above 2*ny cannot carry surviving terms (irreducible pairs on
    n points force r >= n/2), so a table covering n <= min(nx, 2*ny) is
    complete for these bounds."""
    bounds = (ny, na, nb)
    needed = range(1, min(nx, 2 * ny if ny >= 1 else 1) + 1)
    covered = set(table.covered_n)
    missing = [n for n in needed if n not in covered]
    if missing:
        raise CoverageError(
            f"table covers n in {sorted(covered)}, needs {list(needed)}")
    zero = CoeffPoly.zero(bounds)
    coeffs = [zero] * nx
    buckets: dict[int, dict[Key, int]] = {}
    for (n, r, a, b), v in table.entries.items():
        if n <= nx and r <= ny and a <= na and b <= nb:
            buckets.setdefault(n, {})[(r, a, b)] = v
    for n, terms in buckets.items():
        coeffs[n - 1] = CoeffPoly(terms, bounds)
    return TruncSeries(coeffs, bounds, "X")


def substitute_AB_one(s: TruncSeries) -> TruncSeries:
    """Set A = B = 1 by summing coefficients over the (a, b) exponents;
    the Y grading is retained."""
    new_bounds = (s.bounds[0], 0, 0)
    return TruncSeries([c.substitute_ab_one(new_bounds) for c in s.coeffs],
                       new_bounds, s.var)


def w_substitution_series(nw: int, bounds: Key = (0, 0, 0)) -> TruncSeries:
    """The series w/(1+w)^2 = sum_k (-1)^(k-1) * k * w^k, truncated."""
    return TruncSeries.from_ints(
        [(-1) ** (k - 1) * k for k in range(1, nw + 1)], bounds, "w")


def change_var_to_w(s: TruncSeries, nw: int | None = None) -> TruncSeries:
    """Compose s with the substitution X = w/(1+w)^2, exactly."""
    if nw is None:
        nw = s.nx
    if nw > s.nx:
        raise BoundsMismatchError(f"nw={nw} exceeds series order {s.nx}")
    u = w_substitution_series(nw, s.bounds)
    return compose(s.truncated(nw), u)


def catalan_inverse_series(nt: int, bounds: Key = (0, 0, 0)) -> TruncSeries:
    """w as a series in t, the functional inverse of t = w/(1+w)^2; its
    coefficients are the Catalan numbers."""
    from .nclat import catalan

    return TruncSeries.from_ints([catalan(k) for k in range(1, nt + 1)],
                                 bounds, "X")


def poly_mul_ints(a: Sequence[int], b: Sequence[int], cap: int) -> list[int]:
    """Plain integer polynomial product, truncated at degree cap."""
    out = [0] * (cap + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > cap:
            continue
        for j, bj in enumerate(b):
            if i + j > cap:
                break
            if bj:
                out[i + j] += ai * bj
    return out


def binomial_power_ints(sign: int, exponent: int) -> list[int]:
    """Coefficients of (1 + sign*x)^exponent for integer exponent >= 0."""
    out = [1]
    for _ in range(exponent):
        nxt = [0] * (len(out) + 1)
        for i, v in enumerate(out):
            nxt[i] += v
            nxt[i + 1] += sign * v
        out = nxt
    return out


def extract_polynomial(s_w: TruncSeries, r: int) -> IntPolynomial:
    """Recover the numerator polynomial P from a Y^r slice in w satisfying
    slice = w^(r+1) * (1+w) * P(w) / (1-w)^(2r-1) with deg P <= 3r-3.

    Multiplies by (1-w)^(2r-1), divides by (1+w) via the alternating
    geometric series, shifts down by r+1, and asserts both the valuation
    and the vanishing of every coefficient beyond degree 3r-3 up to the
    truncation order.  A violation signals a bug or insufficient
    irreducible data, so it raises rather than warns.
    """
    if r < 1:
        raise ValueError(f"extraction needs r >= 1, got {r}")
    if s_w.nx < 4 * r + 2:
        raise BoundsMismatchError(
            f"need w-order >= {4 * r + 2} to certify degree {3 * r - 3}, "
            f"have {s_w.nx}")
    vals = [0] + s_w.as_int_list()  # index = degree, degree 0 empty
    cap = s_w.nx
    step1 = poly_mul_ints(vals, binomial_power_ints(-1, 2 * r - 1), cap)
    # divide by (1+w): q[m] = step1[m] - q[m-1]
    q = [0] * (cap + 1)
    for m in range(cap + 1):
        q[m] = step1[m] - (q[m - 1] if m else 0)
    low = [m for m in range(min(r, cap) + 1) if q[m]]
    if low:
        raise StructureViolationError(
            f"Y^{r} slice has nonzero coefficients below w^{r + 1} "
            f"after normalization at degrees {low}")
    shifted = q[r + 1:]
    tail = [i for i in range(3 * r - 2, len(shifted)) if shifted[i]]
    if tail:
        raise StructureViolationError(
            f"Y^{r} slice leaves nonzero tail beyond degree {3 * r - 3} "
            f"at degrees {tail}; insufficient data or a bug")
    return IntPolynomial(shifted[:3 * r - 2])
