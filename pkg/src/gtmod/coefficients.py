"""Scalar machinery: the commuting-family eigenvalue polynomials gamma_mk,
the tableau action coefficients e_rs, the classical raising/lowering
formulas, and finite-dimensional modules on standard tableaux.

Everything here is generic over the entry ring: plain rationals, Laurent
jets, or symbolic rational functions all work, since the formulas only use
ring operations and division.
"""

from __future__ import annotations

from .errors import NotInvertible
from .scalars import rat
from .tableaux import epsilon, phi


class TableauPoint:
    """Entries w_ij, 1 <= j <= i <= n, over any exact coefficient ring."""

    __slots__ = ("n", "values")

    def __init__(self, n, values):
        self.n = n
        self.values = dict(values)

    @staticmethod
    def from_seed(seed, z=None):
        return TableauPoint(seed.n, seed.point(z))

    def entry(self, i, j):
        return self.values[(i, j)]

    def permuted(self, sigma):
        getter = sigma.act_entries(self.n, self.entry)
        return TableauPoint(
            self.n,
            {(i, j): getter(i, j) for i in range(1, self.n + 1) for j in range(1, i + 1)},
        )

    def shifted(self, z):
        return TableauPoint(
            self.n,
            {(i, j): v + z.entry(i, j) for (i, j), v in self.values.items()},
        )


def gamma(point, m, k):
    """Exact value of the k-th symmetric row function on row m.

    Uses the rational-term sum when all row differences are invertible;
    falls back to the pole-free generating-series expansion otherwise
    (coincident designated pairs, equal top-row entries), which evaluates
    the same polynomial.
    """
    if not 1 <= k <= m <= point.n:
        raise ValueError(f"gamma indices (m,k)=({m},{k}) out of range")
    w = [point.entry(m, i) for i in range(1, m + 1)]
    try:
        total = 0
        for i in range(m):
            term = (w[i] + (m - 1)) ** k
            for j in range(m):
                if j != i:
                    term = term * (1 - 1 / (w[i] - w[j]))
            total = term + total
        return total
    except (ZeroDivisionError, NotInvertible):
        return gamma_series(w, m, k)


def gamma_series(row_values, m, k):
    """Coefficient extraction from the finite product generating series.

    1 - sum_k gamma_mk u^{-k-1} = prod_i (u - w_i - m)/(u - w_i - m + 1);
    each factor expands with polynomial coefficients, so this path never
    divides by entry differences.
    """
    order = k + 1
    series = [rat(1)] + [rat(0)] * order
    for wi in row_values:
        b = wi + m
        # (u-b)/(u-b+1) = 1 - sum_{j>=1} (b-1)^{j-1} u^{-j}
        factor = [rat(1)] + [-((b - 1) ** (j - 1)) for j in range(1, order + 1)]
        out = [rat(0)] * (order + 1)
        for a in range(order + 1):
            for bidx in range(order + 1 - a):
                out[a + bidx] = out[a + bidx] + series[a] * factor[bidx]
        series = out
    return -series[k + 1]


def gamma_series_check(point, m, order):
    """Compare the term-sum and generating-series routes exactly."""
    w = [point.entry(m, i) for i in range(1, m + 1)]
    # k = 0 coefficient of the series must equal the term-sum with k = 0
    zero_term = 0
    for i in range(m):
        term = 1
        for j in range(m):
            if j != i:
                term = term * (1 - 1 / (w[i] - w[j]))
        zero_term = zero_term + term
    if gamma_series(w, m, 0) != zero_term:
        return False
    for k in range(1, order + 1):
        total = 0
        for i in range(m):
            term = (w[i] + (m - 1)) ** k
            for j in range(m):
                if j != i:
                    term = term * (1 - 1 / (w[i] - w[j]))
            total = term + total
        if gamma_series(w, m, k) != total:
            return False
    return True


def e_factors(point, r, s):
    """Numerator factors, denominator factors and the sign of e_rs.

    Every factor is a difference of two entries, so over jets each is a
    cheap two-term series; dividing factor by factor keeps inverses
    univariate instead of inverting one large product.
    """
    w = point.entry
    num = []
    den = []
    if r < s:
        head = w(s - 1, 1)
        for j in range(1, s + 1):
            num.append(head - w(s, j))
        for j in range(2, s):
            den.append(head - w(s - 1, j))
        for j in range(r, s - 1):
            hj = w(j, 1)
            for t_ in range(2, j + 2):
                num.append(hj - w(j + 1, t_))
            for t_ in range(2, j + 1):
                den.append(hj - w(j, t_))
        return num, den, -1
    head = w(s, 1)
    for j in range(1, s):
        num.append(head - w(s - 1, j))
    for j in range(2, s + 1):
        den.append(head - w(s, j))
    for j in range(s + 2, r + 1):
        hj = w(j - 1, 1)
        for t_ in range(2, j - 1):
            num.append(hj - w(j - 2, t_))
        for t_ in range(2, j):
            den.append(hj - w(j - 1, t_))
    return num, den, 1


def e_coeff(point, r, s):
    """Action coefficient of the generator E_rs at the point."""
    if r == s:
        w = point.entry
        total = r - 1
        for i in range(1, r + 1):
            total = total + w(r, i)
        for i in range(1, r):
            total = total - w(r - 1, i)
        return total
    num, den, sign = e_factors(point, r, s)
    out = rat(sign)
    for f in num:
        out = out * f
    for f in den:
        out = out / f
    return out


def generic_act(r, s, z, x):
    """Generator action on the generic tableau at x + z.

    Returns {pattern: coefficient} with zero coefficients dropped; the sum
    runs over the transposition family of (r, s).
    """
    n = x.n
    out = {}
    eps = epsilon(n, r, s)
    for sigma in phi(n, r, s):
        w = x.shifted(z).permuted(sigma)
        c = e_coeff(w, r, s)
        target = z + sigma.act_pattern(eps)
        acc = out.get(target, 0) + c
        if acc == 0:
            out.pop(target, None)
        else:
            out[target] = acc
    return out


# -- classical formulas on standard tableaux ---------------------------------


def gt_raising_coeff(w, k, i):
    """Classical coefficient of T(v + delta^{ki}) in E_{k,k+1} T(v)."""
    num = rat(1)
    for j in range(1, k + 2):
        num = num * (w(k, i) - w(k + 1, j))
    den = rat(1)
    for j in range(1, k + 1):
        if j != i:
            den = den * (w(k, i) - w(k, j))
    return -(num / den)


def gt_lowering_coeff(w, k, i):
    """Classical coefficient of T(v - delta^{ki}) in E_{k+1,k} T(v)."""
    num = rat(1)
    for j in range(1, k):
        num = num * (w(k, i) - w(k - 1, j))
    den = rat(1)
    for j in range(1, k + 1):
        if j != i:
            den = den * (w(k, i) - w(k, j))
    return num / den


def gt_diag_coeff(w, k):
    total = k - 1
    for i in range(1, k + 1):
        total = total + w(k, i)
    for i in range(1, k):
        total = total - w(k - 1, i)
    return total


# -- finite-dimensional modules ------------------------------------------------


def weyl_dim(lam):
    """Weyl dimension formula for gl(n), the independent dimension oracle."""
    lam = [rat(x) for x in lam]
    n = len(lam)
    dim = rat(1)
    for i in range(n):
        for j in range(i + 1, n):
            dim = dim * (lam[i] - lam[j] + j - i) / (j - i)
    assert dim.denominator == 1
    return int(dim)


def _standard_rows_below(row):
    """All integer-offset rows strictly interlacing the given row."""
    if len(row) == 1:
        yield ()
        return
    ranges = []
    for i in range(len(row) - 1):
        gap = row[i] - row[i + 1]
        assert gap.denominator == 1 and gap >= 1
        ranges.append([row[i] - m for m in range(int(gap))])

    def rec(i, acc):
        if i == len(ranges):
            yield tuple(acc)
            return
        for val in ranges[i]:
            yield from rec(i + 1, acc + [val])

    yield from rec(0, [])


def standard_tableaux(lam):
    """All standard tableaux with top row lambda_i - i + 1, rows bottom-up."""
    lam = [rat(x) for x in lam]
    n = len(lam)
    for i in range(n - 1):
        gap = lam[i] - lam[i + 1]
        if gap.denominator != 1 or gap < 0:
            raise ValueError("weight is not dominant integral")
    # v_{n,i} = lambda_i - i + 1 with 1-based i
    top = tuple(lam[i] - i for i in range(n))

    def build(rows_top_down):
        row = rows_top_down[-1]
        if len(row) == 1:
            yield tuple(reversed(rows_top_down))
            return
        for nxt in _standard_rows_below(row):
            yield from build(rows_top_down + [nxt])

    yield from build([top])


def is_standard_rows(rows):
    """Interlacing test on bottom-up rows."""
    n = len(rows)
    for k in range(2, n + 1):
        for i in range(1, k):
            dtop = rows[k - 1][i - 1] - rows[k - 2][i - 1]
            if dtop.denominator != 1 or dtop < 0:
                return False
            dbot = rows[k - 2][i - 1] - rows[k - 1][i]
            if dbot.denominator != 1 or dbot < 1:
                return False
    return True


def _rows_entry(rows):
    return lambda i, j: rows[i - 1][j - 1]


def fd_act(kind, k, rows):
    """Classical action of E_{k,k+1} / E_{k+1,k} / E_kk on one standard tableau.

    Summands landing on non-standard tableaux are masked to zero.
    Returns {rows: coefficient}.
    """
    w = _rows_entry(rows)
    out = {}
    if kind == "diag":
        c = gt_diag_coeff(w, k)
        return {rows: c} if c != 0 else {}
    for i in range(1, k + 1):
        if kind == "raise":
            c = gt_raising_coeff(w, k, i)
            shift = 1
        else:
            c = gt_lowering_coeff(w, k, i)
            shift = -1
        if c == 0:
            continue
        target = tuple(
            tuple(x + (shift if (ri, rj) == (k, i) else 0) for rj, x in enumerate(row, 1))
            for ri, row in enumerate(rows, 1)
        )
        if not is_standard_rows(target):
            continue
        out[target] = out.get(target, 0) + c
    return {key: val for key, val in out.items() if val != 0}


def fd_module(lam):
    """Basis, dimension and a bracket-closure certificate for L(lambda)."""
    basis = list(standard_tableaux(lam))
    dim = len(basis)
    expected = weyl_dim(lam)
    n = len(list(lam))
    closure_ok = True
    for rows in basis:
        for k in range(1, n):
            # [E_{k,k+1}, E_{k+1,k}] = E_kk - E_{k+1,k+1}
            lhs = {}
            for mid, c in fd_act("lower", k, rows).items():
                for tgt, c2 in fd_act("raise", k, mid).items():
                    lhs[tgt] = lhs.get(tgt, 0) + c * c2
            for mid, c in fd_act("raise", k, rows).items():
                for tgt, c2 in fd_act("lower", k, mid).items():
                    lhs[tgt] = lhs.get(tgt, 0) - c * c2
            lhs = {key: val for key, val in lhs.items() if val != 0}
            wdiag = gt_diag_coeff(_rows_entry(rows), k) - (
                gt_diag_coeff(_rows_entry(rows), k + 1)
            )
            rhs = {rows: wdiag} if wdiag != 0 else {}
            if lhs != rhs:
                closure_ok = False
    return {
        "dimension": dim,
        "weyl_dimension": expected,
        "dimension_ok": dim == expected,
        "basis": basis,
        "closure_ok": closure_ok,
    }
