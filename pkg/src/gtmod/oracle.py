"""Independent symbolic kernel: exact rational functions in s_1..s_t.

Backed by sympy over QQ; deliberately separate from the jet kernel so the
two sides of every differential test share nothing but the expression
being evaluated.  Numerators and denominators are kept gcd-reduced with
the denominator's leading coefficient positive under graded lex order.
"""

from __future__ import annotations

import sympy as sp

from .errors import PoleAtOrigin
from .jets import Jet, JetContext
from .scalars import RAT, as_fraction, rat


def sym(r):
    """The sympy symbol for the r-th singular direction."""
    return sp.Symbol(f"s{r}", real=True)


def _syms(t):
    return [sym(r) for r in range(1, t + 1)]


def to_sympy(q):
    q = rat(q)
    return sp.Rational(int(q.numerator), int(q.denominator))


def from_sympy(expr):
    """Exact conversion of a sympy rational constant back to RAT."""
    c = sp.nsimplify(expr, rational=True)
    if not c.is_Rational:
        raise ValueError(f"not an exact rational: {expr!r}")
    return RAT(int(c.p), int(c.q))


class RationalFunction:
    """Reduced fraction of sparse multivariate polynomials over Q."""

    __slots__ = ("t", "expr")

    def __init__(self, t, expr):
        self.t = t
        self.expr = sp.cancel(sp.together(expr))
        num, den = sp.fraction(self.expr)
        if den == 0 or sp.cancel(den) == 0:
            raise ZeroDivisionError("zero denominator")
        if self._leading_coeff(den) < 0:
            self.expr = sp.cancel((-num) / (-den))

    def _leading_coeff(self, poly_expr):
        if poly_expr.is_Number:
            return poly_expr
        p = sp.Poly(poly_expr, *_syms(self.t))
        return p.coeffs(order="grlex")[0]

    @staticmethod
    def const(c, t):
        return RationalFunction(t, to_sympy(c))

    @staticmethod
    def var(r, t):
        if not 1 <= r <= t:
            raise IndexError(f"variable index {r} out of range 1..{t}")
        return RationalFunction(t, sym(r))

    # -- sparse views of the reduced fraction -----------------------------

    def numerator_terms(self):
        return self._terms(sp.fraction(self.expr)[0])

    def denominator_terms(self):
        return self._terms(sp.fraction(self.expr)[1])

    def _terms(self, poly_expr):
        p = sp.Poly(poly_expr, *_syms(self.t))
        return {tuple(mon): from_sympy(c) for mon, c in p.terms()}

    # -- arithmetic --------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            return other
        return RationalFunction(self.t, to_sympy(other))

    def __add__(self, other):
        return RationalFunction(self.t, self.expr + self._lift(other).expr)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.t, -self.expr)

    def __sub__(self, other):
        return RationalFunction(self.t, self.expr - self._lift(other).expr)

    def __rsub__(self, other):
        return RationalFunction(self.t, self._lift(other).expr - self.expr)

    def __mul__(self, other):
        return RationalFunction(self.t, self.expr * self._lift(other).expr)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.expr == 0:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.t, self.expr / o.expr)

    def __rtruediv__(self, other):
        if self.expr == 0:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.t, self._lift(other).expr / self.expr)

    def __pow__(self, n):
        return RationalFunction(self.t, self.expr**n)

    def diff(self, r):
        """Plain partial derivative d/ds_r, gcd-reduced."""
        return RationalFunction(self.t, sp.diff(self.expr, sym(r)))

    def twist(self, rows):
        """Substitute s_r -> -s_r for r in rows (the tau_r twist)."""
        subs = {sym(r): -sym(r) for r in rows}
        return RationalFunction(self.t, self.expr.subs(subs, simultaneous=True))

    def eval_zero(self):
        """Exact value at s = 0; PoleAtOrigin when the reduced denominator vanishes."""
        num, den = sp.fraction(self.expr)
        origin = {s: 0 for s in _syms(self.t)}
        d0 = den.subs(origin)
        if d0 == 0:
            raise PoleAtOrigin(f"denominator vanishes at the origin: {den}")
        return from_sympy(num.subs(origin)) / from_sympy(d0)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            other = self._lift(other)
        return sp.cancel(self.expr - other.expr) == 0

    def __hash__(self):
        return hash(self.expr)

    def __repr__(self):
        return f"RationalFunction({self.expr})"


def oracle_dd(f, rows):
    """D_I^v by symbolic differentiation: apply (d/ds_r)/2 over rows, evaluate at 0."""
    if isinstance(f, RationalFunction):
        expr, t = f.expr, f.t
    else:
        raise TypeError("oracle_dd expects a RationalFunction")
    for r in rows:
        expr = sp.diff(expr, sym(r)) / 2
    return RationalFunction(t, expr).eval_zero()


# -- expression trees shared with the jet kernel -----------------------------
#
# A tree is nested tuples:
#   ("const", q) ("var", r) ("add", a, b) ("sub", a, b) ("mul", a, b)
#   ("neg", a) ("inv", a) ("pow", a, n) ("ddiff", a, r) ("twist", a, rows)
# Both evaluators consume the same tree; only the arithmetic backend differs.


def eval_tree_jet(tree, ctx):
    op = tree[0]
    if op == "const":
        return Jet.const(tree[1], ctx)
    if op == "var":
        return Jet.var(tree[1], ctx)
    if op == "add":
        return eval_tree_jet(tree[1], ctx) + eval_tree_jet(tree[2], ctx)
    if op == "sub":
        return eval_tree_jet(tree[1], ctx) - eval_tree_jet(tree[2], ctx)
    if op == "mul":
        return eval_tree_jet(tree[1], ctx) * eval_tree_jet(tree[2], ctx)
    if op == "neg":
        return -eval_tree_jet(tree[1], ctx)
    if op == "inv":
        return eval_tree_jet(tree[1], ctx).reciprocal()
    if op == "pow":
        return eval_tree_jet(tree[1], ctx) ** tree[2]
    if op == "ddiff":
        return eval_tree_jet(tree[1], ctx).ddiff(tree[2])
    if op == "twist":
        return eval_tree_jet(tree[1], ctx).twist(tree[2])
    raise ValueError(f"unknown tree op {op!r}")


def eval_tree_rf(tree, t):
    op = tree[0]
    if op == "const":
        return RationalFunction.const(tree[1], t)
    if op == "var":
        return RationalFunction.var(tree[1], t)
    if op == "add":
        return eval_tree_rf(tree[1], t) + eval_tree_rf(tree[2], t)
    if op == "sub":
        return eval_tree_rf(tree[1], t) - eval_tree_rf(tree[2], t)
    if op == "mul":
        return eval_tree_rf(tree[1], t) * eval_tree_rf(tree[2], t)
    if op == "neg":
        return -eval_tree_rf(tree[1], t)
    if op == "inv":
        f = eval_tree_rf(tree[1], t)
        return 1 / f
    if op == "pow":
        return eval_tree_rf(tree[1], t) ** tree[2]
    if op == "ddiff":
        # the jet ddiff carries the 1/2 factor
        f = eval_tree_rf(tree[1], t)
        return RationalFunction(t, sp.diff(f.expr, sym(tree[2])) / 2)
    if op == "twist":
        return eval_tree_rf(tree[1], t).twist(tree[2])
    raise ValueError(f"unknown tree op {op!r}")
