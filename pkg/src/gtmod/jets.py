"""Truncated multivariate Laurent jets over exact rationals.

A jet represents a rational function restricted to the singular directions
s_1..s_t, expanded as a Laurent series truncated at exponent K per
variable.  Coefficients are exact rationals; a per-variable validity bound
records up to which exponent the stored coefficients are guaranteed exact.
Reads beyond validity raise PrecisionExhausted instead of silently
returning truncated garbage, so exactness is never lost quietly.

Stored terms above the validity bound may be contaminated by truncation
(they are unreachable through read()); terms at or below validity are
always exact.  Pole orders stay finite, and evaluation at the origin
refuses to proceed while any negative exponent survives.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ContextMismatch, NotInvertible, NotSmooth, PrecisionExhausted
from .scalars import HALF, RAT

_RATLIKE = (int, Fraction, type(RAT(0)))


@dataclass(frozen=True)
class JetContext:
    """Number of singular directions and the truncation order."""

    t: int
    order: int = 6

    def __post_init__(self):
        if self.t < 0:
            raise ValueError("t must be >= 0")
        if self.order < 2:
            raise ValueError("truncation order must be >= 2")

    @property
    def zero_exp(self):
        return (0,) * self.t

    def var_names(self):
        return tuple(f"s{r}" for r in range(1, self.t + 1))

    def widened(self, factor=2, cap=64):
        return JetContext(self.t, min(self.order * factor, cap))


class Jet:
    """Sparse Laurent jet: {exponent tuple -> rational}, with validity."""

    __slots__ = ("ctx", "coeffs", "validity", "_lows")

    def __init__(self, ctx, coeffs, validity=None):
        self.ctx = ctx
        if validity is None:
            validity = (ctx.order,) * ctx.t
        self.coeffs = {exp: c for exp, c in coeffs.items() if c != 0}
        self.validity = tuple(validity)
        self._lows = None

    @classmethod
    def _raw(cls, ctx, coeffs, validity):
        """Internal constructor: coeffs already zero-free."""
        self = object.__new__(cls)
        self.ctx = ctx
        self.coeffs = coeffs
        self.validity = validity
        self._lows = None
        return self

    # -- constructors ---------------------------------------------------

    @staticmethod
    def const(c, ctx):
        c = RAT(c)
        if c == 0:
            return Jet._raw(ctx, {}, (ctx.order,) * ctx.t)
        return Jet._raw(ctx, {ctx.zero_exp: c}, (ctx.order,) * ctx.t)

    @staticmethod
    def var(r, ctx):
        """The jet of the coordinate s_r, 1 <= r <= t."""
        if not 1 <= r <= ctx.t:
            raise IndexError(f"variable index {r} out of range 1..{ctx.t}")
        exp = tuple(1 if i == r - 1 else 0 for i in range(ctx.t))
        return Jet._raw(ctx, {exp: RAT(1)}, (ctx.order,) * ctx.t)

    # -- structure ------------------------------------------------------

    @property
    def is_zero(self):
        return not self.coeffs

    def lows(self):
        """Per-variable lowest trusted exponent; None when no trusted terms.

        Only within-validity terms count: anything above the bound may be
        truncation garbage and must not influence validity arithmetic or
        leading-term detection.
        """
        if self._lows is None and self.coeffs:
            t = self.ctx.t
            v = self.validity
            full = all(b == self.ctx.order for b in v)
            lo = [None] * t
            for exp in self.coeffs:
                if not full:
                    trusted = True
                    for i in range(t):
                        if exp[i] > v[i]:
                            trusted = False
                            break
                    if not trusted:
                        continue
                for i in range(t):
                    e = exp[i]
                    if lo[i] is None or e < lo[i]:
                        lo[i] = e
            if lo and lo[0] is None and all(x is None for x in lo):
                return None
            self._lows = tuple(lo)
        return self._lows

    def lowest_exponent(self, r):
        lo = self.lows()
        return None if lo is None else lo[r - 1]

    def has_negative_exponents(self):
        lo = self.lows()
        return lo is not None and any(e < 0 for e in lo)

    def depends_on(self, r):
        return any(exp[r - 1] != 0 for exp in self.coeffs)

    def _check_ctx(self, other):
        if self.ctx != other.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")

    def _coerce(self, other):
        if isinstance(other, Jet):
            self._check_ctx(other)
            return other
        if isinstance(other, _RATLIKE):
            return Jet.const(other, self.ctx)
        return NotImplemented

    def _trusted(self):
        """Coefficients at or below the validity bound (exact by contract)."""
        v = self.validity
        out = {}
        for exp, c in self.coeffs.items():
            ok = True
            for i, e in enumerate(exp):
                if e > v[i]:
                    ok = False
                    break
            if ok:
                out[exp] = c
        return out

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.coeffs:
            validity = tuple(map(min, zip(self.validity, other.validity))) \
                if self.ctx.t else ()
            return Jet._raw(self.ctx, dict(self.coeffs), validity)
        coeffs = dict(self.coeffs)
        for exp, c in other.coeffs.items():
            acc = coeffs.get(exp)
            if acc is None:
                coeffs[exp] = c
            else:
                acc = acc + c
                if acc == 0:
                    del coeffs[exp]
                else:
                    coeffs[exp] = acc
        validity = tuple(map(min, zip(self.validity, other.validity)))
        return Jet._raw(self.ctx, coeffs, validity)

    __radd__ = __add__

    def __neg__(self):
        return Jet._raw(
            self.ctx, {e: -c for e, c in self.coeffs.items()}, self.validity
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scaled(self, c):
        c = RAT(c)
        if c == 0:
            return Jet._raw(self.ctx, {}, self.validity)
        return Jet._raw(
            self.ctx, {e: v * c for e, v in self.coeffs.items()}, self.validity
        )

    def shifted(self, exp_shift, factor=1):
        """Multiply by factor * s^exp_shift (a monomial), exactly."""
        K = self.ctx.order
        coeffs = {}
        for exp, c in self.coeffs.items():
            e = tuple(a + b for a, b in zip(exp, exp_shift))
            ok = True
            for x in e:
                if x > K:
                    ok = False
                    break
            if ok:
                coeffs[e] = c * factor
        validity = tuple(
            min(v + d, K) for v, d in zip(self.validity, exp_shift)
        )
        return Jet._raw(self.ctx, coeffs, validity)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            # zero (up to its validity) times anything: the unknown tails
            # bound the result validity
            K = self.ctx.order
            validity = []
            zero, nz = (self, other) if not a else (other, self)
            lo = nz.lows()
            for i in range(self.ctx.t):
                if lo is None:
                    validity.append(
                        min(K, zero.validity[i] + nz.validity[i] + 1)
                    )
                else:
                    validity.append(min(K, lo[i] + zero.validity[i]))
            return Jet._raw(self.ctx, {}, tuple(validity))
        if len(a) > len(b):
            a, b = b, a
            first, second = other, self
        else:
            first, second = self, other
        if len(a) == 1:
            ((exp, c),) = a.items()
            out = second.shifted(exp, c)
            # tighten validity per the general rule
            K = self.ctx.order
            lo_b = second.lows()
            validity = tuple(
                min(
                    K,
                    exp[i] + second.validity[i],
                    lo_b[i] + first.validity[i],
                )
                for i in range(self.ctx.t)
            )
            return Jet._raw(out.ctx, out.coeffs, validity)
        K = self.ctx.order
        t = self.ctx.t
        lo_f, lo_g = first.lows(), second.lows()
        vf, vg = first.validity, second.validity
        validity = tuple(
            min(K, lo_f[i] + vg[i], lo_g[i] + vf[i]) for i in range(t)
        )
        coeffs = {}
        items_b = list(b.items())
        for e1, c1 in a.items():
            for e2, c2 in items_b:
                exp = tuple(x + y for x, y in zip(e1, e2))
                ok = True
                for x in exp:
                    if x > K:
                        ok = False
                        break
                if not ok:
                    continue
                acc = coeffs.get(exp)
                if acc is None:
                    coeffs[exp] = c1 * c2
                else:
                    acc = acc + c1 * c2
                    if acc == 0:
                        del coeffs[exp]
                    else:
                        coeffs[exp] = acc
        return Jet._raw(self.ctx, coeffs, validity)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("jet powers must be nonnegative integers")
        out = Jet.const(1, self.ctx)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def reciprocal(self):
        """Exact inverse in the truncated Laurent ring.

        Requires the combined per-variable minimal exponent vector to be
        attained with a nonzero coefficient (a unit times a monomial).
        """
        if not self.coeffs:
            raise ZeroDivisionError("inverse of the zero jet")
        t, K = self.ctx.t, self.ctx.order
        m = self.lows()
        lead = self.coeffs.get(m)
        if not lead:
            raise NotInvertible(
                "lowest-order part is not a single monomial; jet not a unit"
            )
        inv_validity = tuple(
            min(v - 2 * mr, K) for v, mr in zip(self.validity, m)
        )
        lead_inv = 1 / lead
        # h: the shifted tail scaled so the unit part is 1 + h, h(0) = 0
        h = {}
        for exp, c in self.coeffs.items():
            e = tuple(a - b for a, b in zip(exp, m))
            if e != self.ctx.zero_exp:
                h[e] = c * lead_inv
        # geometric series sum (-h)^j on raw dicts, truncating above K
        acc = {self.ctx.zero_exp: RAT(1)}
        term = {self.ctx.zero_exp: RAT(1)}
        while term:
            nxt = {}
            for e1, c1 in term.items():
                for e2, c2 in h.items():
                    exp = tuple(x + y for x, y in zip(e1, e2))
                    ok = True
                    for x in exp:
                        if x > K:
                            ok = False
                            break
                    if not ok:
                        continue
                    acc_c = nxt.get(exp)
                    prod = c1 * c2
                    if acc_c is None:
                        nxt[exp] = -prod
                    else:
                        acc_c = acc_c - prod
                        if acc_c == 0:
                            del nxt[exp]
                        else:
                            nxt[exp] = acc_c
            term = nxt
            for exp, c in term.items():
                acc_c = acc.get(exp)
                if acc_c is None:
                    acc[exp] = c
                else:
                    acc_c = acc_c + c
                    if acc_c == 0:
                        del acc[exp]
                    else:
                        acc[exp] = acc_c
        coeffs = {}
        for exp, c in acc.items():
            e = tuple(a - b for a, b in zip(exp, m))
            ok = True
            for x in e:
                if x > K:
                    ok = False
                    break
            if ok:
                coeffs[e] = c * lead_inv
        return Jet._raw(self.ctx, coeffs, inv_validity)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    # -- calculus -------------------------------------------------------

    def ddiff(self, r):
        """Half-derivative (d/ds_r)/2, exact on every Laurent term."""
        if not 1 <= r <= self.ctx.t:
            raise IndexError(f"variable index {r} out of range 1..{self.ctx.t}")
        i = r - 1
        coeffs = {}
        for exp, c in self.coeffs.items():
            if exp[i] == 0:
                continue
            e = exp[:i] + (exp[i] - 1,) + exp[i + 1 :]
            coeffs[e] = c * exp[i] * HALF
        validity = list(self.validity)
        validity[i] -= 1
        return Jet._raw(self.ctx, coeffs, tuple(validity))

    def twist(self, rows):
        """Substitute s_r -> -s_r for every r in rows (the tau_r twist)."""
        idx = tuple(r - 1 for r in rows)
        coeffs = {}
        for exp, c in self.coeffs.items():
            flips = 0
            for i in idx:
                flips += exp[i]
            coeffs[exp] = -c if flips % 2 else c
        return Jet._raw(self.ctx, coeffs, self.validity)

    def read(self, exponents=None):
        """Exact coefficient at an exponent vector.

        Reading at the origin (all-zero exponents) is evaluation at s = 0
        and refuses with NotSmooth while any negative exponent survives.
        """
        if exponents is None:
            exponents = self.ctx.zero_exp
        exponents = tuple(exponents)
        if len(exponents) != self.ctx.t:
            raise ValueError("exponent vector has wrong length")
        for e, v in zip(exponents, self.validity):
            if e > v:
                raise PrecisionExhausted(
                    f"requested exponent {exponents} beyond validity {self.validity}"
                )
        if all(e == 0 for e in exponents) and self.has_negative_exponents():
            raise NotSmooth("evaluation at the origin with a surviving pole")
        return RAT(self.coeffs.get(exponents, 0))

    # -- comparison / display --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, _RATLIKE):
            other = Jet.const(other, self.ctx)
        if not isinstance(other, Jet):
            return NotImplemented
        return self.ctx == other.ctx and self._trusted() == other._trusted()

    def __hash__(self):
        return hash((self.ctx, frozenset(self._trusted().items())))

    def __repr__(self):
        if self.is_zero:
            return "Jet(0)"
        names = self.ctx.var_names()
        parts = []
        for exp in sorted(self.coeffs):
            term = str(self.coeffs[exp])
            mono = "*".join(
                f"{names[i]}^{e}" if e != 1 else names[i]
                for i, e in enumerate(exp)
                if e != 0
            )
            parts.append(f"{term}*{mono}" if mono else term)
        return "Jet(" + " + ".join(parts) + ")"
