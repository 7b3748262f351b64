"""Derivative tableaux and the exact gl(n)-action on singular modules.

The engine evaluates every action coefficient on the parametrized line
through the seed: each designated pair (k_r, i_r, j_r) with common value
a_r becomes the jet pair (a_r + s_r, a_r - s_r), so the antisymmetrized
half-derivatives of the ambient formulas reduce to coefficient reads of
Laurent jets in s_1..s_t.  Vanishing-polynomial factors are the monomials
prod 2 s_r.

Coefficient jets are assembled from per-row factors cached by their local
data (permutation target and the shift entries of the rows they read), and
chained suffix/prefix products are cached as well, so long-range
generators reuse the work of shorter ones across the whole module.

Smoothness is asserted at runtime rather than assumed: any surviving pole
in a term that the theory promises to be smooth is an engine bug and is
surfaced as NotSmooth, never swallowed.
"""

from __future__ import annotations

import itertools
import random

from .coefficients import TableauPoint, e_coeff, gamma
from .errors import GTError, NotSmooth, PrecisionExhausted
from .jets import Jet, JetContext
from .oracle import RationalFunction, oracle_dd
from .scalars import RAT, fmt_rat, parse_rat, rat
from .tableaux import (
    BasisVector,
    canonicalize,
    epsilon,
    pattern_from_json,
    pattern_to_json,
    phi,
    phi_row_target,
)


class AuditMismatch(GTError):
    """Jet fast path and symbolic oracle disagreed on a coefficient."""


class ModuleElement:
    """Finite linear combination of canonical basis vectors."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for bv, c in dict(terms).items():
                if c != 0:
                    self.terms[bv] = RAT(c)

    @staticmethod
    def zero():
        return ModuleElement()

    @staticmethod
    def basis(bv, coeff=1):
        return ModuleElement({bv: rat(coeff)})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for bv, c in other.terms.items():
            acc = out.get(bv, 0) + c
            if acc == 0:
                out.pop(bv, None)
            else:
                out[bv] = acc
        me = ModuleElement.zero()
        me.terms = out
        return me

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = rat(c)
        if c == 0:
            return ModuleElement()
        me = ModuleElement.zero()
        me.terms = {bv: v * c for bv, v in self.terms.items()}
        return me

    def coeff(self, bv):
        return self.terms.get(bv, RAT(0))

    def support(self):
        return set(self.terms)

    def __eq__(self, other):
        return isinstance(other, ModuleElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "ModuleElement(0)"
        bits = [
            f"{fmt_rat(c)}*D{sorted(bv.iset)}T{list(map(list, bv.z.rows))}"
            for bv, c in sorted(
                self.terms.items(), key=lambda it: (sorted(it[0].iset), it[0].z.rows)
            )
        ]
        return " + ".join(bits)

    def to_json(self):
        out = []
        for bv, c in sorted(
            self.terms.items(), key=lambda it: (sorted(it[0].iset), it[0].z.rows)
        ):
            out.append(
                {
                    "I": sorted(bv.iset),
                    "z": pattern_to_json(bv.z),
                    "coeff": fmt_rat(c),
                }
            )
        return out

    @staticmethod
    def from_json(doc, n=None):
        terms = {}
        for item in doc:
            bv = BasisVector(
                frozenset(int(r) for r in item["I"]),
                pattern_from_json(item["z"], n),
            )
            terms[bv] = terms.get(bv, 0) + parse_rat(item["coeff"])
        return ModuleElement(terms)


class AuditConfig:
    """Randomized cross-checking of jet coefficients against the oracle."""

    def __init__(self, rate=0.01, seed=0):
        self.rate = rate
        self.rng = random.Random(seed)
        self.checked = 0
        self.failed = 0


def commutator(k, l, r, s):
    """[E_kl, E_rs] as a list of (coefficient, generator) pairs."""
    out = []
    if l == r:
        out.append((1, (k, s)))
    if s == k:
        out.append((-1, (r, l)))
    return out


def c_generator_words(m, k):
    """The commuting generator as monomial words in the E_ij (rightmost first)."""
    words = []
    for tup in itertools.product(range(1, m + 1), repeat=k):
        word = tuple((tup[idx], tup[(idx + 1) % k]) for idx in range(k))
        words.append((1, word))
    return words


class SingularModule:
    """Action engine for one seed tableau.

    Caches single-generator actions per canonical basis vector, per-row
    coefficient factors, and their chained products; all caches key on the
    truncation order so the automatic precision retry cannot mix partial
    results.
    """

    def __init__(self, seed, order=6, audit=None):
        self.seed = seed
        self.order = order
        self.audit = audit
        self._act_cache = {}
        self._factor_cache = {}
        self._phi_cache = {}
        self._ctx_cache = {}
        t = seed.t
        self._jsets = [
            frozenset(c)
            for size in range(t + 1)
            for c in itertools.combinations(range(1, t + 1), size)
        ]
        self._sigma_all = frozenset(range(1, t + 1))
        self._halfpow = [rat(1, 2**m) for m in range(t + 1)]
        # position -> (pair index, sign of the jet direction)
        self._pair_pos = {}
        for r in range(1, t + 1):
            k, i, j = seed.pair(r)
            self._pair_pos[(k, i)] = (r, 1)
            self._pair_pos[(k, j)] = (r, -1)

    # -- contexts and symbolized points --------------------------------------

    def context(self, order=None):
        order = order or self.order
        ctx = self._ctx_cache.get(order)
        if ctx is None:
            ctx = JetContext(self.seed.t, order)
            self._ctx_cache[order] = ctx
        return ctx

    def _entry_jet(self, i, j, z, ctx):
        val = self.seed.entry(i, j) + (z.entry(i, j) if z is not None else 0)
        hit = self._pair_pos.get((i, j))
        coeffs = {}
        if val != 0:
            coeffs[ctx.zero_exp] = RAT(val)
        if hit is not None:
            r, sgn = hit
            exp = tuple(1 if u == r else 0 for u in range(1, ctx.t + 1))
            coeffs[exp] = RAT(sgn)
        return Jet._raw(ctx, coeffs, (ctx.order,) * ctx.t)

    def symbolize(self, z=None, order=None):
        """Jet-valued point of x + z on the parametrized line through the seed."""
        ctx = self.context(order)
        return TableauPoint(
            self.seed.n,
            {
                (i, j): self._entry_jet(i, j, z, ctx)
                for i in range(1, self.seed.n + 1)
                for j in range(1, i + 1)
            },
        )

    def oracle_point(self, z=None):
        """The same point with symbolic rational-function entries."""
        seed = self.seed
        t = seed.t
        values = {}
        for i in range(1, seed.n + 1):
            for j in range(1, i + 1):
                shift = 0 if z is None else z.entry(i, j)
                values[(i, j)] = RationalFunction.const(seed.entry(i, j) + shift, t)
        for r in range(1, t + 1):
            k, i, j = seed.pair(r)
            s = RationalFunction.var(r, t)
            values[(k, i)] = values[(k, i)] + s
            values[(k, j)] = values[(k, j)] - s
        return TableauPoint(seed.n, values)

    def p_jet(self, rows, order=None):
        """The vanishing monomial prod_{r in rows} 2 s_r as a jet."""
        ctx = self.context(order)
        out = Jet.const(1, ctx)
        for r in rows:
            out = out * (2 * Jet.var(r, ctx))
        return out

    def p_symbolic(self, rows):
        out = RationalFunction.const(1, self.seed.t)
        for r in rows:
            out = out * (2 * RationalFunction.var(r, self.seed.t))
        return out

    # -- divided-difference extraction ----------------------------------------

    def dd_extract(self, f, rows):
        """D^v over the given pair indices: iterated half-derivatives, read at 0."""
        for r in rows:
            f = f.ddiff(r)
        return f.read()

    def divided_difference(self, f, rows):
        """Alternating twist sum divided by the vanishing monomial."""
        ctx_rows = list(rows)
        total = None
        for size in range(len(ctx_rows) + 1):
            for combo in itertools.combinations(ctx_rows, size):
                term = f.twist(combo)
                if size % 2:
                    term = -term
                total = term if total is None else total + term
        if total is None:
            total = f
        pfac = Jet.const(1, f.ctx)
        for r in ctx_rows:
            pfac = pfac * (2 * Jet.var(r, f.ctx))
        return total * pfac.reciprocal()

    # -- cached per-row coefficient factors ------------------------------------

    def _phis(self, r, s):
        key = (r, s)
        if key not in self._phi_cache:
            self._phi_cache[key] = phi(self.seed.n, r, s)
        return self._phi_cache[key]

    def _zslice(self, z, a, b):
        lo = max(1, a)
        hi = min(self.seed.n - 1, b)
        return tuple(z.rows[i - 1] for i in range(lo, hi + 1))

    def _head_raise(self, s, target, z, ctx):
        """-(row-(s-1) head factor) of a raising coefficient ending at row s."""
        key = ("HR", s, target, self._zslice(z, s - 1, s), ctx.order)
        hit = self._factor_cache.get(key)
        if hit is None:
            w = self._entry_jet
            head = w(s - 1, target, z, ctx)
            num = Jet.const(-1, ctx)
            for j in range(1, s + 1):
                num = num * (head - w(s, j, z, ctx))
            for p in range(1, s):
                if p != target:
                    num = num / (head - w(s - 1, p, z, ctx))
            hit = num
            self._factor_cache[key] = hit
        return hit

    def _tail_raise(self, j, tj, tj1, z, ctx):
        """Row-j link of a raising chain; reads rows j and j+1."""
        key = ("TR", j, tj, tj1, self._zslice(z, j, j + 1), ctx.order)
        hit = self._factor_cache.get(key)
        if hit is None:
            w = self._entry_jet
            head = w(j, tj, z, ctx)
            num = Jet.const(1, ctx)
            for p in range(1, j + 2):
                if p != tj1:
                    num = num * (head - w(j + 1, p, z, ctx))
            for p in range(1, j + 1):
                if p != tj:
                    num = num / (head - w(j, p, z, ctx))
            hit = num
            self._factor_cache[key] = hit
        return hit

    def _suffix_raise(self, j, s, targets, z, ctx):
        """Product of the raising chain from row j up: e_{j,s} up to sign."""
        key = ("SR", j, s, targets, self._zslice(z, j, s), ctx.order)
        hit = self._factor_cache.get(key)
        if hit is None:
            if j == s - 1:
                hit = self._head_raise(s, targets[0], z, ctx)
            else:
                hit = self._suffix_raise(j + 1, s, targets[1:], z, ctx) * \
                    self._tail_raise(j, targets[0], targets[1], z, ctx)
            self._factor_cache[key] = hit
        return hit

    def _head_lower(self, s, target, z, ctx):
        """Row-s head factor of a lowering coefficient."""
        key = ("HL", s, target, self._zslice(z, s - 1, s), ctx.order)
        hit = self._factor_cache.get(key)
        if hit is None:
            w = self._entry_jet
            head = w(s, target, z, ctx)
            num = Jet.const(1, ctx)
            for j in range(1, s):
                num = num * (head - w(s - 1, j, z, ctx))
            for p in range(1, s + 1):
                if p != target:
                    num = num / (head - w(s, p, z, ctx))
            hit = num
            self._factor_cache[key] = hit
        return hit

    def _tail_lower(self, j, tjm1, tjm2, z, ctx):
        """Link of a lowering chain for step j; reads rows j-2 and j-1."""
        key = ("TL", j, tjm1, tjm2, self._zslice(z, j - 2, j - 1), ctx.order)
        hit = self._factor_cache.get(key)
        if hit is None:
            w = self._entry_jet
            head = w(j - 1, tjm1, z, ctx)
            num = Jet.const(1, ctx)
            for p in range(1, j - 1):
                if p != tjm2:
                    num = num * (head - w(j - 2, p, z, ctx))
            for p in range(1, j):
                if p != tjm1:
                    num = num / (head - w(j - 1, p, z, ctx))
            hit = num
            self._factor_cache[key] = hit
        return hit

    def _prefix_lower(self, m, s, targets, z, ctx):
        """Product of the lowering chain: e_{m,s} for targets on rows s..m-1."""
        key = ("PL", m, s, targets, self._zslice(z, s - 1, m - 1), ctx.order)
        hit = self._factor_cache.get(key)
        if hit is None:
            if m == s + 1:
                hit = self._head_lower(s, targets[0], z, ctx)
            else:
                hit = self._prefix_lower(m - 1, s, targets[:-1], z, ctx) * \
                    self._tail_lower(m, targets[-1], targets[-2], z, ctx)
            self._factor_cache[key] = hit
        return hit

    def _e_jet(self, r, s, sigma, z, ctx):
        """Coefficient jet of E_rs at sigma(x + z), assembled from row factors."""
        if r == s:
            w = self._entry_jet
            out = Jet.const(r - 1, ctx)
            for i in range(1, r + 1):
                out = out + w(r, i, z, ctx)
            for i in range(1, r):
                out = out - w(r - 1, i, z, ctx)
            return out
        targets = tuple(
            phi_row_target(sigma, m) for m in range(min(r, s), max(r, s))
        )
        if r < s:
            return self._suffix_raise(r, s, targets, z, ctx)
        if s + 1 == r:
            return self._head_lower(s, targets[0], z, ctx)
        return self._prefix_lower(r, s, targets, z, ctx)

    def e_jet_direct(self, r, s, sigma, z, order=None):
        """Reference route: permute the full symbolized point, then evaluate.

        Exists to cross-check the factor-cache assembly; not used by act().
        """
        point = self.symbolize(z, order).permuted(sigma)
        return e_coeff(point, r, s)

    # -- the action --------------------------------------------------------------

    def act(self, r, s, bv):
        """Exact action of the generator E_rs on a canonical basis vector."""
        key = (r, s, bv)
        hit = self._act_cache.get(key)
        if hit is None:
            hit = self._act_retrying(r, s, bv.iset, bv.z)
            self._act_cache[key] = hit
        return hit

    def act_raw(self, r, s, iset, z):
        """Action on a not-necessarily-canonical derivative tableau."""
        iset = frozenset(iset)
        for u in iset:
            k, i, j = self.seed.pair(u)
            if z.entry(k, i) == z.entry(k, j):
                return ModuleElement.zero()  # the vector itself is zero
        return self._act_retrying(r, s, iset, z)

    def _act_retrying(self, r, s, iset, z):
        try:
            return self._act_compute(r, s, iset, z, self.order)
        except PrecisionExhausted:
            widened = min(self.order * 2, 64)
            return self._act_compute(r, s, iset, z, widened)

    def _act_compute(self, r, s, iset, z, order):
        seed = self.seed
        t = seed.t
        ctx = self.context(order)
        eps = epsilon(seed.n, r, s)
        p_rows = sorted(self._sigma_all - iset)
        p_exp = tuple(1 if u in self._sigma_all - iset else 0 for u in range(1, t + 1))
        p_coeff = rat(2 ** len(p_rows))
        out = {}
        for sigma_idx, sigma in enumerate(self._phis(r, s)):
            zq = z + sigma.act_pattern(eps)
            ej = self._e_jet(r, s, sigma, z, ctx)
            pe = ej.shifted(p_exp, p_coeff)
            if pe.has_negative_exponents():
                raise NotSmooth(
                    f"non-smooth action term: E_{r}{s}, sigma #{sigma_idx}, "
                    f"I={sorted(iset)}, z={z!r}"
                )
            for jset in self._jsets:
                deriv = self._sigma_all - jset
                exps = tuple(1 if u in deriv else 0 for u in range(1, t + 1))
                if any(e > v for e, v in zip(exps, pe.validity)):
                    raise PrecisionExhausted(
                        f"validity {pe.validity} below read {exps}"
                    )
                c = pe.coeffs.get(exps)
                if not c:
                    continue
                c = c * self._halfpow[len(deriv)]
                if self.audit is not None:
                    self._audit_coefficient(
                        r, s, sigma_idx, z, p_rows, deriv, c
                    )
                sign, cbv = canonicalize(seed, jset, zq)
                if sign == 0:
                    continue
                acc = out.get(cbv, 0) + sign * c
                if acc == 0:
                    out.pop(cbv, None)
                else:
                    out[cbv] = acc
        me = ModuleElement.zero()
        me.terms = {bv: RAT(c) for bv, c in out.items()}
        return me

    def _audit_coefficient(self, r, s, sigma_idx, z, p_rows, deriv, jet_value):
        aud = self.audit
        if aud.rng.random() >= aud.rate:
            return
        sigma = self._phis(r, s)[sigma_idx]
        point = self.oracle_point(z).permuted(sigma)
        expr = self.p_symbolic(p_rows) * e_coeff(point, r, s)
        sym_value = oracle_dd(expr, sorted(deriv))
        aud.checked += 1
        if sym_value != jet_value:
            aud.failed += 1
            raise AuditMismatch(
                f"E_{r}{s} sigma #{sigma_idx} deriv {sorted(deriv)}: "
                f"jet {jet_value} vs oracle {sym_value}"
            )

    # -- the commuting family -----------------------------------------------------

    def act_gamma(self, m, k, bv):
        """Action of the degree-k commuting generator of level m."""
        try:
            return self._act_gamma_compute(m, k, bv, self.order)
        except PrecisionExhausted:
            return self._act_gamma_compute(m, k, bv, min(self.order * 2, 64))

    def _act_gamma_compute(self, m, k, bv, order):
        seed = self.seed
        iset, z = bv
        g = gamma(self.symbolize(z, order), m, k)
        if g.has_negative_exponents():
            raise NotSmooth(f"row-sum jet kept a pole: gamma_{m}{k} at z={z!r}")
        out = {}
        for jset in self._jsets:
            if not jset <= iset:
                continue
            exps = tuple(1 if u in jset else 0 for u in range(1, seed.t + 1))
            if any(e > v for e, v in zip(exps, g.validity)):
                raise PrecisionExhausted(f"validity {g.validity} below read {exps}")
            c = g.coeffs.get(exps)
            if not c:
                continue
            c = c * self._halfpow[len(jset)]
            sign, cbv = canonicalize(seed, iset - jset, z)
            if sign == 0:
                continue
            acc = out.get(cbv, 0) + sign * c
            if acc == 0:
                out.pop(cbv, None)
            else:
                out[cbv] = acc
        return ModuleElement(out)

    def gamma_value(self, m, k, z):
        """Scalar eigenvalue: the row polynomial at the rational point v + z."""
        return gamma(TableauPoint.from_seed(self.seed, z), m, k)

    # -- linear extension ------------------------------------------------------------

    def act_element(self, r, s, elem):
        out = ModuleElement.zero()
        for bv, c in elem:
            out = out + self.act(r, s, bv).scale(c)
        return out

    def act_word(self, word, elem):
        """Apply an ordered product of generators; the rightmost acts first."""
        for r, s in reversed(list(word)):
            elem = self.act_element(r, s, elem)
            if elem.is_zero():
                return elem
        return elem

    def act_linear(self, combo, elem):
        """combo: iterable of (coefficient, word)."""
        out = ModuleElement.zero()
        for c, word in combo:
            out = out + self.act_word(word, elem).scale(c)
        return out

    def act_gamma_element(self, m, k, elem):
        out = ModuleElement.zero()
        for bv, c in elem:
            out = out + self.act_gamma(m, k, bv).scale(c)
        return out

    def weight(self, bv):
        """Exact diagonal eigenvalues (every basis vector is a weight vector)."""
        point = TableauPoint.from_seed(self.seed, bv.z)
        return tuple(e_coeff(point, i, i) for i in range(1, self.seed.n + 1))
