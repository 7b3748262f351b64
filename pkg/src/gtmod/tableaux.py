"""Tableau combinatorics: seeds, integer patterns, the row-permutation group,
transposition families, canonical derivative-basis vectors and their sign
relations.

Rows are indexed 1..n with row i holding i entries; row n is the top row.
Integer patterns live on rows 1..n-1 (the top row never shifts).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    BAD_DECLARATION,
    HIDDEN_SINGULAR_PAIR,
    SINGULAR_TRIPLE,
    UNEQUAL_PAIR,
    SeedValidationError,
)
from .scalars import RAT, fmt_rat, is_integer, rat


class IntegerPattern:
    """Immutable integer shift z on rows 1..n-1."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        for i, row in enumerate(rows, start=1):
            if len(row) != i:
                raise ValueError(f"row {i} must have {i} entries")
        object.__setattr__(self, "rows", rows)

    @staticmethod
    def zero(n):
        return IntegerPattern(tuple((0,) * i for i in range(1, n)))

    @property
    def n(self):
        return len(self.rows) + 1

    def entry(self, i, j):
        if i == self.n:
            return 0
        return self.rows[i - 1][j - 1]

    def with_entry(self, i, j, value):
        rows = [list(r) for r in self.rows]
        rows[i - 1][j - 1] = int(value)
        return IntegerPattern(rows)

    def __add__(self, other):
        return IntegerPattern(
            tuple(tuple(a + b for a, b in zip(r1, r2))
                  for r1, r2 in zip(self.rows, other.rows))
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return IntegerPattern(tuple(tuple(-x for x in r) for r in self.rows))

    def swap(self, row, a, b):
        rows = [list(r) for r in self.rows]
        rows[row - 1][a - 1], rows[row - 1][b - 1] = (
            rows[row - 1][b - 1],
            rows[row - 1][a - 1],
        )
        return IntegerPattern(rows)

    def is_zero(self):
        return all(x == 0 for row in self.rows for x in row)

    def __eq__(self, other):
        return isinstance(other, IntegerPattern) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"IntegerPattern({list(map(list, self.rows))})"


def delta(n, i, j):
    """The elementary pattern with a single 1 at (i, j), 1 <= j <= i <= n-1."""
    if not 1 <= j <= i <= n - 1:
        raise ValueError(f"delta index ({i},{j}) out of range for n={n}")
    z = IntegerPattern.zero(n)
    return z.with_entry(i, j, 1)


def epsilon(n, r, s):
    """Shift pattern attached to the generator E_rs.

    For r < s it is delta(r,1)+...+delta(s-1,1); antisymmetric in (r, s);
    zero on the diagonal.
    """
    if not (1 <= r <= n and 1 <= s <= n):
        raise ValueError("epsilon indices out of range")
    if r == s:
        return IntegerPattern.zero(n)
    if r < s:
        z = IntegerPattern.zero(n)
        for m in range(r, s):
            z = z + delta(n, m, 1)
        return z
    return -epsilon(n, s, r)


class GroupElement:
    """One permutation per row: sigma[i] in S_i, i = 1..n."""

    __slots__ = ("perms",)

    def __init__(self, perms):
        perms = tuple(tuple(p) for p in perms)
        for i, p in enumerate(perms, start=1):
            if sorted(p) != list(range(1, i + 1)):
                raise ValueError(f"row {i} permutation invalid: {p}")
        object.__setattr__(self, "perms", perms)

    @staticmethod
    def identity(n):
        return GroupElement(tuple(tuple(range(1, i + 1)) for i in range(1, n + 1)))

    @staticmethod
    def row_transposition(n, row, a, b):
        e = list(list(range(1, i + 1)) for i in range(1, n + 1))
        e[row - 1][a - 1], e[row - 1][b - 1] = b, a
        return GroupElement(e)

    @property
    def n(self):
        return len(self.perms)

    def apply(self, i, p):
        """Image sigma[i](p)."""
        return self.perms[i - 1][p - 1]

    def inverse(self):
        out = []
        for p in self.perms:
            inv = [0] * len(p)
            for pos, img in enumerate(p, start=1):
                inv[img - 1] = pos
            out.append(tuple(inv))
        return GroupElement(out)

    def __mul__(self, other):
        """Composition (self o other) rowwise."""
        if self.n != other.n:
            raise ValueError("rank mismatch")
        return GroupElement(
            tuple(
                tuple(self.apply(i, other.apply(i, p)) for p in range(1, i + 1))
                for i in range(1, self.n + 1)
            )
        )

    def is_identity(self):
        return all(p == tuple(range(1, i + 1)) for i, p in enumerate(self.perms, 1))

    def act_entries(self, n, getter):
        """Permuted entry lookup: result(i, p) = getter(i, sigma^{-1}[i](p))."""
        inv = self.inverse()
        return lambda i, p: getter(i, inv.apply(i, p))

    def act_pattern(self, z):
        if z.n != self.n:
            raise ValueError("rank mismatch")
        inv = self.inverse()
        return IntegerPattern(
            tuple(
                tuple(z.entry(i, inv.apply(i, p)) for p in range(1, i + 1))
                for i in range(1, z.n)
            )
        )

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.perms == other.perms

    def __hash__(self):
        return hash(self.perms)

    def __repr__(self):
        return f"GroupElement({list(map(list, self.perms))})"


def phi(n, k, l):
    """Deterministic enumeration of the transposition family Phi_{kl}.

    For k < l this is the product over rows m = k..l-1 of the transpositions
    (1, i), i = 1..m; symmetric in (k, l); the diagonal family is {Id}.
    Enumeration order is lexicographic in the tuple of row targets.
    """
    if not (1 <= k <= n and 1 <= l <= n):
        raise ValueError("phi indices out of range")
    lo, hi = min(k, l), max(k, l)
    if lo == hi:
        return [GroupElement.identity(n)]
    rows = range(lo, hi)
    out = []
    for targets in itertools.product(*[range(1, m + 1) for m in rows]):
        e = [list(range(1, i + 1)) for i in range(1, n + 1)]
        for m, target in zip(rows, targets):
            if target != 1:
                e[m - 1][0], e[m - 1][target - 1] = target, 1
        out.append(GroupElement(e))
    return out


def phi_row_target(sigma, u):
    """The i with sigma[u] = (1, i); equals 1 on identity rows."""
    return sigma.apply(u, 1)


class BasisVector(NamedTuple):
    """Canonical derivative-basis vector: the set of derived pairs and the shift."""

    iset: frozenset
    z: IntegerPattern

    def describe(self, seed):
        pairs = ",".join(str(r) for r in sorted(self.iset))
        return f"D[{pairs}] z={list(map(list, self.z.rows))}"


@dataclass(frozen=True)
class SeedTableau:
    """Fixed seed vector with equal-entry singular pairs, rows bottom-up."""

    n: int
    rows: tuple
    singular: tuple

    @property
    def t(self):
        return len(self.singular)

    def entry(self, i, j):
        return self.rows[i - 1][j - 1]

    def pair(self, r):
        """Designated triple (k_r, i_r, j_r), 1-based r."""
        return self.singular[r - 1]

    def pair_value(self, r):
        k, i, _ = self.pair(r)
        return self.entry(k, i)

    def sigma_set(self):
        return frozenset(range(1, self.t + 1))

    def pairs_in_row(self, k):
        return [r for r in range(1, self.t + 1) if self.pair(r)[0] == k]

    def point(self, z=None):
        """Plain rational entries of v + z."""
        out = {}
        for i in range(1, self.n + 1):
            for j in range(1, i + 1):
                shift = 0 if z is None else z.entry(i, j)
                out[(i, j)] = self.entry(i, j) + shift
        return out

    def tau(self, delta_set):
        """Product of the commuting designated-pair row transpositions."""
        g = GroupElement.identity(self.n)
        for r in sorted(delta_set):
            k, i, j = self.pair(r)
            g = g * GroupElement.row_transposition(self.n, k, i, j)
        return g


def _integrality_classes(row_values):
    """Partition positions of one row into classes with pairwise integer gaps."""
    classes = []
    for pos, val in enumerate(row_values, start=1):
        for cls in classes:
            if is_integer(val - row_values[cls[0] - 1]):
                cls.append(pos)
                break
        else:
            classes.append([pos])
    return classes


def validate_seed(n, rows, declared):
    """Check every seed invariant; collect all violations before raising.

    rows: bottom-up rational rows (row 1 first); declared: (k, i, j) triples.
    """
    rows = tuple(tuple(rat(x) for x in row) for row in rows)
    if len(rows) != n or any(len(row) != i for i, row in enumerate(rows, 1)):
        raise ValueError("tableau shape does not match n")
    declared = sorted(tuple(map(int, trip)) for trip in declared)
    violations = []
    declared_set = set()
    by_row = {}
    for k, i, j in declared:
        if not (2 <= k <= n - 1 and 1 <= i < j <= k):
            violations.append(
                (BAD_DECLARATION, f"declared pair ({k},{i},{j}) out of range")
            )
            continue
        for i2, j2 in by_row.get(k, []):
            if {i, j} & {i2, j2}:
                violations.append(
                    (BAD_DECLARATION,
                     f"row {k} pairs ({i},{j}) and ({i2},{j2}) overlap")
                )
        by_row.setdefault(k, []).append((i, j))
        declared_set.add((k, i, j))
        if rows[k - 1][i - 1] != rows[k - 1][j - 1]:
            violations.append(
                (UNEQUAL_PAIR,
                 f"declared pair ({k},{i},{j}) has entries "
                 f"{fmt_rat(rows[k - 1][i - 1])} != {fmt_rat(rows[k - 1][j - 1])}")
            )
    for k in range(2, n):
        classes = _integrality_classes(rows[k - 1])
        for cls in classes:
            if len(cls) >= 3:
                violations.append(
                    (SINGULAR_TRIPLE,
                     f"row {k} positions {cls} are pairwise integer-spaced")
                )
            elif len(cls) == 2:
                trip = (k, cls[0], cls[1])
                if trip not in declared_set:
                    violations.append(
                        (HIDDEN_SINGULAR_PAIR,
                         f"row {k} entries {cls[0]},{cls[1]} differ by an integer "
                         "but are not declared singular")
                    )
    if violations:
        raise SeedValidationError(violations)
    return SeedTableau(n=n, rows=rows, singular=tuple(declared))


def normalize_seed(n, raw_rows):
    """Split a raw index-<=2 point into the equal-pair seed and its shift.

    Keeps the j-entry of each detected pair and pushes the integer gap into
    the pattern: z0 at (k, i) is the raw difference, z0 at (k, j) is zero.
    """
    raw = tuple(tuple(rat(x) for x in row) for row in raw_rows)
    rows = [list(row) for row in raw]
    z0 = IntegerPattern.zero(n)
    singular = []
    violations = []
    for k in range(2, n):
        for cls in _integrality_classes(raw[k - 1]):
            if len(cls) >= 3:
                violations.append(
                    (SINGULAR_TRIPLE,
                     f"row {k} positions {cls} are pairwise integer-spaced")
                )
            elif len(cls) == 2:
                i, j = cls
                gap = raw[k - 1][i - 1] - raw[k - 1][j - 1]
                rows[k - 1][i - 1] = raw[k - 1][j - 1]
                z0 = z0.with_entry(k, i, int(gap))
                singular.append((k, i, j))
    if violations:
        raise SeedValidationError(violations)
    seed = validate_seed(n, rows, singular)
    return seed, z0


def canonicalize(seed, iset, z):
    """Normal form of the derivative tableau indexed by (iset, z).

    Returns (sign, BasisVector) with sign in {-1, +1}, or (0, None) when the
    sign relations force the vector to zero (a derived pair sitting on its
    critical hyperplane).
    """
    iset = frozenset(iset)
    sign = 1
    out = z
    for r in range(1, seed.t + 1):
        k, i, j = seed.pair(r)
        d = out.entry(k, i) - out.entry(k, j)
        if r in iset:
            if d == 0:
                return 0, None
            if d < 0:
                out = out.swap(k, i, j)
                sign = -sign
        else:
            if d > 0:
                out = out.swap(k, i, j)
    return sign, BasisVector(iset, out)


def critical_set(seed, z):
    """Pairs whose shifted entries coincide (tau_r-invariant directions)."""
    out = set()
    for r in range(1, seed.t + 1):
        k, i, j = seed.pair(r)
        if z.entry(k, i) == z.entry(k, j):
            out.add(r)
    return frozenset(out)


def d_order_leq(seed, b1, b2):
    """b1 precedes b2 in the derivative order: smaller index set, z up to swaps."""
    if not b1.iset <= b2.iset:
        return False
    z1, z2 = b1.z, b2.z
    for i in range(1, seed.n):
        for j in range(1, i + 1):
            if z1.entry(i, j) == z2.entry(i, j):
                continue
            matched = False
            for k, a, b in seed.singular:
                if k == i and j in (a, b):
                    a2 = b if j == a else a
                    if (z1.entry(i, j) == z2.entry(i, a2)
                            and z1.entry(i, a2) == z2.entry(i, j)):
                        matched = True
                        break
            if not matched:
                return False
    return True


@dataclass(frozen=True)
class Classification:
    is_generic: bool
    is_regular: bool
    is_standard: bool
    critical_count: int


def classify(seed, z):
    """Genericity, regularity and standardness of v + z, and its criticality."""
    w = seed.point(z)
    n = seed.n
    regular = True
    for i in range(2, n + 1):
        for j in range(1, i + 1):
            for jj in range(1, i):
                if is_integer(w[(i, j)] - w[(i - 1, jj)]):
                    regular = False
    standard = True
    for k in range(2, n + 1):
        for i in range(1, k):
            top, below = w[(k, i)], w[(k - 1, i)]
            if not (is_integer(top - below) and top - below >= 0):
                standard = False
            nxt = w[(k, i + 1)]
            if not (is_integer(below - nxt) and below - nxt > 0):
                standard = False
    return Classification(
        is_generic=(seed.t == 0),
        is_regular=regular,
        is_standard=standard,
        critical_count=len(critical_set(seed, z)),
    )


def tau_star(seed, r, sigma, k, l):
    """The starred transposition action on one member of Phi_{kl}."""
    kr, ir, jr = seed.pair(r)
    lo, hi = min(k, l), max(k, l)
    if lo == hi or not lo <= kr <= hi - 1:
        return sigma
    target = phi_row_target(sigma, kr)
    if target not in (ir, jr):
        return sigma
    tr = GroupElement.row_transposition(seed.n, kr, ir, jr)
    if 1 in (ir, jr):
        return tr * sigma
    return tr * sigma * tr


def tau_star_delta(seed, delta_set, sigma, k, l):
    for r in sorted(delta_set, reverse=True):
        sigma = tau_star(seed, r, sigma, k, l)
    return sigma


# -- JSON wire format --------------------------------------------------------


def seed_to_json(seed):
    """{"n", "rows" (top row first, 'p/q' strings), "singular"}."""
    rows_top_first = [
        [fmt_rat(x) for x in seed.rows[i - 1]] for i in range(seed.n, 0, -1)
    ]
    return {
        "n": seed.n,
        "rows": rows_top_first,
        "singular": [list(trip) for trip in seed.singular],
    }


def seed_from_json(doc):
    n = int(doc["n"])
    rows_top_first = doc["rows"]
    if len(rows_top_first) != n:
        raise ValueError("row count does not match n")
    rows = tuple(tuple(rat(x) for x in row) for row in reversed(rows_top_first))
    return validate_seed(n, rows, doc.get("singular", []))


def load_seed(path):
    with open(path) as fh:
        return seed_from_json(json.load(fh))


def dump_seed(seed, path):
    with open(path, "w") as fh:
        json.dump(seed_to_json(seed), fh, indent=1)
        fh.write("\n")


def pattern_to_json(z):
    """Rows top-first (row n-1 down to row 1), matching the tableau format."""
    return [list(row) for row in reversed(z.rows)]


def pattern_from_json(rows_top_first, n=None):
    rows = [list(map(int, row)) for row in reversed(list(rows_top_first))]
    z = IntegerPattern(rows)
    if n is not None and z.n != n:
        raise ValueError("pattern rank mismatch")
    return z
