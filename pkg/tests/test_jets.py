"""Laurent-jet kernel: examples, ring axioms, Leibniz, inverse round-trips."""

import random

import pytest

from gtmod.errors import ContextMismatch, NotInvertible, NotSmooth, PrecisionExhausted
from gtmod.jets import Jet, JetContext
from gtmod.scalars import rat

CTX1 = JetContext(t=1, order=6)
CTX2 = JetContext(t=2, order=6)
CTX3 = JetContext(t=3, order=6)


def random_jet(rng, ctx, allow_poles=True, max_terms=5):
    coeffs = {}
    for _ in range(rng.randint(1, max_terms)):
        exp = tuple(
            rng.randint(-1 if allow_poles else 0, 3) for _ in range(ctx.t)
        )
        coeffs[exp] = rat(rng.randint(-9, 9), rng.randint(1, 5))
    return Jet(ctx, coeffs)


def test_const_and_var_basics():
    zero = Jet.const(0, CTX1)
    assert zero.is_zero and zero.coeffs == {}
    one = Jet.const(1, CTX1)
    assert one.read((0,)) == 1
    c = Jet.const(rat(3, 2), CTX1)
    assert c.read((0,)) == rat(3, 2)
    s = Jet.var(1, CTX1)
    assert (s * s).read((2,)) == 1
    assert (s + (-1) * s).is_zero
    with pytest.raises(IndexError):
        Jet.var(2, CTX1)


def test_mul_examples():
    s = Jet.var(1, CTX1)
    f = (1 + s) * (1 - s)
    assert f.read((0,)) == 1 and f.read((1,)) == 0 and f.read((2,)) == -1
    # s^-1 * s == 1
    sinv = s.reciprocal()
    assert sinv.read((-1,)) == 1
    assert (sinv * s).read((0,)) == 1


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        Jet.var(1, CTX1) + Jet.var(1, CTX2)


def test_inverse_geometric_series():
    # 1/(2+s) = 1/2 - s/4 + s^2/8 - ...; oracle: multiply back to one
    s = Jet.var(1, CTX1)
    f = 2 + s
    g = f.reciprocal()
    for k in range(CTX1.order - 1):
        assert g.read((k,)) == rat((-1) ** k, 2 ** (k + 1))
    back = f * g
    assert back.read((0,)) == 1
    for k in range(1, 4):
        assert back.read((k,)) == 0


def test_inverse_pure_pole_and_unit_check():
    s = Jet.var(1, CTX1)
    assert (2 * s).reciprocal().read((-1,)) == rat(1, 2)
    s1, s2 = Jet.var(1, CTX2), Jet.var(2, CTX2)
    with pytest.raises(NotInvertible):
        (s1 + s2).reciprocal()
    with pytest.raises(ZeroDivisionError):
        Jet.const(0, CTX1).reciprocal()


def test_inverse_multiplies_back_to_one_randomized():
    rng = random.Random(7)
    for _ in range(200):
        ctx = random.Random(rng.random()).choice([CTX1, CTX2])
        f = random_jet(rng, ctx, allow_poles=False)
        if f.is_zero or f.coeffs.get(ctx.zero_exp, 0) == 0:
            continue
        prod = f * f.reciprocal()
        assert prod.read(ctx.zero_exp) == 1
        for exp in list(prod.coeffs):
            if exp != ctx.zero_exp and all(
                e <= v for e, v in zip(exp, prod.validity)
            ):
                assert prod.read(exp) == 0


def test_ddiff_examples():
    s = Jet.var(1, CTX1)
    assert s.ddiff(1).read((0,)) == rat(1, 2)
    sinv = s.reciprocal()
    assert sinv.ddiff(1).read((-2,)) == rat(-1, 2)
    assert Jet.const(5, CTX1).ddiff(1).is_zero
    # validity drops by one
    assert s.ddiff(1).validity[0] == CTX1.order - 1


def test_read_errors():
    s = Jet.var(1, CTX1)
    f = s.reciprocal() + 1
    with pytest.raises(NotSmooth):
        f.read((0,))
    assert f.read((-1,)) == 1
    with pytest.raises(PrecisionExhausted):
        s.ddiff(1).read((CTX1.order,))
    # removable singularity cancels exactly
    g = (2 * s) * (2 * s).reciprocal()
    assert g.read((0,)) == 1


def test_ring_axioms_randomized():
    rng = random.Random(20240811)
    for _ in range(1000):
        ctx = [CTX1, CTX2, CTX3][rng.randint(0, 2)]
        f = random_jet(rng, ctx)
        g = random_jet(rng, ctx)
        h = random_jet(rng, ctx)
        assert ((f + g) + h).coeffs == (f + (g + h)).coeffs
        assert (f + g).coeffs == (g + f).coeffs
        assert (f * g).coeffs == (g * f).coeffs
        lhs = f * (g + h)
        rhs = f * g + f * h
        # compare within the joint validity only
        joint = tuple(min(a, b) for a, b in zip(lhs.validity, rhs.validity))
        for exp in set(lhs.coeffs) | set(rhs.coeffs):
            if all(e <= v for e, v in zip(exp, joint)):
                assert lhs.coeffs.get(exp, 0) == rhs.coeffs.get(exp, 0)
        assert (f + (-f)).is_zero


def test_mul_associativity_randomized():
    rng = random.Random(99)
    for _ in range(300):
        ctx = [CTX1, CTX2][rng.randint(0, 1)]
        f = random_jet(rng, ctx, max_terms=3)
        g = random_jet(rng, ctx, max_terms=3)
        h = random_jet(rng, ctx, max_terms=3)
        lhs = (f * g) * h
        rhs = f * (g * h)
        joint = tuple(min(a, b) for a, b in zip(lhs.validity, rhs.validity))
        for exp in set(lhs.coeffs) | set(rhs.coeffs):
            if all(e <= v for e, v in zip(exp, joint)):
                assert lhs.coeffs.get(exp, 0) == rhs.coeffs.get(exp, 0)


def test_leibniz_rule_randomized():
    rng = random.Random(5)
    for _ in range(400):
        ctx = [CTX1, CTX2, CTX3][rng.randint(0, 2)]
        r = rng.randint(1, ctx.t)
        f = random_jet(rng, ctx)
        g = random_jet(rng, ctx)
        lhs = (f * g).ddiff(r)
        rhs = f.ddiff(r) * g + f * g.ddiff(r)
        joint = tuple(min(a, b) for a, b in zip(lhs.validity, rhs.validity))
        for exp in set(lhs.coeffs) | set(rhs.coeffs):
            if all(e <= v for e, v in zip(exp, joint)):
                assert lhs.coeffs.get(exp, 0) == rhs.coeffs.get(exp, 0)


def test_ddiff_order_independence():
    rng = random.Random(17)
    for _ in range(300):
        ctx = [CTX2, CTX3][rng.randint(0, 1)]
        f = random_jet(rng, ctx)
        r = rng.randint(1, ctx.t)
        u = rng.randint(1, ctx.t)
        if r == u:
            continue
        assert f.ddiff(r).ddiff(u).coeffs == f.ddiff(u).ddiff(r).coeffs


def test_twist_is_involution_and_sign_rule():
    rng = random.Random(3)
    for _ in range(200):
        f = random_jet(rng, CTX2)
        assert f.twist([1]).twist([1]).coeffs == f.coeffs
        # d/ds o twist = -twist o d/ds in the twisted variable
        lhs = f.twist([1]).ddiff(1)
        rhs = (-f.ddiff(1)).twist([1])
        assert lhs.coeffs == rhs.coeffs


def test_validity_gates_deep_reads():
    s = Jet.var(1, CTX1)
    inv = (2 * s).reciprocal()
    assert inv.validity[0] == CTX1.order - 2
    with pytest.raises(PrecisionExhausted):
        inv.read((CTX1.order - 1,))
