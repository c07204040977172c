import json
import random

import pytest

import helpers
from qwirt.quaternion import Quaternion, ONE, I, J, K
from qwirt.stem import StemElement, bit
from qwirt.slicefn import (SliceFunction, StemPolynomial, variable,
                           conj_variable, constant, monomial, format_slice,
                           to_monomials)
from qwirt.sampling import random_slice_point, random_unit


def stem_of(n, entries):
    """Build a stem polynomial from {(aexps, bexps): {mask: quaternion}}."""
    terms = {}
    for (aexps, bexps), comps in entries.items():
        terms[tuple(aexps) + tuple(bexps)] = StemElement(n, comps)
    return SliceFunction(StemPolynomial(n, terms))


def test_monomial_generator_stems():
    x1 = variable(1, 1)
    assert x1 == stem_of(1, {((1,), (0,)): {0: ONE}, ((0,), (1,)): {bit(1): ONE}})
    assert conj_variable(1, 1) == stem_of(1, {((1,), (0,)): {0: ONE},
                                              ((0,), (1,)): {bit(1): -ONE}})
    # squared generator, expanded through the coefficient algebra
    assert x1 ** 2 == stem_of(1, {((2,), (0,)): {0: ONE},
                                  ((0,), (2,)): {0: -ONE},
                                  ((1,), (1,)): {bit(1): Quaternion(2)}})


def test_monomial_right_coefficient_order():
    f = monomial(2, (1, 1), coeff=Quaternion(0, 1))
    assert f == variable(2, 1) * variable(2, 2) * constant(2, I)


def test_stem_parity_enforced():
    with pytest.raises(ValueError):
        stem_of(1, {((0,), (1,)): {0: ONE}})  # odd beta exponent off subset
    with pytest.raises(ValueError):
        stem_of(1, {((1,), (0,)): {bit(1): ONE}})  # even exponent on subset


def test_degree_cap():
    with pytest.raises(ValueError):
        variable(1, 1) ** 33


def test_slice_product_examples():
    x1, x2 = variable(2, 1), variable(2, 2)
    assert x2 * x1 == x1 * x2 == monomial(2, (1, 1))
    f = helpers.random_slice_polynomial(random.Random(1), 2)
    assert f * constant(2, ONE) == f
    assert variable(1, 1) * conj_variable(1, 1) == \
        stem_of(1, {((2,), (0,)): {0: ONE}, ((0,), (2,)): {0: ONE}})


def test_slice_product_associative():
    rng = random.Random(2)
    for _ in range(10):
        f = helpers.random_slice_polynomial(rng, 2, max_total_degree=3)
        g = helpers.random_slice_polynomial(rng, 2, max_total_degree=3)
        h = helpers.random_slice_polynomial(rng, 2, max_total_degree=3)
        assert (f * g) * h == f * (g * h)


def test_evaluate_examples():
    f = variable(2, 1) * variable(2, 2)
    assert f.evaluate((I, J)) == Quaternion(0.0, 0.0, 0.0, 1.0)
    v = f.evaluate((Quaternion(1, 1), Quaternion(0, 0, 2)))
    helpers.assert_quat_close(v, Quaternion(0.0, 0.0, 2.0, 2.0), 1e-14)
    sq = variable(1, 1) ** 2
    assert sq.evaluate((Quaternion(3),)) == Quaternion(9.0)


def test_evaluate_real_axis_unit_independent():
    rng = random.Random(3)
    f = helpers.random_slice_polynomial(rng, 2)
    alphas, betas = [0.7, -1.2], [0.0, 0.0]
    u1 = [random_unit(rng), random_unit(rng)]
    u2 = [random_unit(rng), random_unit(rng)]
    assert f.evaluate_parts(alphas, betas, u1) == f.evaluate_parts(alphas, betas, u2)


def test_spherical_value_examples():
    x1 = variable(2, 1)
    re1 = stem_of(2, {((1, 0), (0, 0)): {0: ONE}})
    assert x1.spherical_value(1) == re1
    assert conj_variable(2, 1).spherical_value(1) == re1
    f = variable(2, 1) * variable(2, 2)
    assert f.spherical_value(2) == variable(2, 1) * re1_of_var(2)


def re1_of_var(m):
    # Re(x_m) inside n=2
    key_a = [0, 0]
    key_a[m - 1] = 1
    return stem_of(2, {(tuple(key_a), (0, 0)): {0: ONE}})


def test_spherical_derivative_examples():
    x1 = variable(1, 1)
    assert x1.spherical_derivative(1) == constant(1, ONE)
    two_re = stem_of(1, {((1,), (0,)): {0: Quaternion(2)}})
    assert (x1 ** 2).spherical_derivative(1) == two_re
    assert variable(2, 2).spherical_derivative(1).is_zero()


def _reduced_in(rng, n, m):
    """A polynomial that is a slice function w.r.t. x_m: a part in the
    variables below m plus a part in the variables from m up."""
    lower = SliceFunction.zero(n)
    if m > 1:
        for _ in range(rng.randint(0, 2)):
            powers = [0] * n
            conj_powers = [0] * n
            for _ in range(rng.randint(1, 3)):
                powers[rng.randrange(m - 1)] += 1
            lower = lower + monomial(n, powers, conj_powers,
                                     helpers.nonzero_rational_quaternion(rng))
    upper = SliceFunction.zero(n)
    for _ in range(rng.randint(1, 2)):
        powers = [0] * n
        conj_powers = [0] * n
        for _ in range(rng.randint(0, 3)):
            powers[rng.randrange(m - 1, n)] += 1
        for _ in range(rng.randint(0, 1)):
            conj_powers[rng.randrange(m - 1, n)] += 1
        upper = upper + monomial(n, powers, conj_powers,
                                 helpers.nonzero_rational_quaternion(rng))
    f = lower + upper
    assert f.is_slice_with_respect_to(m)
    return f


def test_spherical_value_matches_averaging_oracle():
    # the even part under conjugation of x_m, valid for every slice function
    rng = random.Random(4)
    for _ in range(10):
        n = rng.choice((1, 2, 3))
        f = helpers.random_slice_polynomial(rng, n, max_total_degree=4)
        m = rng.randint(1, n)
        p = random_slice_point(rng, n)
        conj_p = p[:m - 1] + (p[m - 1].conjugate(),) + p[m:]
        value = (f.evaluate(p) + f.evaluate(conj_p)) * 0.5
        helpers.assert_quat_close(f.spherical_value(m).evaluate(p), value, 1e-10)


def test_spherical_derivative_matches_averaging_oracle():
    # the one-variable averaging formula applies on functions that are slice
    # w.r.t. x_m; every slice function qualifies for m = 1
    rng = random.Random(4)
    for _ in range(10):
        n = rng.choice((1, 2, 3))
        m = rng.randint(1, n)
        f = _reduced_in(rng, n, m)
        p = random_slice_point(rng, n)
        conj_p = p[:m - 1] + (p[m - 1].conjugate(),) + p[m:]
        deriv = p[m - 1].im().to_float().inverse() * \
            ((f.evaluate(p) - f.evaluate(conj_p)) * 0.5)
        helpers.assert_quat_close(f.spherical_derivative(m).evaluate(p), deriv, 1e-10)


def test_averaging_oracle_needs_per_variable_sliceness():
    # x1*x2 is not slice w.r.t. x2 (its {1,2} component mixes in variable 1),
    # and the averaging formula indeed disagrees with the stem derivative
    f = variable(2, 1) * variable(2, 2)
    assert not f.is_slice_with_respect_to(2)
    p = (I, J)
    conj_p = (p[0], p[1].conjugate())
    deriv = p[1].im().to_float().inverse() * \
        ((f.evaluate(p) - f.evaluate(conj_p)) * 0.5)
    assert abs(deriv - f.spherical_derivative(2).evaluate(p)) > 1.0


def test_reconstruction_from_spherical_parts():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.choice((1, 2, 3))
        m = rng.randint(1, n)
        f = _reduced_in(rng, n, m)
        p = random_slice_point(rng, n)
        recon = f.spherical_value(m).evaluate(p) + \
            p[m - 1].im().to_float() * f.spherical_derivative(m).evaluate(p)
        helpers.assert_quat_close(recon, f.evaluate(p), 1e-10)


def test_reconstruction_in_first_variable_any_slice_function():
    rng = random.Random(12)
    for _ in range(50):
        n = rng.choice((1, 2, 3))
        f = helpers.random_slice_polynomial(rng, n)
        p = random_slice_point(rng, n)
        recon = f.spherical_value(1).evaluate(p) + \
            p[0].im().to_float() * f.spherical_derivative(1).evaluate(p)
        helpers.assert_quat_close(recon, f.evaluate(p), 1e-10)


def test_spherical_derivative_product_rule():
    rng = random.Random(6)
    for _ in range(15):
        n = rng.choice((1, 2))
        f = helpers.random_slice_polynomial(rng, n, max_total_degree=3)
        g = helpers.random_slice_polynomial(rng, n, max_total_degree=3)
        for m in range(1, n + 1):
            lhs = (f * g).spherical_derivative(m)
            rhs = f.spherical_derivative(m) * g.spherical_value(m) + \
                f.spherical_value(m) * g.spherical_derivative(m)
            assert lhs == rhs


def test_slice_partial_power_rules():
    sq = variable(1, 1) ** 2
    assert sq.slice_partial(1) == variable(1, 1) * constant(1, Quaternion(2))
    assert sq.slice_partial_conj(1).is_zero()
    assert conj_variable(2, 2).slice_partial_conj(2) == constant(2, ONE)
    assert conj_variable(2, 2).slice_partial(2).is_zero()


def test_slice_partials_leibniz():
    rng = random.Random(7)
    for _ in range(15):
        n = rng.choice((1, 2, 3))
        f = helpers.random_slice_polynomial(rng, n, max_total_degree=3)
        g = helpers.random_slice_polynomial(rng, n, max_total_degree=3)
        for m in range(1, n + 1):
            assert (f * g).slice_partial(m) == \
                f.slice_partial(m) * g + f * g.slice_partial(m)
            assert (f * g).slice_partial_conj(m) == \
                f.slice_partial_conj(m) * g + f * g.slice_partial_conj(m)


def test_slice_partials_commute():
    rng = random.Random(8)
    for _ in range(10):
        f = helpers.random_slice_polynomial(rng, 3, max_total_degree=4)
        for a in (1, 2, 3):
            for b in (1, 2, 3):
                assert f.slice_partial(a).slice_partial(b) == \
                    f.slice_partial(b).slice_partial(a)
                assert f.slice_partial(a).slice_partial_conj(b) == \
                    f.slice_partial_conj(b).slice_partial(a)
                assert f.slice_partial_conj(a).slice_partial_conj(b) == \
                    f.slice_partial_conj(b).slice_partial_conj(a)


def test_conjugate_examples():
    assert variable(1, 1).conjugate() == conj_variable(1, 1)
    f = variable(2, 1) * variable(2, 2)
    assert f.conjugate() == conj_variable(2, 1) * conj_variable(2, 2)
    c = constant(1, Quaternion(3))
    assert c.conjugate() == c


def test_conjugate_multiplicative():
    rng = random.Random(9)
    for _ in range(15):
        n = rng.choice((1, 2))
        f = helpers.random_slice_polynomial(rng, n, max_total_degree=3)
        g = helpers.random_slice_polynomial(rng, n, max_total_degree=3)
        assert (f * g).conjugate() == f.conjugate() * g.conjugate()
        assert f.conjugate().conjugate() == f


def test_regularity_examples():
    assert (variable(2, 1) ** 2 * variable(2, 2)).is_slice_regular()
    assert not conj_variable(1, 1).is_slice_regular()
    assert constant(2, Quaternion(1, 2, 3, 4)).is_slice_regular()


def test_json_round_trip():
    rng = random.Random(10)
    for _ in range(5):
        f = helpers.random_slice_polynomial(rng, rng.choice((1, 2, 3)))
        blob = json.dumps(f.to_json())
        assert SliceFunction.from_json(json.loads(blob)) == f


def test_monomial_expansion_round_trip():
    rng = random.Random(11)
    for _ in range(10):
        n = rng.choice((1, 2))
        f = helpers.random_slice_polynomial(rng, n)
        rebuilt = SliceFunction.zero(n)
        for (powers, conj_powers), coeff in to_monomials(f).items():
            rebuilt = rebuilt + monomial(n, powers, conj_powers, coeff)
        assert rebuilt == f


def test_format_examples():
    assert format_slice(variable(2, 1)) == "x1"
    assert format_slice(SliceFunction.zero(1)) == "0"
    f = monomial(1, (2,), coeff=Quaternion(1, 2)) + conj_variable(1, 1) * constant(1, K)
    text = format_slice(f)
    assert "x1^2*(1+2i)" in text and "~x1*(k)" in text


def test_depends_only_on():
    f = variable(3, 2) * variable(3, 3)
    assert f.depends_only_on(2)
    assert not f.depends_only_on(3)
    assert (variable(3, 1) + f).depends_only_on(1)


def test_slice_product_pointwise_interpretation_one_variable():
    # independent oracle for the product: in one variable the slice product
    # is f(x) g(f(x)^-1 x f(x)) wherever f(x) != 0
    rng = random.Random(14)
    for _ in range(20):
        f = helpers.random_slice_polynomial(rng, 1, max_total_degree=3)
        g = helpers.random_slice_polynomial(rng, 1, max_total_degree=3)
        p = random_slice_point(rng, 1)
        fx = f.evaluate(p)
        if abs(fx) < 1e-6:
            continue
        moved = fx.inverse() * p[0].to_float() * fx
        expected = fx * g.evaluate((moved,))
        helpers.assert_quat_close((f * g).evaluate(p), expected, 1e-8)


def test_component_recovery_from_sign_flipped_evaluations():
    # every stem component is recoverable from the 2^n evaluations obtained
    # by conjugating subsets of coordinates:
    #   F_K = 2^-n J_{k_p}^-1 ... J_{k_1}^-1 sum_H (-1)^{|K & H|} f(x^{c,H})
    rng = random.Random(15)
    for _ in range(5):
        n = rng.choice((1, 2, 3))
        f = helpers.random_slice_polynomial(rng, n, max_total_degree=3)
        p = random_slice_point(rng, n)
        alphas, betas, units = zip(*[q.split_slice() for q in p])
        values = {}
        for flip in range(1 << n):
            flipped = [(-u if flip & (1 << h) else u) for h, u in enumerate(units)]
            values[flip] = f.evaluate_parts(alphas, betas, flipped)
        for mask in range(1 << n):
            total = Quaternion(0.0, 0.0, 0.0, 0.0)
            for flip in range(1 << n):
                sign = -1.0 if (mask & flip).bit_count() % 2 else 1.0
                total = total + values[flip] * sign
            for h in range(n):
                if mask & (1 << h):
                    total = units[h].inverse() * total
            recovered = total * (1.0 / (1 << n))
            component = Quaternion(0.0, 0.0, 0.0, 0.0)
            for key, elem in f.stem.terms.items():
                coeff = elem.components.get(mask)
                if coeff is None:
                    continue
                scalar = 1.0
                for m in range(n):
                    scalar *= alphas[m] ** key[m] * betas[m] ** key[n + m]
                component = component + coeff.to_float() * scalar
            helpers.assert_quat_close(recovered, component, 1e-9)
