"""Shared generators and assertion helpers for the test suite."""

import itertools
from fractions import Fraction

from qwirt.quaternion import Quaternion
from qwirt.slicefn import SliceFunction, monomial


def rational(rng, lo=-3, hi=3, dens=(1, 1, 2, 3)):
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def rational_quaternion(rng, lo=-3, hi=3, dens=(1, 1, 2, 3)):
    return Quaternion(*(rational(rng, lo, hi, dens) for _ in range(4)))


def nonzero_rational_quaternion(rng, lo=-3, hi=3):
    while True:
        q = rational_quaternion(rng, lo, hi)
        if not q.is_zero():
            return q


def random_multiindex(rng, n, total):
    """A multi-index of length n with components summing to at most total."""
    out = [0] * n
    for _ in range(rng.randint(0, total)):
        out[rng.randrange(n)] += 1
    return tuple(out)


def random_slice_polynomial(rng, n, max_total_degree=4, max_terms=3,
                            allow_conj=True, coeff_fn=None):
    """A random right-coefficient combination of ordered monomials."""
    coeff_fn = coeff_fn or nonzero_rational_quaternion
    f = SliceFunction.zero(n)
    for _ in range(rng.randint(1, max_terms)):
        budget = max_total_degree
        powers = random_multiindex(rng, n, budget)
        budget -= sum(powers)
        conj_powers = random_multiindex(rng, n, budget) if allow_conj else (0,) * n
        f = f + monomial(n, powers, conj_powers, coeff_fn(rng))
    return f


def random_regular_polynomial(rng, n, max_total_degree=4, max_terms=3,
                              coeff_fn=None):
    return random_slice_polynomial(rng, n, max_total_degree, max_terms,
                                   allow_conj=False, coeff_fn=coeff_fn)


def random_nonregular_polynomial(rng, n, max_total_degree=4, max_terms=3,
                                 coeff_fn=None):
    """A polynomial guaranteed to carry at least one conjugate factor."""
    coeff_fn = coeff_fn or nonzero_rational_quaternion
    f = random_slice_polynomial(rng, n, max_total_degree, max_terms - 1,
                                allow_conj=True, coeff_fn=coeff_fn) \
        if max_terms > 1 else SliceFunction.zero(n)
    budget = max_total_degree - 1
    powers = random_multiindex(rng, n, budget // 2)
    conj_powers = list(random_multiindex(rng, n, budget - sum(powers) - 1))
    conj_powers[rng.randrange(n)] += 1
    return f + monomial(n, powers, tuple(conj_powers), coeff_fn(rng))


def small_coeff(rng):
    """Unit-scale scalar coefficients, for numeric corpora with tame
    derivative magnitudes."""
    pool = (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2))
    comps = [Fraction(0)] * 4
    comps[rng.randrange(4)] = rng.choice(pool)
    return Quaternion(*comps)


def multiindices_up_to(n, total):
    """All multi-indices of length n with component sum at most total."""
    return [ix for ix in itertools.product(range(total + 1), repeat=n)
            if sum(ix) <= total]


def assert_quat_close(a, b, tol, label=""):
    err = abs(a - b)
    assert err <= tol, "%s: |%s - %s| = %g > %g" % (label, a, b, err, tol)
