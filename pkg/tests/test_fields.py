"""Finite field arithmetic, exhaustively checked at the sizes we use."""

import pytest

from grouplab.fields import field_arithmetic


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (7, 1), (2, 2), (2, 3), (3, 2)])
def test_field_axioms_exhaustive(p, k):
    f = field_arithmetic(p, k)
    els = list(f.elements())
    assert len(els) == p**k
    zero, one = 0, 1
    for a in els:
        assert f.add(a, zero) == a
        assert f.mul(a, one) == a
        assert f.add(a, f.neg(a)) == zero
        if a != zero:
            assert f.mul(a, f.inv(a)) == one
    for a in els:
        for b in els:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
    # associativity and distributivity on all triples
    for a in els:
        for b in els:
            for c in els:
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_inverse_of_zero_rejected():
    f = field_arithmetic(5)
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_generator_has_full_order():
    for p, k in [(3, 1), (7, 1), (2, 3), (3, 2), (11, 1)]:
        f = field_arithmetic(p, k)
        q = p**k
        gen = f.generator()
        assert f.mult_order(gen) == q - 1
        # powers of the generator sweep the nonzero elements
        seen = set()
        cur = 1
        for _ in range(q - 1):
            cur = f.mul(cur, gen)
            seen.add(cur)
        assert len(seen) == q - 1


def test_frobenius_is_an_automorphism_of_gf9():
    f = field_arithmetic(3, 2)
    for a in f.elements():
        for b in f.elements():
            assert f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b))
            assert f.frobenius(f.mul(a, b)) == f.mul(f.frobenius(a), f.frobenius(b))
    # order 2: squaring twice is the identity on GF(9)
    assert all(f.frobenius(f.frobenius(a)) == a for a in f.elements())
    # fixes exactly the prime field
    fixed = [a for a in f.elements() if f.frobenius(a) == a]
    assert sorted(fixed) == [0, 1, 2]


def test_squares_partition():
    for p, k in [(7, 1), (3, 2), (2, 3)]:
        f = field_arithmetic(p, k)
        squares = {f.mul(a, a) for a in f.elements()}
        for a in f.elements():
            assert f.is_square(a) == (a in squares)
        if p != 2:
            # odd q: exactly (q+1)/2 squares counting zero
            assert len(squares) == (p**k + 1) // 2
        else:
            assert len(squares) == p**k


def test_rejected_parameters():
    with pytest.raises(ValueError):
        field_arithmetic(4)
    with pytest.raises(ValueError):
        field_arithmetic(3, 0)
    with pytest.raises(ValueError):
        field_arithmetic(2, 4)
    with pytest.raises(ValueError):
        field_arithmetic(101, 2)
