"""Field construction, encoding, arithmetic, and multiplicative structure."""

import pytest

from ppforge.errors import FieldError
from ppforge.field import divisors, is_prime, make_field, parse_field


# --- test-local oracle: exhaustive irreducibility by trial division ---------

def _poly_mod(poly, div, p):
    r = list(poly)
    dd = len(div) - 1
    while True:
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dd:
            return r
        c = r[-1]
        off = len(r) - 1 - dd
        for i in range(dd + 1):
            r[off + i] = (r[off + i] - c * div[i]) % p


def _naive_irreducible(poly, p):
    n = len(poly) - 1
    if n == 1:
        return True
    for da in range(1, n // 2 + 1):
        for m in range(p ** da):
            div = [(m // p ** i) % p for i in range(da)] + [1]
            if not _poly_mod(poly, div, p):
                return False
    return True


def _scan_modulus(p, n):
    for m in range(p ** n):
        cand = [(m // p ** i) % p for i in range(n)] + [1]
        if _naive_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("no irreducible found")


def test_modulus_examples():
    assert make_field(7).modulus == (0, 1)          # n=1: plain residues
    assert make_field(3, 2).modulus == (1, 0, 1)    # x^2+1
    assert make_field(2, 3).modulus == (1, 1, 0, 1)  # x^3+x+1


@pytest.mark.parametrize("p,n", [(2, 2), (2, 4), (2, 5), (3, 2), (3, 3), (3, 4),
                                 (5, 2), (7, 2), (11, 2), (13, 2)])
def test_modulus_matches_exhaustive_scan(p, n):
    assert make_field(p, n).modulus == _scan_modulus(p, n)


def test_make_field_rejections():
    with pytest.raises(FieldError):
        make_field(4, 2)
    with pytest.raises(FieldError):
        make_field(1)
    with pytest.raises(FieldError):
        make_field(6)
    with pytest.raises(FieldError):
        make_field(7, 0)
    with pytest.raises(FieldError):
        make_field(2, 63)   # 2^63 overflows the 64-bit range


def test_make_field_is_cached_and_deterministic():
    assert make_field(3, 2) is make_field(3, 2)
    assert make_field(3, 2) == make_field(3, 2)
    assert make_field(3, 2) != make_field(3, 3)


def test_parse_field():
    assert parse_field("7").q == 7
    assert parse_field(" 3^2 ").q == 9
    assert parse_field("3^2").designation() == "3^2"
    assert parse_field("7").designation() == "7"
    with pytest.raises(FieldError):
        parse_field("4^2")
    from ppforge.errors import PolyParseError
    with pytest.raises(PolyParseError):
        parse_field("abc")
    with pytest.raises(PolyParseError):
        parse_field("3^")


def test_arithmetic_examples():
    F7 = make_field(7)
    assert F7.mul(3, 5) == 1
    assert F7.pow(3, 6) == 1          # Fermat
    F9 = make_field(3, 2)
    t = F9.element((0, 1))
    assert t == 3
    assert F9.mul(t, t) == 2          # t^2 = -1 forced by the modulus x^2+1
    with pytest.raises(FieldError):
        F7.inv(0)
    with pytest.raises(FieldError):
        F9.inv(0)


def test_pow_conventions():
    F7 = make_field(7)
    assert F7.pow(0, 0) == 1
    assert F7.pow(0, 5) == 0
    assert F7.pow(3, 6 * 10 ** 6) == 1    # exponents >= q are fine, no reduction needed
    with pytest.raises(FieldError):
        F7.pow(3, -1)


@pytest.mark.parametrize("q", [(3, 3), (5, 2), (2, 4)])
def test_field_axioms_exhaustive(q):
    fld = make_field(*q)
    els = list(fld.elements())
    for a in els:
        assert fld.add(a, 0) == a
        assert fld.mul(a, 1) == a
        assert fld.add(a, fld.neg(a)) == 0
        if a:
            assert fld.mul(a, fld.inv(a)) == 1
    # associativity and distributivity on the full cube is cheap at q <= 27
    for a in els:
        for b in els:
            ab = fld.mul(a, b)
            assert ab == fld.mul(b, a)
            assert fld.add(a, b) == fld.add(b, a)
            for c in els:
                assert fld.mul(fld.mul(a, b), c) == fld.mul(a, fld.mul(b, c))
                assert fld.mul(a, fld.add(b, c)) == fld.add(fld.mul(a, b), fld.mul(a, c))


@pytest.mark.parametrize("p,n", [(7, 1), (3, 2), (2, 4), (5, 2), (3, 3), (7, 2), (7, 3)])
def test_encoding_round_trip(p, n):
    fld = make_field(p, n)
    for i in fld.elements():
        cs = fld.coeffs(i)
        assert all(0 <= c < p for c in cs)
        assert fld.element(cs) == i
    with pytest.raises(FieldError):
        fld.element((p,))


def test_is_dth_power_examples():
    F7 = make_field(7)
    assert F7.is_dth_power(1, 3) is True
    assert F7.is_dth_power(6, 3) is True    # 3^3 = 27 = 6
    assert F7.is_dth_power(2, 3) is False   # 2^2 = 4 != 1
    with pytest.raises(FieldError):
        F7.is_dth_power(0, 3)
    with pytest.raises(FieldError):
        F7.is_dth_power(2, 4)               # 4 does not divide 6


@pytest.mark.parametrize("p,n", [(7, 1), (3, 2), (2, 4), (5, 2), (3, 3), (7, 2), (7, 3)])
def test_dth_power_test_matches_enumeration(p, n):
    fld = make_field(p, n)
    for d in divisors(fld.q - 1):
        powers = {fld.pow(x, d) for x in fld.units()}
        for a in fld.units():
            assert fld.is_dth_power(a, d) == (a in powers)


def test_mu_d_examples():
    F7 = make_field(7)
    assert F7.mu_d(1) == (1,)
    assert set(F7.mu_d(3)) == {1, 2, 4}
    assert set(F7.mu_d(6)) == set(F7.units())
    with pytest.raises(FieldError):
        F7.mu_d(4)


@pytest.mark.parametrize("p,n", [(7, 1), (3, 2), (2, 4), (5, 2), (3, 3), (7, 2), (7, 3)])
def test_mu_d_structure(p, n):
    fld = make_field(p, n)
    for d in divisors(fld.q - 1):
        mu = fld.mu_d(d)
        assert len(mu) == d == len(set(mu))
        assert mu[0] == 1
        ms = set(mu)
        for z in mu:
            assert fld.pow(z, d) == 1
            assert fld.inv(z) in ms
            for w in mu:
                assert fld.mul(z, w) in ms
        # x -> x^((q-1)/d) maps the units onto mu_d with fibers of size (q-1)/d
        m = (fld.q - 1) // d
        fibers: dict = {}
        for x in fld.units():
            v = fld.pow(x, m)
            fibers[v] = fibers.get(v, 0) + 1
        assert set(fibers) == ms
        assert all(c == m for c in fibers.values())


def test_primitive_element_examples():
    assert make_field(7).primitive_element() == 3   # 2 has order 3
    assert make_field(5).primitive_element() == 2
    assert make_field(2).primitive_element() == 1   # q-1 = 1
    F9 = make_field(3, 2)
    w = F9.primitive_element()
    assert F9.multiplicative_order(w) == 8
    # least index: nothing below w has full order
    for a in range(1, w):
        assert F9.multiplicative_order(a) < 8


def test_is_prime():
    assert [m for m in range(2, 30) if is_prime(m)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2 ** 31 - 1)
    assert not is_prime(2 ** 32 + 1)
    assert not is_prime(1) and not is_prime(0)


def test_divisors():
    assert divisors(1) == [1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(26) == [1, 2, 13, 26]
