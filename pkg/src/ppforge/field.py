"""Exact arithmetic in small finite fields F_{p^n}.

Elements are plain Python ints in [0, q): the index encodes the coefficient
vector of the element over F_p through its base-p digits, digit i being the
coefficient of t^i where t is the residue class of x modulo the field's
irreducible polynomial.  For n = 1 this degenerates to ordinary residues
mod p.  The modulus is canonical: the first irreducible monic polynomial in
increasing order of the integer c_0 + c_1*p + ... + c_{n-1}*p^{n-1} built
from the non-leading coefficients, so two fields with equal (p, n) are
interchangeable.

A Field is immutable after construction.  The lookup tables it caches are
built lazily and are idempotent, so sharing a Field between workers is safe.
"""

import functools

import numpy as np

from .errors import FieldError, PolyParseError

# q x q add/mul lookup tables (int32) are built below this size.
TABLE_MAX_Q = 2048
# Nested-list copies of the tables, for fast scalar arithmetic.
SCALAR_LIST_MAX_Q = 512
# exp/log and digit tables (O(q) memory) are allowed up to this size.
VECTOR_MAX_Q = 1 << 16

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(m: int) -> bool:
    """Deterministic Miller-Rabin, exact for every 64-bit integer."""
    if m < 2:
        return False
    for sp in _MR_BASES:
        if m % sp == 0:
            return m == sp
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def factorize(m: int) -> dict:
    """Prime factorization by trial division; fine at desk scale."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def prime_divisors(m: int) -> tuple:
    return tuple(sorted(factorize(m)))


def divisors(m: int) -> list:
    """All positive divisors of m, ascending."""
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
        d += 1
    return small + large[::-1]


# ---------------------------------------------------------------------------
# polynomials over F_p (coefficient lists, little-endian) -- only what the
# modulus search needs

def _fp_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _fp_mulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_divmod(out, mod, p)[1]


def _fp_divmod(a, b, p):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    linv = pow(lb, p - 2, p)
    quot = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * linv % p
        if c:
            quot[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _fp_trim(quot), _fp_trim(a[:db])


def _fp_pow_x(e, mod, p):
    """x^e reduced modulo `mod`, by square-and-multiply."""
    result = [1]
    base = _fp_divmod([0, 1], mod, p)[1]
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, mod, p)
        base = _fp_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _fp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    return a


def _is_irreducible(mod, p) -> bool:
    """Frobenius-based exact test for a monic polynomial over F_p."""
    n = len(mod) - 1
    if n == 1:
        return True
    x = [0, 1]
    if _fp_pow_x(p ** n, mod, p) != x:
        return False
    for r in prime_divisors(n):
        w = _fp_pow_x(p ** (n // r), mod, p)
        ln = max(len(w), 2)
        diff = [((w[i] if i < len(w) else 0) - (x[i] if i < len(x) else 0)) % p
                for i in range(ln)]
        if len(_fp_gcd(mod, _fp_trim(diff), p)) != 1:
            return False
    return True


def _find_modulus(p, n):
    """First irreducible monic degree-n polynomial in the canonical order."""
    for m in range(p ** n):
        coeffs = []
        mm = m
        for _ in range(n):
            coeffs.append(mm % p)
            mm //= p
        coeffs.append(1)
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise FieldError(f"no irreducible polynomial of degree {n} over F_{p}")  # unreachable


# ---------------------------------------------------------------------------


class Field:
    """A concrete F_{p^n} with canonical modulus and integer element encoding."""

    __slots__ = ("p", "n", "q", "modulus", "_omega", "_tables", "_mu_cache",
                 "_add_list", "_mul_list", "_neg_list", "_inv_list")

    def __init__(self, p: int, n: int = 1):
        if not isinstance(p, int) or not is_prime(p):
            raise FieldError(f"p must be prime, got {p}")
        if not isinstance(n, int) or n < 1:
            raise FieldError(f"extension degree must be >= 1, got {n}")
        q = p ** n
        if q >= 1 << 63:
            raise FieldError(f"p^n = {p}^{n} overflows the 64-bit range")
        self.p = p
        self.n = n
        self.q = q
        self.modulus = _find_modulus(p, n)
        self._omega = None
        self._tables = None
        self._mu_cache: dict = {}
        self._add_list = None
        self._mul_list = None
        self._neg_list = None
        self._inv_list = None
        if q <= SCALAR_LIST_MAX_Q:
            self.tables()

    # -- identity ----------------------------------------------------------

    def designation(self) -> str:
        return f"{self.p}^{self.n}" if self.n > 1 else str(self.p)

    def __repr__(self):
        return f"Field({self.designation()})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.n) == (other.p, other.n)

    def __hash__(self):
        return hash((Field, self.p, self.n))

    # -- encoding ----------------------------------------------------------

    def coeffs(self, a: int) -> tuple:
        """Base-p digits of the index: the coefficient vector over F_p."""
        out = []
        for _ in range(self.n):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def element(self, coeffs) -> int:
        """Index of the element with the given coefficient vector."""
        cs = list(coeffs)
        if len(cs) > self.n or any(not 0 <= c < self.p for c in cs):
            raise FieldError(f"coefficient vector {cs} invalid for {self!r}")
        idx = 0
        for c in reversed(cs):
            idx = idx * self.p + c
        return idx

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def in_prime_subfield(self, a: int) -> bool:
        """True iff a lies in F_p, i.e. all higher digits vanish."""
        return 0 <= a < self.p

    # -- arithmetic ---------------------------------------------------------
    # Hot paths trust their inputs to be indices in [0, q).

    def add(self, a: int, b: int) -> int:
        t = self._add_list
        if t is not None:
            return t[a][b]
        return self._add_slow(a, b)

    def _add_slow(self, a, b):
        p = self.p
        if self.n == 1:
            return (a + b) % p
        out, mult = 0, 1
        for _ in range(self.n):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        t = self._neg_list
        if t is not None:
            return t[a]
        p = self.p
        if self.n == 1:
            return (-a) % p
        out, mult = 0, 1
        for _ in range(self.n):
            out += ((p - a % p) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        t = self._mul_list
        if t is not None:
            return t[a][b]
        return self._mul_slow(a, b)

    def _mul_slow(self, a, b):
        p = self.p
        if self.n == 1:
            return a * b % p
        da, db = self.coeffs(a), self.coeffs(b)
        n = self.n
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    prod[i + j] += ai * bj
        mod = self.modulus
        for i in range(2 * n - 2, n - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(n):
                    prod[i - n + j] -= c * mod[j]
        idx = 0
        for c in reversed(prod[:n]):
            idx = idx * p + c % p
        return idx

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("inversion of zero")
        t = self._inv_list
        if t is not None:
            return t[a]
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        """a^e by square-and-multiply; e is any non-negative integer."""
        if e < 0:
            raise FieldError("negative exponent")
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius(self, a: int, times: int = 1) -> int:
        """a^(p^times)."""
        for _ in range(times):
            a = self.pow(a, self.p)
        return a

    # -- multiplicative structure -------------------------------------------

    def primitive_element(self) -> int:
        """Least-index element of multiplicative order q-1; cached."""
        if self._omega is None:
            m = self.q - 1
            rs = prime_divisors(m)
            for a in self.units():
                if all(self.pow(a, m // r) != 1 for r in rs):
                    self._omega = a
                    break
        return self._omega

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        order = self.q - 1
        for r, _ in factorize(self.q - 1).items():
            while order % r == 0 and self.pow(a, order // r) == 1:
                order //= r
        return order

    def mu_d(self, d: int) -> tuple:
        """The d-th roots of unity, as consecutive powers of the primitive element.

        Returned in the order w^(j*(q-1)/d) for j = 0..d-1, so the list always
        starts with 1 and is deterministic.
        """
        if d < 1 or (self.q - 1) % d != 0:
            raise FieldError(f"d={d} does not divide q-1={self.q - 1}")
        cached = self._mu_cache.get(d)
        if cached is None:
            step = self.pow(self.primitive_element(), (self.q - 1) // d)
            out, cur = [], 1
            for _ in range(d):
                out.append(cur)
                cur = self.mul(cur, step)
            cached = self._mu_cache[d] = tuple(out)
        return cached

    def is_dth_power(self, a: int, d: int) -> bool:
        """True iff nonzero a is a d-th power, i.e. a^((q-1)/d) = 1."""
        if a == 0:
            raise FieldError("zero is excluded from the d-th power test")
        if d < 1 or (self.q - 1) % d != 0:
            raise FieldError(f"d={d} does not divide q-1={self.q - 1}")
        return self.pow(a, (self.q - 1) // d) == 1

    # -- tables --------------------------------------------------------------

    def tables(self) -> "FieldTables":
        """Numpy lookup machinery for exhaustive evaluation (lazy, cached)."""
        if self._tables is None:
            t = FieldTables(self)
            self._tables = t
            if self.q <= SCALAR_LIST_MAX_Q:
                self._add_list = t.add.tolist()
                self._mul_list = t.mul.tolist()
                self._neg_list = t.neg_col.tolist()
                self._inv_list = t.inv_col.tolist()
        return self._tables

    def modulus_text(self) -> str:
        terms = []
        for e in range(self.n, -1, -1):
            c = self.modulus[e]
            if not c:
                continue
            if e == 0:
                terms.append(str(c))
            else:
                v = "x" if e == 1 else f"x^{e}"
                terms.append(v if c == 1 else f"{c}*{v}")
        return "+".join(terms) if terms else "0"


@functools.lru_cache(maxsize=None)
def make_field(p: int, n: int = 1) -> Field:
    """Canonical Field for (p, n); the same instance is returned every time."""
    return Field(p, n)


def parse_field(text: str) -> Field:
    """Parse a field designation: "p" or "p^n"."""
    s = text.strip()
    try:
        if "^" in s:
            ps, ns = s.split("^", 1)
            return make_field(int(ps), int(ns))
        return make_field(int(s))
    except FieldError:
        raise
    except ValueError:
        raise PolyParseError(f"bad field designation {text!r}; expected \"p\" or \"p^n\"") from None


class FieldTables:
    """Vectorized lookup tables over one field.

    Always present (q <= 2^16): base-p digit matrix, exp/log for the cyclic
    group F_q^*, negation and inversion columns.  For q <= TABLE_MAX_Q the
    full q x q addition and multiplication tables are also materialized.
    All arrays are exact integer data; callers must not mutate them.
    """

    __slots__ = ("field", "q", "digits", "pvec", "exp", "log", "neg_col",
                 "inv_col", "add", "mul", "addf", "mulf", "_pow_cache")

    def __init__(self, field: Field):
        q, p, n = field.q, field.p, field.n
        if q > VECTOR_MAX_Q:
            raise FieldError(f"lookup tables unsupported for q={q} > {VECTOR_MAX_Q}")
        self.field = field
        self.q = q
        self.pvec = p ** np.arange(n, dtype=np.int64)
        idx = np.arange(q, dtype=np.int64)
        self.digits = (idx[:, None] // self.pvec[None, :]) % p

        omega = field.primitive_element()
        exp = np.empty(max(q - 1, 1), dtype=np.int64)
        cur = 1
        for i in range(q - 1):
            exp[i] = cur
            cur = field._mul_slow(cur, omega)
        self.exp = exp
        log = np.zeros(q, dtype=np.int64)
        log[exp[: q - 1]] = np.arange(q - 1, dtype=np.int64)
        self.log = log

        self.neg_col = ((p - self.digits) % p) @ self.pvec
        inv_col = np.zeros(q, dtype=np.int64)
        if q > 1:
            inv_col[1:] = exp[(q - 1 - log[1:]) % (q - 1)]
        self.inv_col = inv_col

        if q <= TABLE_MAX_Q:
            mul = exp[np.add.outer(log, log) % (q - 1)].astype(np.int32)
            mul[0, :] = 0
            mul[:, 0] = 0
            self.mul = mul
            add = np.empty((q, q), dtype=np.int32)
            step = max(1, (1 << 22) // (q * n))
            for lo in range(0, q, step):
                hi = min(lo + step, q)
                add[lo:hi] = ((self.digits[lo:hi, None, :] + self.digits[None, :, :]) % p) @ self.pvec
            self.add = add
            self.addf = add.reshape(-1)
            self.mulf = mul.reshape(-1)
        else:
            self.add = self.mul = self.addf = self.mulf = None
        self._pow_cache: dict = {}

    # -- column helpers ------------------------------------------------------

    def pow_col(self, e: int) -> np.ndarray:
        """Values a^e for every a, exact for any e >= 0; cached per exponent."""
        if e == 0:
            return np.ones(self.q, dtype=np.int64)
        q = self.q
        re = (e - 1) % (q - 1) + 1
        col = self._pow_cache.get(re)
        if col is None:
            col = self.exp[(self.log * re) % (q - 1)].copy()
            col[0] = 0
            self._pow_cache[re] = col
        return col

    def mul_cols(self, x, y) -> np.ndarray:
        """Elementwise (broadcasting) field product of two index arrays."""
        x = np.asarray(x)
        y = np.asarray(y)
        if self.mulf is not None:
            return self.mulf[x.astype(np.int64) * self.q + y]
        out = self.exp[(self.log[x] + self.log[y]) % (self.q - 1)]
        return np.where((x == 0) | (y == 0), 0, out)

    def add_cols(self, x, y) -> np.ndarray:
        """Elementwise (broadcasting) field sum of two index arrays."""
        x = np.asarray(x)
        y = np.asarray(y)
        if self.addf is not None:
            return self.addf[x.astype(np.int64) * self.q + y]
        return ((self.digits[x] + self.digits[y]) % self.field.p) @ self.pvec

    def scalar_mul(self, c: int, xs) -> np.ndarray:
        """c * xs for a scalar index c and an index array xs."""
        xs = np.asarray(xs)
        if c == 0:
            return np.zeros(xs.shape, dtype=np.int64)
        if c == 1:
            return xs
        if self.mulf is not None:
            return self.mulf[np.int64(c) * self.q + xs]
        out = self.exp[(self.log[c] + self.log[xs]) % (self.q - 1)]
        return np.where(xs == 0, 0, out)

    def eval_col(self, coeffs) -> np.ndarray:
        """Value table of the dense polynomial with the given index coefficients.

        Exact: each monomial is evaluated through exp/log power columns and the
        terms are accumulated digit-wise mod p.
        """
        q = self.q
        acc = None
        for e, c in enumerate(coeffs):
            if c == 0:
                continue
            term = self.scalar_mul(c, self.pow_col(e))
            if acc is None:
                acc = self.digits[term].astype(np.int64)
            else:
                acc += self.digits[term]
        if acc is None:
            return np.zeros(q, dtype=np.int64)
        return (acc % self.field.p) @ self.pvec
