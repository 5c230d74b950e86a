"""Exact arithmetic for small finite fields F_q (q = p^r, p an odd prime) and
for the cyclotomic field Q(zeta_p) where all character values live.

Field elements are encoded as integers in 0..q-1, read as the base-p digits of
the polynomial representation (low degree first).  For prime fields arithmetic
is plain modular arithmetic; for extension fields a FieldSpec precomputes
multiplication/inversion tables once, so element operations stay O(1).

Cyclotomic values are vectors of exact rationals over the power basis
{1, zeta, ..., zeta^(p-2)}, eagerly reduced modulo the p-th cyclotomic
polynomial.  No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "FieldError",
    "CharTwoError",
    "FieldSpec",
    "FieldElement",
    "CycValue",
    "theta",
]

# Table-based extension-field arithmetic is meant for desk-scale computation.
MAX_PRIME_Q = 100_000
MAX_EXTENSION_Q = 1024


class FieldError(ValueError):
    """Invalid field construction or an operation on mismatched operands."""


class CharTwoError(FieldError):
    """Characteristic 2 is rejected: everything here needs p >= 3."""


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def _poly_mul_mod(a, b, modulus, p):
    """Multiply coefficient tuples a*b modulo (modulus, p), low degree first."""
    r = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                prod[i + j] = (prod[i + j] + ca * cb) % p
    # reduce degree down to < r using the monic modulus
    for d in range(len(prod) - 1, r - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for k in range(r):
                prod[d - r + k] = (prod[d - r + k] - c * modulus[k]) % p
    out = prod[:r]
    out += [0] * (r - len(out))
    return tuple(out)


def _monic_polys(degree, p):
    """All monic coefficient tuples of the given degree over F_p, low first."""
    if degree == 0:
        yield (1,)
        return
    total = p**degree
    for code in range(total):
        coeffs = []
        c = code
        for _ in range(degree):
            coeffs.append(c % p)
            c //= p
        yield tuple(coeffs) + (1,)


def _poly_divisible(poly, divisor, p):
    rem = list(poly)
    dd = len(divisor) - 1
    while len(rem) - 1 >= dd:
        lead = rem[-1]
        if lead:
            shift = len(rem) - 1 - dd
            for k in range(dd + 1):
                rem[shift + k] = (rem[shift + k] - lead * divisor[k]) % p
        rem.pop()
        while len(rem) > dd and rem and rem[-1] == 0:
            rem.pop()
    return all(c == 0 for c in rem)


def _is_irreducible(modulus, p):
    r = len(modulus) - 1
    for d in range(1, r // 2 + 1):
        for g in _monic_polys(d, p):
            if _poly_divisible(modulus, g, p):
                return False
    return True


class FieldSpec:
    """The finite field F_q with q = p^r for an odd prime p.

    ``modulus`` is required when r > 1: the low-degree-first coefficient tuple
    of a monic irreducible polynomial of degree r over F_p (there is no
    built-in table of default moduli).
    """

    __slots__ = ("p", "r", "q", "modulus", "_mul_table", "_inv_table", "_trace")

    def __init__(self, p: int, r: int = 1, modulus=None):
        if not _is_prime(p):
            if p == 2:
                raise CharTwoError("characteristic 2 is not supported (need p >= 3)")
            raise FieldError(f"p = {p} is not prime")
        if p == 2:
            raise CharTwoError("characteristic 2 is not supported (need p >= 3)")
        if r < 1:
            raise FieldError(f"exponent r = {r} must be positive")
        q = p**r
        self.p = p
        self.r = r
        self.q = q
        if r == 1:
            if q > MAX_PRIME_Q:
                raise FieldError(f"q = {q} exceeds the supported size {MAX_PRIME_Q}")
            if modulus is not None:
                raise FieldError("modulus is only meaningful for r > 1")
            self.modulus = None
            self._mul_table = None
            self._inv_table = None
        else:
            if q > MAX_EXTENSION_Q:
                raise FieldError(
                    f"q = {q} exceeds the supported extension-field size {MAX_EXTENSION_Q}"
                )
            if modulus is None:
                raise FieldError(f"an irreducible modulus of degree {r} is required for q = {q}")
            mod = tuple(int(c) % p for c in modulus)
            if len(mod) != r + 1 or mod[r] != 1:
                raise FieldError(
                    "modulus must be monic of degree r, given as low-degree-first coefficients"
                )
            if not _is_irreducible(mod, p):
                raise FieldError(f"modulus {mod} is reducible over F_{p}")
            self.modulus = mod
            self._build_tables()
        self._trace = None

    def _build_tables(self):
        p, q, r = self.p, self.q, self.r
        coords = [self.coords(c) for c in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                prod = self.encode(_poly_mul_mod(coords[a], coords[b], self.modulus, p))
                mul[a][b] = prod
                mul[b][a] = prod
        inv = [0] * q
        for a in range(1, q):
            row = mul[a]
            for b in range(1, q):
                if row[b] == 1:
                    inv[a] = b
                    break
            else:
                raise FieldError(f"element {a} has no inverse; modulus is not irreducible")
        self._mul_table = mul
        self._inv_table = inv

    # -- code-level arithmetic ------------------------------------------------

    def coords(self, code: int):
        """Base-p digits of ``code``, low degree first, padded to length r."""
        out = []
        c = code
        for _ in range(self.r):
            out.append(c % self.p)
            c //= self.p
        return tuple(out)

    def encode(self, coords) -> int:
        code = 0
        for c in reversed(tuple(coords)):
            code = code * self.p + (c % self.p)
        return code

    def add(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        ca, cb = self.coords(a), self.coords(b)
        return self.encode((x + y) % self.p for x, y in zip(ca, cb))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.r == 1:
            return (-a) % self.p
        return self.encode((-x) % self.p for x in self.coords(a))

    def mul(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a * b) % self.p
        return self._mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("inversion of zero")
        if self.r == 1:
            return pow(a, self.p - 2, self.p)
        return self._inv_table[a]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def trace_code(self, a: int) -> int:
        """Field trace F_q -> F_p of the element with the given code."""
        if self.r == 1:
            return a
        if self._trace is None:
            table = []
            for c in range(self.q):
                acc, frob = 0, c
                for _ in range(self.r):
                    acc = self.add(acc, frob)
                    frob = self.pow(frob, self.p)
                coords = self.coords(acc)
                if any(coords[1:]):
                    raise FieldError("trace left the prime subfield; broken modulus?")
                table.append(coords[0])
            self._trace = table
        return self._trace[a]

    # -- element-level API ----------------------------------------------------

    def element(self, code: int) -> "FieldElement":
        return FieldElement(self, code % self.q)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self):
        return (FieldElement(self, c) for c in range(self.q))

    def nonzero_elements(self):
        return (FieldElement(self, c) for c in range(1, self.q))

    @classmethod
    def from_q(cls, q: int, modulus=None) -> "FieldSpec":
        """Build the field of order q, factoring q = p^r automatically."""
        if q < 3:
            raise FieldError(f"q = {q} is not an odd prime power >= 3")
        p = 2
        while q % p:
            p += 1
        r = 0
        m = q
        while m % p == 0:
            m //= p
            r += 1
        if m != 1:
            raise FieldError(f"q = {q} is not a prime power")
        return cls(p, r, modulus)

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.r == other.r
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        if self.r == 1:
            return f"FieldSpec(p={self.p})"
        return f"FieldSpec(p={self.p}, r={self.r}, modulus={self.modulus})"


class FieldElement:
    """An element of F_q, immutable; arithmetic via the shared FieldSpec."""

    __slots__ = ("spec", "code")

    def __init__(self, spec: FieldSpec, code: int):
        self.spec = spec
        self.code = code

    def _check(self, other) -> "FieldElement":
        if not isinstance(other, FieldElement):
            raise FieldError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldError("operands belong to different field specs")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.spec, self.spec.add(self.code, other.code))

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.spec, self.spec.sub(self.code, other.code))

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.spec, self.spec.mul(self.code, other.code))

    def __truediv__(self, other):
        other = self._check(other)
        return FieldElement(self.spec, self.spec.mul(self.code, self.spec.inv(other.code)))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.code))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.spec, self.spec.pow(self.code, e))

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and other.spec == self.spec
            and other.code == self.code
        )

    def __hash__(self):
        return hash((self.spec, self.code))

    def __int__(self):
        return self.code

    @property
    def coords(self):
        return self.spec.coords(self.code)

    def __repr__(self):
        if self.spec.r == 1:
            return f"F{self.spec.q}({self.code})"
        terms = []
        for i, c in enumerate(self.coords):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}t" if c != 1 else "t")
            else:
                terms.append(f"{c}t^{i}" if c != 1 else f"t^{i}")
        return f"F{self.spec.q}({' + '.join(terms) if terms else '0'})"


class CycValue:
    """An element of Q(zeta_p): exact rational coordinates over the power
    basis {1, zeta, ..., zeta^(p-2)}, always reduced."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs):
        self.p = p
        cs = tuple(Fraction(c) for c in coeffs)
        if len(cs) != p - 1:
            raise FieldError(f"expected {p - 1} coefficients, got {len(cs)}")
        self.coeffs = cs

    # -- constructors ----------------------------------------------------------

    @classmethod
    def rational(cls, p: int, x) -> "CycValue":
        return cls(p, (Fraction(x),) + (Fraction(0),) * (p - 2))

    @classmethod
    def zero(cls, p: int) -> "CycValue":
        return cls.rational(p, 0)

    @classmethod
    def one(cls, p: int) -> "CycValue":
        return cls.rational(p, 1)

    @classmethod
    def zeta_pow(cls, p: int, k: int) -> "CycValue":
        """zeta_p ** k, reduced."""
        acc = [Fraction(0)] * p
        acc[k % p] = Fraction(1)
        return cls(p, cls._reduce(p, acc))

    @staticmethod
    def _reduce(p: int, acc):
        # acc has length p (exponents 0..p-1); zeta^(p-1) = -(1 + ... + zeta^(p-2))
        top = acc[p - 1]
        if top:
            return tuple(acc[i] - top for i in range(p - 1))
        return tuple(acc[: p - 1])

    # -- arithmetic -------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycValue):
            if other.p == self.p:
                return self, other
            if other.is_rational():
                return self, CycValue.rational(self.p, other.as_rational())
            if self.is_rational():
                return CycValue.rational(other.p, self.as_rational()), other
            raise FieldError(f"mixing Q(zeta_{self.p}) with Q(zeta_{other.p})")
        if isinstance(other, (int, Fraction)):
            return self, CycValue.rational(self.p, other)
        return self, NotImplemented

    def __add__(self, other):
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return CycValue(a.p, (x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return CycValue(a.p, (x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return CycValue(self.p, (-x for x in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycValue(self.p, (x * f for x in self.coeffs))
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        p = a.p
        acc = [Fraction(0)] * p
        for i, ca in enumerate(a.coeffs):
            if ca:
                for j, cb in enumerate(b.coeffs):
                    if cb:
                        e = i + j
                        if e >= p:
                            e -= p
                        acc[e] += ca * cb
        return CycValue(p, self._reduce(p, acc))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycValue(self.p, (x / f for x in self.coeffs))
        if isinstance(other, CycValue) and other.is_rational():
            return self / other.as_rational()
        raise FieldError("division only by nonzero rationals")

    def conj(self) -> "CycValue":
        """Complex conjugation: zeta |-> zeta^(p-1)."""
        p = self.p
        acc = [Fraction(0)] * p
        for k, c in enumerate(self.coeffs):
            acc[(p - k) % p] += c
        return CycValue(p, self._reduce(p, acc))

    # -- predicates & conversions ------------------------------------------------

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise FieldError(f"{self!r} is not rational")
        return self.coeffs[0]

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycValue):
            return NotImplemented
        if self.p == other.p:
            return self.coeffs == other.coeffs
        return (
            self.is_rational()
            and other.is_rational()
            and self.coeffs[0] == other.coeffs[0]
        )

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.p, self.coeffs))

    def json_cell(self):
        """Integer coefficient vector plus a separate rational scale string."""
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // _gcd(den, c.denominator)
        return {
            "scale": f"1/{den}",
            "coeffs": [int(c * den) for c in self.coeffs],
        }

    @classmethod
    def from_json_cell(cls, p, cell) -> "CycValue":
        num, _, den = cell["scale"].partition("/")
        scale = Fraction(int(num), int(den) if den else 1)
        return cls(p, (scale * c for c in cell["coeffs"]))

    def __repr__(self):
        if self.is_rational():
            return f"Cyc({self.coeffs[0]})"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                z = "z" if k == 1 else f"z^{k}"
                parts.append(z if c == 1 else f"{c}*{z}")
        return f"Cyc(p={self.p}: {' + '.join(parts)})"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def theta(a: FieldElement) -> CycValue:
    """The fixed nontrivial additive character: zeta_p ** trace(a)."""
    return CycValue.zeta_pow(a.spec.p, a.spec.trace_code(a.code))
