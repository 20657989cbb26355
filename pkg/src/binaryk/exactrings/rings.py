"""Exact coefficient rings: prime fields, finite extensions, rationals, integers.

Every ring stores its elements in a canonical Python form so that ``==`` is
element equality and elements are hashable:

* ``Fp``: ``int`` in ``range(p)``
* ``Fq``: ``int`` in ``range(p**e)`` encoding the residue ``sum(c_i x^i)`` as
  ``sum(c_i p^i)`` (base-p digits, low to high)
* ``Q``: :class:`fractions.Fraction` (always reduced, positive denominator)
* ``Z``: ``int``
"""
from __future__ import annotations

from random import Random
import re
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterator

from ..errors import NotAField, ParseError

# full add/mul tables are built for extension fields up to this order
_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Ring:
    kind: str = ""
    is_field: bool = False
    characteristic: int = 0
    order: int | None = None

    # elementwise arithmetic; Q and Z use the native operators

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def is_zero(self, a) -> bool:
        return a == 0

    def is_unit(self, a) -> bool:
        return not self.is_zero(a)

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        raise NotImplementedError

    def parse(self, s: Any):
        raise NotImplementedError

    def to_str(self, a) -> str:
        """Wire form of an element, accepted back by :meth:`parse`."""
        return str(a)

    def display(self, a) -> str:
        """Human form used in CLI reports."""
        return self.to_str(a)

    def random(self, rng: Random, nonzero: bool = False):
        raise NotImplementedError

    def elements(self) -> Iterator:
        raise TypeError(f"{self} is infinite")

    def descriptor(self) -> dict[str, Any]:
        raise NotImplementedError

    def require_field(self) -> None:
        if not self.is_field:
            raise NotAField(f"operation needs a field, got {self}")

    def _key(self) -> tuple:
        return (self.kind,)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ring) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())


class PrimeField(Ring):
    kind = "Fp"
    is_field = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise ParseError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def from_int(self, n: int):
        return n % self.p

    def parse(self, s):
        if isinstance(s, int):
            return s % self.p
        s = str(s).strip()
        m = re.fullmatch(r"(-?\d+)(?:\s*mod\s*\d+)?", s)
        if m:
            return int(m.group(1)) % self.p
        m = re.fullmatch(r"(-?\d+)\s*/\s*(\d+)", s)
        if m:
            return self.div(int(m.group(1)) % self.p, int(m.group(2)) % self.p)
        raise ParseError(f"cannot parse {s!r} as an element of F{self.p}")

    def display(self, a) -> str:
        return f"{a} mod {self.p}"

    def random(self, rng, nonzero=False):
        return rng.randrange(1, self.p) if nonzero else rng.randrange(self.p)

    def elements(self):
        return iter(range(self.p))

    def descriptor(self):
        return {"ring": "Fp", "p": self.p}

    def _key(self):
        return ("Fp", self.p)

    def __repr__(self):
        return f"F{self.p}"


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m over F_p."""
    a = _poly_trim(list(a))
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        lead = a[-1]
        shift = len(a) - 1 - dm
        for k in range(dm + 1):
            a[shift + k] = (a[shift + k] - lead * m[k]) % p
        _poly_trim(a)
    return a


def _monics(degree: int, p: int) -> Iterator[list[int]]:
    for n in range(p**degree):
        c = []
        for _ in range(degree):
            n, r = divmod(n, p)
            c.append(r)
        yield c + [1]


def is_irreducible(modulus: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(modulus) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monics(d, p):
            if not _poly_mod(modulus, f, p):
                return False
    return True


class ExtensionField(Ring):
    kind = "Fq"
    is_field = True

    def __init__(self, p: int, modulus: list[int]):
        if not is_prime(p):
            raise ParseError(f"{p} is not prime")
        m = _poly_trim([int(c) % p for c in modulus])
        if len(m) < 2:
            raise ParseError("modulus must have degree >= 1")
        lead_inv = pow(m[-1], -1, p)
        m = [c * lead_inv % p for c in m]
        if not is_irreducible(m, p):
            raise ParseError(f"modulus {modulus} is reducible over F{p}")
        self.p = p
        self.modulus = tuple(m)
        self.degree = len(m) - 1
        self.characteristic = p
        self.order = p**self.degree

    # encoding helpers

    def digits(self, a: int) -> list[int]:
        c = []
        for _ in range(self.degree):
            a, r = divmod(a, self.p)
            c.append(r)
        return c

    def encode(self, c) -> int:
        n = 0
        for coeff in reversed(list(c)[: self.degree]):
            n = n * self.p + coeff % self.p
        return n

    def _mul_slow(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        return self.encode(_poly_mod(prod, list(self.modulus), self.p))

    def _add_slow(self, a: int, b: int) -> int:
        return self.encode([(x + y) % self.p for x, y in zip(self.digits(a), self.digits(b))])

    @cached_property
    def _tables(self):
        if self.order > _TABLE_LIMIT:
            return None
        q = self.order
        add = [[self._add_slow(a, b) for b in range(q)] for a in range(q)]
        mul = [[self._mul_slow(a, b) for b in range(q)] for a in range(q)]
        return add, mul

    def add(self, a, b):
        t = self._tables
        return t[0][a][b] if t else self._add_slow(a, b)

    def neg(self, a):
        return self.encode([-x % self.p for x in self.digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        t = self._tables
        return t[1][a][b] if t else self._mul_slow(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.pow(a, self.order - 2)

    def from_int(self, n: int):
        return n % self.p

    def embed_prime(self, a: int) -> int:
        """Constant polynomial with value a in F_p."""
        return a % self.p

    def parse(self, s):
        if isinstance(s, int):
            return s % self.p
        if isinstance(s, list):
            return self.encode([int(c) for c in s])
        text = str(s).replace(" ", "")
        if not text:
            raise ParseError("empty element")
        coeffs = [0] * self.degree
        for term in re.findall(r"[+-]?[^+-]+", text):
            m = re.fullmatch(r"([+-]?)(\d*)\*?(x(?:\^(\d+))?)?", term)
            if not m or (not m.group(2) and not m.group(3)):
                raise ParseError(f"cannot parse {s!r} as an element of {self}")
            c = int(m.group(2)) if m.group(2) else 1
            if m.group(1) == "-":
                c = -c
            power = 0 if not m.group(3) else int(m.group(4) or 1)
            poly = [0] * power + [c]
            reduced = _poly_mod(poly, list(self.modulus), self.p)
            for k, v in enumerate(reduced):
                coeffs[k] = (coeffs[k] + v) % self.p
        return self.encode(coeffs)

    def to_str(self, a) -> str:
        terms = []
        for k, c in reversed(list(enumerate(self.digits(a)))):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mon = "x" if k == 1 else f"x^{k}"
                terms.append(mon if c == 1 else f"{c}*{mon}")
        return "+".join(terms) or "0"

    def display(self, a) -> str:
        return f"{self.to_str(a)} in {self}"

    def random(self, rng, nonzero=False):
        return rng.randrange(1, self.order) if nonzero else rng.randrange(self.order)

    def elements(self):
        return iter(range(self.order))

    def descriptor(self):
        return {"ring": "Fq", "p": self.p, "modulus": list(self.modulus)}

    def _key(self):
        return ("Fq", self.p, self.modulus)

    def __repr__(self):
        return f"F{self.order}"


class Rationals(Ring):
    kind = "Q"
    is_field = True

    def inv(self, a):
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def mul(self, a, b):
        return Fraction(a * b)

    def from_int(self, n):
        return Fraction(n)

    def parse(self, s):
        if isinstance(s, (int, Fraction)):
            return Fraction(s)
        try:
            return Fraction(str(s).strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot parse {s!r} as a rational") from exc

    def random(self, rng, nonzero=False):
        while True:
            x = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            if x or not nonzero:
                return x

    def descriptor(self):
        return {"ring": "Q"}

    def __repr__(self):
        return "Q"


class Integers(Ring):
    kind = "Z"
    is_field = False

    def inv(self, a):
        if a in (1, -1):
            return a
        raise ZeroDivisionError(f"{a} is not a unit in Z")

    def div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ZeroDivisionError(f"{b} does not divide {a}")
        return q

    def is_unit(self, a):
        return a in (1, -1)

    def from_int(self, n):
        return int(n)

    def parse(self, s):
        if isinstance(s, int):
            return s
        try:
            return int(str(s).strip())
        except ValueError as exc:
            raise ParseError(f"cannot parse {s!r} as an integer") from exc

    def random(self, rng, nonzero=False):
        while True:
            x = rng.randint(-9, 9)
            if x or not nonzero:
                return x

    def descriptor(self):
        return {"ring": "Z"}

    def __repr__(self):
        return "Z"


QQ = Rationals()
ZZ = Integers()


def ring_from_descriptor(desc: dict[str, Any]) -> Ring:
    if not isinstance(desc, dict) or "ring" not in desc:
        raise ParseError(f"bad ring descriptor {desc!r}")
    kind = desc["ring"]
    try:
        if kind == "Fp":
            return PrimeField(int(desc["p"]))
        if kind == "Fq":
            return ExtensionField(int(desc["p"]), [int(c) for c in desc["modulus"]])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad ring descriptor {desc!r}") from exc
    if kind == "Q":
        return QQ
    if kind == "Z":
        return ZZ
    raise ParseError(f"unknown ring kind {kind!r}")


def ring_from_string(text: str) -> Ring:
    """Short names for the command line: F5, Q, Z, F4 (= F2[x]/(x^2+x+1)), F2^3 ..."""
    text = text.strip()
    if text in ("Q", "QQ"):
        return QQ
    if text in ("Z", "ZZ"):
        return ZZ
    m = re.fullmatch(r"F(\d+)(?:\^(\d+))?", text)
    if not m:
        raise ParseError(f"unknown ring {text!r}")
    base = int(m.group(1))
    if m.group(2) is not None:
        if not is_prime(base):
            raise ParseError(f"{base} is not prime")
        return conway_like_field(base, int(m.group(2)))
    p = next((f for f in range(2, base + 1) if base % f == 0), None)
    if p is None:
        raise ParseError(f"{text} is not a prime power")
    e, q = 0, 1
    while q < base:
        q *= p
        e += 1
    if q != base:
        raise ParseError(f"{text} is not a prime power")
    return conway_like_field(p, e)


def conway_like_field(p: int, e: int) -> Ring:
    """The extension of F_p of degree e cut out by the least irreducible monic."""
    if e == 1:
        return PrimeField(p)
    for f in _monics(e, p):
        if f[0] and is_irreducible(f, p):
            return ExtensionField(p, f)
    raise ParseError(f"no irreducible polynomial of degree {e} over F{p}")
