"""Exact arithmetic in prime-power fields F_q and their extensions F_{q^m}.

Elements are plain integers.  An element of F_q = F_p[x]/(f) is encoded by
packing its polynomial-basis coefficients as base-p digits (constant term is
the least significant digit); an element of F_{q^m} = F_q[y]/(g) packs its
coefficients (themselves F_q encodings) as base-q digits.  Zero encodes 0 and
one encodes 1 in every field.

Hot loops call the integer methods (``field.add(a, b)`` ...).  The
:class:`FieldElement` wrapper gives operator syntax and refuses to mix
operands from different fields.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from typing import Union

__all__ = [
    "FieldError",
    "FieldMismatchError",
    "Field",
    "ExtField",
    "FieldElement",
    "FqElem",
    "GF",
    "is_prime",
    "trace",
    "trace_dual_basis",
]


class FieldError(ValueError):
    """Invalid field parameters or an undefined field operation."""


class FieldMismatchError(FieldError):
    """Operands belong to different fields."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


# Monic irreducible moduli, constant term first.  For q = 2 and 3 these are
# the Conway polynomials; the others are fixed choices so encodings never
# depend on a search order.
_CONWAY: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (1, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
    (3, 1): (1, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 1): (3, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 1): (4, 1),
    (7, 2): (3, 6, 1),
}

# Largest order for which full add/mul tables are stored.
_TABLE_LIMIT = 256
# Largest order for which log/antilog tables are stored.
_LOG_LIMIT = 1 << 16


# ----------------------------------------------------------------------
# polynomial helpers over an abstract coefficient field
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class _CoeffOps:
    """Arithmetic on coefficient encodings: used to build a quotient field."""

    order: int
    add: Callable[[int, int], int]
    sub: Callable[[int, int], int]
    mul: Callable[[int, int], int]
    inv: Callable[[int], int]


def _prime_ops(p: int) -> _CoeffOps:
    return _CoeffOps(
        order=p,
        add=lambda a, b: (a + b) % p,
        sub=lambda a, b: (a - b) % p,
        mul=lambda a, b: (a * b) % p,
        inv=lambda a: pow(a, p - 2, p),
    )


def _trim(poly: list[int]) -> list[int]:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_mod(a: Sequence[int], f: Sequence[int], ops: _CoeffOps) -> list[int]:
    """Remainder of a modulo f (f need not be monic)."""
    a = _trim(list(a))
    df = len(f) - 1
    lead_inv = ops.inv(f[-1])
    while len(a) - 1 >= df and a:
        c = ops.mul(a[-1], lead_inv)
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = ops.sub(a[shift + i], ops.mul(c, fi))
        _trim(a)
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], ops: _CoeffOps) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] = ops.add(out[i + j], ops.mul(ai, bj))
    return _trim(out)


def _is_irreducible(f: Sequence[int], ops: _CoeffOps) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(f)//2."""
    deg = len(f) - 1
    if deg < 1 or f[-1] == 0:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(ops.order), repeat=d):
            if not _poly_mod(f, list(low) + [1], ops):
                return False
    return True


def _first_irreducible(degree: int, ops: _CoeffOps) -> tuple[int, ...]:
    for low in itertools.product(range(ops.order), repeat=degree):
        f = tuple(reversed(low)) + (1,)
        if f[0] != 0 and _is_irreducible(f, ops):
            return f
    raise FieldError(f"no irreducible polynomial of degree {degree}")  # pragma: no cover


def _digits(value: int, radix: int, length: int) -> list[int]:
    out = []
    for _ in range(length):
        value, r = divmod(value, radix)
        out.append(r)
    return out


def _undigits(digits: Iterable[int], radix: int) -> int:
    value = 0
    for d in reversed(list(digits)):
        value = value * radix + d
    return value


# ----------------------------------------------------------------------
# fields
# ----------------------------------------------------------------------


# tables shared by every instance of the same field, keyed by construction data
_TABLE_CACHE: dict[tuple, dict] = {}


class _QuotientField:
    """Finite field realised as coeffs[t]/(modulus) with integer encodings."""

    p: int
    order: int
    degree: int
    modulus: tuple[int, ...]

    def __init__(self, ops: _CoeffOps, degree: int, modulus: Sequence[int], cache_key: tuple) -> None:
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != degree + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {degree}, got {list(modulus)}")
        if any(not 0 <= c < ops.order for c in modulus):
            raise FieldError(f"modulus coefficients must lie in [0, {ops.order})")
        self._ops = ops
        self._radix = ops.order
        self.degree = degree
        self.modulus = modulus
        self.order = ops.order**degree
        key = (*cache_key, modulus)
        cached = _TABLE_CACHE.get(key)
        if cached is not None:
            self.__dict__.update(cached)
            return
        if not _is_irreducible(modulus, ops):
            raise FieldError(f"modulus {list(modulus)} is reducible")
        self._add_table: list[list[int]] | None = None
        self._mul_table: list[list[int]] | None = None
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._neg = [self._slow_neg(a) for a in range(self.order)] if self.order <= _LOG_LIMIT else None
        if self.order <= _TABLE_LIMIT:
            self._add_table = [[self._slow_add(a, b) for b in range(self.order)] for a in range(self.order)]
        if self.order <= _LOG_LIMIT:
            self._build_log_tables()
            if self.order <= _TABLE_LIMIT:
                self._mul_table = [[self._log_mul(a, b) for b in range(self.order)] for a in range(self.order)]
        _TABLE_CACHE[key] = {
            name: getattr(self, name)
            for name in ("_add_table", "_mul_table", "_exp", "_log", "_neg", "primitive_element")
            if hasattr(self, name)
        }

    # -- slow reference arithmetic on digit vectors -------------------
    def _slow_add(self, a: int, b: int) -> int:
        da = _digits(a, self._radix, self.degree)
        db = _digits(b, self._radix, self.degree)
        return _undigits((self._ops.add(x, y) for x, y in zip(da, db)), self._radix)

    def _slow_neg(self, a: int) -> int:
        da = _digits(a, self._radix, self.degree)
        return _undigits((self._ops.sub(0, x) for x in da), self._radix)

    def _slow_mul(self, a: int, b: int) -> int:
        pa = _trim(_digits(a, self._radix, self.degree))
        pb = _trim(_digits(b, self._radix, self.degree))
        r = _poly_mod(_poly_mul(pa, pb, self._ops), self.modulus, self._ops)
        return _undigits(r, self._radix)

    def _build_log_tables(self) -> None:
        n = self.order - 1
        for g in range(2, self.order) if self.order > 2 else [1]:
            exp = [1] * n
            x = 1
            seen_one = False
            for i in range(1, n):
                x = self._slow_mul(x, g)
                if x == 1:
                    seen_one = True
                    break
                exp[i] = x
            if not seen_one:
                break
        else:  # pragma: no cover
            raise FieldError("no primitive element found")
        log = [0] * self.order
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp + exp
        self._log = log
        self.primitive_element = g

    def _log_mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    # -- public integer arithmetic ------------------------------------
    @property
    def q(self) -> int:
        return self.order

    def __len__(self) -> int:
        return self.order

    def elements(self) -> range:
        return range(self.order)

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.order:
            raise FieldError(f"{a!r} is not an element of {self}")
        return a

    def add(self, a: int, b: int) -> int:
        if self._add_table is not None:
            return self._add_table[a][b]
        if self.p == 2:
            return a ^ b
        return self._slow_add(a, b)

    def neg(self, a: int) -> int:
        if self._neg is not None:
            return self._neg[a]
        return self._slow_neg(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a][b]
        if self._exp is not None:
            return self._log_mul(a, b)
        return self._slow_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self}")
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        if a == 0:
            return 1 if k == 0 else 0
        if self._exp is not None:
            return self._exp[(self._log[a] * k) % (self.order - 1)]
        result = 1
        while k:
            if k & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            k >>= 1
        return result

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(self.check(int(value)), self)


class Field(_QuotientField):
    """The field F_q with q = p**e, built as F_p[x]/(modulus).

    >>> F4 = Field(2, 2)
    >>> F4.mul(2, 2)   # x * x = x + 1
    3
    """

    def __init__(self, p: int, e: int = 1, modulus: Sequence[int] | None = None) -> None:
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if e < 1:
            raise FieldError(f"extension degree must be >= 1, got {e}")
        self.p = p
        self.e = e
        ops = _prime_ops(p)
        if modulus is None:
            modulus = _CONWAY.get((p, e)) or _first_irreducible(e, ops)
        super().__init__(ops, e, modulus, ("F", p, e))

    @classmethod
    def from_order(cls, q: int) -> Field:
        """Field with q elements using the built-in modulus."""
        for p in range(2, q + 1):
            if q % p == 0:
                break
        else:
            raise FieldError(f"{q} is not a prime power")
        e, r = 0, q
        while r % p == 0:
            r //= p
            e += 1
        if r != 1 or not is_prime(p):
            raise FieldError(f"{q} is not a prime power")
        return cls(p, e)

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return super().add(a, b)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return super().neg(a)

    def spec(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self) -> int:
        return hash(("Field", self.p, self.e, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.order})"

    def __reduce__(self):
        return (Field, (self.p, self.e, self.modulus))


class ExtField(_QuotientField):
    """The extension F_{q^m} = F_q[y]/(modulus) of a base :class:`Field`."""

    def __init__(self, base: Field, m: int, modulus: Sequence[int] | None = None) -> None:
        if m < 2:
            raise FieldError(f"extension degree m must be >= 2, got {m}")
        self.base = base
        self.m = m
        self.p = base.p
        ops = _CoeffOps(base.order, base.add, base.sub, base.mul, base.inv)
        if modulus is None:
            if base.e == 1 and (base.p, m) in _CONWAY:
                modulus = _CONWAY[base.p, m]
            else:
                modulus = _first_irreducible(m, ops)
        super().__init__(ops, m, modulus, ("E", base.p, base.e, base.modulus, m))

    def add(self, a: int, b: int) -> int:
        if self._add_table is None and self.p == 2:
            return a ^ b
        return super().add(a, b)

    def coefficients(self, x: int) -> list[int]:
        """Coordinates of x in the polynomial basis 1, y, ..., y^(m-1)."""
        return _digits(x, self.base.order, self.m)

    def from_coefficients(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.m:
            raise FieldError(f"expected {self.m} coefficients")
        return _undigits((self.base.check(c) for c in coeffs), self.base.order)

    def embed(self, a: int) -> int:
        """Image of a base-field element (it is its own constant term)."""
        return self.base.check(a)

    def polynomial_basis(self) -> list[int]:
        return [self.base.order**i for i in range(self.m)]

    def frobenius(self, x: int, power: int = 1) -> int:
        """x -> x^(q^power)."""
        return self.pow(x, self.base.order**power) if x else 0

    def trace(self, x: int) -> int:
        return trace(self, x)

    def spec(self) -> dict:
        d = self.base.spec()
        d.update({"m": self.m, "ext_modulus": list(self.modulus)})
        return d

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ExtField) and (self.base, self.m, self.modulus) == (other.base, other.m, other.modulus)

    def __hash__(self) -> int:
        return hash(("ExtField", self.base, self.m, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.base.order}^{self.m})"

    def __reduce__(self):
        return (ExtField, (self.base, self.m, self.modulus))


AnyField = Union[Field, ExtField]


def GF(q: int, m: int | None = None) -> AnyField:
    """Shorthand: ``GF(4)`` is F_4, ``GF(2, 4)`` is F_16 viewed over F_2."""
    base = Field.from_order(q)
    return base if m is None else ExtField(base, m)


@dataclass(frozen=True)
class FieldElement:
    """A field element with operator syntax.  Mixing fields raises."""

    value: int
    field: AnyField

    def _other(self, other: FieldElement | int) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine elements of {self.field} and {other.field}")
            return other.value
        if isinstance(other, int) and other in (0, 1):
            return other
        raise FieldMismatchError(f"cannot combine {self.field} element with {other!r}")

    def _wrap(self, v: int) -> FieldElement:
        return FieldElement(v, self.field)

    def __add__(self, other):
        return self._wrap(self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return self._wrap(self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.field.div(self.value, self._other(other)))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, k: int):
        return self._wrap(self.field.pow(self.value, k))

    def inverse(self) -> FieldElement:
        return self._wrap(self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field!r}({self.value})"


FqElem = FieldElement


def trace(ext: ExtField, x: int) -> int:
    """Tr(x) = x + x^q + ... + x^(q^(m-1)), returned as a base-field encoding."""
    ext.check(x)
    total = 0
    y = x
    for _ in range(ext.m):
        total = ext.add(total, y)
        y = ext.pow(y, ext.base.order) if y else 0
    if total >= ext.base.order:  # pragma: no cover - would mean broken arithmetic
        raise FieldError(f"trace of {x} left the base field")
    return total


def trace_dual_basis(ext: ExtField, basis: Sequence[int]) -> list[int]:
    """Basis (d_j) with Tr(b_i * d_j) = [i == j], via the inverse Gram matrix."""
    from .linalg import FqMatrix, inverse, SingularMatrixError

    m = ext.m
    if len(basis) != m:
        raise FieldError(f"a basis of {ext} over {ext.base} has {m} elements, got {len(basis)}")
    gram = FqMatrix(ext.base, m, m, [trace(ext, ext.mul(a, b)) for a in basis for b in basis])
    try:
        ginv = inverse(gram)
    except SingularMatrixError:
        raise FieldError("elements do not form a basis (singular trace Gram matrix)") from None
    dual = []
    for j in range(m):
        acc = 0
        for k in range(m):
            acc = ext.add(acc, ext.mul(ext.embed(ginv[j, k]), basis[k]))
        dual.append(acc)
    return dual
