"""Sparse multivariate polynomials with exact rational coefficients.

Variables are ``x{i}_{k}``: coordinate ``k`` (1-based) of vector copy ``i``
(1-based) of ``V``.  A polynomial carries its ambient shape ``(m, n)``, meaning
``m`` copies of an ``n``-dimensional space.

Monomials are stored as packed integers.  Each variable gets a 16-bit digit,
copy-major (``x1_1`` most significant), and one extra digit above all of them
holds the total degree.  Integer comparison of keys is then graded
lexicographic order on the flattened exponent vector, and multiplying
monomials is integer addition.  Coefficients are ``int`` or
``fractions.Fraction``; a Fraction with denominator 1 is always stored as int.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence, Union

from .errors import DegreeMismatch, ParseError, ShapeMismatch

Rational = Union[int, Fraction]

BITS = 16
_DIGIT = (1 << BITS) - 1
MAX_EXPONENT = _DIGIT


def rational(c) -> Rational:
    """Normalize a coefficient; floats are refused."""
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        return rational(Fraction(c))
    raise TypeError(f"exact coefficient required, got {type(c).__name__}")


class KeySpace:
    """Packing of exponent vectors over ``nvars`` variables into ints."""

    __slots__ = ("nvars", "deg_shift", "units", "shifts")

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.deg_shift = BITS * nvars
        self.shifts = tuple(BITS * (nvars - 1 - v) for v in range(nvars))
        self.units = tuple((1 << self.deg_shift) | (1 << s) for s in self.shifts)

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ShapeMismatch(f"expected {self.nvars} exponents, got {len(exps)}")
        key = 0
        deg = 0
        for e, s in zip(exps, self.shifts):
            if e < 0 or e > MAX_EXPONENT:
                raise ValueError(f"exponent {e} out of range")
            key |= e << s
            deg += e
        return key | (deg << self.deg_shift)

    def unpack(self, key: int) -> tuple[int, ...]:
        return tuple((key >> s) & _DIGIT for s in self.shifts)

    def degree(self, key: int) -> int:
        return key >> self.deg_shift

    def exponent(self, key: int, v: int) -> int:
        return (key >> self.shifts[v]) & _DIGIT


@lru_cache(maxsize=None)
def keyspace(nvars: int) -> KeySpace:
    return KeySpace(nvars)


# -- raw kernels on {key: coeff} dicts ------------------------------------


def _add_into(acc: dict, other: Mapping, scale: Rational = 1) -> None:
    for k, c in other.items():
        v = acc.get(k)
        if v is None:
            acc[k] = c * scale
        else:
            v += c * scale
            if v:
                acc[k] = v
            else:
                del acc[k]


def _mul(a: Mapping, b: Mapping) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: rational(c) if type(c) is Fraction else c for k, c in out.items() if c}


def _substitute(terms: Mapping, src: KeySpace, images: Sequence[Mapping], memo: dict | None = None) -> dict:
    """Replace source variable ``v`` by ``images[v]`` (a dict in some target key space).

    Monomial images are built incrementally and cached in ``memo``, which may
    be shared between calls that use the same ``images``.
    """
    if memo is None:
        memo = {}
    if 0 not in memo:
        memo[0] = {0: 1}
    shifts = src.shifts
    units = src.units
    nv = src.nvars

    def image(key: int) -> dict:
        r = memo.get(key)
        if r is not None:
            return r
        v = nv - 1
        while not (key >> shifts[v]) & _DIGIT:
            v -= 1
        r = _mul(image(key - units[v]), images[v])
        memo[key] = r
        return r

    out: dict = {}
    for key, c in terms.items():
        _add_into(out, image(key), c)
    return out


class Polynomial:
    """Immutable sparse polynomial on ``(V^n)^m``; see module docstring."""

    __slots__ = ("shape", "terms", "_hash")

    def __init__(self, shape: tuple[int, int], terms: Mapping[int, Rational] | None = None):
        m, n = shape
        if m < 1 or n < 1:
            raise ShapeMismatch(f"bad shape {shape}")
        self.shape = (int(m), int(n))
        if terms:
            self.terms = {k: rational(c) for k, c in terms.items() if c}
        else:
            self.terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, shape, terms: dict) -> "Polynomial":
        # trusted constructor: terms already normalized, no zeros
        p = object.__new__(cls)
        p.shape = shape
        p.terms = terms
        p._hash = None
        return p

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, shape) -> "Polynomial":
        return cls(tuple(shape))

    @classmethod
    def constant(cls, shape, c) -> "Polynomial":
        return cls(tuple(shape), {0: c})

    @classmethod
    def variable(cls, shape, i: int, k: int) -> "Polynomial":
        """The coordinate function ``x{i}_{k}`` (1-based)."""
        m, n = shape
        if not (1 <= i <= m and 1 <= k <= n):
            raise ShapeMismatch(f"x{i}_{k} not in shape {shape}")
        ks = keyspace(m * n)
        return cls._raw(tuple(shape), {ks.units[(i - 1) * n + (k - 1)]: 1})

    @classmethod
    def from_exponents(cls, shape, items: Mapping[Sequence[int], Rational] | Iterable) -> "Polynomial":
        """Build from ``{flattened exponent tuple: coefficient}``."""
        m, n = shape
        ks = keyspace(m * n)
        if isinstance(items, Mapping):
            items = items.items()
        acc: dict = {}
        for exps, c in items:
            _add_into(acc, {ks.pack(tuple(exps)): rational(c)})
        return cls(tuple(shape), acc)

    @classmethod
    def monomial(cls, shape, exps: Sequence[int], c: Rational = 1) -> "Polynomial":
        return cls.from_exponents(shape, {tuple(exps): c})

    # -- inspection ----------------------------------------------------------

    @property
    def m(self) -> int:
        return self.shape[0]

    @property
    def n(self) -> int:
        return self.shape[1]

    @property
    def keyspace(self) -> KeySpace:
        return keyspace(self.shape[0] * self.shape[1])

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        """Yield ``(exponent tuple, coefficient)`` in decreasing graded-lex order."""
        ks = self.keyspace
        for k in sorted(self.terms, reverse=True):
            yield ks.unpack(k), self.terms[k]

    def coefficient(self, exps: Sequence[int]) -> Rational:
        return self.terms.get(self.keyspace.pack(tuple(exps)), 0)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.terms) >> self.keyspace.deg_shift

    def degrees(self) -> set[int]:
        s = self.keyspace.deg_shift
        return {k >> s for k in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def multidegrees(self) -> set[tuple[int, ...]]:
        """Set of per-copy degree vectors of the monomials present."""
        m, n = self.shape
        ks = self.keyspace
        out = set()
        for k in self.terms:
            e = ks.unpack(k)
            out.add(tuple(sum(e[i * n:(i + 1) * n]) for i in range(m)))
        return out

    def leading_key(self) -> int:
        return max(self.terms)

    def leading_monomial(self) -> tuple[int, ...]:
        return self.keyspace.unpack(max(self.terms))

    def evaluate(self, point: Sequence) -> Rational:
        """Evaluate at a flattened point (length ``m*n``), exactly."""
        m, n = self.shape
        if len(point) != m * n:
            raise ShapeMismatch("point has wrong length")
        pt = [rational(x) for x in point]
        total: Rational = 0
        for exps, c in self.items():
            t = c
            for x, e in zip(pt, exps):
                if e:
                    t *= x ** e
            total += t
        return rational(total)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.shape, rational(other))

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        acc = dict(self.terms)
        _add_into(acc, other.terms)
        return Polynomial._raw(self.shape, {k: rational(c) for k, c in acc.items()})

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.shape, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        acc = dict(self.terms)
        _add_into(acc, other.terms, -1)
        return Polynomial._raw(self.shape, {k: rational(c) for k, c in acc.items()})

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = rational(c)
        if not c:
            return Polynomial.zero(self.shape)
        return Polynomial._raw(self.shape, {k: rational(v * c) for k, v in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        if self.terms and other.terms and self.degree + other.degree > MAX_EXPONENT:
            raise OverflowError("total degree exceeds packed-monomial capacity")
        return Polynomial._raw(self.shape, _mul(self.terms, other.terms))

    def __rmul__(self, other) -> "Polynomial":
        return self.scale(other)

    def __truediv__(self, c) -> "Polynomial":
        return self.scale(Fraction(1) / rational(c))

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.shape, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.shape == other.shape and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({0: rational(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution ------------------------------------------

    def partial(self, i: int, k: int) -> "Polynomial":
        """Formal partial derivative with respect to ``x{i}_{k}`` (1-based)."""
        m, n = self.shape
        if not (1 <= i <= m and 1 <= k <= n):
            raise ShapeMismatch(f"x{i}_{k} not in shape {self.shape}")
        ks = self.keyspace
        v = (i - 1) * n + (k - 1)
        s = ks.shifts[v]
        u = ks.units[v]
        out = {}
        for key, c in self.terms.items():
            e = (key >> s) & _DIGIT
            if e:
                out[key - u] = c * e
        return Polynomial._raw(self.shape, out)

    def substitute(self, images: Sequence["Polynomial"], shape=None, memo: dict | None = None) -> "Polynomial":
        """Replace the ``v``-th flattened variable by ``images[v]``.

        All images must share one target ``shape`` (default: this shape).
        """
        m, n = self.shape
        if len(images) != m * n:
            raise ShapeMismatch("need one image per variable")
        if shape is None:
            shape = images[0].shape if images else self.shape
        shape = tuple(shape)
        for im in images:
            if im.shape != shape:
                raise ShapeMismatch("images have inconsistent shapes")
        out = _substitute(self.terms, self.keyspace, [im.terms for im in images], memo)
        return Polynomial._raw(shape, {k: rational(c) for k, c in out.items()})

    def substitute_linear(self, M: Sequence[Sequence], copy: int) -> "Polynomial":
        """Compose with the linear change ``x_k -> sum_j M[k][j] x_j`` on one copy (1-based)."""
        m, n = self.shape
        if len(M) != n or any(len(row) != n for row in M):
            raise ShapeMismatch(f"matrix must be {n}x{n}")
        if not 1 <= copy <= m:
            raise ShapeMismatch(f"copy {copy} out of range")
        return self.substitute(linear_images(self.shape, {copy: M}))

    def act_linear(self, M: Sequence[Sequence]) -> "Polynomial":
        """Apply the same coordinate change ``M`` to every copy (diagonal)."""
        return self.substitute(linear_images(self.shape, {i: M for i in range(1, self.m + 1)}))

    def reshape_copies(self, shape) -> "Polynomial":
        """Re-embed into a shape with more copies (same ``n``); copy ``i`` stays copy ``i``."""
        m2, n2 = shape
        m, n = self.shape
        if n2 != n or m2 < m:
            raise ShapeMismatch(f"cannot embed {self.shape} into {shape}")
        src = self.keyspace
        dst = keyspace(m2 * n2)
        out = {}
        for key, c in self.terms.items():
            e = src.unpack(key) + (0,) * ((m2 - m) * n)
            out[dst.pack(e)] = c
        return Polynomial._raw(tuple(shape), out)

    # -- text ----------------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({self.shape}, {format_poly(self)!r})"


def linear_images(shape, matrices: Mapping[int, Sequence[Sequence]], target_shape=None) -> list[Polynomial]:
    """Variable images for per-copy linear substitutions.

    Row ``k`` of ``matrices[i]`` (copy ``i``, 1-based) lists the coefficients
    of the image of coordinate ``k`` in the target coordinates of the same
    copy.  Copies missing from ``matrices`` map identically.
    """
    m, n = shape
    if target_shape is None:
        target_shape = shape
    tm, tn = target_shape
    ks = keyspace(tm * tn)
    out = []
    for i in range(1, m + 1):
        M = matrices.get(i)
        for k in range(n):
            if M is None:
                out.append(Polynomial._raw(tuple(target_shape), {ks.units[(i - 1) * tn + k]: 1}))
                continue
            row = M[k]
            if len(row) != tn:
                raise ShapeMismatch("matrix row length does not match target coordinates")
            terms = {ks.units[(i - 1) * tn + j]: rational(a) for j, a in enumerate(row) if a}
            out.append(Polynomial._raw(tuple(target_shape), terms))
    return out


def monomials_of_degree(shape, d: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree ``d``, in decreasing graded-lex order.

    There are ``C(mn + d - 1, d)`` of them.
    """
    m, n = shape
    N = m * n
    if d < 0:
        raise ValueError("degree must be nonnegative")
    out = []
    # combinations_with_replacement over variable indices yields lex-increasing
    # index multisets; x1_1^d comes first, which is the largest exponent vector.
    for combo in combinations_with_replacement(range(N), d):
        e = [0] * N
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    assert len(out) == comb(N + d - 1, d)
    return out


def monomial_keys_of_degree(shape, d: int) -> list[int]:
    ks = keyspace(shape[0] * shape[1])
    return [ks.pack(e) for e in monomials_of_degree(shape, d)]


# -- text grammar -------------------------------------------------------------

_VAR = re.compile(r"x(\d+)_(\d+)(?:\^(\d+))?")


def _format_coeff(c: Rational) -> str:
    return str(c)


def format_poly(p: Polynomial) -> str:
    """Render ``p`` in the ``3/2*x1_2^3*x2_1`` grammar, terms in decreasing order."""
    if not p.terms:
        return "0"
    m, n = p.shape
    parts = []
    for exps, c in p.items():
        factors = []
        for v, e in enumerate(exps):
            if e:
                i, k = divmod(v, n)
                factors.append(f"x{i + 1}_{k + 1}" + (f"^{e}" if e > 1 else ""))
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if not factors:
            body = _format_coeff(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = _format_coeff(a) + "*" + "*".join(factors)
        parts.append((sign, body))
    s0, b0 = parts[0]
    out = ("-" if s0 == "-" else "") + b0
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def parse_poly(text: str, shape=None) -> Polynomial:
    """Parse the polynomial text grammar.

    ``poly := term (('+'|'-') term)*``, ``term := rational '*' vars | rational | vars``,
    ``var := 'x' copy '_' coord ['^' exp]``.  Whitespace is ignored.  Without
    ``shape`` the smallest shape containing every variable is used.
    """
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ParseError("empty polynomial")
    signed = []
    sign, start = 1, 0
    if s[0] in "+-":
        sign, start = (-1 if s[0] == "-" else 1), 1
    for pos in range(start, len(s) + 1):
        if pos == len(s) or (s[pos] in "+-" and pos > start and s[pos - 1] not in "*^/"):
            body = s[start:pos]
            if not body:
                raise ParseError(f"empty term in {text!r}")
            signed.append((sign, body))
            if pos < len(s):
                sign, start = (-1 if s[pos] == "-" else 1), pos + 1

    parsed = []
    max_i = max_k = 1
    for sign, body in signed:
        if not body:
            raise ParseError(f"empty term in {text!r}")
        coeff: Rational = sign
        factors = body.split("*")
        vars_ = []
        for j, f in enumerate(factors):
            mv = _VAR.fullmatch(f)
            if mv:
                i, k = int(mv.group(1)), int(mv.group(2))
                e = int(mv.group(3)) if mv.group(3) else 1
                if i < 1 or k < 1:
                    raise ParseError(f"variable indices are 1-based: {f!r}")
                vars_.append((i, k, e))
                max_i, max_k = max(max_i, i), max(max_k, k)
            elif j == 0 and re.fullmatch(r"\d+(/\d+)?", f):
                try:
                    coeff = coeff * Fraction(f)
                except ZeroDivisionError:
                    raise ParseError(f"zero denominator in {f!r}") from None
            else:
                raise ParseError(f"cannot parse factor {f!r}")
        parsed.append((coeff, vars_))

    if shape is None:
        shape = (max_i, max_k)
    m, n = shape
    if max_i > m or max_k > n:
        raise ParseError(f"variables exceed shape {tuple(shape)}")
    ks = keyspace(m * n)
    acc: dict = {}
    for coeff, vars_ in parsed:
        e = [0] * (m * n)
        for i, k, p in vars_:
            e[(i - 1) * n + (k - 1)] += p
        _add_into(acc, {ks.pack(e): rational(coeff)})
    return Polynomial(tuple(shape), acc)


def jacobian_determinant_at(polys: Sequence[Polynomial], point: Sequence) -> Rational:
    """det of the Jacobian of ``polys`` (shape ``(1, n)``) at ``point``, exactly."""
    n = len(polys)
    rows = []
    for f in polys:
        if f.shape != (1, n):
            raise ShapeMismatch("Jacobian needs n polynomials in n variables")
        rows.append([f.partial(1, k + 1).evaluate(point) for k in range(n)])
    return det(rows)


def det(M: Sequence[Sequence]) -> Rational:
    """Exact determinant by Gaussian elimination over Q."""
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        inv = 1 / A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] * inv
            if f:
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return rational(d)


def check_degree(p: Polynomial, d: int) -> None:
    if p.terms and p.degrees() != {d}:
        raise DegreeMismatch(f"expected homogeneous degree {d}, got degrees {sorted(p.degrees())}")
