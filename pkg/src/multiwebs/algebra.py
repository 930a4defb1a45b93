"""Exact scalar, polynomial and matrix arithmetic.

Scalars are Python ints and :class:`fractions.Fraction`.  Polynomials are
sparse dictionaries keyed by exponent tuples.  Everything here is immutable
after construction, so values can be shared freely between threads.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

Scalar = (int, Fraction)


def as_rational(x) -> Fraction:
    """Parse ``x`` (int, Fraction or a ``"p/q"`` string) into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rational_str(x) -> str:
    """Serialize a rational as ``"p/q"`` (``"p"`` when the denominator is 1)."""
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _normalize(c):
    # keep integers as ints; ints are much faster than Fractions
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _exact_div_scalar(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    return _normalize(Fraction(a) / b)


def _grlex_key(exp):
    return (sum(exp), exp)


class MultiPoly:
    """Sparse multivariate polynomial with rational coefficients.

    ``variables`` is an ordered tuple of names; ``terms`` maps exponent
    tuples (one entry per variable) to nonzero coefficients.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms=None):
        self.variables = tuple(variables)
        nv = len(self.variables)
        clean = {}
        if terms:
            for exp, c in dict(terms).items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != nv:
                    raise ValueError(f"exponent {exp} does not match {nv} variables")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                if c != 0:
                    clean[exp] = _normalize(c)
        self.terms = clean
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def const(cls, c, variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        exp = tuple(1 if v == name else 0 for v in variables)
        if sum(exp) != 1:
            raise ValueError(f"{name!r} is not one of {variables}")
        return cls(variables, {exp: 1})

    @classmethod
    def _raw(cls, variables, terms):
        p = cls.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError(
                    f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        if isinstance(other, Scalar):
            return MultiPoly.const(other, self.variables)
        return NotImplemented

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, 0) + c
            if s == 0:
                terms.pop(exp, None)
            else:
                terms[exp] = _normalize(s)
        return MultiPoly._raw(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            if other == 0:
                return MultiPoly._raw(self.variables, {})
            return MultiPoly._raw(
                self.variables, {e: _normalize(c * other) for e, c in self.terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.const(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, other) -> "MultiPoly":
        """Divide by ``other``, raising ValueError if the division is not exact."""
        if isinstance(other, Scalar):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return MultiPoly._raw(
                self.variables,
                {e: _exact_div_scalar(c, other) for e, c in self.terms.items()})
        other = self._lift(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if len(other.terms) == 1:
            (de, dc), = other.terms.items()
            out = {}
            for e, c in self.terms.items():
                q = tuple(a - b for a, b in zip(e, de))
                if min(q, default=0) < 0:
                    raise ValueError("inexact polynomial division")
                out[q] = _exact_div_scalar(c, dc)
            return MultiPoly._raw(self.variables, out)
        lead_e = max(other.terms, key=_grlex_key)
        lead_c = other.terms[lead_e]
        rem = dict(self.terms)
        quot = {}
        while rem:
            e = max(rem, key=_grlex_key)
            q = tuple(a - b for a, b in zip(e, lead_e))
            if min(q) < 0:
                raise ValueError("inexact polynomial division")
            qc = _exact_div_scalar(rem[e], lead_c)
            quot[q] = qc
            for de, dc in other.terms.items():
                ee = tuple(a + b for a, b in zip(q, de))
                s = rem.get(ee, 0) - qc * dc
                if s == 0:
                    rem.pop(ee, None)
                else:
                    rem[ee] = _normalize(s)
        return MultiPoly._raw(self.variables, quot)

    # -- queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.variables), 0)

    def coefficient(self, monomial: Sequence[int]):
        return coefficient(self, monomial)

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.variables.index(var)
        return max(e[i] for e in self.terms)

    def evaluate(self, values):
        """Evaluate at a point given as a mapping name -> value or a sequence."""
        if isinstance(values, dict):
            point = [values[v] for v in self.variables]
        else:
            point = list(values)
        total = 0
        for exp, c in self.terms.items():
            t = c
            for x, k in zip(point, exp):
                if k:
                    t = t * x ** k
            total = total + t
        return _normalize(total) if isinstance(total, Fraction) else total

    def __call__(self, *values):
        return self.evaluate(values)

    def substitute(self, name: str, value) -> "MultiPoly":
        """Substitute a scalar for one variable; the variable list is unchanged."""
        i = self.variables.index(name)
        terms: dict = {}
        for exp, c in self.terms.items():
            e = exp[:i] + (0,) + exp[i + 1:]
            terms[e] = terms.get(e, 0) + c * value ** exp[i]
        return MultiPoly(self.variables, terms)

    def diff(self, name: str) -> "MultiPoly":
        i = self.variables.index(name)
        terms = {}
        for exp, c in self.terms.items():
            if exp[i]:
                e = exp[:i] + (exp[i] - 1,) + exp[i + 1:]
                terms[e] = c * exp[i]
        return MultiPoly(self.variables, terms)

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def to_terms(self) -> list:
        """Canonical serialization: ``[[exponents...], "p/q"]`` in grlex order."""
        return [[list(e), rational_str(c)] for e, c in self.sorted_terms()]

    @classmethod
    def from_terms(cls, variables, items) -> "MultiPoly":
        return cls(variables, {tuple(e): as_rational(c) for e, c in items})

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, Scalar):
            if other == 0:
                return not self.terms
            return self.terms == {(0,) * len(self.variables): other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, exp) if k)
            if not mono:
                parts.append(rational_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{rational_str(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


class LaurentPoly:
    """Single-variable Laurent polynomial: integer exponent -> rational."""

    __slots__ = ("var", "terms")

    def __init__(self, var: str = "z", terms=None):
        self.var = var
        self.terms = {int(k): _normalize(c) for k, c in dict(terms or {}).items() if c != 0}

    @classmethod
    def monomial(cls, var: str, k: int, c=1) -> "LaurentPoly":
        return cls(var, {k: c})

    def _lift(self, other):
        if isinstance(other, LaurentPoly):
            if other.var != self.var:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, Scalar):
            return LaurentPoly(self.var, {0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return LaurentPoly(self.var, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.var, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                terms[k1 + k2] = terms.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly(self.var, terms)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def min_exponent(self) -> int:
        return min(self.terms) if self.terms else 0

    def max_exponent(self) -> int:
        return max(self.terms) if self.terms else 0

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``var**k``."""
        return LaurentPoly(self.var, {e + k: c for e, c in self.terms.items()})

    def evaluate(self, z):
        total = 0
        for k, c in self.terms.items():
            total = total + c * (z ** k if k >= 0 else 1 / z ** (-k))
        return total

    __call__ = evaluate

    def coefficient(self, k: int):
        return self.terms.get(k, 0)

    def to_poly(self) -> MultiPoly:
        """The polynomial ``var**(-min_exponent) * self`` as a one-variable MultiPoly."""
        lo = self.min_exponent()
        return MultiPoly((self.var,), {(k - lo,): c for k, c in self.terms.items()})

    @classmethod
    def from_poly(cls, p: MultiPoly, shift: int = 0) -> "LaurentPoly":
        (var,) = p.variables
        return cls(var, {e[0] + shift: c for e, c in p.terms.items()})

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.var == other.var and self.terms == other.terms
        if isinstance(other, Scalar):
            return self.terms == ({0: other} if other != 0 else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.var, frozenset(self.terms.items())))

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            if not mono:
                parts.append(rational_str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{rational_str(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def coefficient(p: MultiPoly, monomial: Sequence[int]):
    """Coefficient of the monomial with the given exponent vector (0 if absent)."""
    monomial = tuple(monomial)
    if len(monomial) != len(p.variables):
        raise ValueError(
            f"monomial {monomial} does not match variables {p.variables}")
    return p.terms.get(monomial, 0)


# ---------------------------------------------------------------------------
# matrices

def is_zero(x) -> bool:
    if isinstance(x, (MultiPoly, LaurentPoly)):
        return x.is_zero()
    return x == 0


class Matrix:
    """Dense row-major matrix over ints/Fractions, MultiPoly or LaurentPoly."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int, one=1) -> "Matrix":
        zero = one - one
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int, zero=0) -> "Matrix":
        return cls([[zero] * c for _ in range(r)])

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2))

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "Matrix(%s)" % [[str(x) for x in r] for r in self.rows]

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = list(zip(*other.rows))
            out = []
            for r in self.rows:
                row = []
                for col in cols:
                    s = 0
                    for a, b in zip(r, col):
                        if not is_zero(a) and not is_zero(b):
                            s = a * b + s
                    row.append(s)
                out.append(row)
            return Matrix(out)
        return Matrix([[a * other for a in r] for r in self.rows])

    def __rmul__(self, other):
        return Matrix([[other * a for a in r] for r in self.rows])

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.rows))

    def trace(self):
        s = 0
        for i in range(min(self.shape)):
            s = s + self.rows[i][i]
        return s

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix([[self.rows[i][j] for j in cols] for i in rows])

    def minor(self, rows: Sequence[int], cols: Sequence[int]):
        """Determinant of the submatrix on the given (ordered) rows and columns."""
        return det_fraction_free(self.submatrix(rows, cols))

    def is_identity(self) -> bool:
        return all((x == 1) if i == j else is_zero(x)
                   for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def det(self):
        return det_fraction_free(self)

    def inverse(self) -> "Matrix":
        """Inverse over the rationals by Gauss-Jordan; ValueError if singular."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
             for i, r in enumerate(self.rows)]
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                raise ValueError("singular matrix")
            a[c], a[p] = a[p], a[c]
            inv = 1 / a[c][c]
            a[c] = [x * inv for x in a[c]]
            for r in range(n):
                if r != c and a[r][c] != 0:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return Matrix([[_normalize(x) for x in r[n:]] for r in a])

    def map(self, f) -> "Matrix":
        return Matrix([[f(x) for x in r] for r in self.rows])

    def to_strings(self) -> list:
        return [[rational_str(x) for x in r] for r in self.rows]

    @classmethod
    def from_strings(cls, rows) -> "Matrix":
        return cls([[_normalize(as_rational(x)) for x in r] for r in rows])


def _bareiss(a: list, div) -> object:
    """Fraction-free elimination on a mutable square list-of-lists."""
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if is_zero(a[k][k]):
            p = next((r for r in range(k + 1, n) if not is_zero(a[r][k])), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                num = akk * rowi[j] - aik * rowk[j]
                rowi[j] = div(num, prev) if not is_zero(num) else num
            rowi[k] = 0
        prev = akk
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def _div_int(a, b):
    return a // b


def _div_poly(a, b):
    if isinstance(a, MultiPoly):
        return a.exact_div(b)
    if isinstance(b, MultiPoly):
        if b.is_constant():
            return _exact_div_scalar(a, b.constant_term())
        raise ValueError("inexact polynomial division")
    return _exact_div_scalar(a, b)


def det_fraction_free(m: Matrix | Sequence[Sequence]):
    """Exact determinant by Bareiss fraction-free elimination.

    Rational matrices are scaled to integer matrices row by row first.
    Laurent polynomial matrices are shifted row by row into polynomials and
    the accumulated power of the variable is restored at the end.
    """
    if not isinstance(m, Matrix):
        m = Matrix(m)
    if m.nrows != m.ncols:
        raise ValueError(f"determinant of non-square {m.nrows}x{m.ncols} matrix")
    n = m.nrows
    if n == 0:
        return 1
    entries = [x for r in m.rows for x in r]
    if any(isinstance(x, LaurentPoly) for x in entries):
        return _det_laurent(m)
    if any(isinstance(x, MultiPoly) for x in entries):
        variables = next(x.variables for x in entries if isinstance(x, MultiPoly))
        a = [[x if isinstance(x, MultiPoly) else MultiPoly.const(x, variables)
              for x in r] for r in m.rows]
        d = _bareiss(a, _div_poly)
        if not isinstance(d, MultiPoly):
            d = MultiPoly.const(d, variables)
        return d
    # rationals: clear denominators row by row and work over the integers
    scale = Fraction(1)
    a = []
    for r in m.rows:
        den = 1
        for x in r:
            if isinstance(x, Fraction):
                d = x.denominator
                den = den * d // _gcd(den, d)
        a.append([int(x * den) for x in r])
        scale /= den
    return _normalize(_bareiss(a, _div_int) * scale)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _det_laurent(m: Matrix) -> LaurentPoly:
    var = next(x.var for r in m.rows for x in r if isinstance(x, LaurentPoly))
    shift = 0
    rows = []
    for r in m.rows:
        lifted = [x if isinstance(x, LaurentPoly) else LaurentPoly(var, {0: x}) for x in r]
        lo = min((x.min_exponent() for x in lifted if x), default=0)
        shift += lo
        rows.append([MultiPoly((var,), {(k - lo,): c for k, c in x.terms.items()})
                     for x in lifted])
    d = _bareiss(rows, _div_poly)
    if not isinstance(d, MultiPoly):
        d = MultiPoly.const(d, (var,))
    return LaurentPoly.from_poly(d, shift)


def cofactor_det(m: Matrix | Sequence[Sequence]):
    """Determinant by first-row cofactor expansion (slow; used as a cross-check)."""
    rows = m.rows if isinstance(m, Matrix) else tuple(tuple(r) for r in m)
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        a = rows[0][j]
        if is_zero(a):
            continue
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * cofactor_det(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


def permutation_sign(seq: Sequence[int]) -> int:
    """Signature of a sequence of distinct comparable items (relative order)."""
    sign = 1
    s = list(seq)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                sign = -sign
    return sign


def compound_matrix(m: Matrix, k: int) -> Matrix:
    """The k-th compound (matrix of k x k minors, lexicographic index sets)."""
    idx = list(combinations(range(m.nrows), k))
    jdx = list(combinations(range(m.ncols), k))
    return Matrix([[det_fraction_free(m.submatrix(r, c)) for c in jdx] for r in idx])


def exterior_power_trace(m: Matrix, k: int):
    """Trace of the induced map on the k-th exterior power."""
    if k == 0:
        return 1
    return compound_matrix(m, k).trace()


# ---------------------------------------------------------------------------
# resultants

def sylvester_matrix(p: Sequence, q: Sequence) -> Matrix:
    """Sylvester matrix of p and q given as ascending coefficient lists."""
    dp, dq = len(p) - 1, len(q) - 1
    size = dp + dq
    zero = 0
    rows = []
    hp, hq = list(reversed(p)), list(reversed(q))
    for i in range(dq):
        rows.append([zero] * i + hp + [zero] * (size - i - len(hp)))
    for i in range(dp):
        rows.append([zero] * i + hq + [zero] * (size - i - len(hq)))
    return Matrix(rows)


def char_cubic(variables=("u", "v")) -> list:
    """Ascending coefficients of lambda^3 - 3u lambda^2 + 3v lambda - 1."""
    u = MultiPoly.var(variables[0], variables)
    v = MultiPoly.var(variables[1], variables)
    one = MultiPoly.const(1, variables)
    return [-one, 3 * v, -3 * u, one]


def product_over_char_roots(q: Sequence, variables=("u", "v")) -> MultiPoly:
    """Product of q(x) over the three roots x of lambda^3 - 3u lambda^2 + 3v lambda - 1.

    ``q`` is a list of ascending coefficients (scalars or MultiPolys in
    ``variables``).  Computed as the resultant Res(p, q), i.e. the
    determinant of the Sylvester matrix.
    """
    variables = tuple(variables)
    coeffs = [c if isinstance(c, MultiPoly) else MultiPoly.const(c, variables) for c in q]
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    if not coeffs:
        return MultiPoly(variables, {})
    if len(coeffs) == 1:
        return coeffs[0] ** 3
    syl = sylvester_matrix(char_cubic(variables), coeffs)
    return det_fraction_free(syl)
