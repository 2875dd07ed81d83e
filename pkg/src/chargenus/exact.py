"""Exact coefficient arithmetic.

Everything downstream (Chow rings, genera, motivic measures, stringy
invariants) is built on the types in this module:

  Rational     -- arbitrary-precision rationals; this is `fractions.Fraction`,
                  which already keeps gcd-reduced form with positive
                  denominator.
  LaurentPolyY -- sparse Laurent polynomials in one variable (usually y),
                  a dict from integer exponent to nonzero Fraction.
  CoeffY       -- elements of Q[y][(1+y)^-1], stored as poly/(1+y)^k with
                  the normal form "poly not divisible by 1+y unless k=0".
  BiPolyUV     -- sparse polynomials in two variables u, v with Fraction
                  coefficients and non-negative exponents.
  GeomFactor   -- the geometric sum g_a(t) = 1 + t + ... + t^a, stored by
                  its term count a+1.  These are the only denominators any
                  formula in scope produces.
  RatFunc      -- numerator / product of GeomFactors, with the factor
                  variable t instantiated either as u*v (two-variable
                  numerators) or as c*y (one-variable numerators).

No floating point anywhere; equality of rational functions is decided by
exact cross-multiplication, never by reduction to a canonical fraction.

The module also implements the shared polynomial text grammar: terms
`c`, `c*y^k`, `c*u^a*v^b` joined by `+`/`-`, whitespace insignificant,
coefficients decimal integers or fractions `p/q`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

Rational = Fraction

Scalar = Union[int, Fraction]


class ExactError(ValueError):
    """Raised on contract violations in the exact-arithmetic layer."""


def rational(p: int, q: int = 1) -> Fraction:
    """Exact rational p/q in canonical form."""
    if q == 0:
        raise ExactError("division by zero")
    return Fraction(p, q)


def rational_arith(a: Fraction, b: Fraction, op: str) -> Fraction:
    """Exact rational arithmetic; op is one of add, sub, mul, div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ExactError("division by zero")
        return a / b
    raise ExactError(f"unknown op {op!r}")


def _as_fraction(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# Laurent polynomials in one variable
# ---------------------------------------------------------------------------


class LaurentPolyY:
    """Sparse Laurent polynomial in one variable with Fraction coefficients.

    Immutable; zero coefficients are never stored.  The variable is y by
    convention but the same type doubles as polynomials in t or w (a print
    symbol is chosen at formatting time).
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Optional[Mapping[int, Scalar]] = None):
        c: dict[int, Fraction] = {}
        if coeffs:
            for e, v in coeffs.items():
                fv = _as_fraction(v)
                if fv != 0:
                    c[int(e)] = fv
        self._c = c

    # -- constructors

    @classmethod
    def zero(cls) -> "LaurentPolyY":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPolyY":
        return cls({0: 1})

    @classmethod
    def const(cls, v: Scalar) -> "LaurentPolyY":
        return cls({0: v})

    @classmethod
    def y_power(cls, k: int, coeff: Scalar = 1) -> "LaurentPolyY":
        return cls({k: coeff})

    # -- inspection

    def items(self) -> list[tuple[int, Fraction]]:
        return sorted(self._c.items())

    def coeff(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def min_exp(self) -> int:
        if not self._c:
            return 0
        return min(self._c)

    @property
    def max_exp(self) -> int:
        if not self._c:
            return 0
        return max(self._c)

    @property
    def is_polynomial(self) -> bool:
        return self.min_exp >= 0

    def constant_value(self) -> Optional[Fraction]:
        """The value as a Fraction if the poly is constant, else None."""
        if not self._c:
            return Fraction(0)
        if set(self._c) == {0}:
            return self._c[0]
        return None

    # -- arithmetic

    def __add__(self, other) -> "LaurentPolyY":
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._c)
        for e, v in other._c.items():
            s = out.get(e, Fraction(0)) + v
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        r = LaurentPolyY.__new__(LaurentPolyY)
        r._c = out
        return r

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolyY":
        r = LaurentPolyY.__new__(LaurentPolyY)
        r._c = {e: -v for e, v in self._c.items()}
        return r

    def __sub__(self, other) -> "LaurentPolyY":
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPolyY":
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "LaurentPolyY":
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                s = out.get(e, Fraction(0)) + v1 * v2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        r = LaurentPolyY.__new__(LaurentPolyY)
        r._c = out
        return r

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPolyY":
        if n < 0:
            raise ExactError("negative power of a polynomial")
        result = LaurentPolyY.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = _coerce_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def shift(self, k: int) -> "LaurentPolyY":
        """Multiply by y^k."""
        r = LaurentPolyY.__new__(LaurentPolyY)
        r._c = {e + k: v for e, v in self._c.items()}
        return r

    def evaluate(self, y0: Fraction) -> Fraction:
        y0 = _as_fraction(y0)
        if y0 == 0 and self.min_exp < 0:
            raise ExactError("evaluating a Laurent polynomial with poles at 0")
        total = Fraction(0)
        for e, v in self._c.items():
            total += v * y0**e
        return total

    def substitute_monomial(self, coeff: Scalar, power: int) -> "LaurentPolyY":
        """Substitute y -> coeff * y^power (coeff nonzero)."""
        c = _as_fraction(coeff)
        if c == 0:
            raise ExactError("substitution image must be a nonzero monomial")
        out: dict[int, Fraction] = {}
        for e, v in self._c.items():
            ee = e * power
            s = out.get(ee, Fraction(0)) + v * c**e
            if s:
                out[ee] = s
            else:
                out.pop(ee, None)
        r = LaurentPolyY.__new__(LaurentPolyY)
        r._c = out
        return r

    def div_one_plus_y(self) -> Optional["LaurentPolyY"]:
        """Exact division by (1+y); None if not divisible."""
        if self.is_zero:
            return self
        m = self.min_exp
        top = self.max_exp - m
        a = [Fraction(0)] * (top + 1)
        for e, v in self._c.items():
            a[e - m] = v
        # divide the shifted polynomial sum a_i y^i by (y + 1), top down
        b = [Fraction(0)] * top
        carry = Fraction(0)
        for i in range(top, 0, -1):
            b[i - 1] = a[i] - carry
            carry = b[i - 1]
        if a[0] - carry != 0:
            return None
        return LaurentPolyY({i + m: v for i, v in enumerate(b)})

    # -- formatting

    def format(self, symbol: str = "y", spaced: bool = True) -> str:
        return _format_terms(
            [((e,), v) for e, v in self.items()],
            lambda exps: _monomial_str([(symbol, exps[0])]),
            spaced,
        )

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"LaurentPolyY({self.format()!r})"


def _coerce_laurent(x) -> "LaurentPolyY":
    if isinstance(x, LaurentPolyY):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPolyY.const(x)
    return NotImplemented


ONE_PLUS_Y = LaurentPolyY({0: 1, 1: 1})


def laurent_exact_div(num: LaurentPolyY, den: LaurentPolyY) -> Optional[LaurentPolyY]:
    """Exact quotient num/den in the Laurent ring; None if not divisible."""
    if den.is_zero:
        raise ExactError("division by the zero polynomial")
    if num.is_zero:
        return LaurentPolyY.zero()
    shift = num.min_exp - den.min_exp
    n = {e - num.min_exp: v for e, v in num._c.items()}
    d = {e - den.min_exp: v for e, v in den._c.items()}
    dtop = max(d)
    dlead = d[dtop]
    q: dict[int, Fraction] = {}
    rem = dict(n)
    while rem:
        rtop = max(rem)
        if rtop < dtop:
            return None
        c = rem[rtop] / dlead
        qe = rtop - dtop
        q[qe] = c
        for e, v in d.items():
            ee = e + qe
            s = rem.get(ee, Fraction(0)) - c * v
            if s:
                rem[ee] = s
            else:
                rem.pop(ee, None)
    return LaurentPolyY({e + shift: v for e, v in q.items()})


# ---------------------------------------------------------------------------
# The coefficient ring Q[y][(1+y)^-1]
# ---------------------------------------------------------------------------


class CoeffY:
    """poly / (1+y)^k in normal form (poly not divisible by 1+y unless k=0)."""

    __slots__ = ("poly", "k")

    def __init__(self, poly: LaurentPolyY, k: int = 0):
        if k < 0:
            raise ExactError("onePlusYPower must be non-negative")
        if poly.is_zero:
            poly, k = LaurentPolyY.zero(), 0
        while k > 0:
            q = poly.div_one_plus_y()
            if q is None:
                break
            poly, k = q, k - 1
        self.poly = poly
        self.k = k

    @classmethod
    def from_scalar(cls, v: Scalar) -> "CoeffY":
        return cls(LaurentPolyY.const(v))

    @classmethod
    def zero(cls) -> "CoeffY":
        return cls(LaurentPolyY.zero())

    @classmethod
    def one(cls) -> "CoeffY":
        return cls(LaurentPolyY.one())

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def __add__(self, other) -> "CoeffY":
        other = _coerce_coeffy(other)
        if other is NotImplemented:
            return NotImplemented
        k = max(self.k, other.k)
        p = self.poly * ONE_PLUS_Y ** (k - self.k) + other.poly * ONE_PLUS_Y ** (k - other.k)
        return CoeffY(p, k)

    __radd__ = __add__

    def __neg__(self) -> "CoeffY":
        r = CoeffY.__new__(CoeffY)
        r.poly, r.k = -self.poly, self.k
        return r

    def __sub__(self, other) -> "CoeffY":
        other = _coerce_coeffy(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "CoeffY":
        other = _coerce_coeffy(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "CoeffY":
        other = _coerce_coeffy(other)
        if other is NotImplemented:
            return NotImplemented
        return CoeffY(self.poly * other.poly, self.k + other.k)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CoeffY":
        if n < 0:
            raise ExactError("negative power in CoeffY")
        result = CoeffY.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        other = _coerce_coeffy(other)
        if other is NotImplemented:
            return NotImplemented
        # normal form is unique, so structural equality decides
        return self.k == other.k and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.poly, self.k))

    def div_one_plus_y_pow(self, j: int) -> "CoeffY":
        """Divide by (1+y)^j, renormalizing."""
        if j < 0:
            raise ExactError("negative twist power")
        return CoeffY(self.poly, self.k + j)

    def as_polynomial(self) -> LaurentPolyY:
        """The underlying polynomial; error if a (1+y) denominator survives."""
        if self.k != 0:
            raise ExactError(f"residual (1+y)^{self.k} denominator")
        return self.poly

    def constant_value(self) -> Optional[Fraction]:
        if self.k != 0:
            return None
        return self.poly.constant_value()

    def evaluate(self, y0: Fraction) -> Fraction:
        y0 = _as_fraction(y0)
        if self.k > 0 and y0 == -1:
            raise ExactError("pole at y = -1")
        return self.poly.evaluate(y0) / (1 + y0) ** self.k

    def format(self, spaced: bool = True) -> str:
        base = self.poly.format(spaced=spaced)
        if self.k == 0:
            return base
        return f"({self.poly.format(spaced=False)})/(1+y)^{self.k}"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"CoeffY({self.format()!r})"


def _coerce_coeffy(x) -> "CoeffY":
    if isinstance(x, CoeffY):
        return x
    if isinstance(x, (int, Fraction)):
        return CoeffY.from_scalar(x)
    if isinstance(x, LaurentPolyY):
        return CoeffY(x)
    return NotImplemented


def coeffy_normalize(p: LaurentPolyY, k: int) -> CoeffY:
    """Normal form of p/(1+y)^k (repeated exact division while possible)."""
    if k < 0:
        raise ExactError("k must be non-negative")
    return CoeffY(p, k)


# ---------------------------------------------------------------------------
# Polynomials in u, v
# ---------------------------------------------------------------------------


class BiPolyUV:
    """Sparse polynomial in u and v, exponents non-negative."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Optional[Mapping[tuple[int, int], Scalar]] = None):
        c: dict[tuple[int, int], Fraction] = {}
        if coeffs:
            for (p, q), v in coeffs.items():
                if p < 0 or q < 0:
                    raise ExactError("BiPolyUV exponents must be non-negative")
                fv = _as_fraction(v)
                if fv != 0:
                    c[(int(p), int(q))] = fv
        self._c = c

    @classmethod
    def zero(cls) -> "BiPolyUV":
        return cls()

    @classmethod
    def one(cls) -> "BiPolyUV":
        return cls({(0, 0): 1})

    @classmethod
    def const(cls, v: Scalar) -> "BiPolyUV":
        return cls({(0, 0): v})

    @classmethod
    def u(cls) -> "BiPolyUV":
        return cls({(1, 0): 1})

    @classmethod
    def v(cls) -> "BiPolyUV":
        return cls({(0, 1): 1})

    @classmethod
    def uv_power(cls, k: int, coeff: Scalar = 1) -> "BiPolyUV":
        return cls({(k, k): coeff})

    def items(self) -> list[tuple[tuple[int, int], Fraction]]:
        # degree-then-v order, so `u` prints before `v`
        return sorted(self._c.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0][1]))

    @property
    def is_zero(self) -> bool:
        return not self._c

    def total_degree(self) -> int:
        if not self._c:
            return 0
        return max(p + q for p, q in self._c)

    def __add__(self, other) -> "BiPolyUV":
        other = _coerce_bipoly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._c)
        for m, v in other._c.items():
            s = out.get(m, Fraction(0)) + v
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        r = BiPolyUV.__new__(BiPolyUV)
        r._c = out
        return r

    __radd__ = __add__

    def __neg__(self) -> "BiPolyUV":
        r = BiPolyUV.__new__(BiPolyUV)
        r._c = {m: -v for m, v in self._c.items()}
        return r

    def __sub__(self, other) -> "BiPolyUV":
        other = _coerce_bipoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "BiPolyUV":
        other = _coerce_bipoly(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "BiPolyUV":
        other = _coerce_bipoly(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple[int, int], Fraction] = {}
        for (p1, q1), v1 in self._c.items():
            for (p2, q2), v2 in other._c.items():
                m = (p1 + p2, q1 + q2)
                s = out.get(m, Fraction(0)) + v1 * v2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        r = BiPolyUV.__new__(BiPolyUV)
        r._c = out
        return r

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPolyUV":
        if n < 0:
            raise ExactError("negative power of a polynomial")
        result = BiPolyUV.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = _coerce_bipoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def flip_signs(self) -> "BiPolyUV":
        """Substitute (u, v) -> (-u, -v)."""
        r = BiPolyUV.__new__(BiPolyUV)
        r._c = {(p, q): v if (p + q) % 2 == 0 else -v for (p, q), v in self._c.items()}
        return r

    def evaluate(self, u0: Fraction, v0: Fraction) -> Fraction:
        u0, v0 = _as_fraction(u0), _as_fraction(v0)
        total = Fraction(0)
        for (p, q), v in self._c.items():
            total += v * u0**p * v0**q
        return total

    def to_univariate(
        self,
        u_image: tuple[Scalar, int],
        v_image: tuple[Scalar, int],
    ) -> LaurentPolyY:
        """Substitute u -> cu*Y^eu, v -> cv*Y^ev into a single variable Y."""
        cu, eu = _as_fraction(u_image[0]), u_image[1]
        cv, ev = _as_fraction(v_image[0]), v_image[1]
        out: dict[int, Fraction] = {}
        for (p, q), v in self._c.items():
            e = eu * p + ev * q
            s = out.get(e, Fraction(0)) + v * cu**p * cv**q
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPolyY(out)

    def mul_uv_power(self, s: int) -> "BiPolyUV":
        if s < 0:
            raise ExactError("use div_uv_power for negative shifts")
        r = BiPolyUV.__new__(BiPolyUV)
        r._c = {(p + s, q + s): v for (p, q), v in self._c.items()}
        return r

    def div_uv_power(self, s: int) -> Optional["BiPolyUV"]:
        """Exact division by (uv)^s; None unless every monomial allows it."""
        if s <= 0:
            return self if s == 0 else None
        if any(p < s or q < s for p, q in self._c):
            return None
        r = BiPolyUV.__new__(BiPolyUV)
        r._c = {(p - s, q - s): v for (p, q), v in self._c.items()}
        return r

    def diagonal_split(self) -> dict[int, LaurentPolyY]:
        """Decompose as sum over d of m_d * P_d(uv), m_d = u^d or v^-d.

        Multiplication by any polynomial in uv preserves the decomposition,
        which turns divisibility by such polynomials into univariate exact
        division diagonal by diagonal.
        """
        diag: dict[int, dict[int, Fraction]] = {}
        for (p, q), v in self._c.items():
            d = p - q
            diag.setdefault(d, {})[min(p, q)] = v
        return {d: LaurentPolyY(c) for d, c in diag.items()}

    @classmethod
    def from_diagonal(cls, diag: Mapping[int, LaurentPolyY]) -> "BiPolyUV":
        out: dict[tuple[int, int], Fraction] = {}
        for d, poly in diag.items():
            for t, v in poly.items():
                m = (t + d, t) if d >= 0 else (t, t - d)
                out[m] = out.get(m, Fraction(0)) + v
        return cls(out)

    def format(self, spaced: bool = True, symbols: tuple[str, str] = ("u", "v")) -> str:
        su, sv = symbols
        return _format_terms(
            [((p, q), v) for (p, q), v in self.items()],
            lambda exps: _monomial_str([(su, exps[0]), (sv, exps[1])]),
            spaced,
        )

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"BiPolyUV({self.format()!r})"


def _coerce_bipoly(x) -> "BiPolyUV":
    if isinstance(x, BiPolyUV):
        return x
    if isinstance(x, (int, Fraction)):
        return BiPolyUV.const(x)
    return NotImplemented


# ---------------------------------------------------------------------------
# Geometric-sum denominators and rational functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class GeomFactor:
    """g_a(t) = 1 + t + ... + t^a, stored by its term count a+1.

    (t-1)*g_a(t) = t^(a+1) - 1, which is how the factors arise: every
    denominator in scope is (t^(a+1) - 1)/(t - 1) for t the Lefschetz
    class or t = uv.  g_0 = 1 is the identity and is never stored inside
    a RatFunc.
    """

    exponent: int  # a + 1

    def __post_init__(self):
        if self.exponent < 1:
            raise ExactError("GeomFactor exponent must be >= 1")

    @property
    def a(self) -> int:
        return self.exponent - 1

    @property
    def is_identity(self) -> bool:
        return self.exponent == 1

    def expand_univariate(self, t_coeff: Scalar = 1, t_power: int = 1) -> LaurentPolyY:
        """g_a evaluated at t = t_coeff * Y^t_power."""
        c = _as_fraction(t_coeff)
        out: dict[int, Fraction] = {}
        for k in range(self.exponent):
            e = k * t_power
            out[e] = out.get(e, Fraction(0)) + c**k
        return LaurentPolyY(out)

    def expand_uv(self) -> BiPolyUV:
        """g_a evaluated at t = u*v."""
        return BiPolyUV({(k, k): 1 for k in range(self.exponent)})

    def value_at_one(self) -> Fraction:
        return Fraction(self.exponent)


def _sorted_factors(factors: Iterable[GeomFactor]) -> tuple[GeomFactor, ...]:
    out = []
    for f in factors:
        if isinstance(f, int):
            f = GeomFactor(f)
        if not f.is_identity:
            out.append(f)
    return tuple(sorted(out))


@dataclass(frozen=True)
class RatFunc:
    """numerator / prod of geometric-sum factors.

    Two instantiations share the type:
      * numerator BiPolyUV, the factor variable t meaning u*v
        (t_image must be None);
      * numerator LaurentPolyY, t meaning t_coeff * Y where Y is the
        numerator's variable (t_image = (t_coeff, 1); e.g. (-1, 1) for
        the chi_y specialization t = -y).
    """

    num: Union[BiPolyUV, LaurentPolyY]
    factors: tuple[GeomFactor, ...] = ()
    t_image: Optional[tuple[Fraction, int]] = None
    symbol: str = "y"

    def __post_init__(self):
        object.__setattr__(self, "factors", _sorted_factors(self.factors))
        if isinstance(self.num, BiPolyUV):
            if self.t_image is not None:
                raise ExactError("two-variable RatFunc fixes t = u*v")
        elif isinstance(self.num, LaurentPolyY):
            t = self.t_image or (Fraction(1), 1)
            object.__setattr__(self, "t_image", (_as_fraction(t[0]), int(t[1])))
        else:
            raise TypeError("RatFunc numerator must be BiPolyUV or LaurentPolyY")

    @property
    def bivariate(self) -> bool:
        return isinstance(self.num, BiPolyUV)

    def _same_convention(self, other: "RatFunc") -> bool:
        return self.bivariate == other.bivariate and self.t_image == other.t_image

    def den_expanded(self):
        """Product of the factors, in the numerator's ring."""
        if self.bivariate:
            den = BiPolyUV.one()
            for f in self.factors:
                den = den * f.expand_uv()
        else:
            den = LaurentPolyY.one()
            c, p = self.t_image
            for f in self.factors:
                den = den * f.expand_univariate(c, p)
        return den

    def equals(self, other: "RatFunc") -> bool:
        """Exact equality by cross-multiplication."""
        if not self._same_convention(other):
            raise ExactError("RatFunc comparison across variable conventions")
        return self.num * other.den_expanded() == other.num * self.den_expanded()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.equals(other)

    def __hash__(self):
        raise TypeError("RatFunc is not hashable (equality is mathematical)")

    def to_polynomial(self):
        """The polynomial equal to self, if the denominator divides out.

        Returns a value of the numerator's type, or None.  Division happens
        univariately: for a two-variable numerator the denominator is a
        polynomial in t = uv, so each diagonal u^d*P(uv) must be divisible
        by it separately.
        """
        if not self.factors:
            return self.num
        if self.bivariate:
            den_t = LaurentPolyY.one()
            for f in self.factors:
                den_t = den_t * f.expand_univariate()
            quotient: dict[int, LaurentPolyY] = {}
            for d, poly in self.num.diagonal_split().items():
                q = laurent_exact_div(poly, den_t)
                if q is None or not q.is_polynomial:
                    return None
                quotient[d] = q
            return BiPolyUV.from_diagonal(quotient)
        q = laurent_exact_div(self.num, self.den_expanded())
        if q is None:
            return None
        return q

    @property
    def is_polynomial(self) -> bool:
        return self.to_polynomial() is not None

    def format(self, spaced: bool = True) -> str:
        if self.bivariate:
            num_s = self.num.format(spaced=spaced)
            fac_s = [f.expand_uv().format(spaced=False) for f in self.factors]
        else:
            num_s = self.num.format(symbol=self.symbol, spaced=spaced)
            c, p = self.t_image
            fac_s = [
                f.expand_univariate(c, p).format(symbol=self.symbol, spaced=False)
                for f in self.factors
            ]
        if not fac_s:
            return num_s
        return f"({num_s}) / " + " / ".join(f"({s})" for s in fac_s)

    def __str__(self) -> str:
        return self.format()


def ratfunc_equal(f: RatFunc, g: RatFunc) -> bool:
    return f.equals(g)


def ratfunc_to_polynomial(f: RatFunc):
    return f.to_polynomial()


# ---------------------------------------------------------------------------
# Shared text grammar
# ---------------------------------------------------------------------------


class PolyParseError(ExactError):
    """Parse failure, carrying a 1-based column and what was expected."""

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} at column {column}")
        self.column = column


def _parse_terms(src: str, variables: tuple[str, ...]) -> list[tuple[Fraction, dict[str, int]]]:
    i, n = 0, len(src)
    terms: list[tuple[Fraction, dict[str, int]]] = []

    def skip_ws():
        nonlocal i
        while i < n and src[i].isspace():
            i += 1

    def read_int() -> int:
        nonlocal i
        start = i
        while i < n and src[i].isdigit():
            i += 1
        if i == start:
            raise PolyParseError("expected integer", start + 1)
        return int(src[start:i])

    skip_ws()
    first = True
    while True:
        skip_ws()
        if i >= n:
            if first:
                raise PolyParseError("expected polynomial term", i + 1)
            break
        sign = 1
        if src[i] in "+-":
            if first and src[i] == "+":
                raise PolyParseError("unexpected leading '+'", i + 1)
            if src[i] == "-":
                sign = -1
            i += 1
            skip_ws()
        elif not first:
            raise PolyParseError("expected '+' or '-'", i + 1)
        coeff = Fraction(1)
        exps: dict[str, int] = {}
        saw_factor = False
        while True:
            skip_ws()
            if i < n and src[i].isdigit():
                p = read_int()
                skip_ws()
                if i < n and src[i] == "/":
                    i += 1
                    skip_ws()
                    q = read_int()
                    if q == 0:
                        raise PolyParseError("zero denominator", i)
                    coeff *= Fraction(p, q)
                else:
                    coeff *= p
                saw_factor = True
            elif i < n and src[i].isalpha():
                start = i
                while i < n and (src[i].isalnum() or src[i] == "_"):
                    i += 1
                name = src[start:i]
                if name not in variables:
                    raise PolyParseError(
                        f"unknown variable {name!r} (expected one of {', '.join(variables)})",
                        start + 1,
                    )
                exp = 1
                skip_ws()
                if i < n and src[i] == "^":
                    i += 1
                    skip_ws()
                    exp = read_int()
                exps[name] = exps.get(name, 0) + exp
                saw_factor = True
            else:
                raise PolyParseError("expected coefficient or variable", i + 1)
            skip_ws()
            if i < n and src[i] == "*":
                i += 1
                continue
            break
        if not saw_factor:
            raise PolyParseError("empty term", i + 1)
        terms.append((sign * coeff, exps))
        first = False
    return terms


def parse_bipoly(src: str) -> BiPolyUV:
    """Parse the u,v polynomial grammar."""
    out: dict[tuple[int, int], Fraction] = {}
    for coeff, exps in _parse_terms(src, ("u", "v")):
        m = (exps.get("u", 0), exps.get("v", 0))
        out[m] = out.get(m, Fraction(0)) + coeff
    return BiPolyUV(out)


def parse_laurent(src: str, symbol: str = "y") -> LaurentPolyY:
    """Parse the one-variable polynomial grammar."""
    out: dict[int, Fraction] = {}
    for coeff, exps in _parse_terms(src, (symbol,)):
        e = exps.get(symbol, 0)
        out[e] = out.get(e, Fraction(0)) + coeff
    return LaurentPolyY(out)


# ---------------------------------------------------------------------------
# Formatting helpers
# ---------------------------------------------------------------------------


def _monomial_str(var_exps: list[tuple[str, int]]) -> str:
    parts = []
    for sym, e in var_exps:
        if e == 0:
            continue
        if e == 1:
            parts.append(sym)
        elif e < 0:
            parts.append(f"{sym}^({e})")
        else:
            parts.append(f"{sym}^{e}")
    return "*".join(parts)


def _format_terms(items, mono_of, spaced: bool) -> str:
    if not items:
        return "0"
    plus, minus = (" + ", " - ") if spaced else ("+", "-")
    pieces: list[str] = []
    for idx, (exps, coeff) in enumerate(items):
        mono = mono_of(exps)
        mag = abs(coeff)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        if idx == 0:
            pieces.append(("-" if coeff < 0 else "") + body)
        else:
            pieces.append((minus if coeff < 0 else plus) + body)
    return "".join(pieces)
