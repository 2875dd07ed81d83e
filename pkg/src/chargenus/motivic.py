"""The Grothendieck ring of varieties over a point, concretely.

Classes are finite integer combinations of named atoms times powers of the
Lefschetz class L (the class of the affine line); an atom carries the
E-polynomial of its compactly supported cohomology.  Every measure in
scope factors through E:

    E(u,v)                      the E-polynomial (ring homomorphism)
    Hc(u,v)  = E(-u,-v)         Hodge characteristic, sign convention with
                                the (-1)^(p+q) factor included
    chi_y    = Hc(y,-1)         Hodge filtration characteristic
    weight   = Hc(w,w)          weight filtration characteristic
    euler    = Hc(-1,-1)        Euler characteristic with compact support

so for a smooth complete atom Hc(u,v) = sum h^(p,q) u^p v^q with plain
Hodge numbers.  Localization at L is a negative L-exponent; completed
elements keep their geometric-series denominators summed as GeomFactors
in t = L and are measured into RatFunc values (t -> uv under E,
t -> -y under chi_y).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .exact import (
    BiPolyUV,
    ExactError,
    GeomFactor,
    LaurentPolyY,
    RatFunc,
    parse_bipoly,
)

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib


class MotivicError(ExactError):
    pass


class DuplicateAtomError(MotivicError):
    pass


class UnknownAtomError(MotivicError):
    pass


class LocalizedClassError(MotivicError):
    """Negative L-powers that do not clear; use the completed pipeline."""


@dataclass(frozen=True)
class Atom:
    """A named generator of the ring with its E-polynomial."""

    name: str
    e: BiPolyUV
    dim: int

    def __post_init__(self):
        if self.dim < 0:
            raise MotivicError("atom dimension must be >= 0")
        if self.e.total_degree() > 2 * self.dim:
            raise MotivicError(
                f"E-polynomial degree {self.e.total_degree()} exceeds 2*dim for atom {self.name!r}"
            )


POINT = Atom("point", BiPolyUV.one(), 0)


def _product_name(a: Atom, b: Atom) -> str:
    tokens = []
    for atom in (a, b):
        if atom.name == POINT.name:
            continue
        tokens.extend(atom.name.split("*"))
    if not tokens:
        return POINT.name
    return "*".join(sorted(tokens))


def atom_product(a: Atom, b: Atom) -> Atom:
    if a.name == POINT.name:
        return b
    if b.name == POINT.name:
        return a
    return Atom(_product_name(a, b), a.e * b.e, a.dim + b.dim)


class AtomRegistry:
    """Append-only name -> Atom table (used by parsers and file loaders)."""

    def __init__(self, with_builtins: bool = True):
        self._atoms: dict[str, Atom] = {}
        self._lock = threading.Lock()
        if with_builtins:
            self.add(POINT)
            self.add(Atom("affine_line", BiPolyUV.uv_power(1), 1))
            one_m_u_one_m_v = (BiPolyUV.one() - BiPolyUV.u()) * (BiPolyUV.one() - BiPolyUV.v())
            self.add(Atom("elliptic", one_m_u_one_m_v, 1))
            k3 = BiPolyUV(
                {(0, 0): 1, (2, 0): 1, (1, 1): 20, (0, 2): 1, (2, 2): 1}
            )
            self.add(Atom("K3", k3, 2))

    def add(self, atom: Atom) -> Atom:
        with self._lock:
            existing = self._atoms.get(atom.name)
            if existing is not None:
                if existing != atom:
                    raise DuplicateAtomError(f"atom {atom.name!r} already registered with different data")
                return existing
            self._atoms[atom.name] = atom
            return atom

    def register(self, name: str, e: BiPolyUV, dim: int) -> Atom:
        atom = Atom(name, e, dim)
        with self._lock:
            if name in self._atoms:
                raise DuplicateAtomError(f"atom {name!r} already registered")
            self._atoms[name] = atom
        return atom

    def get(self, name: str) -> Atom:
        try:
            return self._atoms[name]
        except KeyError:
            raise UnknownAtomError(f"unknown atom {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._atoms

    def names(self) -> list[str]:
        return sorted(self._atoms)

    def projective(self, n: int) -> Atom:
        """The atom P^n with E = 1 + uv + ... + (uv)^n, created on demand."""
        if n < 0:
            raise MotivicError("projective dimension must be >= 0")
        name = f"P{n}"
        if name not in self._atoms:
            e = BiPolyUV({(k, k): 1 for k in range(n + 1)})
            self.add(Atom(name, e, n))
        return self.get(name)

    def load_toml(self, path: str) -> list[Atom]:
        """Load `[[atom]] name=..., dim=..., e="..."` entries.

        Re-loading an identical entry is a no-op; conflicting data for an
        existing name is an error.
        """
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
        loaded = []
        for entry in data.get("atom", []):
            try:
                name, dim, e_src = entry["name"], entry["dim"], entry["e"]
            except KeyError as exc:
                raise MotivicError(f"atom entry missing field {exc}") from None
            loaded.append(self.add(Atom(str(name), parse_bipoly(str(e_src)), int(dim))))
        return loaded


_default_registry = AtomRegistry()


def default_registry() -> AtomRegistry:
    return _default_registry


TermKey = tuple[Atom, int]  # (atom, L-exponent)


class MotivicClass:
    """Finite integer combination of atom * L^k terms (k may be negative)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict[TermKey, int]] = None):
        out: dict[TermKey, int] = {}
        if terms:
            for (atom, k), c in terms.items():
                if not isinstance(c, int):
                    raise MotivicError("coefficients in the Grothendieck ring are integers")
                if c != 0:
                    out[(atom, int(k))] = c
        self.terms = out

    @classmethod
    def zero(cls) -> "MotivicClass":
        return cls()

    @classmethod
    def of_atom(cls, atom: Atom, coeff: int = 1, l_power: int = 0) -> "MotivicClass":
        return cls({(atom, l_power): coeff})

    @classmethod
    def point_class(cls) -> "MotivicClass":
        return cls.of_atom(POINT)

    @classmethod
    def lefschetz(cls, power: int = 1) -> "MotivicClass":
        return cls.of_atom(POINT, l_power=power)

    @classmethod
    def projective(cls, n: int) -> "MotivicClass":
        """[P^n] = 1 + L + ... + L^n by the cell decomposition."""
        if n < 0:
            raise MotivicError("projective dimension must be >= 0")
        return cls({(POINT, k): 1 for k in range(n + 1)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "MotivicClass") -> "MotivicClass":
        if not isinstance(other, MotivicClass):
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        r = MotivicClass.__new__(MotivicClass)
        r.terms = out
        return r

    def __neg__(self) -> "MotivicClass":
        r = MotivicClass.__new__(MotivicClass)
        r.terms = {key: -c for key, c in self.terms.items()}
        return r

    def __sub__(self, other: "MotivicClass") -> "MotivicClass":
        if not isinstance(other, MotivicClass):
            return NotImplemented
        return self + (-other)

    def mul(self, other: "MotivicClass", registry: Optional[AtomRegistry] = None) -> "MotivicClass":
        """Product; atoms multiply pairwise (E is multiplicative), and the
        product atom is recorded in the registry when one is supplied."""
        out: dict[TermKey, int] = {}
        for (a1, k1), c1 in self.terms.items():
            for (a2, k2), c2 in other.terms.items():
                atom = atom_product(a1, a2)
                if registry is not None:
                    atom = registry.add(atom)
                key = (atom, k1 + k2)
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        r = MotivicClass.__new__(MotivicClass)
        r.terms = out
        return r

    def __mul__(self, other) -> "MotivicClass":
        if isinstance(other, MotivicClass):
            return self.mul(other)
        if isinstance(other, int):
            r = MotivicClass.__new__(MotivicClass)
            r.terms = {} if other == 0 else {k: other * c for k, c in self.terms.items()}
            return r
        return NotImplemented

    __rmul__ = __mul__

    def shift(self, k: int) -> "MotivicClass":
        """Multiply by L^k."""
        r = MotivicClass.__new__(MotivicClass)
        r.terms = {(atom, e + k): c for (atom, e), c in self.terms.items()}
        return r

    def min_l_exponent(self) -> int:
        if not self.terms:
            return 0
        return min(k for (_, k) in self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MotivicClass):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        raise TypeError("MotivicClass is not hashable")

    def format(self) -> str:
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda key: (key[0].name, key[1]))
        parts = []
        for atom, k in keys:
            c = self.terms[(atom, k)]
            body = "" if atom.name == POINT.name else f"[{atom.name}]"
            if k:
                body += ("*" if body else "") + (f"L^{k}" if k != 1 else "L")
            if not body:
                body = "1"
            mag = abs(c)
            piece = body if mag == 1 else f"{mag}*{body}"
            parts.append(("-" if c < 0 else "+", piece))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, piece in parts[1:]:
            out += f" {sign} {piece}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"MotivicClass({self.format()!r})"


def k0_arith(a: MotivicClass, b: MotivicClass, op: str, registry: Optional[AtomRegistry] = None) -> MotivicClass:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a.mul(b, registry if registry is not None else default_registry())
    raise MotivicError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Measures
# ---------------------------------------------------------------------------

MEASURE_KINDS = ("E", "Hc", "chi_y", "weight", "euler")


def measure(a: MotivicClass, kind: str) -> Union[BiPolyUV, LaurentPolyY, Fraction]:
    """Apply one of the motivic measures.

    E and Hc return BiPolyUV (negative L-powers must clear, otherwise a
    LocalizedClassError directs to the completed pipeline); chi_y returns
    a Laurent polynomial in y, weight one in w, euler a rational.
    """
    if kind in ("E", "Hc"):
        shift = max(0, -a.min_l_exponent())
        acc = BiPolyUV.zero()
        for (atom, k), c in a.terms.items():
            acc = acc + Fraction(c) * atom.e.mul_uv_power(k + shift)
        if shift:
            cleared = acc.div_uv_power(shift)
            if cleared is None:
                raise LocalizedClassError("localized class, use completed pipeline")
            acc = cleared
        return acc.flip_signs() if kind == "Hc" else acc
    if kind == "chi_y":
        # Hc(y,-1) = E(-y, 1); L contributes (-y)^k
        out = LaurentPolyY.zero()
        for (atom, k), c in a.terms.items():
            val = atom.e.to_univariate((-1, 1), (1, 0))
            out = out + c * val * LaurentPolyY.y_power(k, -1 if k % 2 else 1)
        return out
    if kind == "weight":
        # Hc(w,w) = E(-w,-w); L contributes w^(2k)
        out = LaurentPolyY.zero()
        for (atom, k), c in a.terms.items():
            val = atom.e.to_univariate((-1, 1), (-1, 1))
            out = out + c * val.shift(2 * k)
        return out
    if kind == "euler":
        total = Fraction(0)
        for (atom, k), c in a.terms.items():
            total += c * atom.e.evaluate(Fraction(1), Fraction(1))
        return total
    raise MotivicError(f"unknown measure kind {kind!r} (expected one of {MEASURE_KINDS})")


def verify_blowup_identity(
    bl_x: MotivicClass, exc: MotivicClass, x: MotivicClass, center: MotivicClass
) -> bool:
    """Necessary condition for [Bl_Z X] - [E] = [X] - [Z]: equality under E."""
    return measure(bl_x - exc, "E") == measure(x - center, "E")


# ---------------------------------------------------------------------------
# Completed classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CompletedClass:
    """numerator / prod of geometric-sum factors in t = L, kept summed."""

    num: MotivicClass
    factors: tuple[GeomFactor, ...] = ()

    def __post_init__(self):
        fac = tuple(sorted(f for f in self.factors if not f.is_identity))
        object.__setattr__(self, "factors", fac)


def completed_measure(c: CompletedClass, kind: str) -> RatFunc:
    """Measure numerator termwise and map t: L -> uv under E, L -> -y
    under chi_y; each GeomFactor goes along."""
    if kind == "E":
        num = measure(c.num, "E")
        return RatFunc(num, c.factors)
    if kind == "chi_y":
        num = measure(c.num, "chi_y")
        return RatFunc(num, c.factors, t_image=(Fraction(-1), 1), symbol="y")
    raise MotivicError(f"completed measure supports E and chi_y, not {kind!r}")
