"""Finitely presented graded rings for the smooth-variety catalog.

Three shapes of Chow ring are supported, enough for every identity in
scope: projective spaces Q[h]/(h^(n+1)), products (tensor of the factor
rings), and split projective bundles P(L_0 + ... + L_r) -> X presented by
adjoining a degree-1 generator xi with the relation prod_i (xi + m_i) = 0,
m_i = c_1(L_i).  The pushforward convention is pi_* xi^r = 1 and
pi_* xi^j = 0 for j < r, which makes the relative tangent factor
prod_i (1 + xi + m_i) literal.

Monomials are exponent tuples over the ring's degree-1 generators.  Every
ring precomputes its monomial basis per degree; multiplication reduces
products of basis monomials back into the basis with exact rational
structure constants and is memoized per ring.  Rings and elements are
immutable after construction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .exact import CoeffY, ExactError, LaurentPolyY, Scalar, _monomial_str

Mono = tuple[int, ...]


class RingError(ExactError):
    pass


def _unique_names(names: list[str]) -> tuple[str, ...]:
    # rename clashing generators h,h -> h1,h2; names already unique survive
    originals = set(names)
    used: set[str] = set()
    out: list[str] = []
    for name in names:
        if names.count(name) == 1 and name not in used:
            out.append(name)
            used.add(name)
            continue
        i = 1
        while f"{name}{i}" in used or f"{name}{i}" in originals:
            i += 1
        out.append(f"{name}{i}")
        used.add(f"{name}{i}")
    return tuple(out)


class GradedRing:
    """Base class; subclasses fix the relations via _mul_basis_raw."""

    kind = "abstract"

    def __init__(self, gens: tuple[str, ...], top_degree: int):
        self.gens = gens
        self.top_degree = top_degree
        self._mul_memo: dict[tuple[Mono, Mono], dict[Mono, Fraction]] = {}
        self.basis_by_degree: dict[int, tuple[Mono, ...]] = {}
        self.point_monomial: Mono = ()

    # populated by subclasses via _set_basis
    def _set_basis(self, monos: Sequence[Mono], point: Mono):
        by_deg: dict[int, list[Mono]] = {}
        for m in monos:
            by_deg.setdefault(sum(m), []).append(m)
        self.basis_by_degree = {d: tuple(sorted(ms)) for d, ms in sorted(by_deg.items())}
        self.basis_set = frozenset(monos)
        self.point_monomial = point

    def basis(self, degree: Optional[int] = None) -> tuple[Mono, ...]:
        if degree is None:
            return tuple(m for d in sorted(self.basis_by_degree) for m in self.basis_by_degree[d])
        return self.basis_by_degree.get(degree, ())

    def mul_basis(self, m1: Mono, m2: Mono) -> dict[Mono, Fraction]:
        key = (m1, m2) if m1 <= m2 else (m2, m1)
        hit = self._mul_memo.get(key)
        if hit is None:
            hit = self._mul_basis_raw(*key)
            self._mul_memo[key] = hit
        return hit

    def _mul_basis_raw(self, m1: Mono, m2: Mono) -> dict[Mono, Fraction]:
        raise NotImplementedError

    # -- element constructors

    def element(self, comps: Mapping[Mono, Union[CoeffY, Scalar, LaurentPolyY]]) -> "RingElement":
        out: dict[Mono, CoeffY] = {}
        for m, c in comps.items():
            if m not in self.basis_set:
                raise RingError(f"monomial {m} not in the basis of {self!r}")
            cy = c if isinstance(c, CoeffY) else CoeffY(c) if isinstance(c, LaurentPolyY) else CoeffY.from_scalar(c)
            if not cy.is_zero:
                out[m] = cy
        return RingElement(self, out)

    def zero(self) -> "RingElement":
        return RingElement(self, {})

    def one(self) -> "RingElement":
        return self.element({(0,) * len(self.gens): 1})

    def gen(self, i: int) -> "RingElement":
        e = [0] * len(self.gens)
        e[i] = 1
        return self.element({tuple(e): 1})

    def monomial_str(self, m: Mono) -> str:
        return _monomial_str(list(zip(self.gens, m)))

    def __repr__(self):
        return f"<{type(self).__name__} gens={'.'.join(self.gens) or '-'} top={self.top_degree}>"


class RingElement:
    """Linear combination of basis monomials with CoeffY coefficients."""

    __slots__ = ("ring", "comps")

    def __init__(self, ring: GradedRing, comps: dict[Mono, CoeffY]):
        self.ring = ring
        self.comps = comps

    def _check_same_ring(self, other: "RingElement"):
        if self.ring is not other.ring:
            raise RingError("elements live in different rings")

    @property
    def is_zero(self) -> bool:
        return not self.comps

    def coefficient(self, m: Mono) -> CoeffY:
        return self.comps.get(m, CoeffY.zero())

    def component(self, degree: int) -> "RingElement":
        return RingElement(
            self.ring, {m: c for m, c in self.comps.items() if sum(m) == degree}
        )

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_same_ring(other)
        out = dict(self.comps)
        for m, c in other.comps.items():
            s = out.get(m, CoeffY.zero()) + c
            if s.is_zero:
                out.pop(m, None)
            else:
                out[m] = s
        return RingElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, {m: -c for m, c in self.comps.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_same_ring(other)
        out: dict[Mono, CoeffY] = {}
        for m1, c1 in self.comps.items():
            for m2, c2 in other.comps.items():
                c12 = c1 * c2
                for m, q in self.ring.mul_basis(m1, m2).items():
                    s = out.get(m, CoeffY.zero()) + c12 * q
                    if s.is_zero:
                        out.pop(m, None)
                    else:
                        out[m] = s
        return RingElement(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise RingError("negative power of a ring element")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, RingElement):
            return other
        if isinstance(other, (int, Fraction, LaurentPolyY, CoeffY)):
            c = other if isinstance(other, CoeffY) else (
                CoeffY(other) if isinstance(other, LaurentPolyY) else CoeffY.from_scalar(other)
            )
            if c.is_zero:
                return self.ring.zero()
            return self.ring.element({(0,) * len(self.ring.gens): c})
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        return self.ring is other.ring and self.comps == other.comps

    def __hash__(self):
        raise TypeError("RingElement is not hashable")

    def format(self) -> str:
        if not self.comps:
            return "0"
        parts = []
        for m in sorted(self.comps, key=lambda m: (sum(m), m)):
            c = self.comps[m]
            mono = self.ring.monomial_str(m)
            const = c.constant_value()
            if not mono:
                parts.append(c.format(spaced=False))
            elif const is not None:
                if const == 1:
                    parts.append(mono)
                elif const == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{const}*{mono}")
            else:
                parts.append(f"({c.format(spaced=False)})*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RingElement({self.format()!r})"


class ProjectiveRing(GradedRing):
    kind = "projective"

    def __init__(self, n: int, gen_name: str = "h"):
        if n < 0:
            raise RingError("projective space dimension must be >= 0")
        self.n = n
        super().__init__((gen_name,) if n > 0 else ("h",), n)
        if n == 0:
            # the point: a single empty... keep one generator with exponent 0 only
            self._set_basis([(0,)], (0,))
        else:
            self._set_basis([(k,) for k in range(n + 1)], (n,))

    def _mul_basis_raw(self, m1: Mono, m2: Mono) -> dict[Mono, Fraction]:
        k = m1[0] + m2[0]
        if k > self.n:
            return {}
        return {(k,): Fraction(1)}


class ProductRing(GradedRing):
    kind = "product"

    def __init__(self, left: GradedRing, right: GradedRing):
        self.left = left
        self.right = right
        self.split = len(left.gens)
        gens = _unique_names(list(left.gens) + list(right.gens))
        super().__init__(gens, left.top_degree + right.top_degree)
        monos = [lm + rm for lm in left.basis() for rm in right.basis()]
        self._set_basis(monos, left.point_monomial + right.point_monomial)

    def _mul_basis_raw(self, m1: Mono, m2: Mono) -> dict[Mono, Fraction]:
        s = self.split
        lprod = self.left.mul_basis(m1[:s], m2[:s])
        rprod = self.right.mul_basis(m1[s:], m2[s:])
        out: dict[Mono, Fraction] = {}
        for lm, lc in lprod.items():
            for rm, rc in rprod.items():
                out[lm + rm] = lc * rc
        return out

    def embed_left(self, m: Mono) -> Mono:
        return m + (0,) * len(self.right.gens)

    def embed_right(self, m: Mono) -> Mono:
        return (0,) * len(self.left.gens) + m


class BundleRing(GradedRing):
    kind = "bundle"

    def __init__(self, base: GradedRing, offsets: Sequence[dict[Mono, Fraction]]):
        if not offsets:
            raise RingError("a projective bundle needs at least one line-bundle root")
        self.base = base
        self.r = len(offsets) - 1
        self.offsets = [dict(o) for o in offsets]
        gens = _unique_names(list(base.gens) + ["x"])
        super().__init__(gens, base.top_degree + self.r)
        monos = [bm + (j,) for bm in base.basis() for j in range(self.r + 1)]
        self._set_basis(monos, base.point_monomial + (self.r,))
        # elementary symmetric functions of the roots, as base-coefficient dicts
        es: list[dict[Mono, Fraction]] = [{(0,) * len(base.gens): Fraction(1)}]
        for root in self.offsets:
            new = [dict(e) for e in es] + [{}]
            for j in range(len(es), 0, -1):
                for bm, c in es[j - 1].items():
                    for rm, rc in root.items():
                        for pm, pc in base.mul_basis(bm, rm).items():
                            s = new[j].get(pm, Fraction(0)) + c * rc * pc
                            if s:
                                new[j][pm] = s
                            else:
                                new[j].pop(pm, None)
            es = new
        self.elementary = es  # es[i] = e_i(roots), i = 0 .. r+1
        self._xi_memo: dict[tuple[Mono, int], dict[Mono, Fraction]] = {}

    def _xi_reduce(self, bm: Mono, j: int) -> dict[Mono, Fraction]:
        """Normal form of (base monomial bm) * xi^j."""
        if j <= self.r:
            return {bm + (j,): Fraction(1)}
        key = (bm, j)
        hit = self._xi_memo.get(key)
        if hit is not None:
            return hit
        # xi^j = -sum_i e_i * xi^(j-i) for j > r, from prod(xi + m_i) = 0
        out: dict[Mono, Fraction] = {}
        for i in range(1, self.r + 2):
            for em, ec in self.elementary[i].items():
                for pm, pc in self.base.mul_basis(bm, em).items():
                    for mono, c in self._xi_reduce(pm, j - i).items():
                        s = out.get(mono, Fraction(0)) - ec * pc * c
                        if s:
                            out[mono] = s
                        else:
                            out.pop(mono, None)
        self._xi_memo[key] = out
        return out

    def _mul_basis_raw(self, m1: Mono, m2: Mono) -> dict[Mono, Fraction]:
        s = len(self.base.gens)
        j = m1[s] + m2[s]
        out: dict[Mono, Fraction] = {}
        for bm, c in self.base.mul_basis(m1[:s], m2[:s]).items():
            for mono, c2 in self._xi_reduce(bm, j).items():
                acc = out.get(mono, Fraction(0)) + c * c2
                if acc:
                    out[mono] = acc
                else:
                    out.pop(mono, None)
        return out

    def embed_base(self, m: Mono) -> Mono:
        return m + (0,)


# ---------------------------------------------------------------------------
# Smooth varieties
# ---------------------------------------------------------------------------


class SmoothVariety:
    """Catalog object: a graded ring plus tangent-bundle Chern data."""

    __slots__ = ("name", "ring", "dimension", "tangent_chern")

    def __init__(self, name: str, ring: GradedRing, dimension: int, tangent_chern: RingElement):
        if tangent_chern.ring is not ring:
            raise RingError("tangent Chern class must live in the variety's own ring")
        c0 = tangent_chern.component(0)
        if c0 != ring.one():
            raise RingError("total Chern class must have unit constant term")
        for m in tangent_chern.comps:
            if sum(m) > dimension:
                raise RingError("Chern class exceeds the dimension")
        self.name = name
        self.ring = ring
        self.dimension = dimension
        self.tangent_chern = tangent_chern

    def one(self) -> RingElement:
        return self.ring.one()

    def zero(self) -> RingElement:
        return self.ring.zero()

    def hyperplane(self, i: int = 0) -> RingElement:
        return self.ring.gen(i)

    def integrate(self, a: RingElement) -> CoeffY:
        """Coefficient of the point class; lower-degree components drop."""
        if a.ring is not self.ring:
            raise RingError(f"element does not live on {self.name}")
        return a.coefficient(self.ring.point_monomial)

    def euler_number(self) -> Fraction:
        val = self.integrate(self.tangent_chern.component(self.dimension)).constant_value()
        if val is None:
            raise RingError("top Chern class has a non-constant coefficient")
        return val

    def __repr__(self):
        return f"<SmoothVariety {self.name} dim={self.dimension}>"


def projective_space(n: int) -> SmoothVariety:
    """P^n with Chow ring Q[h]/(h^(n+1)) and c(T) = (1+h)^(n+1) truncated."""
    ring = ProjectiveRing(n)
    if n == 0:
        chern = ring.one()
    else:
        chern = (ring.one() + ring.gen(0)) ** (n + 1)
    return SmoothVariety(f"P{n}", ring, n, chern)


def point() -> SmoothVariety:
    return projective_space(0)


def _transport(elem: RingElement, target: GradedRing, embed) -> RingElement:
    return target.element({embed(m): c for m, c in elem.comps.items()})


def ring_product(x: SmoothVariety, y: SmoothVariety, name: Optional[str] = None) -> SmoothVariety:
    """x times y; Chern classes multiply after pullback to the product."""
    ring = ProductRing(x.ring, y.ring)
    cx = _transport(x.tangent_chern, ring, ring.embed_left)
    cy = _transport(y.tangent_chern, ring, ring.embed_right)
    return SmoothVariety(name or f"{x.name}*{y.name}", ring, x.dimension + y.dimension, cx * cy)


def pull_left(xy: SmoothVariety, a: RingElement) -> RingElement:
    ring = xy.ring
    if not isinstance(ring, ProductRing):
        raise RingError("pull_left needs a product variety")
    if a.ring is not ring.left:
        raise RingError("element does not live on the left factor")
    return _transport(a, ring, ring.embed_left)


def pull_right(xy: SmoothVariety, a: RingElement) -> RingElement:
    ring = xy.ring
    if not isinstance(ring, ProductRing):
        raise RingError("pull_right needs a product variety")
    if a.ring is not ring.right:
        raise RingError("element does not live on the right factor")
    return _transport(a, ring, ring.embed_right)


def _offset_to_fractions(off: RingElement) -> dict[Mono, Fraction]:
    out: dict[Mono, Fraction] = {}
    for m, c in off.comps.items():
        if sum(m) != 1:
            raise RingError("bundle roots must be homogeneous of degree 1")
        cv = c.constant_value()
        if cv is None:
            raise RingError("bundle roots must have constant rational coefficients")
        out[m] = cv
    return out


def ring_proj_bundle(
    x: SmoothVariety, offsets: Sequence[RingElement], name: Optional[str] = None
) -> SmoothVariety:
    """Split projective bundle P(L_0 + ... + L_r) -> x with c_1(L_i) given.

    Relation prod_i (xi + m_i) = 0; relative tangent contributes
    prod_i (1 + xi + m_i) to the total Chern class.
    """
    for off in offsets:
        if off.ring is not x.ring:
            raise RingError("bundle roots must live on the base")
    ring = BundleRing(x.ring, [_offset_to_fractions(o) for o in offsets])
    cx = _transport(x.tangent_chern, ring, ring.embed_base)
    xi = ring.gen(len(ring.gens) - 1)
    chern = cx
    for off in offsets:
        chern = chern * (ring.one() + xi + _transport(off, ring, ring.embed_base))
    r = len(offsets) - 1
    if name is None:
        name = f"Pbundle({x.name};{','.join(o.format() if not o.is_zero else '0' for o in offsets)})"
    return SmoothVariety(name, ring, x.dimension + r, chern)


def pull_base(p: SmoothVariety, a: RingElement) -> RingElement:
    ring = p.ring
    if not isinstance(ring, BundleRing):
        raise RingError("pull_base needs a projective-bundle variety")
    if a.ring is not ring.base:
        raise RingError("element does not live on the base")
    return _transport(a, ring, ring.embed_base)


def bundle_xi(p: SmoothVariety) -> RingElement:
    ring = p.ring
    if not isinstance(ring, BundleRing):
        raise RingError("not a projective-bundle variety")
    return ring.gen(len(ring.gens) - 1)


def pushforward_proj_bundle(p: SmoothVariety, a: RingElement) -> RingElement:
    """pi_* along P(E) -> base: keep the xi^r coefficient (pi_* xi^r = 1,
    pi_* xi^j = 0 for j < r).  Returns an element of the base ring."""
    ring = p.ring
    if not isinstance(ring, BundleRing):
        raise RingError("element is not on a projective bundle")
    if a.ring is not ring:
        raise RingError("element does not live on the bundle")
    out: dict[Mono, CoeffY] = {}
    for m, c in a.comps.items():
        if m[-1] == ring.r:
            out[m[:-1]] = c
    return RingElement(ring.base, out)


def hirzebruch_surface(a: int) -> SmoothVariety:
    """F_a = P(O + O(-a)) over P^1."""
    if a < 0:
        raise RingError("Hirzebruch surface index must be >= 0")
    p1 = projective_space(1)
    return ring_proj_bundle(p1, [p1.zero(), -a * p1.hyperplane()], name=f"F{a}")


def catalog(max_dim: Optional[int] = None) -> list[SmoothVariety]:
    """The standing test catalog: projective spaces, products, bundles."""
    p = {n: projective_space(n) for n in range(7)}
    items = [p[n] for n in range(7)]
    items += [
        ring_product(p[1], p[1]),
        ring_product(p[1], p[2]),
        ring_product(p[2], p[2]),
        ring_product(p[1], p[3]),
        ring_product(ring_product(p[1], p[1]), p[1], name="P1*P1*P1"),
    ]
    items += [hirzebruch_surface(a) for a in range(4)]
    items += [
        ring_proj_bundle(p[2], [p[2].zero(), p[2].zero()], name="Pbundle(P2;0,0)"),
        ring_proj_bundle(p[2], [p[2].zero(), -1 * p[2].hyperplane()], name="Pbundle(P2;0,-1)"),
        ring_proj_bundle(
            p[1], [p[1].zero(), -1 * p[1].hyperplane(), -2 * p[1].hyperplane()],
            name="Pbundle(P1;0,-1,-2)",
        ),
    ]
    if max_dim is not None:
        items = [x for x in items if x.dimension <= max_dim]
    return items
