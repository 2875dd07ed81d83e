"""Stringy invariants of log-terminal singularities from SNC resolution data.

Input: a resolution Y -> X with discrepancy divisor D = sum a_i D_i
(simple normal crossings, all a_i >= 0), described by the E-polynomials
of the strata D_I = intersection of the D_i for i in I (closed mode) or
of the open strata D_I deg = D_I minus the other divisors (open mode),
with D_empty = Y.  The two modes are related by inclusion-exclusion over
the subset lattice.

The motivic integral attached to the model is

    sum_I [D_I deg] * prod_{i in I} (L-1)/(L^(a_i+1)-1)

where each factor collapses to 1/g_a(L) by the telescoping identity
(L-1) g_a(L) = L^(a+1)-1, so the whole sum lives over the common
denominator prod_i g_{a_i}(L).  Measuring with E gives the stringy
E-function; (u,v) = (y,1) gives the stringy chi; u = v -> 1 the stringy
Euler number, which is also computed by the closed formula
sum_I e(D_I deg) / prod (a_i+1) and the two routes are asserted equal.
Resolution invariance makes all of this independent of the model chosen.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Optional

from .exact import BiPolyUV, ExactError, GeomFactor, RatFunc, parse_bipoly
from .motivic import Atom, CompletedClass, MotivicClass, completed_measure

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

MAX_DIVISORS = 20


class SncError(ExactError):
    pass


@dataclass(frozen=True)
class SncModel:
    name: str
    dimension: int
    divisors: tuple[tuple[str, int], ...]  # (name, discrepancy)
    mode: str  # "open" | "closed"
    strata: Mapping[frozenset, BiPolyUV]

    def __post_init__(self):
        if self.mode not in ("open", "closed"):
            raise SncError(f"strata mode must be open or closed, not {self.mode!r}")
        names = [n for n, _ in self.divisors]
        if len(set(names)) != len(names):
            raise SncError("divisor names must be unique")
        for n, a in self.divisors:
            if a < 0:
                raise SncError(f"log-terminal required: divisor {n!r} has discrepancy {a}")
        r = len(self.divisors)
        strata = {}
        for subset, e in self.strata.items():
            key = frozenset(subset)
            if any(i < 0 or i >= r for i in key):
                raise SncError("stratum indexes an unknown divisor")
            if not isinstance(e, BiPolyUV):
                raise SncError("stratum data must be BiPolyUV")
            strata[key] = e
        if self.mode == "closed":
            # closed tables must be downward closed: D_J nonempty forces D_I
            for key in strata:
                for i in key:
                    if key - {i} not in strata:
                        raise SncError(
                            f"closed strata table has a gap below {sorted(key)}"
                        )
        object.__setattr__(self, "strata", strata)

    @property
    def r(self) -> int:
        return len(self.divisors)

    def discrepancy(self, i: int) -> int:
        return self.divisors[i][1]

    def stratum(self, subset: frozenset) -> BiPolyUV:
        return self.strata.get(frozenset(subset), BiPolyUV.zero())

    def subset_label(self, subset: frozenset) -> str:
        return ",".join(sorted(self.divisors[i][0] for i in subset))


def _supersets(base: frozenset, r: int):
    rest = [i for i in range(r) if i not in base]
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            yield base | frozenset(extra)


def strata_closed_to_open(m: SncModel) -> SncModel:
    """E(D_I deg) = sum over J containing I of (-1)^|J-I| E(D_J)."""
    if m.mode != "closed":
        raise SncError("model is not in closed mode")
    out = {}
    for key in m.strata:
        acc = BiPolyUV.zero()
        for sup in _supersets(key, m.r):
            if sup in m.strata:
                term = m.strata[sup]
                acc = acc + (term if len(sup - key) % 2 == 0 else -term)
        out[key] = acc
    return SncModel(m.name, m.dimension, m.divisors, "open", out)


def strata_open_to_closed(m: SncModel) -> SncModel:
    """E(D_I) = sum over J containing I of E(D_J deg)."""
    if m.mode != "open":
        raise SncError("model is not in open mode")
    out = {}
    for key in m.strata:
        acc = BiPolyUV.zero()
        for sup in _supersets(key, m.r):
            if sup in m.strata:
                acc = acc + m.strata[sup]
        out[key] = acc
    return SncModel(m.name, m.dimension, m.divisors, "closed", out)


def _open_model(m: SncModel) -> SncModel:
    return strata_closed_to_open(m) if m.mode == "closed" else m


def _stratum_atom(m: SncModel, subset: frozenset, e: BiPolyUV) -> Atom:
    label = m.subset_label(subset) or "Y"
    return Atom(f"{m.name}:D[{label}]o", e, m.dimension - len(subset))


def motivic_integral(m: SncModel) -> CompletedClass:
    """sum_I [D_I deg] prod_{i in I} 1/g_{a_i}(L) over the common denominator
    prod_i g_{a_i}(L); open strata enter as ad-hoc atoms with their
    E-polynomials."""
    if m.r > MAX_DIVISORS:
        raise SncError(f"more than {MAX_DIVISORS} divisors; subset sum is 2^r")
    mo = _open_model(m)
    total = MotivicClass.zero()
    for subset, e in sorted(mo.strata.items(), key=lambda kv: sorted(kv[0])):
        if e.is_zero:
            continue
        term = MotivicClass.of_atom(_stratum_atom(mo, subset, e))
        for i in range(mo.r):
            if i not in subset and mo.discrepancy(i) > 0:
                # multiply by g_a(L) = 1 + L + ... + L^a
                g = MotivicClass.zero()
                for k in range(mo.discrepancy(i) + 1):
                    g = g + term.shift(k)
                term = g
        total = total + term
    factors = tuple(GeomFactor(a + 1) for _, a in mo.divisors if a > 0)
    return CompletedClass(total, factors)


def stringy_e(m: SncModel) -> RatFunc:
    """The stringy E-function as an exact rational function in u, v."""
    return completed_measure(motivic_integral(m), "E")


def stringy_chi(m: SncModel) -> RatFunc:
    """E_st at (u,v) = (y,1): the chi_(-y) specialization, kept in the
    substitution convention (no re-signing)."""
    e_st = stringy_e(m)
    num = e_st.num.to_univariate((1, 1), (1, 0))
    return RatFunc(num, e_st.factors, t_image=(Fraction(1), 1), symbol="y")


def stringy_euler(m: SncModel) -> Fraction:
    """Stringy Euler number, by two routes that must agree:
    (a) sum_I e(D_I deg) / prod (a_i+1); (b) the u = v -> 1 limit of the
    stringy E-function (numerator at (1,1) over g_a(1) = a+1)."""
    mo = _open_model(m)
    route_a = Fraction(0)
    for subset, e in mo.strata.items():
        weight = Fraction(1)
        for i in subset:
            weight /= mo.discrepancy(i) + 1
        route_a += e.evaluate(Fraction(1), Fraction(1)) * weight
    e_st = stringy_e(m)
    route_b = e_st.num.evaluate(Fraction(1), Fraction(1))
    for f in e_st.factors:
        route_b /= f.value_at_one()
    if route_a != route_b:
        raise SncError(
            f"stringy Euler routes disagree: closed formula {route_a}, limit {route_b}"
        )
    return route_a


def compare_resolutions(m1: SncModel, m2: SncModel) -> bool:
    """True iff the two models give the same stringy E-function."""
    return stringy_e(m1).equals(stringy_e(m2))


# ---------------------------------------------------------------------------
# TOML interface
# ---------------------------------------------------------------------------


def snc_model_from_dict(data: dict) -> SncModel:
    try:
        header = data["model"]
        name = str(header["name"])
        dimension = int(header["dimension"])
        mode = str(header["strata_mode"])
    except KeyError as exc:
        raise SncError(f"model header missing field {exc}") from None
    divisors = []
    for entry in data.get("divisor", []):
        try:
            divisors.append((str(entry["name"]), int(entry["discrepancy"])))
        except KeyError as exc:
            raise SncError(f"divisor entry missing field {exc}") from None
    name_to_index = {n: i for i, (n, _) in enumerate(divisors)}
    if len(name_to_index) != len(divisors):
        raise SncError("divisor names must be unique")
    strata = {}
    for key_str, e_src in data.get("strata", {}).items():
        subset = frozenset()
        if key_str.strip():
            idxs = []
            for token in key_str.split(","):
                token = token.strip()
                if token not in name_to_index:
                    raise SncError(f"stratum key references unknown divisor {token!r}")
                idxs.append(name_to_index[token])
            subset = frozenset(idxs)
        strata[subset] = parse_bipoly(str(e_src))
    return SncModel(name, dimension, tuple(divisors), mode, strata)


def load_snc_toml(path: str) -> SncModel:
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    return snc_model_from_dict(data)


def snc_model_to_toml(m: SncModel) -> str:
    """Render a model back to its TOML format (round-trip convenience)."""
    lines = [
        "[model]",
        f'name = "{m.name}"',
        f"dimension = {m.dimension}",
        f'strata_mode = "{m.mode}"',
        "",
    ]
    for n, a in m.divisors:
        lines += ["[[divisor]]", f'name = "{n}"', f"discrepancy = {a}", ""]
    lines.append("[strata]")
    for subset in sorted(m.strata, key=lambda s: (len(s), sorted(s))):
        lines.append(f'"{m.subset_label(subset)}" = "{m.strata[subset].format()}"')
    return "\n".join(lines) + "\n"


def stringy_report(m: SncModel) -> dict:
    """All stringy invariants of a model, JSON-ready (exact strings)."""
    e_st = stringy_e(m)
    chi = stringy_chi(m)
    e_poly = e_st.to_polynomial()
    chi_poly = chi.to_polynomial()
    return {
        "model": m.name,
        "stringy_E": {
            "numerator": e_st.num.format(),
            "denominator_factors": [f.expand_uv().format() for f in e_st.factors],
            "polynomial": e_poly.format() if e_poly is not None else None,
        },
        "stringy_chi": {
            "numerator": chi.num.format(symbol="y"),
            "denominator_factors": [
                f.expand_univariate(Fraction(1), 1).format(symbol="y") for f in chi.factors
            ],
            "polynomial": chi_poly.format(symbol="y") if chi_poly is not None else None,
        },
        "stringy_euler": str(stringy_euler(m)),
        "is_polynomial": e_poly is not None,
    }
