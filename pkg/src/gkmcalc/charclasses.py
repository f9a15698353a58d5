"""Equivariant characteristic classes from fixed-point weights, descent to
ordinary cohomology, and exact fixed-point localization integration.

At a fixed point with isotropy weights a_1..a_n the total equivariant
Chern class restricts to prod (1 + a_j) (signed graphs only), the
Pontrjagin class to prod (1 + a_j^2) and the Stiefel-Whitney class to the
mod-2 reduction of prod (1 + a_j); the latter two are independent of the
sign choices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ChernRequiresSignedGraph,
    LocalizationRequiresSignedGraph,
    NonIntegralLocalizationSum,
    NotInSubalgebra,
)
from .cohomology import CohomologyRing, FixedPointClass, GeneratorBasis
from .gkm import GKMGraph
from .polyring import IntPolynomial, Mod2Polynomial, mod2_reduce

KINDS = ("chern", "pontrjagin", "stiefel_whitney")


@dataclass
class EquivariantTotalClass:
    kind: str
    graph: GKMGraph
    components: tuple  # IntPolynomial per vertex; Mod2Polynomial for stiefel_whitney

    def homogeneous_component(self, degree) -> FixedPointClass:
        if self.kind == "stiefel_whitney":
            raise ValueError("stiefel_whitney parts are mod-2; use mod2_component")
        return FixedPointClass(self.graph, [p.homogeneous_component(degree) for p in self.components])

    def mod2_component(self, degree):
        if self.kind == "stiefel_whitney":
            return [p.homogeneous_component(degree) for p in self.components]
        return [mod2_reduce(p.homogeneous_component(degree)) for p in self.components]


def equivariant_char_class(graph: GKMGraph, kind: str) -> EquivariantTotalClass:
    """Total equivariant class of the tangent bundle restricted to the
    fixed points, computed from the incident weights."""
    if kind not in KINDS:
        raise ValueError("unknown class kind %r" % kind)
    if kind == "chern" and not graph.signed:
        raise ChernRequiresSignedGraph(
            "Chern classes need the signs an invariant almost complex structure provides"
        )
    k = graph.torus_rank
    comps = []
    for v in graph.vertices:
        total = IntPolynomial.constant(k, 1)
        for w in graph.weights_at(v):
            a = IntPolynomial.linear_form(w)
            factor = 1 + (a * a if kind == "pontrjagin" else a)
            total = total * factor
        comps.append(total.mod2() if kind == "stiefel_whitney" else total)
    return EquivariantTotalClass(kind, graph, tuple(comps))


@dataclass
class CharClassReport:
    """Per-degree coordinates of one descended characteristic class, with
    an optional rendering in user generators."""

    kind: str
    degrees: list  # of dicts: degree, coords, poly (str or None)
    generator_names: list

    def entry(self, degree):
        for e in self.degrees:
            if e["degree"] == degree:
                return e
        raise KeyError(degree)

    def poly(self, degree):
        return self.entry(degree)["poly"]

    def coords(self, degree):
        return self.entry(degree)["coords"]


def stiefel_whitney_coords(graph: GKMGraph, ring: CohomologyRing, degree: int):
    """Mod-2 quotient coordinates of the degree-d Stiefel-Whitney class.

    The direct mod-2 solve is sign-independent but can be ambiguous when a
    weight is imprimitive; in that case (signed graphs only) the class is
    recovered as the reduction of the integral Chern coordinates, to which
    it is equal whenever both are defined.
    """
    sw = equivariant_char_class(graph, "stiefel_whitney")
    try:
        return ring.express_mod2(sw.mod2_component(degree), degree)
    except NotInSubalgebra:
        if not graph.signed:
            raise
        chern = equivariant_char_class(graph, "chern")
        elem = ring.express(chern.homogeneous_component(degree), degree)
        return tuple(c % 2 for c in elem.coords)


def descend(
    graph: GKMGraph,
    total: EquivariantTotalClass,
    gens: GeneratorBasis = None,
    ring: CohomologyRing = None,
) -> CharClassReport:
    """Ordinary characteristic classes: the image of each homogeneous part
    in (A/mA), optionally rewritten in the user generators."""
    ring = ring or CohomologyRing(graph)
    entries = []
    for d in range(2, ring.dim + 1, 2):
        if total.kind == "stiefel_whitney":
            coords = stiefel_whitney_coords(graph, ring, d)
            poly = gens.to_poly_mod2(coords, d).render(gens.names) if gens else None
        else:
            elem = ring.express(total.homogeneous_component(d), d)
            coords = elem.coords
            poly = gens.render(elem) if gens else None
        entries.append({"degree": d, "coords": tuple(coords), "poly": poly})
    return CharClassReport(total.kind, entries, gens.names if gens else [])


def _product(polys, k):
    out = IntPolynomial.constant(k, 1)
    for p in polys:
        out = out * p
    return out


def localize_integral(graph: GKMGraph, c: FixedPointClass):
    """Exact evaluation of the localization sum sum_p c_p / prod_j a_pj.

    For a homogeneous class of degree 2n this is the pairing with the
    fundamental class in the orientation the signed labels induce; below
    the top degree the sum cancels to zero. Denominators are cleared
    symbolically, so a sum that fails to be an integer (or to cancel)
    is detected exactly and flags invalid input data.
    """
    if not graph.signed:
        raise LocalizationRequiresSignedGraph(
            "localization needs the orientation carried by signed labels"
        )
    d = c.degree()
    if d is None and not c.is_zero():
        raise ValueError("localization input must be homogeneous")
    if c.is_zero():
        return 0
    n2 = 2 * graph.valence
    if d > n2:
        raise ValueError("degree %d exceeds the manifold dimension %d" % (d, n2))
    k = graph.torus_rank
    denoms = [
        _product([IntPolynomial.linear_form(w) for w in graph.weights_at(v)], k)
        for v in graph.vertices
    ]
    nv = len(denoms)
    prefix = [IntPolynomial.constant(k, 1)]
    for p in denoms:
        prefix.append(prefix[-1] * p)
    suffix = [IntPolynomial.constant(k, 1)]
    for p in reversed(denoms):
        suffix.append(suffix[-1] * p)
    suffix.reverse()
    numerator = IntPolynomial.zero(k)
    for i in range(nv):
        others = prefix[i] * suffix[i + 1]
        numerator = numerator + c.components[i] * others
    total_denom = prefix[nv]
    if d < n2:
        if not numerator.is_zero():
            raise NonIntegralLocalizationSum(
                "localization sum of a degree-%d class does not cancel; "
                "the labels are inconsistent" % d
            )
        return 0
    # degree 2n: the sum is a constant, so numerator = r * denominator
    exps, dc = next(iter(total_denom.terms.items()))
    r = Fraction(numerator.coefficient(exps), dc)
    scaled = IntPolynomial(
        k, {e: r.numerator * cc for e, cc in total_denom.terms.items()}
    )
    check = IntPolynomial(
        k, {e: r.denominator * cc for e, cc in numerator.terms.items()}
    )
    if scaled != check:
        raise NonIntegralLocalizationSum(
            "localization sum is not constant; the labels are inconsistent"
        )
    if r.denominator != 1:
        raise NonIntegralLocalizationSum("localization sum %s is not an integer" % r)
    return int(r)
