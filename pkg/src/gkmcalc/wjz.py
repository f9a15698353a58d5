"""The Wall-Jupp-Zubr system of invariants of a 6-dimensional signed GKM
graph, the equivalence search between two systems, and the diffeomorphism
oracle built on top of them.

A system is (rank of H^2, the cubic form mu(x,y,z) = <xyz, [M]>, the
second Stiefel-Whitney class in H^2 tensor Z/2, and the first Pontrjagin
class viewed as a linear form on H^2). For simply-connected 6-manifolds
with vanishing odd cohomology an equivalence of systems is realized by an
orientation-preserving diffeomorphism; both hypotheses are beyond what the
graph can certify, so the oracle demands explicit assumption flags.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .charclasses import equivariant_char_class, localize_integral, stiefel_whitney_coords
from .cohomology import CohomologyRing, GeneratorBasis
from .errors import GeneratorsDoNotSpan, Not6Dimensional, LocalizationRequiresSignedGraph
from .gkm import GKMGraph, find_isomorphisms
from .intlinalg import IntMatrix, gcd_of, primitive_part


@dataclass
class InvariantSystem:
    rank: int
    mu: tuple  # rank x rank x rank nested tuples, fully symmetric
    w: tuple  # length rank, entries 0/1
    p: tuple  # length rank
    basis_label: str = ""
    warnings: tuple = ()

    def reversed_orientation(self):
        neg = tuple(
            tuple(tuple(-x for x in row) for row in plane) for plane in self.mu
        )
        return InvariantSystem(
            self.rank, neg, self.w, tuple(-x for x in self.p), self.basis_label, self.warnings
        )

    def mu_at(self, a, b, c):
        return self.mu[a][b][c]

    def to_json(self):
        return {
            "rank": self.rank,
            "mu": [[list(r) for r in plane] for plane in self.mu],
            "w": list(self.w),
            "p": list(self.p),
            "basis": self.basis_label,
            **({"warnings": list(self.warnings)} if self.warnings else {}),
        }

    def __eq__(self, other):
        return (
            isinstance(other, InvariantSystem)
            and (self.rank, self.mu, self.w, self.p) == (other.rank, other.mu, other.w, other.p)
        )


@dataclass
class Equivalence:
    phi: IntMatrix

    def verify(self, s1: InvariantSystem, s2: InvariantSystem) -> bool:
        return _is_equivalence(self.phi, s1, s2)


@dataclass
class Found:
    equivalence: Equivalence


@dataclass
class ProvablyDistinct:
    reason: str


@dataclass
class NotFoundWithinBound:
    bound: int


def invariant_system(graph: GKMGraph, gens: GeneratorBasis = None, ring: CohomologyRing = None) -> InvariantSystem:
    """Extract (H^2, mu, w2, p1) from a valid signed valence-3 graph.

    mu and p come from exact localization of cup products; w2 from the
    degree-2 Stiefel-Whitney descent. With user generators the tensors are
    stated in that basis, otherwise in the deterministic internal one.
    """
    if graph.valence != 3:
        raise Not6Dimensional("valence %d graph; the classification applies to valence 3" % graph.valence)
    if not graph.signed:
        raise LocalizationRequiresSignedGraph("invariants need a signed graph")
    ring = ring or CohomologyRing(graph)
    warnings = []
    for e in graph.edges:
        if primitive_part(e.weight_at_u) != e.weight_at_u:
            warnings.append(
                "weight %r on edge %s-%s is not primitive; connected isotropy is doubtful"
                % (e.weight_at_u, e.u, e.v)
            )
    r = ring.betti(2)
    if gens is not None:
        if len(gens.classes) != r:
            raise GeneratorsDoNotSpan("%d generators for rank-%d H^2" % (len(gens.classes), r))
        m = len(gens.names)
        units = [tuple(1 if j == i else 0 for j in range(m)) for i in range(m)]
        if gens.basis_monomials(2) != units:
            raise GeneratorsDoNotSpan("generators are not themselves a basis of H^2")
        basis_classes = gens.classes
        label = ",".join(gens.names)
    else:
        basis_classes = ring.ordinary(2).quotient_reps
        label = "internal"
    mu = tuple(
        tuple(
            tuple(
                localize_integral(graph, basis_classes[a] * basis_classes[b] * basis_classes[c])
                for c in range(r)
            )
            for b in range(r)
        )
        for a in range(r)
    )
    w_coords = stiefel_whitney_coords(graph, ring, 2)
    if gens is not None:
        wpoly = gens.to_poly_mod2(w_coords, 2)
        w = tuple(1 if m in wpoly.terms else 0 for m in gens.basis_monomials(2))
    else:
        w = tuple(w_coords)
    pont = equivariant_char_class(graph, "pontrjagin").homogeneous_component(4)
    p = tuple(localize_integral(graph, pont * basis_classes[a]) for a in range(r))
    return InvariantSystem(r, mu, w, p, label, tuple(warnings))


def _is_equivalence(phi: IntMatrix, s1: InvariantSystem, s2: InvariantSystem) -> bool:
    r = s1.rank
    if s2.rank != r or phi.rows != r or phi.cols != r or not phi.is_unimodular():
        return False
    for i in range(r):
        if sum(phi.at(i, a) * s1.w[a] for a in range(r)) % 2 != s2.w[i] % 2:
            return False
    for a in range(r):
        if sum(s2.p[i] * phi.at(i, a) for i in range(r)) != s1.p[a]:
            return False
    for a in range(r):
        for b in range(r):
            for c in range(r):
                val = 0
                for i in range(r):
                    for j in range(r):
                        for l in range(r):
                            val += s2.mu[i][j][l] * phi.at(i, a) * phi.at(j, b) * phi.at(l, c)
                if val != s1.mu[a][b][c]:
                    return False
    return True


def _cubic_values_mod2(s: InvariantSystem):
    """Multiset of mu(x,x,x) mod 2 over x in (Z/2)^rank, a GL(r,Z)
    invariant."""
    out = []
    for x in itertools.product((0, 1), repeat=s.rank):
        val = 0
        for a in range(s.rank):
            for b in range(s.rank):
                for c in range(s.rank):
                    val += s.mu[a][b][c] * x[a] * x[b] * x[c]
        out.append(val % 2)
    return tuple(sorted(out))


def _flatten_mu(s):
    return [x for plane in s.mu for row in plane for x in row]


def are_equivalent(s1: InvariantSystem, s2: InvariantSystem, bound: int = 10):
    """Decide equivalence of two systems of invariants.

    GL(r,Z)-invariants that differ prove the systems distinct; otherwise
    an exhaustive search over unimodular matrices with entries bounded by
    `bound` either finds a witness or reports an honest inconclusive.
    """
    if s1.rank != s2.rank:
        return ProvablyDistinct("rank (%d vs %d)" % (s1.rank, s2.rank))
    if gcd_of(_flatten_mu(s1)) != gcd_of(_flatten_mu(s2)):
        return ProvablyDistinct(
            "gcd of mu entries (%d vs %d)" % (gcd_of(_flatten_mu(s1)), gcd_of(_flatten_mu(s2)))
        )
    if gcd_of(s1.p) != gcd_of(s2.p):
        return ProvablyDistinct("gcd of p entries (%d vs %d)" % (gcd_of(s1.p), gcd_of(s2.p)))
    if (any(s1.w) and not any(s2.w)) or (any(s2.w) and not any(s1.w)):
        return ProvablyDistinct("vanishing of w2")
    if _cubic_values_mod2(s1) != _cubic_values_mod2(s2):
        return ProvablyDistinct("mod-2 value multiset of the cubic form")
    r = s1.rank
    for entries in itertools.product(range(-bound, bound + 1), repeat=r * r):
        phi = IntMatrix(r, r, entries)
        if not phi.is_unimodular():
            continue
        if _is_equivalence(phi, s1, s2):
            return Found(Equivalence(phi))
    return NotFoundWithinBound(bound)


@dataclass
class DiffeoVerdict:
    status: str  # "diffeomorphic" | "provably_distinct" | "inconclusive"
    assumptions: tuple
    reason: str = ""
    graph_iso: object = None
    phi: IntMatrix = None
    reversed_orientation_note: str = ""
    systems: tuple = field(default=())


def phi_from_graph_iso(g1, g2, iso, ring1=None, ring2=None):
    """The equivalence of invariant systems a signed graph isomorphism
    induces: transport the degree-2 basis of g2 back through (phi, psi),
    express it in g1's basis, and invert."""
    from .cohomology import FixedPointClass

    ring1 = ring1 or CohomologyRing(g1)
    ring2 = ring2 or CohomologyRing(g2)
    mapping = iso.mapping()
    psi_inv = iso.psi.inverse_unimodular()
    basis2 = ring2.ordinary(2).quotient_reps
    cols = []
    for cls in basis2:
        comps = []
        for v in g1.vertices:
            comps.append(cls.component(mapping[v]).linear_substitute(psi_inv))
        transported = FixedPointClass(g1, comps)
        cols.append(ring1.express(transported, 2).coords)
    c = IntMatrix.from_columns(cols)
    return Equivalence(c.inverse_unimodular())


def diffeo_verdict(
    g1: GKMGraph,
    g2: GKMGraph,
    assume_simply_connected: bool,
    assume_h_odd_zero: bool,
    bound: int = 10,
) -> DiffeoVerdict:
    """Three-valued diffeomorphism oracle for two signed valence-3 graphs.

    A signed graph isomorphism is reported as the stronger witness and
    always yields an exact equivalence of systems; otherwise the bounded
    search decides. Without both assumption flags the classification
    theorem does not apply and the verdict is inconclusive.
    """
    for g in (g1, g2):
        if g.valence != 3:
            raise Not6Dimensional("valence %d graph" % g.valence)
        g.require_valid()
    missing = []
    if not assume_simply_connected:
        missing.append("--assume-simply-connected")
    if not assume_h_odd_zero:
        missing.append("--assume-h-odd-zero")
    if missing:
        return DiffeoVerdict(
            "inconclusive",
            (),
            reason=(
                "the classification theorem needs simple connectedness and "
                "vanishing odd cohomology, which a graph cannot certify; "
                "missing %s" % ", ".join(missing)
            ),
        )
    assumptions = ("simply-connected", "h-odd-zero")
    ring1, ring2 = CohomologyRing(g1), CohomologyRing(g2)
    s1 = invariant_system(g1, ring=ring1)
    s2 = invariant_system(g2, ring=ring2)
    note = ""
    s2r = s2.reversed_orientation()
    if s2r != s2:
        rev = are_equivalent(s1, s2r, bound)
        if isinstance(rev, Found):
            note = "systems also equivalent after reversing the second orientation"
        elif isinstance(rev, ProvablyDistinct):
            note = "orientation-reversed systems provably distinct (%s)" % rev.reason
        else:
            note = "orientation-reversed comparison inconclusive within bound %d" % bound
    isos = find_isomorphisms(g1, g2, signed=True)
    if isos:
        eq = phi_from_graph_iso(g1, g2, isos[0], ring1, ring2)
        if not eq.verify(s1, s2):
            raise AssertionError("transported basis failed to verify the equivalence equations")
        return DiffeoVerdict(
            "diffeomorphic",
            assumptions,
            reason="signed GKM graphs are isomorphic (strong witness); induced equivalence verified",
            graph_iso=isos[0],
            phi=eq.phi,
            reversed_orientation_note=note,
            systems=(s1, s2),
        )
    outcome = are_equivalent(s1, s2, bound)
    if isinstance(outcome, Found):
        return DiffeoVerdict(
            "diffeomorphic",
            assumptions,
            reason="systems of invariants are equivalent",
            phi=outcome.equivalence.phi,
            reversed_orientation_note=note,
            systems=(s1, s2),
        )
    if isinstance(outcome, ProvablyDistinct):
        return DiffeoVerdict(
            "provably_distinct",
            assumptions,
            reason="systems differ in a GL(r,Z) invariant: %s" % outcome.reason,
            reversed_orientation_note=note,
            systems=(s1, s2),
        )
    return DiffeoVerdict(
        "inconclusive",
        assumptions,
        reason="no equivalence found with entries bounded by %d; this does not prove distinctness" % outcome.bound,
        reversed_orientation_note=note,
        systems=(s1, s2),
    )
