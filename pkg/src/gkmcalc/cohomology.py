"""Degree-wise equivariant cohomology of a GKM graph.

The subalgebra A of tuples over the fixed points satisfying the edge
congruences (f_u - f_v divisible by the edge weight) is computed one even
degree at a time by pure integer linear algebra: divisibility along an
edge is encoded with auxiliary quotient unknowns and the solution lattice
extracted as a saturated kernel. The ordinary cohomology is the quotient
A/mA by the ideal generated by the polynomial variables, with torsion in
the quotient treated as a hard error (it violates the freeness hypothesis
everything else rests on).
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    GeneratorsDoNotSpan,
    NotInSubalgebra,
    TorsionInQuotient,
)
from .gkm import GKMGraph
from .intlinalg import (
    IntMatrix,
    kernel_saturated,
    smith_normal_form,
    solve_with_snf,
)
from .polyring import (
    IntPolynomial,
    Mod2Polynomial,
    divide_by_linear,
    monomials,
    parse_polynomial,
    render_terms,
)


class FixedPointClass:
    """One polynomial per fixed point; an element of the direct sum of
    H*(BT) over the vertices of a graph."""

    __slots__ = ("graph", "components")

    def __init__(self, graph: GKMGraph, components):
        components = tuple(components)
        if len(components) != len(graph.vertices):
            raise DimensionMismatch(
                "%d components for %d vertices" % (len(components), len(graph.vertices))
            )
        k = graph.torus_rank
        if any(p.k != k for p in components):
            raise DimensionMismatch("component variable count != torus rank")
        self.graph = graph
        self.components = components

    @classmethod
    def constant(cls, graph, c):
        return cls(graph, [IntPolynomial.constant(graph.torus_rank, c)] * len(graph.vertices))

    @classmethod
    def from_strings(cls, graph, by_vertex, names=None):
        if names is None:
            names = ["Y%d" % (i + 1) for i in range(graph.torus_rank)]
        comps = []
        for v in graph.vertices:
            if v not in by_vertex:
                raise DimensionMismatch("missing component for vertex %s" % v)
            comps.append(parse_polynomial(by_vertex[v], names))
        return cls(graph, comps)

    def component(self, vertex):
        return self.components[self.graph.vertices.index(vertex)]

    def _check(self, other):
        if self.graph is not other.graph:
            raise DimensionMismatch("classes live on different graphs")

    def __add__(self, other):
        self._check(other)
        return FixedPointClass(self.graph, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        self._check(other)
        return FixedPointClass(self.graph, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return FixedPointClass(self.graph, [-a for a in self.components])

    def __mul__(self, other):
        if isinstance(other, int):
            return FixedPointClass(self.graph, [a * other for a in self.components])
        self._check(other)
        return FixedPointClass(self.graph, [a * b for a, b in zip(self.components, other.components)])

    __rmul__ = __mul__

    def __pow__(self, n):
        out = FixedPointClass.constant(self.graph, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return (
            isinstance(other, FixedPointClass)
            and self.graph is other.graph
            and self.components == other.components
        )

    def is_zero(self):
        return all(p.is_zero() for p in self.components)

    def degrees(self):
        out = set()
        for p in self.components:
            out.update(p.degrees())
        return sorted(out)

    def degree(self):
        """Common homogeneous degree, or None if mixed/zero."""
        ds = self.degrees()
        return ds[0] if len(ds) == 1 else None

    def is_homogeneous(self, degree=None):
        ds = self.degrees()
        if degree is None:
            return len(ds) <= 1
        return ds in ([], [degree])

    def homogeneous_component(self, degree):
        return FixedPointClass(self.graph, [p.homogeneous_component(degree) for p in self.components])

    def render(self, names=None):
        return {v: p.render(names) for v, p in zip(self.graph.vertices, self.components)}

    def __repr__(self):
        return "FixedPointClass(%r)" % (self.render(),)


def is_gkm_class(c: FixedPointClass) -> bool:
    """Chang-Skjelbred membership: across every edge the difference of the
    endpoint polynomials is exactly divisible by the edge weight."""
    g = c.graph
    for e in g.edges:
        diff = c.component(e.u) - c.component(e.v)
        if diff.is_zero():
            continue
        ell = IntPolynomial.linear_form(e.weight_at_u)
        if divide_by_linear(diff, ell) is None:
            return False
    return True


@dataclass
class RingElement:
    """Integer coordinates in the chosen basis of (A/mA)_degree."""

    degree: int
    coords: tuple

    def __post_init__(self):
        self.coords = tuple(int(c) for c in self.coords)

    def is_zero(self):
        return all(c == 0 for c in self.coords)


@dataclass
class GradedBasis:
    degree: int
    classes: list  # Z-basis of A_degree
    quotient_rank: int
    quotient_reps: list  # classes projecting to a basis of (A/mA)_degree
    projection: IntMatrix  # quotient_rank x len(classes), applied to A-coords


def _mod2_solve(columns, rhs):
    """Solve sum x_j columns[j] = rhs over F2.

    Returns (solution, kernel_basis) or (None, kernel_basis) when
    inconsistent; vectors are 0/1 tuples.
    """
    ncols = len(columns)
    nrows = len(rhs)
    rows = [[columns[j][i] & 1 for j in range(ncols)] + [rhs[i] & 1] for i in range(nrows)]
    pivots = []
    r = 0
    for j in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][j]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(nrows):
            if i != r and rows[i][j]:
                rows[i] = [a ^ b for a, b in zip(rows[i], rows[r])]
        pivots.append(j)
        r += 1
    for i in range(r, nrows):
        if rows[i][ncols]:
            return None, _mod2_kernel(ncols, pivots, rows, r)
    x = [0] * ncols
    for i, j in enumerate(pivots):
        x[j] = rows[i][ncols]
    return tuple(x), _mod2_kernel(ncols, pivots, rows, r)


def _mod2_kernel(ncols, pivots, rows, r):
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for i, j in enumerate(pivots):
            vec[j] = rows[i][f]
        basis.append(tuple(vec))
    return basis


class CohomologyRing:
    """Cached per-degree computations for one valid GKM graph."""

    def __init__(self, graph: GKMGraph):
        graph.require_valid()
        self.graph = graph
        self.k = graph.torus_rank
        self.dim = 2 * graph.valence
        self._gkm = {}
        self._graded = {}
        self._expressors = {}

    # -- raw monomial coordinates ------------------------------------------

    def _monos(self, d):
        return monomials(self.k, d)

    def _class_to_vec(self, c: FixedPointClass, d):
        monos = self._monos(d)
        vec = []
        for p in c.components:
            part = p.homogeneous_component(d)
            vec.extend(part.coefficient(m) for m in monos)
        return vec

    def _vec_to_class(self, vec, d):
        monos = self._monos(d)
        m = len(monos)
        comps = []
        for i in range(len(self.graph.vertices)):
            terms = {mono: vec[i * m + j] for j, mono in enumerate(monos)}
            comps.append(IntPolynomial(self.k, terms))
        return FixedPointClass(self.graph, comps)

    # -- the subalgebra ----------------------------------------------------

    def gkm_basis(self, d):
        """Z-basis of A_d, the degree-d tuples satisfying all edge
        congruences."""
        if d % 2 or d < 0:
            raise ValueError("cohomological degrees are even and nonnegative")
        if d not in self._gkm:
            self._gkm[d] = self._compute_gkm_basis(d)
        return self._gkm[d]

    def _compute_gkm_basis(self, d):
        g = self.graph
        monos = self._monos(d)
        qmonos = self._monos(d - 2)
        nm, nq = len(monos), len(qmonos)
        nv, ne = len(g.vertices), len(g.edges)
        vidx = {v: i for i, v in enumerate(g.vertices)}
        ncols = nv * nm + ne * nq
        mono_pos = {m: j for j, m in enumerate(monos)}
        rows = []
        for ei, e in enumerate(g.edges):
            iu, iv = vidx[e.u], vidx[e.v]
            # f_u - f_v - alpha * q_e = 0, one row per degree-d monomial
            alpha = e.weight_at_u
            block = [[0] * ncols for _ in range(nm)]
            for j in range(nm):
                block[j][iu * nm + j] += 1
                block[j][iv * nm + j] -= 1
            for qj, qm in enumerate(qmonos):
                for var, coeff in enumerate(alpha):
                    if not coeff:
                        continue
                    prod = list(qm)
                    prod[var] += 1
                    row = mono_pos[tuple(prod)]
                    block[row][nv * nm + ei * nq + qj] -= coeff
            rows.extend(block)
        if not rows:
            return [FixedPointClass.constant(g, 1)] if d == 0 else []
        kernel = kernel_saturated(IntMatrix.from_rows(rows))
        basis = []
        for vec in kernel:
            f_part = vec[: nv * nm]
            if any(f_part):
                basis.append(self._vec_to_class(f_part, d))
        # the f-projection is injective (alpha * q = 0 forces q = 0), so
        # this is a basis of A_d
        return basis

    def _expressor(self, d):
        """Cached SNF of the A_d basis matrix, for repeated solves."""
        if d not in self._expressors:
            basis = self.gkm_basis(d)
            cols = [self._class_to_vec(c, d) for c in basis]
            if cols:
                mat = IntMatrix.from_columns(cols)
                self._expressors[d] = (smith_normal_form(mat), len(cols))
            else:
                self._expressors[d] = (None, 0)
        return self._expressors[d]

    def coords_in_A(self, c: FixedPointClass, d):
        """Coordinates of a degree-d class in the A_d basis; None if the
        class is not in the subalgebra lattice."""
        dec, ncols = self._expressor(d)
        vec = self._class_to_vec(c, d)
        if dec is None:
            return () if not any(vec) else None
        return solve_with_snf(dec, vec)

    # -- the quotient A/mA ---------------------------------------------------

    def ordinary(self, d) -> GradedBasis:
        if d not in self._graded:
            self._graded[d] = self._compute_ordinary(d)
        return self._graded[d]

    def _compute_ordinary(self, d):
        basis = self.gkm_basis(d)
        r = len(basis)
        if r == 0:
            return GradedBasis(d, [], 0, [], IntMatrix(0, 0, []))
        mgens = []
        if d >= 2:
            for b in self.gkm_basis(d - 2):
                for i in range(self.k):
                    y = IntPolynomial.variable(self.k, i)
                    mgens.append(FixedPointClass(self.graph, [y * p for p in b.components]))
        cols = []
        for gen in mgens:
            x = self.coords_in_A(gen, d)
            if x is None:
                raise NotInSubalgebra("ideal generator not in the subalgebra lattice (internal error)")
            cols.append(x)
        if not cols:
            return GradedBasis(d, basis, r, list(basis), IntMatrix.identity(r))
        q = IntMatrix.from_columns(cols)
        dec = smith_normal_form(q)
        rho = dec.rank()
        for t in range(rho):
            if dec.S.at(t, t) != 1:
                raise TorsionInQuotient(
                    "A/mA has %d-torsion in degree %d; the graph cannot come "
                    "from a space with vanishing odd cohomology" % (dec.S.at(t, t), d)
                )
        uinv = dec.U.inverse_unimodular()
        projection = IntMatrix(
            r - rho, r, [x for i in range(rho, r) for x in dec.U.row(i)]
        )
        reps = []
        for j in range(rho, r):
            col = uinv.column(j)
            rep = None
            for coeff, cls in zip(col, basis):
                if coeff:
                    term = cls * coeff
                    rep = term if rep is None else rep + term
            reps.append(rep if rep is not None else FixedPointClass.constant(self.graph, 0))
        return GradedBasis(d, basis, r - rho, reps, projection)

    def betti(self, d):
        return self.ordinary(d).quotient_rank

    def total_ordinary_rank(self):
        return sum(self.betti(d) for d in range(0, self.dim + 1, 2))

    # -- expressing classes ---------------------------------------------------

    def express(self, c: FixedPointClass, degree=None) -> RingElement:
        """Image of a homogeneous subalgebra class in (A/mA)_degree."""
        if degree is None:
            degree = c.degree()
            if degree is None:
                raise ValueError("class is not homogeneous; pass a degree")
        x = self.coords_in_A(c, degree)
        if x is None:
            raise NotInSubalgebra(
                "class of degree %d violates the edge congruences or the "
                "lattice structure" % degree
            )
        gb = self.ordinary(degree)
        return RingElement(degree, gb.projection.apply(x))

    def express_mod2(self, components, degree):
        """Mod-2 quotient coordinates of a mod-2 tuple of the given degree.

        components: one Mod2Polynomial per vertex. Solves against the mod-2
        reduction of the integral basis; ambiguity (possible only when some
        weight is imprimitive) raises.
        """
        monos = self._monos(degree)
        vec = []
        for p in components:
            part = p.homogeneous_component(degree)
            vec.extend(1 if m in part.terms else 0 for m in monos)
        basis = self.gkm_basis(degree)
        gb = self.ordinary(degree)
        cols = [self._class_to_vec(c, degree) for c in basis]
        if not cols:
            if any(vec):
                raise NotInSubalgebra("mod-2 class outside the subalgebra in degree %d" % degree)
            return ()
        x, kernel = _mod2_solve(cols, vec)
        if x is None:
            raise NotInSubalgebra("mod-2 class outside the mod-2 subalgebra in degree %d" % degree)
        proj = gb.projection
        for kv in kernel:
            if any(sum(proj.at(i, j) * kv[j] for j in range(len(kv))) % 2 for i in range(proj.rows)):
                raise NotInSubalgebra(
                    "mod-2 descent is ambiguous in degree %d (imprimitive weights?)" % degree
                )
        return tuple(sum(proj.at(i, j) * x[j] for j in range(len(x))) % 2 for i in range(proj.rows))

    def cup(self, a: FixedPointClass, b: FixedPointClass) -> FixedPointClass:
        return a * b

    def cup_and_express(self, a: FixedPointClass, b: FixedPointClass) -> RingElement:
        da, db = a.degree(), b.degree()
        if da is None or db is None:
            raise ValueError("cup factors must be homogeneous")
        return self.express(a * b, da + db)

    def evaluate_ring_map(self, generators, p: IntPolynomial) -> RingElement:
        """Substitute degree-2 generator classes into a homogeneous
        polynomial and express the result in the ordinary basis."""
        generators = list(generators)
        if p.k != len(generators):
            raise DimensionMismatch("polynomial has %d variables, %d generators given" % (p.k, len(generators)))
        if not p.is_homogeneous():
            raise ValueError("polynomial must be homogeneous in the generators")
        d = p.degree()
        if d is None:
            return RingElement(0, self.ordinary(0).projection.apply([0] * len(self.gkm_basis(0))))
        value = evaluate_class_polynomial(self.graph, generators, p)
        return self.express(value, d)


def evaluate_class_polynomial(graph, generators, p: IntPolynomial) -> FixedPointClass:
    """Vertexwise substitution of fixed-point classes into a polynomial."""
    comps = []
    for i in range(len(graph.vertices)):
        images = [g.components[i] for g in generators]
        comps.append(p.substitute(images))
    return FixedPointClass(graph, comps)


_ring_cache = weakref.WeakKeyDictionary()


def ring_of(graph) -> CohomologyRing:
    """Shared per-graph ring so the function-style API reuses caches."""
    ring = _ring_cache.get(graph)
    if ring is None:
        ring = CohomologyRing(graph)
        _ring_cache[graph] = ring
    return ring


def gkm_basis(graph, degree):
    return ring_of(graph).gkm_basis(degree)


def ordinary_basis(graph, degree) -> GradedBasis:
    return ring_of(graph).ordinary(degree)


def cup_and_express(a: FixedPointClass, b: FixedPointClass) -> RingElement:
    return ring_of(a.graph).cup_and_express(a, b)


def evaluate_ring_map(generators, p: IntPolynomial) -> RingElement:
    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generator class")
    return ring_of(generators[0].graph).evaluate_ring_map(generators, p)


class GeneratorBasis:
    """Reporting basis built from named degree-2 classes (for instance the
    X1, X2 presentation of the Eschenburg family): each graded piece of A/mA is
    spanned by monomials in the generators, and a deterministic unimodular
    subset of monomials serves as the coordinate basis."""

    def __init__(self, ring: CohomologyRing, names, classes):
        self.ring = ring
        self.names = list(names)
        self.classes = list(classes)
        if len(self.names) != len(self.classes):
            raise DimensionMismatch("generator names and classes disagree")
        for name, c in zip(self.names, self.classes):
            if not c.is_homogeneous(2):
                raise GeneratorsDoNotSpan("generator %s is not homogeneous of degree 2" % name)
            if not is_gkm_class(c):
                raise GeneratorsDoNotSpan("generator %s violates the edge congruences" % name)
        self._cache = {}

    def monomials(self, d):
        return monomials(len(self.names), d)

    def _data(self, d):
        """(chosen basis monomials, their coordinate columns, SNF of the
        basis matrix) in degree d."""
        if d in self._cache:
            return self._cache[d]
        monos = self.monomials(d)
        cols = []
        for m in monos:
            p = IntPolynomial(len(self.names), {m: 1})
            value = evaluate_class_polynomial(self.ring.graph, self.classes, p)
            cols.append(self.ring.express(value, d).coords)
        r = self.ring.betti(d)
        chosen = []
        chosen_cols = []
        for m, col in zip(monos, cols):
            if len(chosen) == r:
                break
            trial = chosen_cols + [col]
            dec = smith_normal_form(IntMatrix.from_columns(trial))
            if dec.rank() == len(trial) and all(dec.S.at(t, t) == 1 for t in range(len(trial))):
                chosen.append(m)
                chosen_cols.append(col)
        if len(chosen) < r:
            raise GeneratorsDoNotSpan(
                "generators do not span the degree-%d ordinary cohomology over Z" % d
            )
        dec = smith_normal_form(IntMatrix.from_columns(chosen_cols)) if chosen_cols else None
        self._cache[d] = (chosen, chosen_cols, dec)
        return self._cache[d]

    def basis_monomials(self, d):
        return list(self._data(d)[0])

    def to_poly(self, elem: RingElement) -> IntPolynomial:
        """Re-express quotient coordinates as a polynomial in the chosen
        generator monomials."""
        chosen, _cols, dec = self._data(elem.degree)
        if not chosen:
            if any(elem.coords):
                raise GeneratorsDoNotSpan("nonzero class in degree %d with empty basis" % elem.degree)
            return IntPolynomial.zero(len(self.names))
        x = solve_with_snf(dec, list(elem.coords))
        if x is None:
            raise GeneratorsDoNotSpan("class not an integer combination of generator monomials")
        return IntPolynomial(len(self.names), {m: c for m, c in zip(chosen, x)})

    def to_poly_mod2(self, coords, degree) -> Mod2Polynomial:
        """Mod-2 version of to_poly for Stiefel-Whitney reporting."""
        chosen, chosen_cols, _dec = self._data(degree)
        if not chosen:
            if any(c % 2 for c in coords):
                raise GeneratorsDoNotSpan("nonzero mod-2 class in degree %d with empty basis" % degree)
            return Mod2Polynomial(len(self.names))
        # the chosen columns are unimodular over Z, hence invertible mod 2
        x, _kernel = _mod2_solve(chosen_cols, [c % 2 for c in coords])
        if x is None:
            raise GeneratorsDoNotSpan("mod-2 class not expressible in generator monomials")
        return Mod2Polynomial(len(self.names), {m for m, c in zip(chosen, x) if c})

    def render(self, elem: RingElement) -> str:
        return self.to_poly(elem).render(self.names)
