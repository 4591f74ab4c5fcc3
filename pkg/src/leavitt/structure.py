"""Graded structure of the path algebra in the no-exit case.

When no simple cycle of the graph has an exit, the algebra splits as a
finite direct sum of graded matrix algebras, one block per sink and one
per cycle:

* a sink v contributes M_n(K) where n counts the paths ending at v,
  regraded by the shift tuple of their lengths;
* a cycle c of length t contributes M_n(K[x^t, x^(-t)]) where n counts
  the paths ending at c.base that do not contain the based cycle,
  regraded the same way.

``phi`` realizes the splitting on generators: a vertex goes to a sum of
diagonal matrix units, an edge f to a sum of units e_ik (one for each
index path q_k with s(q_k) = r(f), where f q_k rewinds to q_i times a
power of the cycle), ghosts to the starred images.  ``verify_phi``
replays every defining relation on the images; ``phi_inverse_basis`` and
``pull_back`` invert the map explicitly, sending the matrix unit
e_ij(x^(w t)) back to the canonical form of q_i c^w q_j* (a negative w
putting the cycle power on the ghost side).

``classify`` reports the graded structure flags; they all reduce to the
no-exit condition.  ``dim_series_check`` compares graded dimensions on
both sides of phi degree by degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

from .gmatrix import GradedMatrix, GradedMatrixAlgebra
from .graph import (
    Cycle,
    Graph,
    concat,
    cycle_power,
    factor_through_cycle,
    no_exit_condition,
    paths_into,
    paths_into_cycle,
    simple_cycles,
    sinks,
)
from .lpa import LeavittAlgebra, LpaElement, Monomial
from .scalar import LaurentRing


class ExitConditionError(RuntimeError):
    """The graph has a cycle with an exit; no matrix decomposition exists."""


class VerificationError(RuntimeError):
    """An internal consistency replay failed."""


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TypeReport:
    """Graded structure flags for one graph.

    The five flags are equivalent for these algebras, so they are all
    equal to the no-exit test; they are reported separately because they
    are separately meaningful.  `central_triple` decomposes the identity
    of the graded central idempotent lattice by type: all weight sits in
    the first slot when the flags hold.  `graded_prime` and
    `central_triple` are None when the flags fail.
    """

    no_exit: bool
    graded_self_injective: bool
    graded_regular: bool
    graded_sigma_v: bool
    graded_type_one: bool
    block_count: int
    graded_prime: object
    central_triple: object
    note: str

    def to_json(self) -> dict:
        return {
            "no_exit": self.no_exit,
            "graded_self_injective": self.graded_self_injective,
            "graded_regular": self.graded_regular,
            "graded_sigma_v": self.graded_sigma_v,
            "graded_type_one": self.graded_type_one,
            "block_count": self.block_count,
            "graded_prime": self.graded_prime,
            "central_triple": list(self.central_triple) if self.central_triple else None,
            "note": self.note,
        }


def classify(g: Graph) -> TypeReport:
    ne = no_exit_condition(g)
    count = len(sinks(g)) + len(simple_cycles(g)) if ne else 0
    if ne:
        prime = count == 1
        triple = (1, 0, 0)
        note = (
            "graded type I_f: graded regular, graded self-injective, directly finite; "
            f"decomposes into {count} matrix block(s)"
        )
    else:
        prime = None
        triple = None
        note = "not graded self-injective; a cycle has an exit, no matrix decomposition"
    return TypeReport(
        no_exit=ne,
        graded_self_injective=ne,
        graded_regular=ne,
        graded_sigma_v=ne,
        graded_type_one=ne,
        block_count=count,
        graded_prime=prime,
        central_triple=triple,
        note=note,
    )


# ---------------------------------------------------------------------------
# block decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    """One matrix summand: a sink block over K or a cycle block over
    K[x^t, x^(-t)], with its index paths and grading shifts.

    `index_paths[k]` is the k-th basis path into the sink (or into the
    cycle base, cycle-free); `shifts[k]` is its length.  `cycle` is None
    for sink blocks; `anchor` is the sink vertex or the cycle base.
    """

    kind: str
    anchor: str
    cycle: object
    index_paths: tuple
    shifts: tuple
    algebra: GradedMatrixAlgebra

    @property
    def n(self) -> int:
        return len(self.index_paths)

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "paths": [p.to_json() for p in self.index_paths],
            "shifts": list(self.shifts),
            "base": self.algebra.base_to_json(),
        }
        if self.kind == "sink":
            out["vertex"] = self.anchor
        else:
            out["cycle"] = self.cycle.to_json()
            out["t"] = self.cycle.length
        return out


@dataclass(frozen=True)
class DecompositionReport:
    """The full block decomposition of one algebra (no-exit case)."""

    algebra: LeavittAlgebra
    blocks: tuple

    @property
    def graph(self) -> Graph:
        return self.algebra.graph

    def block_algebras(self):
        return tuple(b.algebra for b in self.blocks)

    def to_json(self) -> dict:
        return {
            "field_characteristic": getattr(self.algebra.field, "characteristic", 0),
            "blocks": [b.to_json() for b in self.blocks],
        }


def _require_no_exit(g: Graph):
    if not no_exit_condition(g):
        raise ExitConditionError(
            "a cycle has an exit; the graded matrix decomposition does not apply"
        )


def decompose(algebra_or_graph, field=None) -> DecompositionReport:
    """The graded matrix block decomposition; requires the no-exit condition.

    Accepts a LeavittAlgebra, or a Graph plus an optional field (exact
    rationals by default).  Blocks are ordered: sinks by vertex id, then
    cycles by base vertex id.
    """
    if isinstance(algebra_or_graph, LeavittAlgebra):
        algebra = algebra_or_graph
    else:
        algebra = LeavittAlgebra(algebra_or_graph, field)
    g = algebra.graph
    _require_no_exit(g)

    blocks = []
    for v in sorted(sinks(g)):
        paths = paths_into(g, v)
        shifts = tuple(len(p.edges) for p in paths)
        blocks.append(
            Block(
                kind="sink",
                anchor=v,
                cycle=None,
                index_paths=paths,
                shifts=shifts,
                algebra=GradedMatrixAlgebra(algebra.field, shifts),
            )
        )
    for c in simple_cycles(g):
        paths = paths_into_cycle(g, c)
        shifts = tuple(len(p.edges) for p in paths)
        ring = LaurentRing(algebra.field, c.length)
        blocks.append(
            Block(
                kind="cycle",
                anchor=c.base,
                cycle=c,
                index_paths=paths,
                shifts=shifts,
                algebra=GradedMatrixAlgebra(ring, shifts),
            )
        )
    if not blocks:
        raise VerificationError("no sinks and no cycles in a finite graph; impossible")
    return DecompositionReport(algebra=algebra, blocks=tuple(blocks))


# ---------------------------------------------------------------------------
# the generator isomorphism
# ---------------------------------------------------------------------------


@dataclass
class GeneratorImages:
    """Images of every generator under the block isomorphism.

    `vertices[v]`, `edges[e]`, `ghosts[e]` are tuples of GradedMatrix,
    one per block.  `apply` extends multiplicatively and linearly to any
    element of the algebra.
    """

    report: DecompositionReport
    vertices: dict
    edges: dict
    ghosts: dict
    _path_cache: dict = dataclass_field(default_factory=dict)

    def zero(self):
        return tuple(b.algebra.zero() for b in self.report.blocks)

    def identity(self):
        return tuple(b.algebra.identity() for b in self.report.blocks)

    def _image_of_path(self, p):
        if p.is_empty:
            return self.vertices[p.base]
        cached = self._path_cache.get(p)
        if cached is not None:
            return cached
        acc = self.edges[p.edges[0]]
        for eid in p.edges[1:]:
            nxt = self.edges[eid]
            acc = tuple(a * b for a, b in zip(acc, nxt))
        self._path_cache[p] = acc
        return acc

    def apply(self, x: LpaElement):
        """Image of an arbitrary element: a tuple of block matrices."""
        out = list(self.zero())
        for m, c in x.terms.items():
            left = self._image_of_path(m.p)
            right = self._image_of_path(m.q)
            for k, b in enumerate(self.report.blocks):
                prod = left[k] * right[k].star()
                out[k] = out[k] + _scale_by_field(b, prod, c)
        return tuple(out)


def _scale_by_field(block: Block, mat: GradedMatrix, c) -> GradedMatrix:
    base = block.algebra.base
    if isinstance(base, LaurentRing):
        return mat.scale(base.monomial(c, 0))
    return mat.scale(c)


def phi(algebra_or_report, field=None) -> GeneratorImages:
    """Build the generator images of the block isomorphism.

    For each block with index paths q_0, ..., q_(n-1):

    * vertex u: sum of e_kk over k with s(q_k) = u;
    * edge f: for each k with s(q_k) = r(f), the path f q_k ends at the
      block anchor and factors as q_i c^w, contributing e_ik(x^(w t))
      (w = 0 always at a sink block);
    * ghost f: the star of the image of f.

    Degrees come out right automatically: w t + len(q_i) - len(q_k) = 1.
    """
    if isinstance(algebra_or_report, DecompositionReport):
        report = algebra_or_report
    else:
        report = decompose(algebra_or_report, field)
    g = report.graph

    vertices = {v: [] for v in g.vertices}
    edges = {e.id: [] for e in g.edges}

    for block in report.blocks:
        lookup = {p: k for k, p in enumerate(block.index_paths)}
        for v in g.vertices:
            acc = block.algebra.zero()
            for k, q in enumerate(block.index_paths):
                if q.base == v:
                    acc = acc + block.algebra.unit(k, k, block.algebra.base.one())
            vertices[v].append(acc)
        for e in g.edges:
            acc = block.algebra.zero()
            for k, q in enumerate(block.index_paths):
                if q.base != e.dst:
                    continue
                extended = concat(g.path(e.src, (e.id,)), q)
                if block.kind == "sink":
                    i = lookup.get(extended)
                    if i is None:
                        raise VerificationError(
                            f"path {extended} through edge {e.id} missed the index set "
                            f"of the sink block at {block.anchor}"
                        )
                    acc = acc + block.algebra.unit(i, k, block.algebra.base.one())
                else:
                    stripped, w = factor_through_cycle(g, block.cycle, extended)
                    i = lookup.get(stripped)
                    if i is None:
                        raise VerificationError(
                            f"path {stripped} through edge {e.id} missed the index set "
                            f"of the cycle block at {block.anchor}"
                        )
                    x = block.algebra.base.monomial(
                        block.algebra.base.field.one(), w * block.cycle.length
                    )
                    acc = acc + block.algebra.unit(i, k, x)
            edges[e.id].append(acc)

    vertex_images = {v: tuple(mats) for v, mats in vertices.items()}
    edge_images = {eid: tuple(mats) for eid, mats in edges.items()}
    ghost_images = {eid: tuple(m.star() for m in mats) for eid, mats in edge_images.items()}
    return GeneratorImages(
        report=report, vertices=vertex_images, edges=edge_images, ghosts=ghost_images
    )


# ---------------------------------------------------------------------------
# relation replay
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    relation: str
    instance: str
    passed: bool

    def to_json(self) -> dict:
        return {"relation": self.relation, "instance": self.instance, "passed": self.passed}


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return tuple(c for c in self.checks if not c.passed)

    def to_json(self) -> dict:
        return {
            "all_passed": self.all_passed,
            "total": len(self.checks),
            "failed": len(self.failures()),
            "checks": [c.to_json() for c in self.checks],
        }


def verify_phi(images: GeneratorImages) -> VerificationReport:
    """Replay every defining relation and grading constraint on the images.

    Covered: vertex orthogonality, identity decomposition, the edge
    endpoint relations and their ghost mirrors, the ghost-edge
    contraction, the range decomposition at non-sinks, and homogeneity
    of every generator image (vertices in degree 0, edges in 1, ghosts
    in -1).
    """
    report = images.report
    g = report.graph
    blocks = report.blocks
    checks = []

    def tuple_mul(a, b):
        return tuple(x * y for x, y in zip(a, b))

    def tuple_add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    def tuple_eq(a, b):
        return all(x == y for x, y in zip(a, b))

    zero = images.zero()

    # A1: vertices are orthogonal idempotents
    for u in g.vertices:
        for v in g.vertices:
            prod = tuple_mul(images.vertices[u], images.vertices[v])
            want = images.vertices[u] if u == v else zero
            checks.append(Check("orthogonal-idempotents", f"{u},{v}", tuple_eq(prod, want)))

    # the vertex images resolve the identity
    acc = zero
    for v in g.vertices:
        acc = tuple_add(acc, images.vertices[v])
    checks.append(Check("identity-resolution", "sum of vertices", tuple_eq(acc, images.identity())))

    # A2: endpoint relations for edges and ghosts
    for e in g.edges:
        fe = images.edges[e.id]
        ge = images.ghosts[e.id]
        checks.append(
            Check(
                "edge-endpoints",
                e.id,
                tuple_eq(tuple_mul(images.vertices[e.src], fe), fe)
                and tuple_eq(tuple_mul(fe, images.vertices[e.dst]), fe),
            )
        )
        checks.append(
            Check(
                "ghost-endpoints",
                e.id,
                tuple_eq(tuple_mul(images.vertices[e.dst], ge), ge)
                and tuple_eq(tuple_mul(ge, images.vertices[e.src]), ge),
            )
        )

    # CK1: ghost-edge contraction
    for e1 in g.edges:
        for e2 in g.edges:
            prod = tuple_mul(images.ghosts[e1.id], images.edges[e2.id])
            want = images.vertices[e1.dst] if e1.id == e2.id else zero
            checks.append(Check("ghost-edge", f"{e1.id},{e2.id}", tuple_eq(prod, want)))

    # CK2: range decomposition at every non-sink
    for v in g.vertices:
        out = g.out_edges(v)
        if not out:
            continue
        acc = zero
        for e in out:
            acc = tuple_add(acc, tuple_mul(images.edges[e.id], images.ghosts[e.id]))
        checks.append(Check("range-decomposition", v, tuple_eq(acc, images.vertices[v])))

    # grading: generator images are homogeneous of the right degree
    for v in g.vertices:
        ok = all(m.is_homogeneous(0) for m in images.vertices[v])
        checks.append(Check("vertex-degree-0", v, ok))
    for e in g.edges:
        ok = all(m.is_homogeneous(1) for m in images.edges[e.id])
        ok = ok and all(m.is_homogeneous(-1) for m in images.ghosts[e.id])
        checks.append(Check("edge-degree-1", e.id, ok))

    # the block column spaces are hit: every diagonal unit appears in
    # some vertex image (so phi does not silently drop a block corner)
    for bi, block in enumerate(blocks):
        hit = [False] * block.n
        for v in g.vertices:
            mat = images.vertices[v][bi]
            for k in range(block.n):
                if not block.algebra.base.is_zero(mat.entry(k, k)):
                    hit[k] = True
        checks.append(Check("block-coverage", f"block {bi}", all(hit)))

    return VerificationReport(checks=tuple(checks))


# ---------------------------------------------------------------------------
# the inverse map
# ---------------------------------------------------------------------------


def phi_inverse_basis(report: DecompositionReport, block_index: int, i: int, j: int, w: int = 0) -> LpaElement:
    """Canonical preimage of the matrix unit e_ij(x^(w t)) of one block.

    For w >= 0 this is the class of q_i c^w q_j*; for w < 0 the cycle
    power moves to the ghost side, q_i (q_j c^(-w))*.  Sink blocks only
    admit w = 0.
    """
    algebra = report.algebra
    try:
        block = report.blocks[block_index]
    except IndexError:
        raise IndexError(f"no block {block_index}; have {len(report.blocks)}") from None
    if not (0 <= i < block.n and 0 <= j < block.n):
        raise IndexError(f"unit position ({i}, {j}) out of range for block size {block.n}")
    if block.kind == "sink":
        if w != 0:
            raise ValueError("sink blocks carry no cycle power; w must be 0")
        return algebra.monomial_element(block.index_paths[i], block.index_paths[j])
    qi, qj = block.index_paths[i], block.index_paths[j]
    if w >= 0:
        return algebra.monomial_element(concat(qi, cycle_power(block.cycle, w)), qj)
    return algebra.monomial_element(qi, concat(qj, cycle_power(block.cycle, -w)))


def pull_back(report: DecompositionReport, mats) -> LpaElement:
    """Linear extension of `phi_inverse_basis` to a tuple of block matrices."""
    algebra = report.algebra
    field = algebra.field
    if len(mats) != len(report.blocks):
        raise ValueError(f"expected {len(report.blocks)} block matrices, got {len(mats)}")
    raw: dict = {}

    def put(m: Monomial, c):
        acc = field.add(raw.get(m, field.zero()), c)
        raw[m] = acc

    for block, mat in zip(report.blocks, mats):
        if mat.algebra != block.algebra:
            raise ValueError("block matrix bound to the wrong graded algebra")
        for i in range(block.n):
            qi = block.index_paths[i]
            for j in range(block.n):
                qj = block.index_paths[j]
                x = mat.entry(i, j)
                if block.kind == "sink":
                    if not field.is_zero(x):
                        put(Monomial(qi, qj), x)
                else:
                    t = block.cycle.length
                    for exp, c in x.terms.items():
                        w = exp // t
                        if w >= 0:
                            m = Monomial(concat(qi, cycle_power(block.cycle, w)), qj)
                        else:
                            m = Monomial(qi, concat(qj, cycle_power(block.cycle, -w)))
                        put(m, c)
    return algebra.normal_form(raw)


# ---------------------------------------------------------------------------
# dimension series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DimSeriesReport:
    degree_bound: int
    rows: tuple  # (degree, algebra side, block side)

    @property
    def all_equal(self) -> bool:
        return all(a == b for _, a, b in self.rows)

    def to_json(self) -> dict:
        return {
            "degree_bound": self.degree_bound,
            "all_equal": self.all_equal,
            "rows": [
                {"degree": n, "lpa_dim": a, "block_dim": b, "equal": a == b}
                for n, a, b in self.rows
            ],
        }


def dim_series_check(algebra_or_report, degree_bound: int = 10) -> DimSeriesReport:
    """Compare graded dimensions of the algebra and its block sum for
    every degree in [-degree_bound, degree_bound]."""
    if isinstance(algebra_or_report, DecompositionReport):
        report = algebra_or_report
    else:
        report = decompose(algebra_or_report)
    algebra = report.algebra
    rows = []
    for n in range(-degree_bound, degree_bound + 1):
        lhs = algebra.graded_dim(n)
        rhs = sum(b.algebra.hom_component_dim(n) for b in report.blocks)
        rows.append((n, lhs, rhs))
    return DimSeriesReport(degree_bound=degree_bound, rows=tuple(rows))
