"""The Leavitt path algebra of a finite graph over an exact field.

Generators: one idempotent per vertex, one generator per edge e and one
per its ghost twin e*.  Relations:

* vertices are orthogonal idempotents,
* s(e) e = e = e r(e) and the mirror relations for ghosts,
* e* f = (r(e) if e == f else 0) for edges e, f,
* v = sum of e e* over all e with source v, at every non-sink v.

Every element is a linear combination of monomials p q* where p, q are
paths with the same range.  The last relation lets one such monomial be
rewritten whenever p and q both end in a distinguished edge; fixing, at
each non-sink vertex, the lexicographically smallest outgoing edge as
distinguished yields a confluent rewriting system, and the surviving
("admissible") monomials form a K-basis.  ``LeavittAlgebra.normal_form``
is that reduction; all arithmetic funnels through it, so equality of
elements is equality of canonical forms.

Grading: p q* sits in degree len(p) - len(q).  ``graded_dim`` counts the
admissible monomials of one degree, finitely many in the no-exit case.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (
    Graph,
    GraphError,
    InfiniteEnumerationError,
    Path,
    concat,
    is_prefix,
    no_exit_condition,
    paths_up_to,
    strip_prefix,
)
from .scalar import Rationals


def special_edges(g: Graph) -> dict:
    """The distinguished outgoing edge (smallest id) at each non-sink vertex."""
    return {v: g.out_edges(v)[0].id for v in g.vertices if not g.is_sink(v)}


@dataclass(frozen=True)
class Monomial:
    """A path pair p q* with r(p) == r(q); the multiplicative skeleton.

    Vertices are the monomials with both paths empty, real paths have q
    empty, ghost paths have p empty.
    """

    p: Path
    q: Path

    @property
    def degree(self) -> int:
        return len(self.p.edges) - len(self.q.edges)

    def sort_key(self):
        return (self.p.sort_key(), self.q.sort_key())

    def star(self) -> "Monomial":
        return Monomial(self.q, self.p)

    def to_json(self, coeff_str: str) -> dict:
        return {
            "p": list(self.p.edges),
            "p_base": self.p.base,
            "q": list(self.q.edges),
            "q_base": self.q.base,
            "coeff": coeff_str,
        }


class LeavittAlgebra:
    """L_K(E) for a finite graph E and an exact field K.

    Carries the graph, the coefficient field and the distinguished-edge
    choice driving normal forms.  Elements are `LpaElement`s; build them
    with `vertex`, `edge`, `ghost`, `identity`, `monomial_element` or
    `element`.
    """

    def __init__(self, graph: Graph, field=None):
        self.graph = graph
        self.field = field if field is not None else Rationals()
        self.special = special_edges(graph)
        self._paths_cache: dict = {}
        self._basis_cache: dict = {}

    # -- element construction -------------------------------------------

    def zero(self) -> "LpaElement":
        return LpaElement(self, {})

    def vertex(self, v: str) -> "LpaElement":
        p = self.graph.empty_path(v)
        return LpaElement(self, {Monomial(p, p): self.field.one()})

    def edge(self, eid: str) -> "LpaElement":
        e = self.graph.edge(eid)
        p = self.graph.path(e.src, (eid,))
        return LpaElement(self, {Monomial(p, self.graph.empty_path(e.dst)): self.field.one()})

    def ghost(self, eid: str) -> "LpaElement":
        return self.edge(eid).star()

    def identity(self) -> "LpaElement":
        """Sum of all vertex idempotents; the unit, the vertex set being finite."""
        terms = {}
        for v in self.graph.vertices:
            p = self.graph.empty_path(v)
            terms[Monomial(p, p)] = self.field.one()
        return LpaElement(self, terms)

    def monomial_element(self, p: Path, q: Path, coeff=None) -> "LpaElement":
        if p.end != q.end:
            raise GraphError(f"path ranges differ: {p.end} != {q.end}")
        c = coeff if coeff is not None else self.field.one()
        return self.normal_form({Monomial(p, q): c})

    def element(self, terms) -> "LpaElement":
        """Canonical element from an iterable of (Monomial, coeff) pairs."""
        raw: dict = {}
        for m, c in terms:
            if m.p.end != m.q.end:
                raise GraphError(f"path ranges differ: {m.p.end} != {m.q.end}")
            raw[m] = self.field.add(raw.get(m, self.field.zero()), c)
        return self.normal_form(raw)

    # -- the rewriting system ---------------------------------------------

    def is_admissible(self, m: Monomial) -> bool:
        """Monomials surviving reduction: p, q may not both end in the
        distinguished edge of the shared source."""
        if not m.p.edges or not m.q.edges:
            return True
        last_p, last_q = m.p.edges[-1], m.q.edges[-1]
        if last_p != last_q:
            return True
        return self.special.get(self.graph.edge(last_p).src) != last_p

    def _reduce(self, raw: dict):
        """Rewrite until every surviving monomial is admissible.

        One step replaces (p g)(q g)* for distinguished g at v by p q*
        minus (p e)(q e)* over the other edges at v; the total path
        length of the worst monomial strictly drops, so this terminates.
        Returns (terms, steps).
        """
        field = self.field
        g = self.graph
        terms = {m: c for m, c in raw.items() if not field.is_zero(c)}
        steps = 0

        def put(m, c):
            acc = field.add(terms.get(m, field.zero()), c)
            if field.is_zero(acc):
                terms.pop(m, None)
            else:
                terms[m] = acc

        while True:
            bad = None
            for m in sorted(terms, key=Monomial.sort_key, reverse=True):
                if not self.is_admissible(m):
                    bad = m
                    break
            if bad is None:
                return terms, steps
            c = terms.pop(bad)
            eid = bad.p.edges[-1]
            v = g.edge(eid).src
            p0 = Path(bad.p.base, bad.p.edges[:-1], v)
            q0 = Path(bad.q.base, bad.q.edges[:-1], v)
            put(Monomial(p0, q0), c)
            for e in g.out_edges(v):
                if e.id == eid:
                    continue
                put(
                    Monomial(
                        Path(p0.base, p0.edges + (e.id,), e.dst),
                        Path(q0.base, q0.edges + (e.id,), e.dst),
                    ),
                    field.neg(c),
                )
            steps += 1

    def normal_form(self, raw: dict) -> "LpaElement":
        """Canonical element from a raw monomial -> coefficient map."""
        terms, _ = self._reduce(raw)
        return LpaElement(self, terms)

    def normal_form_stats(self, raw: dict):
        """(canonical element, rewrite step count); for confluence probing."""
        terms, steps = self._reduce(raw)
        return LpaElement(self, terms), steps

    # -- graded dimension ---------------------------------------------------

    def basis_monomials(self, degree: int, length_bound=None):
        """The admissible monomials of one degree, sorted.

        Unbounded mode needs the no-exit condition; the search radius
        2 * (number of vertices) + |degree| then provably captures every
        admissible pair.  With `length_bound`, both paths are capped at
        that length instead (truncated count).
        """
        if length_bound is None:
            if not no_exit_condition(self.graph):
                raise InfiniteEnumerationError(
                    "graded components are infinite-dimensional when a cycle has an exit; "
                    "pass length_bound for a truncated count"
                )
            cap = 2 * len(self.graph.vertices) + abs(degree)
        else:
            cap = length_bound
        cached = self._basis_cache.get((degree, cap))
        if cached is not None:
            return cached
        if cap not in self._paths_cache:
            self._paths_cache[cap] = paths_up_to(self.graph, cap)
        by_end_len: dict = {}
        for p in self._paths_cache[cap]:
            by_end_len.setdefault((p.end, len(p.edges)), []).append(p)
        out = []
        for (end, lp), ps in by_end_len.items():
            qs = by_end_len.get((end, lp - degree))
            if not qs:
                continue
            for p in ps:
                for q in qs:
                    m = Monomial(p, q)
                    if self.is_admissible(m):
                        out.append(m)
        out.sort(key=Monomial.sort_key)
        result = tuple(out)
        self._basis_cache[(degree, cap)] = result
        return result

    def graded_dim(self, degree: int, length_bound=None) -> int:
        return len(self.basis_monomials(degree, length_bound))

    # -- io -------------------------------------------------------------------

    def element_from_json(self, data) -> "LpaElement":
        if not isinstance(data, list):
            raise GraphError("element serialization must be an array of terms")
        pairs = []
        for rec in data:
            try:
                p = self.graph.path(rec["p_base"], tuple(rec["p"]))
                q = self.graph.path(rec["q_base"], tuple(rec["q"]))
                c = self.field.parse(rec["coeff"])
            except (KeyError, TypeError) as exc:
                raise GraphError(f"malformed element term: {exc}") from None
            pairs.append((Monomial(p, q), c))
        return self.element(pairs)

    def __eq__(self, other):
        return (
            isinstance(other, LeavittAlgebra)
            and other.graph == self.graph
            and other.field == self.field
        )

    def __hash__(self):
        return hash((self.graph, self.field))

    def __repr__(self):
        return f"LeavittAlgebra({self.graph!r}, {self.field!r})"


class LpaElement:
    """A canonical-form element: an admissible monomial -> coefficient map."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LeavittAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = terms

    # -- ring structure -----------------------------------------------------

    def _check_same(self, other: "LpaElement"):
        if not isinstance(other, LpaElement):
            raise TypeError(f"cannot combine LpaElement with {type(other).__name__}")
        if other.algebra != self.algebra:
            raise ValueError("elements live in different algebras")

    def __add__(self, other):
        self._check_same(other)
        field = self.algebra.field
        acc = dict(self.terms)
        for m, c in other.terms.items():
            s = field.add(acc.get(m, field.zero()), c)
            if field.is_zero(s):
                acc.pop(m, None)
            else:
                acc[m] = s
        return LpaElement(self.algebra, acc)

    def __neg__(self):
        field = self.algebra.field
        return LpaElement(self.algebra, {m: field.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Product, reduced to canonical form.

        q* p' for inner paths contracts by the prefix comparison; the
        raw products then pass through the rewriting system once.
        """
        self._check_same(other)
        field = self.algebra.field
        raw: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _monomial_product(m1, m2)
                if m is None:
                    continue
                c = field.mul(c1, c2)
                raw[m] = field.add(raw.get(m, field.zero()), c)
        return self.algebra.normal_form(raw)

    def scale(self, c) -> "LpaElement":
        field = self.algebra.field
        if field.is_zero(c):
            return self.algebra.zero()
        return LpaElement(self.algebra, {m: field.mul(c, v) for m, v in self.terms.items()})

    def star(self) -> "LpaElement":
        """The involution (c p q*)* = c q p*; admissibility is symmetric in p, q."""
        return LpaElement(self.algebra, {m.star(): c for m, c in self.terms.items()})

    # -- grading ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Degree of a nonzero homogeneous element; None for zero (which
        sits in every component) and for inhomogeneous elements."""
        degs = {m.degree for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self.terms}) <= 1

    def homogeneous_components(self) -> dict:
        field = self.algebra.field
        comps: dict = {}
        for m, c in self.terms.items():
            comps.setdefault(m.degree, {})[m] = c
        return {d: LpaElement(self.algebra, t) for d, t in sorted(comps.items())}

    def component(self, degree: int) -> "LpaElement":
        return LpaElement(
            self.algebra, {m: c for m, c in self.terms.items() if m.degree == degree}
        )

    # -- plumbing ---------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, LpaElement)
            and other.algebra == self.algebra
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_json(self) -> list:
        field = self.algebra.field
        out = []
        for m in sorted(self.terms, key=Monomial.sort_key):
            out.append(m.to_json(field.format(self.terms[m])))
        return out

    def __repr__(self):
        if not self.terms:
            return "<0>"
        field = self.algebra.field
        bits = []
        for m in sorted(self.terms, key=Monomial.sort_key):
            c = field.format(self.terms[m])
            p = ".".join(m.p.edges) if m.p.edges else m.p.base
            q = ".".join(m.q.edges) if m.q.edges else ""
            bits.append(f"{c}*{p}" + (f".({q})*" if q else ""))
        return "<" + " + ".join(bits) + ">"


def _monomial_product(m1: Monomial, m2: Monomial):
    """(p1 q1*)(p2 q2*) as a single raw monomial, or None when it dies.

    The ghost relations contract q1* p2 to a single path (or kill the
    product) depending on which of q1, p2 is a prefix of the other.
    """
    q1, p2 = m1.q, m2.p
    if is_prefix(q1, p2):
        return Monomial(concat(m1.p, strip_prefix(q1, p2)), m2.q)
    if is_prefix(p2, q1):
        return Monomial(m1.p, concat(m2.q, strip_prefix(p2, q1)))
    return None
