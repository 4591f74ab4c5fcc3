"""Exact scalar arithmetic for the algebra engine.

Three coefficient domains, all exact:

* ``Rationals`` -- the field Q, elements are ``fractions.Fraction``;
* ``PrimeField`` -- the field F_p, elements are ints in ``range(p)``;
* ``LaurentRing`` -- K[x^t, x^(-t)] over one of the fields above, elements
  are ``LaurentElement`` (sparse exponent -> coefficient maps, every
  exponent a multiple of the step t).

All three expose the same small protocol (zero/one/add/sub/mul/neg/
is_zero/parse/format plus the grading hooks ``has_component``,
``component``, ``star`` and ``homogeneous_degree``) so matrix code can
stay generic over the base.  A field is viewed as trivially graded:
everything sits in degree 0.

``smith_normal_form`` diagonalizes a matrix over a LaurentRing by row and
column operations, using the Euclidean width max(exp) - min(exp).
"""

from __future__ import annotations

from fractions import Fraction


class Rationals:
    """The field Q.  Elements are `fractions.Fraction` values."""

    characteristic = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def invert(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in Q")
        return 1 / Fraction(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def parse(self, s: str):
        return Fraction(s)

    def format(self, a) -> str:
        return str(a)

    # trivial grading: the only nonzero component is degree 0
    def has_component(self, d: int) -> bool:
        return d == 0

    def component(self, a, d: int):
        return a if d == 0 else Fraction(0)

    def star(self, a):
        return a

    def homogeneous_degree(self, a) -> int:
        if a == 0:
            raise ValueError("zero has no degree")
        return 0

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"


class PrimeField:
    """The field F_p for a prime p.  Elements are ints in range(p)."""

    def __init__(self, p: int):
        if p < 2:
            raise ValueError("modulus must be a prime >= 2")
        # small trial division; moduli used here are tiny
        d = 2
        while d * d <= p:
            if p % d == 0:
                raise ValueError(f"{p} is not prime")
            d += 1
        self.p = p
        self.characteristic = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n: int):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def invert(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def parse(self, s: str):
        return int(s) % self.p

    def format(self, a) -> str:
        return str(a % self.p)

    def has_component(self, d: int) -> bool:
        return d == 0

    def component(self, a, d: int):
        return a % self.p if d == 0 else 0

    def star(self, a):
        return a

    def homogeneous_degree(self, a) -> int:
        if a % self.p == 0:
            raise ValueError("zero has no degree")
        return 0

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class LaurentElement:
    """An element of K[x^t, x^(-t)]: a sparse map exponent -> coefficient.

    Exponents are actual powers of x (so always multiples of the ring
    step).  The map is canonical: no zero coefficients are stored.
    Arithmetic goes through the owning ring so coefficients stay exact.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: "LaurentRing", terms: dict):
        self.ring = ring
        self.terms = terms

    def __add__(self, other):
        return self.ring.add(self, other)

    def __sub__(self, other):
        return self.ring.sub(self, other)

    def __mul__(self, other):
        return self.ring.mul(self, other)

    def __neg__(self):
        return self.ring.neg(self)

    def __eq__(self, other):
        return (
            isinstance(other, LaurentElement)
            and other.ring == self.ring
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self):
        return f"LaurentElement({self.ring.format(self)!r})"


class LaurentRing:
    """K[x^t, x^(-t)]: Laurent polynomials over `field` in the variable x^t.

    `step` is t.  Every exponent of every element is a multiple of t, so
    the ring is a Laurent polynomial ring in one variable y = x^t; the
    x-exponent bookkeeping keeps the embedding into the graded world
    explicit (the degree of x^m is m).
    """

    def __init__(self, field, step: int):
        if step < 1:
            raise ValueError("step must be a positive integer")
        self.field = field
        self.step = step

    # -- construction --------------------------------------------------

    def _make(self, terms: dict) -> LaurentElement:
        clean = {e: c for e, c in terms.items() if not self.field.is_zero(c)}
        return LaurentElement(self, clean)

    def monomial(self, coeff, exp: int) -> LaurentElement:
        if exp % self.step != 0:
            raise ValueError(f"exponent {exp} is not a multiple of {self.step}")
        return self._make({exp: coeff})

    def zero(self) -> LaurentElement:
        return LaurentElement(self, {})

    def one(self) -> LaurentElement:
        return self.monomial(self.field.one(), 0)

    def from_int(self, n: int) -> LaurentElement:
        return self._make({0: self.field.from_int(n)})

    def from_terms(self, terms: dict) -> LaurentElement:
        for e in terms:
            if e % self.step != 0:
                raise ValueError(f"exponent {e} is not a multiple of {self.step}")
        acc: dict = {}
        for e, c in terms.items():
            acc[e] = self.field.add(acc.get(e, self.field.zero()), c)
        return self._make(acc)

    # -- arithmetic -----------------------------------------------------

    def add(self, a: LaurentElement, b: LaurentElement) -> LaurentElement:
        acc = dict(a.terms)
        for e, c in b.terms.items():
            acc[e] = self.field.add(acc.get(e, self.field.zero()), c)
        return self._make(acc)

    def sub(self, a: LaurentElement, b: LaurentElement) -> LaurentElement:
        return self.add(a, self.neg(b))

    def neg(self, a: LaurentElement) -> LaurentElement:
        return LaurentElement(self, {e: self.field.neg(c) for e, c in a.terms.items()})

    def mul(self, a: LaurentElement, b: LaurentElement) -> LaurentElement:
        acc: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = e1 + e2
                acc[e] = self.field.add(acc.get(e, self.field.zero()), self.field.mul(c1, c2))
        return self._make(acc)

    def scale(self, a: LaurentElement, c) -> LaurentElement:
        return self._make({e: self.field.mul(c, v) for e, v in a.terms.items()})

    def is_zero(self, a: LaurentElement) -> bool:
        return not a.terms

    # -- units and Euclidean structure -----------------------------------

    def is_unit(self, a: LaurentElement) -> bool:
        """Units are exactly the nonzero monomials c * x^(kt)."""
        return len(a.terms) == 1

    def unit_inverse(self, a: LaurentElement) -> LaurentElement:
        if not self.is_unit(a):
            raise ValueError("not a unit: " + self.format(a))
        ((e, c),) = a.terms.items()
        return self.monomial(self.field.invert(c), -e)

    def width(self, a: LaurentElement) -> int:
        """max exponent - min exponent; the Euclidean size of a nonzero element."""
        if not a.terms:
            raise ValueError("zero has no width")
        return max(a.terms) - min(a.terms)

    def divmod(self, a: LaurentElement, b: LaurentElement):
        """Return (q, r) with a = q*b + r and r = 0 or width(r) < width(b).

        Shift both operands into ordinary polynomials in y = x^step, run
        long division there, then shift back.
        """
        if self.is_zero(b):
            raise ZeroDivisionError("division by zero")
        if self.is_zero(a):
            return self.zero(), self.zero()
        shift_a = min(a.terms)
        shift_b = min(b.terms)
        rem = {e - shift_a: c for e, c in a.terms.items()}
        den = {e - shift_b: c for e, c in b.terms.items()}
        deg_b = max(den)
        lead_inv = self.field.invert(den[deg_b])
        quo: dict = {}
        while rem and max(rem) >= deg_b:
            deg_r = max(rem)
            factor = self.field.mul(rem[deg_r], lead_inv)
            shift = deg_r - deg_b
            quo[shift] = self.field.add(quo.get(shift, self.field.zero()), factor)
            for e, c in den.items():
                tgt = e + shift
                val = self.field.sub(rem.get(tgt, self.field.zero()), self.field.mul(factor, c))
                if self.field.is_zero(val):
                    rem.pop(tgt, None)
                else:
                    rem[tgt] = val
        q = self._make({e + shift_a - shift_b: c for e, c in quo.items()})
        r = self._make({e + shift_a: c for e, c in rem.items()})
        return q, r

    def divides(self, d: LaurentElement, a: LaurentElement) -> bool:
        if self.is_zero(d):
            return self.is_zero(a)
        _, r = self.divmod(a, d)
        return self.is_zero(r)

    # -- grading ----------------------------------------------------------

    def has_component(self, d: int) -> bool:
        return d % self.step == 0

    def component(self, a: LaurentElement, d: int) -> LaurentElement:
        if d in a.terms:
            return LaurentElement(self, {d: a.terms[d]})
        return self.zero()

    def star(self, a: LaurentElement) -> LaurentElement:
        """The graded involution x^m -> x^(-m), coefficients fixed."""
        return LaurentElement(self, {-e: c for e, c in a.terms.items()})

    def homogeneous_degree(self, a: LaurentElement) -> int:
        if not a.terms:
            raise ValueError("zero has no degree")
        if len(a.terms) != 1:
            raise ValueError("not homogeneous: " + self.format(a))
        return next(iter(a.terms))

    # -- io ----------------------------------------------------------------

    def parse(self, data) -> LaurentElement:
        """Read {"t": step, "terms": {"exp": "coeff", ...}}."""
        if not isinstance(data, dict) or "terms" not in data:
            raise ValueError("Laurent serialization must be a dict with a 'terms' key")
        if "t" in data and int(data["t"]) != self.step:
            raise ValueError(f"step mismatch: expected {self.step}, got {data['t']}")
        return self.from_terms({int(e): self.field.parse(c) for e, c in data["terms"].items()})

    def to_json(self, a: LaurentElement) -> dict:
        return {
            "t": self.step,
            "terms": {str(e): self.field.format(c) for e, c in sorted(a.terms.items())},
        }

    def format(self, a: LaurentElement) -> str:
        if not a.terms:
            return "0"
        parts = []
        for e in sorted(a.terms):
            c = self.field.format(a.terms[e])
            if e == 0:
                parts.append(c)
            elif e == 1:
                parts.append(f"{c}*x" if c != "1" else "x")
            else:
                parts.append(f"{c}*x^{e}" if c != "1" else f"x^{e}")
        return " + ".join(parts)

    def __eq__(self, other):
        return (
            isinstance(other, LaurentRing)
            and other.field == self.field
            and other.step == self.step
        )

    def __hash__(self):
        return hash(("Laurent", self.field, self.step))

    def __repr__(self):
        return f"LaurentRing({self.field!r}, step={self.step})"


# ---------------------------------------------------------------------------
# Smith normal form over a Laurent ring
# ---------------------------------------------------------------------------


def _identity(ring: LaurentRing, n: int):
    return [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]


def smith_normal_form(m, ring: LaurentRing):
    """Diagonalize `m` (list of lists over `ring`) by invertible row/column ops.

    Returns (U, D, V) with U * m * V = D, U and V invertible over the
    ring, D diagonal, and each diagonal entry dividing the next.
    Diagonal entries are not forced monic or unit-normalized; whatever
    the pivoting produces is kept.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [[m[i][j] for j in range(cols)] for i in range(rows)]
    u = _identity(ring, rows)
    v = _identity(ring, cols)

    def row_sub(i, j, q):
        # row_i -= q * row_j
        for k in range(cols):
            a[i][k] = a[i][k] - q * a[j][k]
        for k in range(rows):
            u[i][k] = u[i][k] - q * u[j][k]

    def col_sub(i, j, q):
        # col_i -= q * col_j
        for k in range(rows):
            a[k][i] = a[k][i] - q * a[k][j]
        for k in range(cols):
            v[k][i] = v[k][i] - q * v[k][j]

    def row_add(i, j):
        for k in range(cols):
            a[i][k] = a[i][k] + a[j][k]
        for k in range(rows):
            u[i][k] = u[i][k] + u[j][k]

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for k in range(rows):
                a[k][i], a[k][j] = a[k][j], a[k][i]
            for k in range(cols):
                v[k][i], v[k][j] = v[k][j], v[k][i]

    def pick_pivot(s):
        best = None
        for i in range(s, rows):
            for j in range(s, cols):
                if not ring.is_zero(a[i][j]):
                    w = ring.width(a[i][j])
                    if best is None or w < best[0]:
                        best = (w, i, j)
        return best

    s = 0
    while s < min(rows, cols):
        found = pick_pivot(s)
        if found is None:
            break
        _, pi, pj = found
        swap_rows(s, pi)
        swap_cols(s, pj)

        while True:
            # clear the pivot column; a nonzero remainder becomes the new,
            # strictly smaller pivot, so this loop terminates
            dirty = False
            for i in range(s + 1, rows):
                if ring.is_zero(a[i][s]):
                    continue
                q, r = ring.divmod(a[i][s], a[s][s])
                row_sub(i, s, q)
                if not ring.is_zero(r):
                    swap_rows(s, i)
                    dirty = True
                    break
            if dirty:
                continue
            for j in range(s + 1, cols):
                if ring.is_zero(a[s][j]):
                    continue
                q, r = ring.divmod(a[s][j], a[s][s])
                col_sub(j, s, q)
                if not ring.is_zero(r):
                    swap_cols(s, j)
                    dirty = True
                    break
            if dirty:
                continue
            # pivot row and column clean; enforce divisibility of the rest
            culprit = None
            for i in range(s + 1, rows):
                for j in range(s + 1, cols):
                    if not ring.divides(a[s][s], a[i][j]):
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            row_add(s, culprit)
        s += 1

    return u, a, v
