"""Exact linear algebra over prime fields, the rationals and the integers.

Provides the arithmetic core used by every other module: dense exact
matrices, chain complexes with checked differentials, homology with chosen
representatives, Smith normal form with explicit unimodular transforms,
induced maps on homology, and mapping cones.

No floating point anywhere.  Scalars are Python ints (integers and prime
fields) or ``fractions.Fraction`` (rationals).  Over GF(2) the internal
vector layer stores a vector as a single int used as a bitset, which keeps
the heavy enumerative computations (cube complexes, spectral sequence
pages) cheap; every other field uses plain lists of scalars.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import SolveFailure

__all__ = [
    "CoefficientRing",
    "ZZ",
    "QQ",
    "GF",
    "GF2",
    "ring_from_label",
    "Matrix",
    "Span",
    "vector_ops",
    "ChainComplex",
    "ChainMap",
    "AbelianGroupPresentation",
    "HomologyBasis",
    "simplicial_chain_complex",
    "homology",
    "betti_numbers",
    "smith_normal_form",
    "induced_map_on_homology",
    "mapping_cone",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class CoefficientRing:
    """Tag selecting the coefficient arithmetic: Z, Q, or F_p.

    ``kind`` is one of ``"integers"``, ``"rationals"``, ``"prime_field"``;
    ``p`` is the characteristic for prime fields and ``None`` otherwise.
    """

    kind: str
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("integers", "rationals", "prime_field"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "prime_field":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"prime field needs a prime, got {self.p!r}")
        elif self.p is not None:
            raise ValueError(f"{self.kind} takes no characteristic")

    @property
    def is_field(self) -> bool:
        return self.kind != "integers"

    def label(self) -> str:
        if self.kind == "integers":
            return "Z"
        if self.kind == "rationals":
            return "Q"
        return f"F{self.p}"

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return self.label()


ZZ = CoefficientRing("integers")
QQ = CoefficientRing("rationals")


def GF(p: int) -> CoefficientRing:
    """The prime field with p elements."""
    return CoefficientRing("prime_field", p)


GF2 = GF(2)


def ring_from_label(label: str) -> CoefficientRing:
    """Parse ``z | q | z2 | p:<prime>`` (case-insensitive) into a ring."""
    s = label.strip().lower()
    if s == "z":
        return ZZ
    if s == "q":
        return QQ
    if s == "z2":
        return GF2
    if s.startswith("p:"):
        return GF(int(s[2:]))
    raise ValueError(f"unrecognised coefficient label {label!r}")


def _coerce(ring: CoefficientRing, x) -> object:
    """Coerce an int/Fraction into the canonical scalar type of ``ring``."""
    if ring.kind == "integers":
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return int(x)
        return int(x)
    if ring.kind == "rationals":
        return Fraction(x)
    return int(x) % ring.p  # type: ignore[operator]


# --------------------------------------------------------------------------
# Matrices


class Matrix:
    """Dense exact matrix over a fixed coefficient ring (row-major)."""

    __slots__ = ("ring", "rows", "cols", "_d")

    def __init__(self, ring: CoefficientRing, rows: int, cols: int, data=None):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        if data is None:
            zero = _coerce(ring, 0)
            self._d = [[zero] * cols for _ in range(rows)]
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError("matrix data has the wrong shape")
            self._d = [[_coerce(ring, x) for x in row] for row in data]

    # construction helpers -------------------------------------------------

    @classmethod
    def zeros(cls, ring: CoefficientRing, rows: int, cols: int) -> "Matrix":
        return cls(ring, rows, cols)

    @classmethod
    def identity(cls, ring: CoefficientRing, n: int) -> "Matrix":
        m = cls(ring, n, n)
        one = _coerce(ring, 1)
        for i in range(n):
            m._d[i][i] = one
        return m

    @classmethod
    def from_rows(cls, ring: CoefficientRing, rows: Sequence[Sequence]) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        return cls(ring, r, c, rows)

    @classmethod
    def from_columns(cls, ring: CoefficientRing, nrows: int, columns: Sequence[Sequence]) -> "Matrix":
        m = cls(ring, nrows, len(columns))
        for j, col in enumerate(columns):
            if len(col) != nrows:
                raise ValueError("column of wrong length")
            for i, x in enumerate(col):
                m._d[i][j] = _coerce(m.ring, x)
        return m

    # access ----------------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self._d[i][j]

    def __setitem__(self, ij: tuple[int, int], value) -> None:
        i, j = ij
        self._d[i][j] = _coerce(self.ring, value)

    def row(self, i: int) -> list:
        return list(self._d[i])

    def column(self, j: int) -> list:
        return [self._d[i][j] for i in range(self.rows)]

    def columns(self) -> Iterator[list]:
        for j in range(self.cols):
            yield self.column(j)

    # arithmetic -------------------------------------------------------------

    def _check_ring(self, other: "Matrix") -> None:
        if self.ring != other.ring:
            raise ValueError("mixed coefficient rings")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        out = Matrix(self.ring, self.rows, self.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                out._d[i][j] = _coerce(self.ring, self._d[i][j] + other._d[i][j])
        return out

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        out = Matrix(self.ring, self.rows, self.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                out._d[i][j] = _coerce(self.ring, -self._d[i][j])
        return out

    def __mul__(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        out = Matrix(self.ring, self.rows, other.cols)
        for i in range(self.rows):
            ri = self._d[i]
            for j in range(other.cols):
                acc = sum(ri[k] * other._d[k][j] for k in range(self.cols))
                out._d[i][j] = _coerce(self.ring, acc)
        return out

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product, vector given and returned as a plain list."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return [
            _coerce(self.ring, sum(self._d[i][k] * vec[k] for k in range(self.cols)))
            for i in range(self.rows)
        ]

    def transpose(self) -> "Matrix":
        out = Matrix(self.ring, self.cols, self.rows)
        for i in range(self.rows):
            for j in range(self.cols):
                out._d[j][i] = self._d[i][j]
        return out

    def is_zero(self) -> bool:
        zero = _coerce(self.ring, 0)
        return all(x == zero for row in self._d for x in row)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.rows == other.rows
            and self.cols == other.cols
            and self._d == other._d
        )

    def __hash__(self):  # pragma: no cover - matrices are not hashable
        raise TypeError("Matrix is mutable; not hashable")

    def to_lists(self) -> list[list]:
        return [list(r) for r in self._d]

    def __repr__(self) -> str:
        return f"Matrix({self.ring.label()}, {self.rows}x{self.cols})"


# --------------------------------------------------------------------------
# Vector kernels.  Two implementations behind one duck-typed surface:
# GF(2) vectors are ints-as-bitsets, everything else is a list of scalars.


class _Gf2Ops:
    """Bitset vectors over GF(2): addition is XOR, scalars are 0/1."""

    ring = GF2

    @staticmethod
    def zero(n: int) -> int:
        return 0

    @staticmethod
    def unit(n: int, i: int) -> int:
        return 1 << i

    @staticmethod
    def from_items(n: int, items: Iterable[tuple[int, int]]) -> int:
        v = 0
        for i, c in items:
            if c % 2:
                v ^= 1 << i
        return v

    @staticmethod
    def from_list(xs: Sequence[int]) -> int:
        v = 0
        for i, c in enumerate(xs):
            if c % 2:
                v |= 1 << i
        return v

    @staticmethod
    def to_list(v: int, n: int) -> list[int]:
        return [(v >> i) & 1 for i in range(n)]

    @staticmethod
    def add(u: int, v: int) -> int:
        return u ^ v

    sub = add

    @staticmethod
    def scale(c: int, v: int) -> int:
        return v if c & 1 else 0

    @staticmethod
    def is_zero(v: int) -> bool:
        return v == 0

    @staticmethod
    def coeff(v: int, i: int) -> int:
        return (v >> i) & 1

    @staticmethod
    def pivot(v: int) -> int | None:
        if v == 0:
            return None
        return (v & -v).bit_length() - 1

    # scalar helpers
    sc_zero = 0
    sc_one = 1

    @staticmethod
    def sc_add(a: int, b: int) -> int:
        return (a + b) & 1

    @staticmethod
    def sc_neg(a: int) -> int:
        return a & 1

    @staticmethod
    def sc_mul(a: int, b: int) -> int:
        return a & b & 1

    @staticmethod
    def sc_inv(a: int) -> int:
        if a & 1:
            return 1
        raise ZeroDivisionError("inverse of 0 in GF(2)")


class _FieldOps:
    """List-backed vectors over Q or F_p (p odd)."""

    def __init__(self, ring: CoefficientRing):
        if not ring.is_field:
            raise ValueError("vector kernel requires a field")
        self.ring = ring
        if ring.kind == "rationals":
            self.sc_zero = Fraction(0)
            self.sc_one = Fraction(1)
        else:
            self.sc_zero = 0
            self.sc_one = 1

    def _c(self, x):
        return _coerce(self.ring, x)

    def zero(self, n: int) -> list:
        return [self.sc_zero] * n

    def unit(self, n: int, i: int) -> list:
        v = [self.sc_zero] * n
        v[i] = self.sc_one
        return v

    def from_items(self, n: int, items: Iterable[tuple[int, object]]) -> list:
        v = [self.sc_zero] * n
        for i, c in items:
            v[i] = self.sc_add(v[i], self._c(c))
        return v

    def from_list(self, xs: Sequence) -> list:
        return [self._c(x) for x in xs]

    def to_list(self, v: list, n: int) -> list:
        if len(v) != n:
            raise ValueError("vector length mismatch")
        return list(v)

    def add(self, u: list, v: list) -> list:
        if self.ring.kind == "rationals":
            return [a + b for a, b in zip(u, v)]
        p = self.ring.p
        return [(a + b) % p for a, b in zip(u, v)]

    def sub(self, u: list, v: list) -> list:
        if self.ring.kind == "rationals":
            return [a - b for a, b in zip(u, v)]
        p = self.ring.p
        return [(a - b) % p for a, b in zip(u, v)]

    def scale(self, c, v: list) -> list:
        c = self._c(c)
        if self.ring.kind == "rationals":
            return [c * a for a in v]
        p = self.ring.p
        return [(c * a) % p for a in v]

    def is_zero(self, v: list) -> bool:
        return all(a == self.sc_zero for a in v)

    def coeff(self, v: list, i: int):
        return v[i]

    def pivot(self, v: list) -> int | None:
        for i, a in enumerate(v):
            if a != self.sc_zero:
                return i
        return None

    # scalar helpers
    def sc_add(self, a, b):
        if self.ring.kind == "rationals":
            return a + b
        return (a + b) % self.ring.p

    def sc_neg(self, a):
        if self.ring.kind == "rationals":
            return -a
        return (-a) % self.ring.p

    def sc_mul(self, a, b):
        if self.ring.kind == "rationals":
            return a * b
        return (a * b) % self.ring.p

    def sc_inv(self, a):
        if self.ring.kind == "rationals":
            if a == 0:
                raise ZeroDivisionError("inverse of 0")
            return Fraction(1) / a
        p = self.ring.p
        a %= p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, p - 2, p)


_GF2_OPS = _Gf2Ops()
_OPS_CACHE: dict[CoefficientRing, object] = {}


def vector_ops(ring: CoefficientRing):
    """The vector kernel for a field (bitset-backed for GF(2))."""
    if ring == GF2:
        return _GF2_OPS
    ops = _OPS_CACHE.get(ring)
    if ops is None:
        ops = _FieldOps(ring)
        _OPS_CACHE[ring] = ops
    return ops


class Span:
    """Incrementally echelonised span of vectors, with combination tracking.

    Vectors are inserted one at a time and receive consecutive integer tags
    0, 1, 2, ...  A dependent insert (and ``solve``) returns a ``{tag:
    coefficient}`` dict expressing the vector over the previously inserted
    *independent* generators.  Pivoting is deterministic: each new
    independent vector is reduced against the existing pivots in insertion
    order and its lowest nonzero coordinate becomes the pivot.
    """

    def __init__(self, ops, n: int):
        self.ops = ops
        self.n = n
        self._pivots: list[tuple[int, object, dict]] = []
        self._count = 0

    @property
    def dim(self) -> int:
        return len(self._pivots)

    @property
    def inserted(self) -> int:
        return self._count

    def _reduce(self, v):
        """Return (w, mu) with w = v - sum(mu[g] * generator_g)."""
        ops = self.ops
        w = v
        mu: dict[int, object] = {}
        for piv, pvec, pcombo in self._pivots:
            c = ops.coeff(w, piv)
            if c != ops.sc_zero:
                w = ops.sub(w, ops.scale(c, pvec))
                for g, a in pcombo.items():
                    acc = ops.sc_add(mu.get(g, ops.sc_zero), ops.sc_mul(c, a))
                    if acc == ops.sc_zero:
                        mu.pop(g, None)
                    else:
                        mu[g] = acc
        return w, mu

    def insert(self, v) -> tuple[bool, dict | None]:
        """Insert a vector; return (is_new, combo).

        ``combo`` is None for an independent vector, otherwise the
        dependency ``v == sum(combo[g] * generator_g)``.
        """
        ops = self.ops
        tag = self._count
        self._count += 1
        w, mu = self._reduce(v)
        if ops.is_zero(w):
            return False, mu
        piv = ops.pivot(w)
        inv = ops.sc_inv(ops.coeff(w, piv))
        w = ops.scale(inv, w)
        combo = {g: ops.sc_neg(ops.sc_mul(inv, a)) for g, a in mu.items()}
        combo[tag] = inv
        self._pivots.append((piv, w, combo))
        return True, None

    def solve(self, v) -> dict | None:
        """Combination of generators equal to ``v``, or None if outside."""
        w, mu = self._reduce(v)
        if self.ops.is_zero(w):
            return mu
        return None

    def contains(self, v) -> bool:
        return self.solve(v) is not None


def column_rank(ops, columns: Iterable) -> int:
    """Rank of a set of vectors (columns of a map) over a field kernel."""
    span = Span(ops, 0)
    for col in columns:
        span.insert(col)
    return span.dim


def matrix_rank(mat: "Matrix") -> int:
    """Rank of a matrix over its own coefficient field (or over QQ for ZZ)."""
    ring = QQ if mat.ring.kind == "integers" else mat.ring
    ops = vector_ops(ring)
    return column_rank(ops, (ops.from_items(mat.rows, [(i, mat[i, j]) for i in range(mat.rows)])
                             for j in range(mat.cols)))


def nullspace(ops, columns: Sequence, source_dim: int) -> list:
    """Kernel basis of the linear map with the given column images.

    ``columns[t]`` is the image of the t-th source basis vector.  Returns
    kernel vectors in source coordinates, in deterministic (echelon) order.
    """
    span = Span(ops, 0)
    kernel = []
    for t in range(source_dim):
        is_new, combo = span.insert(columns[t])
        if not is_new:
            k = ops.unit(source_dim, t)
            for g, a in combo.items():
                k = ops.sub(k, ops.scale(a, ops.unit(source_dim, g)))
            kernel.append(k)
    return kernel


# --------------------------------------------------------------------------
# Chain complexes


class ChainComplex:
    """A bounded chain complex of finite free modules.

    Differentials lower degree by one; the composite of consecutive
    differentials is checked to vanish at construction time.
    """

    def __init__(
        self,
        ring: CoefficientRing,
        ranks: dict[int, int],
        differentials: dict[int, Matrix],
        check: bool = True,
    ):
        self.ring = ring
        self._ranks = {n: r for n, r in ranks.items() if r > 0}
        degs = sorted(self._ranks)
        self.bottom = degs[0] if degs else 0
        self.top = degs[-1] if degs else -1
        self._diffs: dict[int, Matrix] = {}
        for n, d in differentials.items():
            if d.ring != ring:
                raise ValueError("differential over the wrong ring")
            if d.rows != self.rank(n - 1) or d.cols != self.rank(n):
                raise ValueError(f"differential at degree {n} has wrong shape")
            if d.cols > 0 and d.rows > 0:
                self._diffs[n] = d
        if check:
            for n in list(self._diffs):
                lower = self._diffs.get(n - 1)
                if lower is not None and not (lower * self._diffs[n]).is_zero():
                    raise ValueError(f"differential does not square to zero at degree {n}")

    def rank(self, n: int) -> int:
        return self._ranks.get(n, 0)

    def diff(self, n: int) -> Matrix:
        d = self._diffs.get(n)
        if d is None:
            return Matrix.zeros(self.ring, self.rank(n - 1), self.rank(n))
        return d

    def degrees(self) -> range:
        if not self._ranks:
            return range(0)
        return range(self.bottom, self.top + 1)

    def __repr__(self) -> str:
        parts = ", ".join(f"{n}:{self.rank(n)}" for n in self.degrees())
        return f"ChainComplex({self.ring.label()}; {parts})"


@dataclass
class ChainMap:
    """A degree-preserving map of chain complexes, checked to commute."""

    source: ChainComplex
    target: ChainComplex
    components: dict[int, Matrix]

    def __post_init__(self) -> None:
        ring = self.source.ring
        if self.target.ring != ring:
            raise ValueError("chain map across different rings")
        for n, f in self.components.items():
            if f.rows != self.target.rank(n) or f.cols != self.source.rank(n):
                raise ValueError(f"component at degree {n} has wrong shape")
        for n in self.components:
            f_n = self.component(n)
            f_prev = self.component(n - 1)
            left = self.target.diff(n) * f_n
            right = f_prev * self.source.diff(n)
            if left != right:
                raise ValueError(f"chain map fails to commute at degree {n}")

    def component(self, n: int) -> Matrix:
        f = self.components.get(n)
        if f is None:
            return Matrix.zeros(self.source.ring, self.target.rank(n), self.source.rank(n))
        return f


def simplicial_chain_complex(X, ring: CoefficientRing, reduced: bool = False) -> ChainComplex:
    """Simplicial chain complex of a complex, with standard boundary signs.

    Basis order in each degree is the complex's stored (sorted) simplex
    order.  With ``reduced=True`` a rank-one module in degree -1 is
    appended, with the augmentation sending every vertex to the generator.
    """
    ranks: dict[int, int] = {}
    diffs: dict[int, Matrix] = {}
    for q in X.dims():
        ranks[q] = len(X.simplices_of_dim(q))
    for q in X.dims():
        if q == 0:
            continue
        rows = ranks.get(q - 1, 0)
        cols = ranks[q]
        d = Matrix.zeros(ring, rows, cols)
        for j, simplex in enumerate(X.simplices_of_dim(q)):
            for k in range(len(simplex)):
                face = simplex[:k] + simplex[k + 1 :]
                i = X.index_of(q - 1, face)
                d[i, j] = -1 if k % 2 else 1
        diffs[q] = d
    if reduced and ranks.get(0, 0) > 0:
        ranks[-1] = 1
        aug = Matrix(ring, 1, ranks[0], [[1] * ranks[0]])
        diffs[0] = aug
    return ChainComplex(ring, ranks, diffs)


# --------------------------------------------------------------------------
# Homology


@dataclass(frozen=True)
class AbelianGroupPresentation:
    """A finitely generated abelian group: free rank plus torsion orders.

    Torsion orders form a divisibility chain d_1 | d_2 | ... with each
    d_i > 1.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion orders must form a divisibility chain")
        if any(t <= 1 for t in self.torsion):
            raise ValueError("torsion orders must exceed 1")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_free(self) -> bool:
        return not self.torsion

    def describe(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


class HomologyBasis:
    """Homology of a chain complex in one degree.

    Over a field this carries chosen cycle representatives together with a
    ``reduce`` method writing any cycle in those representatives modulo
    boundaries.  Over the integers it carries an
    :class:`AbelianGroupPresentation`; representatives and ``reduce`` are
    available only when the group is free.
    """

    def __init__(self, complex_: ChainComplex, degree: int):
        self.degree = degree
        self.ring = complex_.ring
        self.ambient_rank = complex_.rank(degree)
        d_here = complex_.diff(degree)
        d_above = complex_.diff(degree + 1)
        if self.ring.is_field:
            self._init_field(d_here, d_above)
            self.presentation = AbelianGroupPresentation(self.dim)
        else:
            self._init_integral(d_here, d_above)

    # field case -------------------------------------------------------------

    def _init_field(self, d_here: Matrix, d_above: Matrix) -> None:
        ops = vector_ops(self.ring)
        self._ops = ops
        n = self.ambient_rank
        cycle_cols = [ops.from_list(d_here.column(j)) for j in range(d_here.cols)]
        cycles = nullspace(ops, cycle_cols, n) if n else []
        span = Span(ops, n)
        witness_sources: list[int] = []
        for t in range(d_above.cols):
            col = ops.from_list(d_above.column(t))
            is_new, _ = span.insert(col)
            if is_new:
                witness_sources.append(t)
        self.boundary_rank = span.dim
        # Span tags count every insert, so an independent boundary column
        # keeps its own column index as tag.
        self._boundary_tag_to_source = {t: t for t in witness_sources}
        reps = []
        rep_tags = []
        for z in cycles:
            is_new, _ = span.insert(z)
            if is_new:
                rep_tags.append(span.inserted - 1)
                reps.append(z)
        self._span = span
        self._rep_tags = rep_tags
        self._rep_tag_index = {t: k for k, t in enumerate(rep_tags)}
        self.representatives = reps
        self.cycle_rank = len(cycles)
        self.dim = len(reps)
        self._witness_dim = d_above.cols

    def reduce(self, cycle) -> list:
        """Coordinates of a cycle in the representative basis (mod boundaries)."""
        coords, _ = self._reduce_full(cycle)
        return coords

    def reduce_with_witness(self, cycle) -> tuple[list, object]:
        """Like :meth:`reduce`, also returning w with cycle = sum(coords*reps) + boundary(w)."""
        return self._reduce_full(cycle)

    def _reduce_full(self, cycle):
        if not self.ring.is_field:
            if not self.presentation.is_free:
                raise NotImplementedError("reduce over Z with torsion present")
            return self._reduce_integral(cycle), None
        ops = self._ops
        combo = self._span.solve(cycle)
        if combo is None:
            raise SolveFailure("vector is not a cycle (or not in the cycle space)")
        coords = [ops.sc_zero] * self.dim
        witness = ops.zero(self._witness_dim)
        for tag, c in combo.items():
            k = self._rep_tag_index.get(tag)
            if k is not None:
                coords[k] = c
            else:
                src = self._boundary_tag_to_source[tag]
                witness = ops.add(witness, ops.scale(c, ops.unit(self._witness_dim, src)))
        return coords, witness

    # integral case ------------------------------------------------------------

    def _init_integral(self, d_here: Matrix, d_above: Matrix) -> None:
        n = self.ambient_rank
        if n == 0:
            self.presentation = AbelianGroupPresentation(0)
            self.representatives = []
            self.dim = 0
            self.cycle_rank = 0
            self.boundary_rank = 0
            return
        D1, _, V1 = smith_normal_form(d_here)
        r1 = sum(1 for i in range(min(D1.rows, D1.cols)) if D1[i, i] != 0)
        kernel_basis = [V1.column(j) for j in range(r1, n)]  # integral basis of the cycle lattice
        k = len(kernel_basis)
        self.cycle_rank = k
        # boundary columns in kernel coordinates (exact rational solve; the
        # kernel basis spans a direct summand, so the coordinates are integral)
        rel_cols = []
        for t in range(d_above.cols):
            b = d_above.column(t)
            coords = _solve_exact_integer(kernel_basis, b)
            rel_cols.append(coords)
        M = Matrix.from_columns(ZZ, k, rel_cols) if rel_cols else Matrix.zeros(ZZ, k, 0)
        D2, U2, _ = smith_normal_form(M)
        divisors = [D2[i, i] for i in range(min(D2.rows, D2.cols)) if D2[i, i] != 0]
        self.boundary_rank = len(divisors)
        torsion = tuple(int(d) for d in divisors if abs(d) > 1)
        free_rank = k - len(divisors)
        self.presentation = AbelianGroupPresentation(free_rank, torsion)
        self.dim = free_rank
        self._kernel_basis = kernel_basis
        self._U2 = U2
        if self.presentation.is_free:
            U2_inv = _invert_unimodular(U2)
            reps = []
            for t in range(len(divisors), k):
                coords = U2_inv.column(t)
                rep = [sum(kernel_basis[j][i] * coords[j] for j in range(k)) for i in range(n)]
                reps.append(rep)
            self.representatives = reps
        else:
            self.representatives = None

    def _reduce_integral(self, cycle) -> list:
        k = self.cycle_rank
        x = _solve_exact_integer(self._kernel_basis, list(cycle))
        y = self._U2.apply(x)
        r = k - self.presentation.free_rank
        for i in range(r):
            d = 1  # all earlier divisors are 1 in the free case
            if y[i] % d != 0:  # pragma: no cover - unreachable when free
                raise SolveFailure("cycle not reducible integrally")
        return [int(y[i]) for i in range(r, k)]

    def __repr__(self) -> str:
        if self.ring.is_field:
            return f"H_{self.degree}({self.ring.label()}) dim {self.dim}"
        return f"H_{self.degree}(Z) = {self.presentation.describe()}"


def _solve_exact_integer(basis_columns: Sequence[Sequence[int]], b: Sequence) -> list[int]:
    """Solve sum(x_j * basis_j) = b exactly; entries must come out integral."""
    if not basis_columns:
        if any(v != 0 for v in b):
            raise SolveFailure("vector outside the (empty) lattice")
        return []
    n = len(basis_columns[0])
    k = len(basis_columns)
    # rational Gaussian elimination on the augmented system
    aug = [[Fraction(basis_columns[j][i]) for j in range(k)] + [Fraction(b[i])] for i in range(n)]
    pivots = []
    row = 0
    for col in range(k):
        sel = next((r for r in range(row, n) if aug[r][col] != 0), None)
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [a * inv for a in aug[row]]
        for r in range(n):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * c for a, c in zip(aug[r], aug[row])]
        pivots.append(col)
        row += 1
        if row == n:
            break
    for r in range(row, n):
        if aug[r][k] != 0:
            raise SolveFailure("vector outside the lattice")
    x = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        x[col] = aug[r][k]
    out = []
    for v in x:
        if v.denominator != 1:
            raise SolveFailure("non-integral coordinates against an integral basis")
        out.append(int(v))
    return out


def _invert_unimodular(U: Matrix) -> Matrix:
    """Exact inverse of a unimodular integer matrix."""
    n = U.rows
    aug = [[Fraction(U[i, j]) for j in range(n)] + [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        sel = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[sel] = aug[sel], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [a * inv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * c for a, c in zip(aug[r], aug[col])]
    data = []
    for i in range(n):
        row = []
        for j in range(n):
            v = aug[i][n + j]
            if v.denominator != 1:
                raise ValueError("matrix is not unimodular")
            row.append(int(v))
        data.append(row)
    return Matrix.from_rows(ZZ, data)


def homology(C: ChainComplex, n: int, ring: CoefficientRing | None = None) -> HomologyBasis:
    """Homology of ``C`` in degree ``n``; ``ring`` must match ``C`` if given."""
    if ring is not None and ring != C.ring:
        raise ValueError("requested ring differs from the complex's ring")
    return HomologyBasis(C, n)


def homology_table(C: ChainComplex) -> dict[int, HomologyBasis]:
    return {n: HomologyBasis(C, n) for n in C.degrees()}


def betti_numbers(C: ChainComplex) -> dict[int, int]:
    """Dimensions dim ker - rank of the adjacent differentials (field rings)."""
    if not C.ring.is_field:
        raise ValueError("betti_numbers expects field coefficients")
    ops = vector_ops(C.ring)
    rank_of = {}
    for n in C.degrees():
        d = C.diff(n)
        rank_of[n] = column_rank(ops, (ops.from_list(d.column(j)) for j in range(d.cols)))
    out = {}
    for n in C.degrees():
        out[n] = C.rank(n) - rank_of.get(n, 0) - rank_of.get(n + 1, 0)
    return out


# --------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(A: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form over Z: returns (D, U, V) with U * A * V = D.

    D is diagonal with nonnegative entries forming a divisibility chain;
    U and V are unimodular (determinant +-1).  Entries are exact Python
    ints, so intermediate growth is harmless.
    """
    if A.ring != ZZ:
        raise ValueError("Smith normal form is an integral operation")
    m, n = A.rows, A.cols
    M = [list(map(int, A.row(i))) for i in range(m)]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i, j, q):  # row_i -= q * row_j
        M[i] = [a - q * b for a, b in zip(M[i], M[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(m):
            M[r][i] -= q * M[r][j]
        for r in range(n):
            V[r][i] -= q * V[r][j]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in range(m):
            M[r][i], M[r][j] = M[r][j], M[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    t = 0
    while t < min(m, n):
        # pick the nonzero entry of smallest magnitude in the working block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if M[i][j] != 0 and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            restart = False
            for i in range(t + 1, m):
                if M[i][t] != 0:
                    q = M[i][t] // M[t][t]
                    row_op(i, t, q)
                    if M[i][t] != 0:
                        swap_rows(t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, n):
                if M[t][j] != 0:
                    q = M[t][j] // M[t][t]
                    col_op(j, t, q)
                    if M[t][j] != 0:
                        swap_cols(t, j)
                        restart = True
                        break
            if restart:
                continue
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if M[i][j] % M[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            # fold the offending row into row t so the pivot can shrink
            M[t] = [a + b for a, b in zip(M[t], M[offender])]
            U[t] = [a + b for a, b in zip(U[t], U[offender])]
        if M[t][t] < 0:
            M[t] = [-a for a in M[t]]
            U[t] = [-a for a in U[t]]
        t += 1

    return Matrix(ZZ, m, n, M), Matrix(ZZ, m, m, U), Matrix(ZZ, n, n, V)


# --------------------------------------------------------------------------
# Induced maps and cones


def induced_map_on_homology(f: ChainMap, degree: int) -> Matrix:
    """The map induced on homology in one degree by a chain map.

    Over a field the columns are the coordinates of f(representative) in
    the target's representative basis; over Z both sides must be free.
    Raises :class:`SolveFailure` if an image fails to reduce (which would
    mean ``f`` is not a chain map; the constructor already guards this).
    """
    src = HomologyBasis(f.source, degree)
    dst = HomologyBasis(f.target, degree)
    ring = f.source.ring
    comp = f.component(degree)
    if ring.is_field:
        ops = vector_ops(ring)
        cols = []
        for rep in src.representatives:
            img = comp.apply(ops.to_list(rep, src.ambient_rank))
            coords = dst.reduce(ops.from_list(img))
            cols.append(coords)
        return Matrix.from_columns(ring, dst.dim, cols)
    if not (src.presentation.is_free and dst.presentation.is_free):
        raise NotImplementedError("integral induced maps require free homology on both sides")
    cols = []
    for rep in src.representatives:
        img = comp.apply(rep)
        cols.append(dst.reduce(img))
    return Matrix.from_columns(ZZ, dst.presentation.free_rank, cols)


def mapping_cone(f: ChainMap) -> ChainComplex:
    """Mapping cone of a chain map: Cone(f)_n = target_n + source_{n-1}.

    The differential is the usual block triangular matrix with a sign on
    the off-diagonal component.
    """
    C, D = f.source, f.target
    ring = C.ring
    lo = min(C.bottom + 1, D.bottom)
    hi = max(C.top + 1, D.top)
    ranks = {n: D.rank(n) + C.rank(n - 1) for n in range(lo, hi + 1)}
    diffs: dict[int, Matrix] = {}
    for n in range(lo, hi + 1):
        rows = ranks.get(n - 1, 0)
        cols = ranks.get(n, 0)
        if rows == 0 or cols == 0:
            continue
        dD = D.diff(n)
        dC = C.diff(n - 1)
        fc = f.component(n - 1)
        blk = Matrix.zeros(ring, rows, cols)
        for i in range(dD.rows):
            for j in range(dD.cols):
                blk[i, j] = dD[i, j]
        for i in range(fc.rows):
            for j in range(fc.cols):
                blk[i, dD.cols + j] = _coerce(ring, -fc[i, j])
        # the shifted copy of the source carries a negated differential so
        # that the square vanishes in every characteristic, not just 2
        for i in range(dC.rows):
            for j in range(dC.cols):
                blk[dD.rows + i, dD.cols + j] = _coerce(ring, -dC[i, j])
        diffs[n] = blk
    return ChainComplex(ring, ranks, diffs)
