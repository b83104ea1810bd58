"""Exact scalars, sparse vectors over labelled bases, and rational linear algebra.

Coefficients are either ``fractions.Fraction`` or :class:`SeriesScalar`
(truncated formal power series in the deformation parameter with Fraction
coefficients).  No floating point is used anywhere; every equality test in the
package is exact.

Vectors and maps are sparse and keyed by basis *labels* (arbitrary hashable
values: ints, strings, tuples of labels for tensor factors).  Tensor-product
bases flatten their labels, so ``(A (x) B) (x) C`` and ``A (x) (B (x) C)``
agree on the nose.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence, Union

Label = Hashable
Coeff = Union[Fraction, "SeriesScalar"]

ZERO = Fraction(0)
ONE = Fraction(1)


def rational(text: str | int | Fraction) -> Fraction:
    """Parse a rational from an int, a Fraction or a "p/q" string."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    """Serialize a rational as "p" or "p/q" (lowest terms, positive denominator)."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# truncated power series
# ---------------------------------------------------------------------------


def _coerce_coeffs(values: Iterable[Fraction | int | str], order: int) -> tuple[Fraction, ...]:
    out = [rational(v) for v in values]
    if len(out) > order:
        raise ValueError(f"{len(out)} coefficients exceed truncation order {order}")
    out.extend([ZERO] * (order - len(out)))
    return tuple(out)


@dataclass(frozen=True)
class SeriesScalar:
    """Element of Q[[hbar]] / (hbar^N) with N = ``order``.

    ``coeffs[i]`` is the coefficient of hbar^i.  All ring operations truncate
    at the common order; mixing different orders is an error, mixing with
    Fraction or int coerces the scalar into degree zero.
    """

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("a series needs truncation order >= 1")

    @staticmethod
    def make(values: Iterable[Fraction | int | str], order: int) -> "SeriesScalar":
        return SeriesScalar(_coerce_coeffs(values, order))

    @staticmethod
    def constant(value: Fraction | int, order: int) -> "SeriesScalar":
        return SeriesScalar.make([rational(value)], order)

    @staticmethod
    def zero(order: int) -> "SeriesScalar":
        return SeriesScalar.make([], order)

    @staticmethod
    def one(order: int) -> "SeriesScalar":
        return SeriesScalar.constant(1, order)

    @staticmethod
    def hbar(order: int) -> "SeriesScalar":
        return SeriesScalar.make([0, 1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def _lift(self, other: Any) -> "SeriesScalar | None":
        if isinstance(other, SeriesScalar):
            if other.order != self.order:
                raise ValueError("mixed truncation orders")
            return other
        if isinstance(other, (int, Fraction)):
            return SeriesScalar.constant(other, self.order)
        return None

    def __add__(self, other: Any) -> "SeriesScalar":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return SeriesScalar(tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "SeriesScalar":
        return SeriesScalar(tuple(-a for a in self.coeffs))

    def __sub__(self, other: Any) -> "SeriesScalar":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> "SeriesScalar":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> "SeriesScalar":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = self.order
        out = [ZERO] * n
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(n - i):
                b = o.coeffs[j]
                if b:
                    out[i + j] += a * b
        return SeriesScalar(tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "SeriesScalar":
        """Multiplicative inverse; requires an invertible constant term."""
        c0 = self.coeffs[0]
        if not c0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        n = self.order
        inv = [ONE / c0] + [ZERO] * (n - 1)
        # recursively solve (sum_i a_i h^i)(sum_j b_j h^j) = 1
        for m in range(1, n):
            acc = ZERO
            for i in range(1, m + 1):
                acc += self.coeffs[i] * inv[m - i]
            inv[m] = -acc / c0
        return SeriesScalar(tuple(inv))

    def __truediv__(self, other: Any) -> "SeriesScalar":
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def shift(self, powers: int) -> "SeriesScalar":
        """Multiply by hbar^powers (truncating)."""
        return SeriesScalar(tuple([ZERO] * powers + list(self.coeffs))[: self.order])

    def __repr__(self) -> str:
        return "series[" + ", ".join(format_rational(c) for c in self.coeffs) + "]"


def series_exp(s: SeriesScalar) -> SeriesScalar:
    """exp of a series with zero constant term, truncated at its order."""
    if s.coeffs[0]:
        raise ValueError("series_exp needs zero constant term to stay rational")
    result = SeriesScalar.one(s.order)
    term = SeriesScalar.one(s.order)
    for r in range(1, s.order):
        term = term * s / Fraction(r)
        result = result + term
    return result


# ---------------------------------------------------------------------------
# bases, vectors, maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Basis:
    """An ordered, labelled basis.

    Equality is by value (name, labels, factor structure) with an identity
    fast path in the vector operations, so independently rebuilt tensor bases
    of the same factors are interchangeable.
    """

    name: str
    labels: tuple[Label, ...]
    factors: tuple["Basis", ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})
        if len(self._index) != len(self.labels):
            raise ValueError(f"duplicate labels in basis {self.name}")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: Label) -> int:
        return self._index[label]

    def __contains__(self, label: Label) -> bool:
        return label in self._index

    def __repr__(self) -> str:
        return f"Basis({self.name}, dim={self.dim})"


def _label_parts(basis: Basis, label: Label) -> tuple[Label, ...]:
    return tuple(label) if basis.factors else (label,)


def merge_labels(basis: Basis, *labels: Label) -> Label:
    """Label of a pure tensor in ``tensor_basis(basis, ..., basis)``.

    Flattens component labels the same way :func:`tensor_basis` does, so the
    result indexes the tensor-square (or higher power) basis directly.
    """
    return tuple(itertools.chain.from_iterable(_label_parts(basis, lab) for lab in labels))


def tensor_basis(*bases: Basis) -> Basis:
    """Tensor product basis with flattened tuple labels, lexicographic order."""
    flat: list[Basis] = []
    for b in bases:
        flat.extend(b.factors if b.factors else (b,))
    labels = tuple(
        tuple(itertools.chain.from_iterable(_label_parts(b, lab) for b, lab in zip(bases, combo)))
        for combo in itertools.product(*(b.labels for b in bases))
    )
    name = " (x) ".join(b.name for b in flat)
    return Basis(name, labels, tuple(flat))


@dataclass(frozen=True, eq=False)
class FinVec:
    """Sparse vector over a basis; zero entries are never stored."""

    basis: Basis
    entries: Mapping[Label, Coeff]

    @staticmethod
    def zero(basis: Basis) -> "FinVec":
        return FinVec(basis, {})

    @staticmethod
    def unit(basis: Basis, label: Label, coeff: Coeff = ONE) -> "FinVec":
        if label not in basis:
            raise KeyError(f"label {label!r} not in basis {basis.name}")
        return FinVec(basis, {label: coeff} if coeff else {})

    @staticmethod
    def build(basis: Basis, items: Iterable[tuple[Label, Coeff]] | Mapping[Label, Coeff]) -> "FinVec":
        if isinstance(items, Mapping):
            items = items.items()
        acc: dict[Label, Coeff] = {}
        for lab, c in items:
            if not c:
                continue
            prev = acc.get(lab)
            s = c if prev is None else prev + c
            if s:
                acc[lab] = s
            elif prev is not None:
                del acc[lab]
        return FinVec(basis, acc)

    def __iter__(self) -> Iterator[tuple[Label, Coeff]]:
        return iter(self.entries.items())

    def __getitem__(self, label: Label) -> Coeff:
        return self.entries.get(label, ZERO)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "FinVec") -> "FinVec":
        self._check(other)
        acc = dict(self.entries)
        for lab, c in other.entries.items():
            s = acc.get(lab, ZERO) + c
            if s:
                acc[lab] = s
            elif lab in acc:
                del acc[lab]
        return FinVec(self.basis, acc)

    def __sub__(self, other: "FinVec") -> "FinVec":
        return self + (-other)

    def __neg__(self) -> "FinVec":
        return FinVec(self.basis, {lab: -c for lab, c in self.entries.items()})

    def scale(self, c: Coeff) -> "FinVec":
        if not c:
            return FinVec.zero(self.basis)
        return FinVec.build(self.basis, ((lab, c * v) for lab, v in self.entries.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinVec):
            return NotImplemented
        if self.basis is not other.basis and self.basis != other.basis:
            return False
        return (self - other).is_zero

    def __hash__(self) -> int:  # pragma: no cover - vectors are not dict keys
        raise TypeError("FinVec is not hashable")

    def tensor(self, other: "FinVec", product: Basis | None = None) -> "FinVec":
        if product is None:
            product = tensor_basis(self.basis, other.basis)
        items = []
        for la, ca in self.entries.items():
            pa = _label_parts(self.basis, la)
            for lb, cb in other.entries.items():
                items.append((pa + _label_parts(other.basis, lb), ca * cb))
        return FinVec.build(product, items)

    def _check(self, other: "FinVec") -> None:
        if self.basis is not other.basis and self.basis != other.basis:
            raise ValueError(f"basis mismatch: {self.basis.name} vs {other.basis.name}")

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(f"({c})*{lab!r}" for lab, c in sorted(
            self.entries.items(), key=lambda kv: str(kv[0])))


@dataclass(frozen=True, eq=False)
class FinMap:
    """Sparse linear map given by its columns on domain basis labels."""

    domain: Basis
    codomain: Basis
    columns: Mapping[Label, FinVec]

    @staticmethod
    def zero(domain: Basis, codomain: Basis) -> "FinMap":
        return FinMap(domain, codomain, {})

    @staticmethod
    def identity(basis: Basis) -> "FinMap":
        return FinMap(basis, basis, {lab: FinVec.unit(basis, lab) for lab in basis.labels})

    @staticmethod
    def from_function(domain: Basis, codomain: Basis,
                      fn: Callable[[Label], FinVec]) -> "FinMap":
        cols: dict[Label, FinVec] = {}
        for lab in domain.labels:
            v = fn(lab)
            if not v.is_zero:
                cols[lab] = v
        return FinMap(domain, codomain, cols)

    def column(self, label: Label) -> FinVec:
        return self.columns.get(label) or FinVec.zero(self.codomain)

    def __call__(self, v: FinVec | Label) -> FinVec:
        if not isinstance(v, FinVec):
            return self.column(v)
        if v.basis is not self.domain and v.basis != self.domain:
            raise ValueError(f"map expects {self.domain.name}, got {v.basis.name}")
        out = FinVec.zero(self.codomain)
        items: list[tuple[Label, Coeff]] = []
        for lab, c in v.entries.items():
            col = self.columns.get(lab)
            if col is None:
                continue
            items.extend((l2, c * c2) for l2, c2 in col.entries.items())
        return FinVec.build(self.codomain, items) if items else out

    def compose(self, inner: "FinMap") -> "FinMap":
        """self o inner."""
        if inner.codomain is not self.domain and inner.codomain != self.domain:
            raise ValueError("composition basis mismatch")
        return FinMap.from_function(inner.domain, self.codomain,
                                    lambda lab: self(inner.column(lab)))

    def __add__(self, other: "FinMap") -> "FinMap":
        if (self.domain is not other.domain and self.domain != other.domain) or (
                self.codomain is not other.codomain and self.codomain != other.codomain):
            raise ValueError("map addition basis mismatch")
        return FinMap.from_function(self.domain, self.codomain,
                                    lambda lab: self.column(lab) + other.column(lab))

    def __sub__(self, other: "FinMap") -> "FinMap":
        return self + other.scale(Fraction(-1))

    def scale(self, c: Coeff) -> "FinMap":
        return FinMap.from_function(self.domain, self.codomain,
                                    lambda lab: self.column(lab).scale(c))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinMap):
            return NotImplemented
        if (self.domain is not other.domain and self.domain != other.domain) or (
                self.codomain is not other.codomain and self.codomain != other.codomain):
            return False
        return all((self.column(l) - other.column(l)).is_zero for l in self.domain.labels)

    def __hash__(self) -> int:  # pragma: no cover
        raise TypeError("FinMap is not hashable")

    @property
    def is_zero(self) -> bool:
        return all(col.is_zero for col in self.columns.values())

    def __repr__(self) -> str:
        return f"FinMap({self.domain.name} -> {self.codomain.name})"


def tensor_product_map(f: FinMap, g: FinMap,
                       domain: Basis | None = None,
                       codomain: Basis | None = None) -> FinMap:
    """(f (x) g) on the flattened product bases."""
    if domain is None:
        domain = tensor_basis(f.domain, g.domain)
    if codomain is None:
        codomain = tensor_basis(f.codomain, g.codomain)
    nf = len(f.domain.factors) if f.domain.factors else 1

    def col(label: Label) -> FinVec:
        assert isinstance(label, tuple)
        la = label[:nf] if f.domain.factors else label[0]
        lb = label[nf:] if g.domain.factors else label[nf]
        va = f.column(la)
        vb = g.column(lb)
        return va.tensor(vb, codomain)

    return FinMap.from_function(domain, codomain, col)


def split_label(basis: Basis, label: Label, parts: int = 2) -> tuple[Label, ...]:
    """Split a label of ``basis`` tensored with itself ``parts`` times.

    Inverse of label flattening: each returned component is a valid label of
    ``basis`` (an atom when the basis has no tensor factors, a flat tuple of
    its factor labels otherwise).
    """
    if basis.factors:
        k = len(basis.factors)
        assert isinstance(label, tuple) and len(label) == parts * k
        return tuple(label[i * k:(i + 1) * k] for i in range(parts))
    assert isinstance(label, tuple) and len(label) == parts
    return tuple(label)


def flip_map(a: Basis, b: Basis) -> FinMap:
    """tau: A (x) B -> B (x) A on flattened labels."""
    dom = tensor_basis(a, b)
    cod = tensor_basis(b, a)
    na = len(a.factors) if a.factors else 1

    def col(label: Label) -> FinVec:
        assert isinstance(label, tuple)
        return FinVec.unit(cod, label[na:] + label[:na])

    return FinMap.from_function(dom, cod, col)


# ---------------------------------------------------------------------------
# rational elimination
# ---------------------------------------------------------------------------


def _bit_size(q: Fraction) -> int:
    return q.numerator.bit_length() + q.denominator.bit_length()


class _SparseEliminator:
    """Row-echelon reduction of sparse rational rows.

    Pivots are chosen per column among eligible rows by smallest coefficient
    bit length, which keeps intermediate fractions small.
    """

    def __init__(self, ncols: int) -> None:
        self.ncols = ncols
        self.pivot_rows: dict[int, dict[int, Fraction]] = {}  # pivot col -> row

    def reduce_row(self, row: dict[int, Fraction]) -> dict[int, Fraction]:
        row = dict(row)
        # stored rows are mutually reduced, so one ascending sweep suffices
        for j in sorted(c for c in row if c in self.pivot_rows):
            factor = row.get(j)
            if not factor:
                continue
            for col, val in self.pivot_rows[j].items():
                s = row.get(col, ZERO) - factor * val
                if s:
                    row[col] = s
                elif col in row:
                    del row[col]
        return row

    def add_row(self, row: dict[int, Fraction]) -> bool:
        """Reduce and, if independent, normalize and store.  True if added."""
        row = self.reduce_row(row)
        if not row:
            return False
        j = min(row, key=lambda c: (_bit_size(row[c]), c))
        inv = ONE / row[j]
        row = {c: v * inv for c, v in row.items()}
        # back-substitute into existing pivot rows to keep reduced form
        for pj, prow in self.pivot_rows.items():
            if j in prow:
                f = prow[j]
                for col, val in row.items():
                    s = prow.get(col, ZERO) - f * val
                    if s:
                        prow[col] = s
                    elif col in prow:
                        del prow[col]
        self.pivot_rows[j] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)


def nullspace(rows: Iterable[dict[int, Fraction]], ncols: int) -> list[dict[int, Fraction]]:
    """Exact basis of the right kernel of the sparse row system."""
    elim = _SparseEliminator(ncols)
    ordered: list[dict[int, Fraction]] = []
    for row in rows:
        ordered.append(row)
    # rows with the smallest support first: cheap heuristic against fill-in
    ordered.sort(key=len)
    for row in ordered:
        elim.add_row(row)
    pivots = elim.pivot_rows
    free = [j for j in range(ncols) if j not in pivots]
    basis: list[dict[int, Fraction]] = []
    for f in free:
        vec: dict[int, Fraction] = {f: ONE}
        for pj, prow in pivots.items():
            c = prow.get(f)
            if c:
                vec[pj] = -c
        basis.append(vec)
    return basis


def rank_of(rows: Iterable[dict[int, Fraction]], ncols: int) -> int:
    elim = _SparseEliminator(ncols)
    for row in sorted((dict(r) for r in rows), key=len):
        elim.add_row(row)
    return elim.rank


def kernel_basis(m: FinMap) -> list[FinVec]:
    """Exact basis of the kernel of a linear map between finite bases."""
    dom = m.domain
    rows: dict[Label, dict[int, Fraction]] = {}
    for j, lab in enumerate(dom.labels):
        col = m.columns.get(lab)
        if col is None:
            continue
        for out_lab, c in col.entries.items():
            if not isinstance(c, Fraction):
                raise TypeError("kernel_basis needs Fraction entries")
            rows.setdefault(out_lab, {})[j] = c
    vecs = nullspace(rows.values(), dom.dim)
    out = []
    for vec in vecs:
        out.append(FinVec(dom, {dom.labels[j]: c for j, c in sorted(vec.items())}))
    return out


def rank(m: FinMap) -> int:
    rows: dict[Label, dict[int, Fraction]] = {}
    for j, lab in enumerate(m.domain.labels):
        col = m.columns.get(lab)
        if col is None:
            continue
        for out_lab, c in col.entries.items():
            rows.setdefault(out_lab, {})[j] = c
    return rank_of(rows.values(), m.domain.dim)


class SpanSolver:
    """Echelonized span of a list of vectors with coordinate recovery.

    ``coordinates(v)`` returns the exact coefficients expressing v in the
    generating vectors, or None when v is outside the span.
    """

    def __init__(self, vectors: Sequence[FinVec]) -> None:
        if not vectors:
            self.basis: Basis | None = None
        else:
            self.basis = vectors[0].basis
        self.generators = list(vectors)
        n = len(self.generators)
        # each stored row: (sparse vector over codomain indices, combination coeffs)
        self.rows: list[tuple[dict[int, Fraction], list[Fraction]]] = []
        for g_idx, v in enumerate(self.generators):
            row = {self.basis.index(lab): c for lab, c in v.entries.items()}
            comb = [ONE if i == g_idx else ZERO for i in range(n)]
            self._insert(row, comb)

    def _reduce(self, row: dict[int, Fraction], comb: list[Fraction]) -> None:
        for prow, pcomb in self.rows:
            j = min(prow)
            if j in row:
                f = row[j]
                for col, val in prow.items():
                    s = row.get(col, ZERO) - f * val
                    if s:
                        row[col] = s
                    elif col in row:
                        del row[col]
                for i, val in enumerate(pcomb):
                    comb[i] -= f * val

    def _insert(self, row: dict[int, Fraction], comb: list[Fraction]) -> None:
        self._reduce(row, comb)
        if not row:
            return
        j = min(row)
        inv = ONE / row[j]
        row = {c: v * inv for c, v in row.items()}
        comb = [v * inv for v in comb]
        for prow, pcomb in self.rows:
            f = prow.get(j)
            if not f:
                continue
            for col, val in row.items():
                s = prow.get(col, ZERO) - f * val
                if s:
                    prow[col] = s
                elif col in prow:
                    del prow[col]
            for i, val in enumerate(comb):
                pcomb[i] -= f * val
        self.rows.append((row, comb))
        self.rows.sort(key=lambda rc: min(rc[0]))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, v: FinVec) -> bool:
        return self.coordinates(v) is not None

    def coordinates(self, v: FinVec) -> list[Fraction] | None:
        if self.basis is None:
            return None if not v.is_zero else []
        row = {self.basis.index(lab): c for lab, c in v.entries.items()}
        comb = [ZERO] * len(self.generators)
        self._reduce(row, comb)
        if row:
            return None
        return [-c for c in comb]

    def residue(self, v: FinVec) -> FinVec:
        """Canonical representative of v modulo the span.

        The result is supported away from the pivot coordinates and satisfies
        v - residue(v) in span; residue(v).is_zero iff v is in the span.
        """
        if self.basis is None:
            return v
        row = {self.basis.index(lab): c for lab, c in v.entries.items()}
        comb = [ZERO] * len(self.generators)
        self._reduce(row, comb)
        return FinVec(self.basis, {self.basis.labels[j]: c for j, c in sorted(row.items())})

    @property
    def pivot_indices(self) -> list[int]:
        return [min(row) for row, _ in self.rows]


def span_basis(vectors: Sequence[FinVec]) -> list[FinVec]:
    """Echelonized basis of the span of the given vectors."""
    if not vectors:
        return []
    basis = vectors[0].basis
    solver = SpanSolver(vectors)
    return [FinVec(basis, {basis.labels[j]: c for j, c in sorted(row.items())})
            for row, _ in solver.rows]


__all__ = [
    "Basis", "Coeff", "FinMap", "FinVec", "Label", "SeriesScalar", "SpanSolver",
    "flip_map", "format_rational", "kernel_basis", "merge_labels", "nullspace", "rank", "rank_of",
    "rational", "series_exp", "span_basis", "split_label", "tensor_basis",
    "tensor_product_map",
]
