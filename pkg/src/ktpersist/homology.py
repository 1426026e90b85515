"""Smith normal form over K[t], graded column reduction, and persistent (co)homology."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .complexes import InputError, PersistenceComplex
from .poly import Polynomial, SparsePolyMatrix, poly_gcd, poly_lcm


@dataclass(frozen=True)
class SnfResult:
    divisors: tuple[Polynomial, ...]  # monic, d_1 | d_2 | ...
    rank: int

    def nonunit(self) -> list[Polynomial]:
        return [d for d in self.divisors if not d.is_unit()]

    def exponents(self) -> list[int]:
        """Torsion exponents l for divisors t^l; only meaningful for monomial divisors."""
        out = []
        for d in self.nonunit():
            if not d.is_monomial():
                raise ValueError(f"divisor {d} is not a power of t")
            out.append(d.degree)
        return out


def smith_normal_form(m: SparsePolyMatrix) -> SnfResult:
    """Invariant factors of a polynomial matrix.

    Pivots are the nonzero entries of least degree (ties broken row-major). Each pivot is
    made to divide its row and column by Euclidean row/column steps, then split off. The
    resulting diagonal is turned into a divisibility chain with gcd/lcm exchanges.
    """
    field = m.field
    rows: dict[int, dict[int, Polynomial]] = {}
    cols: dict[int, set[int]] = {}
    for (i, j), v in m.entries.items():
        rows.setdefault(i, {})[j] = v
        cols.setdefault(j, set()).add(i)

    def set_entry(i, j, v):
        if v:
            rows.setdefault(i, {})[j] = v
            cols.setdefault(j, set()).add(i)
        else:
            r = rows.get(i)
            if r is not None and j in r:
                del r[j]
                if not r:
                    del rows[i]
            c = cols.get(j)
            if c is not None:
                c.discard(i)
                if not c:
                    del cols[j]

    def row_axpy(k, q, i):
        # row_k -= q * row_i
        for j, v in list(rows[i].items()):
            cur = rows.get(k, {}).get(j)
            prod = v * q
            set_entry(k, j, cur - prod if cur is not None else -prod)

    def col_axpy(l, q, j):
        # col_l -= q * col_j
        for i in list(cols[j]):
            v = rows[i][j]
            cur = rows[i].get(l)
            prod = v * q
            set_entry(i, l, cur - prod if cur is not None else -prod)

    def best_pivot():
        best = None
        for i in sorted(rows):
            for j, v in rows[i].items():
                key = (v.degree, i, j)
                if best is None or key < best:
                    best = key
                    if v.degree == 0:
                        break
            if best is not None and best[0] == 0:
                break
        return best[1], best[2]

    diagonal: list[Polynomial] = []
    while rows:
        pi, pj = best_pivot()
        while True:
            p = rows[pi][pj]
            moved = False
            # column pass: make every other entry in column pj a multiple of p, then clear it
            for k in sorted(cols[pj] - {pi}):
                q, r = divmod(rows[k][pj], p)
                row_axpy(k, q, pi)
                if r:
                    pi, moved = k, True
                    break
            if moved:
                continue
            # column pj now holds only p; a column op on row pi touches nothing else
            for l in sorted(rows[pi]):
                if l == pj:
                    continue
                q, r = divmod(rows[pi][l], p)
                if r:
                    col_axpy(l, q, pj)
                    pj, moved = l, True
                    break
            if moved:
                continue
            break
        diagonal.append(rows[pi][pj].monic())
        for l in list(rows[pi]):
            set_entry(pi, l, Polynomial.zero(field))

    # gcd/lcm exchanges give the divisibility chain
    d = [x for x in diagonal if not x.is_unit()]
    units = len(diagonal) - len(d)
    if all(x.is_monomial() for x in d):
        d.sort(key=lambda x: x.degree)
    else:
        for a in range(len(d)):
            for b in range(a + 1, len(d)):
                g = poly_gcd(d[a], d[b])
                if g != d[a]:
                    d[a], d[b] = g, poly_lcm(d[a], d[b])
    one = Polynomial.one(field)
    return SnfResult(tuple([one] * units + d), len(diagonal))


# ---------------------------------------------------------------------------
# graded fast path


def _reduce_columns(columns, order_cols, row_pos, field):
    """Standard persistence reduction over the field.

    ``columns[j]`` maps row index to coefficient; columns are processed in ``order_cols``
    and ``row_pos`` ranks rows so that the pivot (low) is the row of greatest rank.
    Returns {column: pivot row} for nonzero reduced columns.
    """
    red = field.reduce
    low_owner: dict[int, int] = {}
    reduced: dict[int, dict[int, object]] = {}
    pivots: dict[int, int] = {}
    for j in order_cols:
        col = dict(columns.get(j, {}))
        while col:
            low = max(col, key=row_pos.__getitem__)
            other = low_owner.get(low)
            if other is None:
                break
            ocol = reduced[other]
            factor = col[low] * field.inv(ocol[low])
            for i, v in ocol.items():
                nv = red(col.get(i, 0) - factor * v)
                if nv:
                    col[i] = nv
                else:
                    col.pop(i, None)
        if col:
            low = max(col, key=row_pos.__getitem__)
            low_owner[low] = j
            reduced[j] = col
            pivots[j] = low
    return pivots


def _homogeneous_columns(mat: SparsePolyMatrix, src_deg, tgt_deg, what: str):
    cols: dict[int, dict[int, object]] = {}
    for (i, j), v in mat.entries.items():
        e = src_deg[j] - tgt_deg[i]
        if not v.is_monomial() or v.degree != e:
            raise InputError("grading", f"{what} entry ({i}, {j}) = {v} is not homogeneous of degree {e}")
        cols.setdefault(j, {})[i] = v.lead
    return cols


def _filtration_order(degrees):
    return sorted(range(len(degrees)), key=lambda i: (degrees[i], i))


def _pairing(d_out, d_in, deg_prev, deg_mid, deg_next, field, what=("d_n", "d_n+1")):
    """Pair middle generators: cycles of d_out, killed by columns of d_in."""
    out_cols = _homogeneous_columns(d_out, deg_mid, deg_prev, what[0])
    in_cols = _homogeneous_columns(d_in, deg_next, deg_mid, what[1])
    order_prev = _filtration_order(deg_prev)
    order_mid = _filtration_order(deg_mid)
    order_next = _filtration_order(deg_next)
    pos_prev = {g: r for r, g in enumerate(order_prev)}
    pos_mid = {g: r for r, g in enumerate(order_mid)}
    negative = _reduce_columns(out_cols, order_mid, pos_prev, field)
    killers = _reduce_columns(in_cols, order_next, pos_mid, field)
    death_of = {low: j for j, low in killers.items()}
    pairs = []
    for g in order_mid:
        if g in negative:
            continue
        pairs.append((g, death_of.get(g)))
    return pairs


def graded_reduce(c: PersistenceComplex, n: int) -> list[tuple[int, int | None]]:
    """Pairs (n-generator, (n+1)-generator or None) for the n-cycles of the reduced basis."""
    return _pairing(
        c.boundary(n), c.boundary(n + 1),
        c.degrees(n - 1), c.degrees(n), c.degrees(n + 1), c.field,
        (f"d_{n}", f"d_{n + 1}"),
    )


def graded_reduce_cohomology(c: PersistenceComplex, n: int) -> list[tuple[int, int | None]]:
    """Same pairing for the cochain complex Hom(C, R), graded in reversed time N - deg."""
    top = c.top_degree
    rev = lambda ds: [top - d for d in ds]
    return _pairing(
        c.boundary(n + 1).transpose(), c.boundary(n).transpose(),
        rev(c.degrees(n + 1)), rev(c.degrees(n)), rev(c.degrees(n - 1)), c.field,
        (f"d_{n + 1}^T", f"d_{n}^T"),
    )


# ---------------------------------------------------------------------------
# persistence modules


@dataclass(frozen=True)
class PersistenceModule:
    """R^r (births in ``free``) plus summands R/t^l with (birth, lifetime) in ``torsion``."""

    free: tuple[int, ...] = ()
    torsion: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if any(l < 1 for _, l in self.torsion):
            raise ValueError("torsion lifetimes must be >= 1")
        object.__setattr__(self, "free", tuple(sorted(self.free)))
        object.__setattr__(self, "torsion", tuple(sorted(self.torsion)))

    @property
    def rank(self) -> int:
        return len(self.free)

    def iso_type(self) -> tuple[int, tuple[int, ...]]:
        return len(self.free), tuple(sorted(l for _, l in self.torsion))

    def bars(self) -> list[tuple[int, int | None]]:
        """Half-open intervals [birth, death); death None means infinite."""
        return [(b, b + l) for b, l in self.torsion] + [(b, None) for b in self.free]

    def __str__(self):
        if not self.free and not self.torsion:
            return "0"
        parts = []
        if self.free:
            parts.append("R" if len(self.free) == 1 else f"R^{len(self.free)}")
        for l, mult in sorted(Counter(l for _, l in self.torsion).items(), reverse=True):
            q = "R/t" if l == 1 else f"R/t^{l}"
            parts.append(q if mult == 1 else f"({q})^{mult}")
        return " + ".join(parts)


def _module_from_pairs(pairs, deg_mid, deg_next) -> PersistenceModule:
    free, torsion = [], []
    for g, killer in pairs:
        if killer is None:
            free.append(deg_mid[g])
        else:
            l = deg_next[killer] - deg_mid[g]
            if l > 0:
                torsion.append((deg_mid[g], l))
    return PersistenceModule(tuple(free), tuple(torsion))


def homology_iso_type(c: PersistenceComplex, n: int) -> tuple[int, tuple[int, ...]]:
    """Isomorphism type of H_n from Smith normal forms alone."""
    if n < 0:
        return 0, ()
    out = smith_normal_form(c.boundary(n))
    into = smith_normal_form(c.boundary(n + 1))
    free = c.rank(n) - out.rank - into.rank
    return free, tuple(sorted(into.exponents()))


def cohomology_iso_type(c: PersistenceComplex, n: int) -> tuple[int, tuple[int, ...]]:
    """Isomorphism type of H^n from Smith normal forms of the transposed boundaries."""
    if n < 0:
        return 0, ()
    out = smith_normal_form(c.boundary(n + 1).transpose())
    into = smith_normal_form(c.boundary(n).transpose())
    free = c.rank(n) - out.rank - into.rank
    return free, tuple(sorted(into.exponents()))


class PathMismatch(AssertionError):
    pass


def graded_homology(c: PersistenceComplex, n: int) -> PersistenceModule:
    """H_n from the graded column reduction alone."""
    if n < 0:
        return PersistenceModule()
    return _module_from_pairs(graded_reduce(c, n), c.degrees(n), c.degrees(n + 1))


def graded_cohomology(c: PersistenceComplex, n: int) -> PersistenceModule:
    """H^n from the graded column reduction alone; births in reversed time N - k."""
    if n < 0:
        return PersistenceModule()
    top = c.top_degree
    return _module_from_pairs(
        graded_reduce_cohomology(c, n),
        [top - d for d in c.degrees(n)],
        [top - d for d in c.degrees(n - 1)],
    )


def persistent_homology(c: PersistenceComplex, n: int) -> PersistenceModule:
    """H_n of the persistence complex with births from the graded path, checked against SNF."""
    if n < 0:
        return PersistenceModule()
    module = graded_homology(c, n)
    expected = homology_iso_type(c, n)
    if module.iso_type() != expected:
        raise PathMismatch(f"H_{n}: graded path {module.iso_type()} != SNF {expected}")
    return module


def persistent_cohomology(c: PersistenceComplex, n: int) -> PersistenceModule:
    """H^n = H^n(Hom_R(C, R)); births are measured in reversed time N - k."""
    if n < 0:
        return PersistenceModule()
    module = graded_cohomology(c, n)
    expected = cohomology_iso_type(c, n)
    if module.iso_type() != expected:
        raise PathMismatch(f"H^{n}: graded path {module.iso_type()} != SNF {expected}")
    return module


def betti_at(m: PersistenceModule, k: int) -> int:
    """Number of summands alive at step k."""
    alive = sum(1 for b in m.free if b <= k)
    alive += sum(1 for b, l in m.torsion if b <= k < b + l)
    return alive
