"""Brute-force ground truth.

Module powers are computed from explicit presentation matrices (cokernels) read off by
Smith normal form; orbit counts by direct enumeration; homology of each filtration step
by Gaussian elimination over the field. None of this uses the closed formulas.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complexes import Filtration, snapshot_complex
from .groups import CapExceeded, PermGroup, enumeration_cap
from .homology import smith_normal_form
from .poly import FieldSpec, Polynomial, SparsePolyMatrix
from .powers import ModuleDescriptor

ORACLE_CAP = 2 * 10**4


@dataclass
class PresentationMatrix:
    """Module = R^gens / (column span of rels)."""

    gens: int
    rels: SparsePolyMatrix

    def descriptor(self) -> ModuleDescriptor:
        snf = smith_normal_form(self.rels)
        counts: dict = {}
        for d in snf.nonunit():
            counts[d] = counts.get(d, 0) + 1
        return ModuleDescriptor.from_counts(self.gens - snf.rank, counts, self.rels.field)


def present(m: ModuleDescriptor) -> PresentationMatrix:
    r = m.free_rank
    tors = m.torsion_list()
    p = r + len(tors)
    entries = {(r + i, i): a for i, a in enumerate(tors)}
    return PresentationMatrix(p, SparsePolyMatrix(p, len(tors), entries, m.field))


def oracle_tensor(a: PresentationMatrix, b: PresentationMatrix) -> PresentationMatrix:
    """Presentation of coker(A) (x) coker(B): relations [A (x) I | I (x) B]."""
    pa, pb = a.gens, b.gens
    field = a.rels.field
    entries = {}
    col = 0
    for c, rows in sorted(a.rels.columns().items()):
        for j in range(pb):
            for i, v in rows.items():
                entries[i * pb + j, col] = v
            col += 1
    for c, rows in sorted(b.rels.columns().items()):
        for i in range(pa):
            for j, v in rows.items():
                entries[i * pb + j, col] = v
            col += 1
    return PresentationMatrix(pa * pb, SparsePolyMatrix(pa * pb, col, entries, field))


def _tensor_presentation(m: ModuleDescriptor, n: int) -> PresentationMatrix:
    base = present(m)
    out = PresentationMatrix(1, SparsePolyMatrix(1, 0, field=m.field))
    for _ in range(n):
        out = oracle_tensor(out, base)
    return out


def _append_columns(pm: PresentationMatrix, columns: list[dict[int, object]]) -> PresentationMatrix:
    field = pm.rels.field
    entries = dict(pm.rels.entries)
    col = pm.rels.cols
    for c in columns:
        c = {i: v for i, v in c.items() if v}
        if not c:
            continue
        for i, v in c.items():
            entries[i, col] = Polynomial.constant(v, field)
        col += 1
    return PresentationMatrix(pm.gens, SparsePolyMatrix(pm.gens, col, entries, field))


def oracle_power(m: ModuleDescriptor, n: int, mode="tensor", cap: int | None = None) -> ModuleDescriptor:
    """T^n, a group quotient of it (mode is a PermGroup), or the exterior power, by SNF.

    Basis tensors e_f of T^n are indexed by f in [p]^n with position 0 most significant.
    """
    cap = ORACLE_CAP if cap is None else cap
    p = m.free_rank + m.s
    if p**n > cap:
        raise CapExceeded(f"oracle needs {p}^{n} = {p ** n} generators, cap is {cap}")
    pm = _tensor_presentation(m, n)
    funcs = list(itertools.product(range(p), repeat=n))
    index = {f: i for i, f in enumerate(funcs)}
    extra: list[dict[int, object]] = []
    if isinstance(mode, PermGroup):
        if mode.n != n:
            raise ValueError(f"group acts on {mode.n} points but n = {n}")
        for f in funcs:
            for g in mode.generators:
                # (pi.f)(i) = f(pi(i))
                moved = tuple(f[g[i]] for i in range(n))
                if moved != f:
                    extra.append({index[moved]: 1, index[f]: -1})
    elif mode == "exterior":
        for f in funcs:
            for a, b in itertools.combinations(range(n), 2):
                if f[a] == f[b]:
                    extra.append({index[f]: 1})
                elif f[a] < f[b]:
                    sw = list(f)
                    sw[a], sw[b] = sw[b], sw[a]
                    extra.append({index[f]: 1, index[tuple(sw)]: 1})
    elif mode != "tensor":
        raise ValueError(f"unknown oracle mode {mode!r}")
    return _append_columns(pm, extra).descriptor()


def enumerate_orbits(g: PermGroup, s: int, cap: int | None = None) -> list[list[tuple[int, ...]]]:
    """Orbits of g on functions [n] -> [s] under (pi.f)(i) = f(pi(i)), found by closure
    under the group generators."""
    cap = enumeration_cap() if cap is None else cap
    n = g.n
    if s**n > cap:
        raise CapExceeded(f"{s}^{n} functions exceeds cap {cap}")
    seen: set = set()
    orbits = []
    for f in itertools.product(range(s), repeat=n):
        if f in seen:
            continue
        orbit = {f}
        stack = [f]
        while stack:
            h = stack.pop()
            for pi in g.generators:
                k = tuple(h[pi[i]] for i in range(n))
                if k not in orbit:
                    orbit.add(k)
                    stack.append(k)
        seen |= orbit
        orbits.append(sorted(orbit))
    return orbits


def field_rank(matrix: dict[tuple[int, int], object], field: FieldSpec) -> int:
    """Rank over the field by row reduction on a dict-of-rows copy."""
    rows: dict[int, dict[int, object]] = {}
    for (i, j), v in matrix.items():
        v = field.reduce(field(v))
        if v:
            rows.setdefault(i, {})[j] = v
    rank = 0
    red = field.reduce
    pending = list(rows.values())
    while pending:
        row = pending.pop()
        if not row:
            continue
        j = min(row)
        inv = field.inv(row[j])
        rank += 1
        nxt = []
        for other in pending:
            c = other.get(j)
            if c:
                factor = c * inv
                for k, v in row.items():
                    nv = red(other.get(k, 0) - factor * v)
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
            nxt.append(other)
        pending = nxt
    return rank


def snapshot_homology(f: Filtration, n: int, k: int, field: FieldSpec) -> int:
    """dim_K H_n(Delta_k; K)."""
    cc = snapshot_complex(f, k, field)
    if n < 0 or n >= len(cc.bases):
        return 0
    return cc.rank(n) - field_rank(cc.boundary(n), field) - field_rank(cc.boundary(n + 1), field)
