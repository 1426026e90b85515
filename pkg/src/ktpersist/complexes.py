"""Filtrations, persistence complexes over K[t], snapshots and Vietoris-Rips ingestion."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .poly import QQ, FieldSpec, Polynomial, SparsePolyMatrix


class InputError(ValueError):
    """Invalid input; carries a machine-readable code and an optional line number."""

    def __init__(self, code: str, message: str, line: int | None = None):
        self.code = code
        self.message = message
        self.line = line
        loc = f"line {line}: " if line is not None else ""
        super().__init__(f"{loc}{message}")


@dataclass(frozen=True)
class Simplex:
    vertices: tuple[int, ...]  # indices into Filtration.vertex_order, strictly increasing
    birth: int

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


@dataclass
class Filtration:
    vertex_order: list[str]
    steps: int  # N: births lie in 0..N
    simplices: list[list[Simplex]] = dc_field(default_factory=list)

    @property
    def top_dim(self) -> int:
        return len(self.simplices) - 1

    def label(self, s: Simplex) -> str:
        return "".join(self.vertex_order[v] for v in s.vertices) if all(
            len(self.vertex_order[v]) == 1 for v in s.vertices
        ) else " ".join(self.vertex_order[v] for v in s.vertices)

    def all_simplices(self):
        for layer in self.simplices:
            yield from layer

    def validate(self):
        """Check face closure, birth monotonicity, duplicates and ranges."""
        index: dict[tuple[int, ...], int] = {}
        for d, layer in enumerate(self.simplices):
            for s in layer:
                if s.dim != d:
                    raise InputError("syntax", f"simplex {s.vertices} stored in dimension {d}")
                if list(s.vertices) != sorted(set(s.vertices)):
                    raise InputError("syntax", f"simplex {s.vertices} vertices not strictly increasing")
                if not 0 <= s.birth <= self.steps:
                    raise InputError("range", f"birth {s.birth} outside 0..{self.steps}")
                if s.vertices in index:
                    raise InputError("duplicate", f"duplicate simplex {self.label(s)}")
                for face in _facets(s.vertices):
                    if face not in index:
                        raise InputError("face_closure", f"face of {self.label(s)} missing")
                    if index[face] > s.birth:
                        raise InputError("monotonicity", f"{self.label(s)} born before one of its faces")
                index[s.vertices] = s.birth
        return self

    def to_text(self) -> str:
        lines = [f"steps {self.steps}"]
        for s in self.all_simplices():
            lines.append(" ".join(self.vertex_order[v] for v in s.vertices) + f" {s.birth}")
        return "\n".join(lines) + "\n"


def _facets(vertices: tuple[int, ...]):
    if len(vertices) == 1:
        return
    for i in range(len(vertices)):
        yield vertices[:i] + vertices[i + 1:]


def parse_filtration(text: str) -> Filtration:
    """Read the line format ``steps N`` followed by ``v1 v2 ... birth`` lines.

    A vertex is declared by its 0-simplex line; declaration order is the vertex order.
    """
    steps = None
    vertex_index: dict[str, int] = {}
    order: list[str] = []
    simplices: list[list[Simplex]] = []
    births: dict[tuple[int, ...], int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if steps is None:
            if tokens[0] != "steps" or len(tokens) != 2:
                raise InputError("syntax", "expected header 'steps N'", lineno)
            try:
                steps = int(tokens[1])
            except ValueError:
                raise InputError("syntax", f"bad step count {tokens[1]!r}", lineno) from None
            if steps < 0:
                raise InputError("syntax", "step count must be nonnegative", lineno)
            continue
        if len(tokens) < 2:
            raise InputError("syntax", "expected vertex labels followed by a birth", lineno)
        try:
            birth = int(tokens[-1])
        except ValueError:
            raise InputError("syntax", f"bad birth {tokens[-1]!r}", lineno) from None
        if not 0 <= birth <= steps:
            raise InputError("range", f"birth {birth} outside 0..{steps}", lineno)
        labels = tokens[:-1]
        if len(set(labels)) != len(labels):
            raise InputError("syntax", "repeated vertex in simplex", lineno)
        if len(labels) == 1 and labels[0] not in vertex_index:
            vertex_index[labels[0]] = len(order)
            order.append(labels[0])
            key = (vertex_index[labels[0]],)
        else:
            missing = [v for v in labels if v not in vertex_index]
            if missing and len(labels) > 1:
                raise InputError("face_closure", f"vertex {missing[0]!r} used before its declaration", lineno)
            key = tuple(sorted(vertex_index[v] for v in labels))
            if key in births:
                raise InputError("duplicate", f"duplicate simplex {' '.join(labels)}", lineno)
        for face in _facets(key):
            if face not in births:
                names = " ".join(order[v] for v in face)
                raise InputError("face_closure", f"face {names!r} not declared before {' '.join(labels)!r}", lineno)
            if births[face] > birth:
                names = " ".join(order[v] for v in face)
                raise InputError("monotonicity", f"face {names!r} born at {births[face]} after simplex birth {birth}", lineno)
        births[key] = birth
        d = len(key) - 1
        while len(simplices) <= d:
            simplices.append([])
        simplices[d].append(Simplex(key, birth))

    if steps is None:
        raise InputError("syntax", "missing 'steps N' header")
    return Filtration(order, steps, simplices)


@dataclass
class PersistenceComplex:
    """Chain complex of free graded K[t]-modules.

    ``boundaries[n]`` is the matrix of d_n : C_n -> C_{n-1} (``boundaries[0]`` is unused
    and holds an empty 0 x |C_0| matrix).
    """

    field: FieldSpec
    generator_degrees: list[list[int]]
    boundaries: list[SparsePolyMatrix]
    labels: list[list[str]] | None = None
    steps: int | None = None

    @property
    def top_dim(self) -> int:
        return len(self.generator_degrees) - 1

    @property
    def top_degree(self) -> int:
        if self.steps is not None:
            return self.steps
        return max((d for ds in self.generator_degrees for d in ds), default=0)

    def rank(self, n: int) -> int:
        if 0 <= n < len(self.generator_degrees):
            return len(self.generator_degrees[n])
        return 0

    def degrees(self, n: int) -> list[int]:
        if 0 <= n < len(self.generator_degrees):
            return self.generator_degrees[n]
        return []

    def boundary(self, n: int) -> SparsePolyMatrix:
        """d_n as a |C_{n-1}| x |C_n| matrix; zero matrices outside the stored range."""
        if 1 <= n < len(self.boundaries):
            return self.boundaries[n]
        return SparsePolyMatrix(self.rank(n - 1), self.rank(n), field=self.field)

    def check(self):
        """Verify homogeneity and d_n d_{n+1} = 0; raises InputError."""
        for n in range(1, len(self.boundaries)):
            m = self.boundaries[n]
            if m.shape != (self.rank(n - 1), self.rank(n)):
                raise InputError("shape", f"boundary {n} has shape {m.shape}")
            for (i, j), v in m.entries.items():
                e = self.generator_degrees[n][j] - self.generator_degrees[n - 1][i]
                if not v.is_monomial() or v.degree != e or e < 0:
                    raise InputError("grading", f"boundary {n} entry ({i}, {j}) = {v} is not homogeneous of degree {e}")
        for n in range(1, len(self.boundaries) - 1):
            if not (self.boundaries[n] @ self.boundaries[n + 1]).is_zero():
                raise InputError("not_a_complex", f"d_{n} d_{n + 1} != 0")
        return self


def boundary_sign(position: int) -> int:
    return -1 if position % 2 else 1


def build_persistence_complex(f: Filtration, field: FieldSpec = QQ) -> PersistenceComplex:
    """Boundary of sigma is sum over facets tau of (-1)^i t^(deg sigma - deg tau) tau,
    where i is the position of the removed vertex."""
    degrees = [[s.birth for s in layer] for layer in f.simplices]
    labels = [[f.label(s) for s in layer] for layer in f.simplices]
    boundaries = [SparsePolyMatrix(0, len(f.simplices[0]) if f.simplices else 0, field=field)]
    for n in range(1, len(f.simplices)):
        row_of = {s.vertices: i for i, s in enumerate(f.simplices[n - 1])}
        entries = {}
        for j, s in enumerate(f.simplices[n]):
            for pos in range(len(s.vertices)):
                face = s.vertices[:pos] + s.vertices[pos + 1:]
                i = row_of[face]
                e = s.birth - f.simplices[n - 1][i].birth
                entries[i, j] = Polynomial.monomial(field, boundary_sign(pos), e)
        boundaries.append(SparsePolyMatrix(len(f.simplices[n - 1]), len(f.simplices[n]), entries, field))
    return PersistenceComplex(field, degrees, boundaries, labels, f.steps)


def load_filtered_complex(
    degrees: Sequence[Sequence[int]],
    plain_boundaries: dict[int, dict[tuple[int, int], object]],
    field: FieldSpec = QQ,
) -> PersistenceComplex:
    """Scale a filtered chain complex over K to K[t]: entry [b', b] becomes [b', b] t^(deg b' - deg b)."""
    degrees = [list(ds) for ds in degrees]
    for n, ds in enumerate(degrees):
        if any(d < 0 for d in ds):
            raise InputError("grading", f"negative generator degree in chain degree {n}")
    boundaries = [SparsePolyMatrix(0, len(degrees[0]) if degrees else 0, field=field)]
    for n in range(1, len(degrees)):
        entries = {}
        for (i, j), v in plain_boundaries.get(n, {}).items():
            if not (0 <= i < len(degrees[n - 1]) and 0 <= j < len(degrees[n])):
                raise InputError("shape", f"boundary {n} entry ({i}, {j}) out of range")
            v = field(v)
            if not v:
                continue
            e = degrees[n][j] - degrees[n - 1][i]
            if e < 0:
                raise InputError("grading", f"boundary {n} entry ({i}, {j}) would need t^{e}: filtration violated")
            entries[i, j] = Polynomial.monomial(field, v, e)
        boundaries.append(SparsePolyMatrix(len(degrees[n - 1]), len(degrees[n]), entries, field))
    extra = [n for n in plain_boundaries if not 1 <= n < len(degrees)]
    if any(plain_boundaries[n] for n in extra):
        raise InputError("shape", f"boundary given for chain degree {extra[0]} without generators")
    steps = max((d for ds in degrees for d in ds), default=0)
    return PersistenceComplex(field, degrees, boundaries, None, steps).check()


def parse_complex(text: str, field: FieldSpec = QQ) -> PersistenceComplex:
    """Generic complex format: ``gens n: d0 d1 ...`` blocks and ``boundary n:`` blocks of
    ``row col value`` triples."""
    gens: dict[int, list[int]] = {}
    bnds: dict[int, dict[tuple[int, int], object]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        words = head.split()
        if sep and len(words) == 2 and words[0] in ("gens", "boundary"):
            try:
                n = int(words[1])
            except ValueError:
                raise InputError("syntax", f"bad chain degree {words[1]!r}", lineno) from None
            if words[0] == "gens":
                if n in gens:
                    raise InputError("duplicate", f"generators for degree {n} given twice", lineno)
                try:
                    gens[n] = [int(x) for x in rest.split()]
                except ValueError:
                    raise InputError("syntax", "generator degrees must be integers", lineno) from None
                current = None
            else:
                if n < 1:
                    raise InputError("syntax", "boundary degree must be >= 1", lineno)
                current = bnds.setdefault(n, {})
                if rest.strip():
                    raise InputError("syntax", "boundary triples go on following lines", lineno)
            continue
        if current is None:
            raise InputError("syntax", f"unexpected line {line!r}", lineno)
        parts = line.split()
        if len(parts) != 3:
            raise InputError("syntax", "expected 'row col value'", lineno)
        try:
            i, j, v = int(parts[0]), int(parts[1]), Fraction(parts[2])
        except (ValueError, ZeroDivisionError):
            raise InputError("syntax", f"bad triple {line!r}", lineno) from None
        if (i, j) in current:
            raise InputError("duplicate", f"entry ({i}, {j}) given twice", lineno)
        current[i, j] = v
    if not gens:
        return load_filtered_complex([], {}, field)
    top = max(gens)
    degrees = [gens.get(n, []) for n in range(top + 1)]
    return load_filtered_complex(degrees, bnds, field)


@dataclass
class ChainComplex:
    """Plain chain complex over a field: bases per degree and sparse boundary dicts."""

    field: FieldSpec
    bases: list[list[tuple[int, ...]]]
    boundaries: list[dict[tuple[int, int], object]]

    def rank(self, n: int) -> int:
        return len(self.bases[n]) if 0 <= n < len(self.bases) else 0

    def boundary(self, n: int) -> dict[tuple[int, int], object]:
        return self.boundaries[n] if 1 <= n < len(self.boundaries) else {}


def snapshot_complex(f: Filtration, k: int, field: FieldSpec = QQ) -> ChainComplex:
    """The subcomplex Delta_k (simplices born at or before k) with the same sign convention."""
    if not 0 <= k <= f.steps:
        raise InputError("range", f"step {k} outside 0..{f.steps}")
    bases = [[s.vertices for s in layer if s.birth <= k] for layer in f.simplices]
    while bases and not bases[-1]:
        bases.pop()
    boundaries: list[dict] = [{}]
    for n in range(1, len(bases)):
        row_of = {v: i for i, v in enumerate(bases[n - 1])}
        mat = {}
        for j, s in enumerate(bases[n]):
            for pos in range(len(s)):
                mat[row_of[s[:pos] + s[pos + 1:]], j] = field(boundary_sign(pos))
        boundaries.append(mat)
    return ChainComplex(field, bases, boundaries)


def _squared_distance(p, q) -> Fraction:
    return sum((Fraction(a) - Fraction(b)) ** 2 for a, b in zip(p, q))


def rips_filtration(points, radii, max_dim: int = 2) -> Filtration:
    """Vietoris-Rips filtration: a simplex enters at the first radius r with every
    pairwise distance <= 2r. Distances are compared squared, in exact rationals."""
    points = [tuple(Fraction(c) for c in p) for p in points]
    if not points:
        raise InputError("empty", "empty point set")
    if len({len(p) for p in points}) != 1:
        raise InputError("syntax", "points have different dimensions")
    radii = [Fraction(r) for r in radii]
    if not radii:
        raise InputError("syntax", "no radii given")
    if any(r < 0 for r in radii) or any(a >= b for a, b in zip(radii, radii[1:])):
        raise InputError("syntax", "radii must be nonnegative and strictly increasing")
    thresholds = [4 * r * r for r in radii]

    def entry_step(d2):
        for k, th in enumerate(thresholds):
            if d2 <= th:
                return k
        return None

    n = len(points)
    edge_birth = {}
    for i, j in itertools.combinations(range(n), 2):
        k = entry_step(_squared_distance(points[i], points[j]))
        if k is not None:
            edge_birth[i, j] = k

    simplices = [[Simplex((i,), 0) for i in range(n)]]
    for d in range(1, max_dim + 1):
        layer = []
        for s in itertools.combinations(range(n), d + 1):
            pairs = list(itertools.combinations(s, 2))
            if all(p in edge_birth for p in pairs):
                layer.append(Simplex(s, max(edge_birth[p] for p in pairs)))
        if not layer:
            break
        layer.sort(key=lambda s: s.birth)
        simplices.append(layer)
    return Filtration([f"v{i}" for i in range(n)], len(radii) - 1, simplices).validate()
