"""Tensor, symmetric, exterior and group powers of f.g. modules over K[t].

Modules are described up to isomorphism as R^r + sum_i R/(a_i). All formulas work on
that description directly; nothing here builds a matrix.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Iterable

from .groups import CapExceeded, PermGroup, bracelet_count, enumeration_cap, necklace_count
from .poly import QQ, FieldSpec, Polynomial, poly_gcd


def multichoose(r: int, m: int) -> int:
    """Number of m-element multisets drawn from r items."""
    if m == 0:
        return 1
    return comb(r + m - 1, m) if r > 0 else 0


@dataclass(frozen=True)
class ModuleDescriptor:
    """Isomorphism type R^free_rank + sum (R/(poly))^mult, torsion kept sorted and aggregated."""

    free_rank: int
    torsion: tuple[tuple[Polynomial, int], ...] = ()
    field: FieldSpec = QQ

    @classmethod
    def make(cls, free_rank: int, torsion: Iterable = (), field: FieldSpec | None = None) -> ModuleDescriptor:
        """Build from a plain list of torsion generators (Polynomials or ints l meaning t^l)."""
        polys = []
        for a in torsion:
            if isinstance(a, int):
                if a < 1:
                    raise ValueError("torsion exponent must be >= 1")
                a = Polynomial.t_power(a, field or QQ)
            polys.append(a)
        if field is None:
            field = polys[0].field if polys else QQ
        counts: Counter = Counter()
        for a in polys:
            if a.field != field:
                raise ValueError("torsion generators over different fields")
            if not a:
                raise ValueError("zero torsion generator; count it in the free rank")
            if a.is_unit():
                raise ValueError(f"unit torsion generator {a}")
            counts[a.monic()] += 1
        return cls.from_counts(free_rank, counts, field)

    @classmethod
    def from_counts(cls, free_rank: int, counts, field: FieldSpec = QQ) -> ModuleDescriptor:
        if free_rank < 0:
            raise ValueError("negative free rank")
        items = tuple(sorted(((p, m) for p, m in counts.items() if m), key=lambda pm: pm[0].sort_key()))
        return cls(free_rank, items, field)

    @classmethod
    def zero(cls, field: FieldSpec = QQ) -> ModuleDescriptor:
        return cls(0, (), field)

    @classmethod
    def ring(cls, field: FieldSpec = QQ) -> ModuleDescriptor:
        return cls(1, (), field)

    def torsion_list(self) -> list[Polynomial]:
        return [p for p, m in self.torsion for _ in range(m)]

    @property
    def s(self) -> int:
        return sum(m for _, m in self.torsion)

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        if self.free_rank:
            parts.append("R" if self.free_rank == 1 else f"R^{self.free_rank}")
        for p, m in reversed(self.torsion):
            g = str(p)
            q = f"R/{g}" if p.is_monomial() else f"R/({g})"
            parts.append(q if m == 1 else f"({q})^{m}")
        return " + ".join(parts)


def descriptor_from_module(module, field: FieldSpec = QQ) -> ModuleDescriptor:
    """Drop births from a PersistenceModule: torsion (b, l) -> t^l."""
    return ModuleDescriptor.make(len(module.free), [l for _, l in module.torsion], field)


# -- counting choices of torsion generators by the gcd they generate


def _grouped(m: ModuleDescriptor):
    return [(p, mult) for p, mult in m.torsion]


def _gcd_classes(m: ModuleDescriptor, n: int, ways) -> list[Counter]:
    """out[k][g] = number of admissible k-selections of torsion indices with gcd g.

    Selections are built one distinct generator at a time; ``ways(mu, c)`` counts how
    many selections of size c can be drawn from a generator occurring mu times.
    """
    zero = Polynomial.zero(m.field)
    layers = [Counter({zero: 1})] + [Counter() for _ in range(n)]
    for p, mu in _grouped(m):
        new = [Counter(layer) for layer in layers]
        for k in range(n + 1):
            for g, cnt in layers[k].items():
                gg = poly_gcd(g, p)
                for c in range(1, n - k + 1):
                    w = ways(mu, c)
                    if not w:
                        break
                    new[k + c][gg] += cnt * w
        layers = new
    return layers


def _ordered_gcd_classes(m: ModuleDescriptor, n: int) -> list[Counter]:
    """out[k][g] = number of ordered k-tuples of torsion indices with gcd g."""
    zero = Polynomial.zero(m.field)
    layers = [Counter({zero: 1})]
    for _ in range(n):
        nxt: Counter = Counter()
        for g, cnt in layers[-1].items():
            for p, mu in _grouped(m):
                nxt[poly_gcd(g, p)] += cnt * mu
        layers.append(nxt)
    return layers


def _assemble(m: ModuleDescriptor, free: int, layers: list[Counter], weight) -> ModuleDescriptor:
    out: Counter = Counter()
    for k in range(1, len(layers)):
        w = weight(k)
        if not w:
            continue
        for g, cnt in layers[k].items():
            out[g] += cnt * w
    return ModuleDescriptor.from_counts(free, out, m.field)


def tensor_power(m: ModuleDescriptor, n: int) -> ModuleDescriptor:
    r = m.free_rank
    layers = _ordered_gcd_classes(m, n)
    return _assemble(m, r**n, layers, lambda k: comb(n, k) * r ** (n - k))


def symmetric_power(m: ModuleDescriptor, n: int) -> ModuleDescriptor:
    r = m.free_rank
    layers = _gcd_classes(m, n, multichoose)
    return _assemble(m, multichoose(r, n), layers, lambda k: multichoose(r, n - k))


def exterior_power(m: ModuleDescriptor, n: int) -> ModuleDescriptor:
    r = m.free_rank
    layers = _gcd_classes(m, n, comb)
    return _assemble(m, comb(r, n), layers, lambda k: comb(r, n - k))


def g_power(m: ModuleDescriptor, n: int, g: PermGroup, cap: int | None = None) -> ModuleDescriptor:
    """T^n M modulo the permutation action of g on tensor positions.

    Free summands are treated as torsion generators equal to 0; each orbit of g on
    functions [n] -> generators contributes R modulo the gcd of the nonzero generators
    it touches.
    """
    if g.n != n:
        raise ValueError(f"group acts on {g.n} points but n = {n}")
    cap = enumeration_cap() if cap is None else cap
    gens = m.torsion_list() + [None] * m.free_rank
    base = len(gens)
    total = base**n
    if total > cap:
        raise CapExceeded(f"{base}^{n} = {total} functions exceeds enumeration cap {cap}")
    zero = Polynomial.zero(m.field)
    powers = [base**i for i in range(n)]
    perms = g.generators

    def decode(code):
        digits = []
        for _ in range(n):
            code, d = divmod(code, base)
            digits.append(d)
        return digits

    visited = bytearray(total)
    free = 0
    out: Counter = Counter()
    for start in range(total):
        if visited[start]:
            continue
        visited[start] = 1
        f0 = decode(start)
        stack = [f0]
        while stack:
            f = stack.pop()
            for p in perms:
                code = 0
                for i in range(n):
                    code += f[p[i]] * powers[i]
                if not visited[code]:
                    visited[code] = 1
                    stack.append(decode(code))
        # the image of f is constant along an orbit
        ideal = zero
        for j in set(f0):
            if gens[j] is not None:
                ideal = poly_gcd(ideal, gens[j])
        if ideal:
            out[ideal] += 1
        else:
            free += 1
    return ModuleDescriptor.from_counts(free, out, m.field)


def cyclic_power(m: ModuleDescriptor, n: int, cap: int | None = None) -> ModuleDescriptor:
    if n < 1:
        raise ValueError("cyclic power needs n >= 1")
    out = g_power(m, n, PermGroup.cyclic(n), cap)
    assert out.free_rank == necklace_count(m.free_rank, n), "necklace count mismatch"
    return out


def dihedral_power(m: ModuleDescriptor, n: int, cap: int | None = None) -> ModuleDescriptor:
    if n < 1:
        raise ValueError("dihedral power needs n >= 1")
    out = g_power(m, n, PermGroup.dihedral(n), cap)
    assert out.free_rank == bracelet_count(m.free_rank, n), "bracelet count mismatch"
    return out


FLAVORS = ("free", "commutative", "exterior")


@dataclass(frozen=True)
class AlgebraPresentation:
    flavor: str
    free_gens: tuple[str, ...]
    torsion_gens: tuple[str, ...]
    relations: tuple[tuple[Polynomial, str], ...]

    def __str__(self):
        gens = ", ".join(self.free_gens + self.torsion_gens)
        rels = []
        for a, y in self.relations:
            rels.append(f"{a}*{y}" if a.is_monomial() else f"({a})*{y}")
        body = gens + (" | " + ", ".join(rels) if rels else "")
        if self.flavor == "free":
            return f"R<{body}>"
        if self.flavor == "commutative":
            return f"R[{body}]"
        return f"Λ[{body}]"


def algebra_presentation(m: ModuleDescriptor, flavor: str) -> AlgebraPresentation:
    """Generators x_i for free summands and y_i for torsion summands, relations a_i y_i."""
    aliases = {"sym": "commutative", "ext": "exterior", "tensor": "free"}
    flavor = aliases.get(flavor, flavor)
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}")
    xs = tuple(f"x{i + 1}" for i in range(m.free_rank))
    tors = m.torsion_list()
    ys = tuple(f"y{i + 1}" for i in range(len(tors)))
    return AlgebraPresentation(flavor, xs, ys, tuple(zip(tors, ys)))
