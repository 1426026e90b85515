"""Permutation groups acting on tensor positions, and Burnside counting."""

from __future__ import annotations

import os
import random
import re
from dataclasses import dataclass
from math import gcd

DEFAULT_ENUMERATION_CAP = 10**7


class CapExceeded(RuntimeError):
    pass


def enumeration_cap(default: int = DEFAULT_ENUMERATION_CAP) -> int:
    """Cap for brute-force enumeration; PERSIST_CAP in the environment overrides it."""
    env = os.environ.get("PERSIST_CAP")
    return int(env) if env else default


Perm = tuple[int, ...]  # 0-based images: perm[i] = pi(i)


def compose(a: Perm, b: Perm) -> Perm:
    """(a * b)(i) = a(b(i))."""
    return tuple(a[i] for i in b)


def cycle_count(p: Perm) -> int:
    seen = [False] * len(p)
    count = 0
    for i in range(len(p)):
        if not seen[i]:
            count += 1
            while not seen[i]:
                seen[i] = True
                i = p[i]
    return count


def parse_cycles(text: str, n: int) -> Perm:
    """Parse 1-based cycle notation such as ``(1 2 3)(4 5)``; ``()`` is the identity."""
    images = list(range(n))
    text = text.strip()
    if not re.fullmatch(r"(\(\s*[\d\s,]*\)\s*)*", text) or not text:
        raise ValueError(f"bad permutation {text!r}")
    seen = set()
    for body in re.findall(r"\(([^)]*)\)", text):
        pts = [int(x) for x in re.split(r"[\s,]+", body.strip()) if x]
        if any(not 1 <= x <= n for x in pts):
            raise ValueError(f"cycle {body!r} has points outside 1..{n}")
        if seen & set(pts) or len(set(pts)) != len(pts):
            raise ValueError(f"cycles in {text!r} are not disjoint")
        seen |= set(pts)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a - 1] = b - 1
    return tuple(images)


def format_cycles(p: Perm) -> str:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(out) or "()"


@dataclass(frozen=True)
class PermGroup:
    n: int
    generators: tuple[Perm, ...]

    def __post_init__(self):
        gens = tuple(tuple(g) for g in self.generators)
        for g in gens:
            if len(g) != self.n or sorted(g) != list(range(self.n)):
                raise ValueError(f"{g} is not a permutation of {self.n} points")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def parse(cls, text: str, n: int) -> PermGroup:
        """Generators separated by ';' in cycle notation."""
        parts = [p for p in text.split(";") if p.strip()]
        return cls(n, tuple(parse_cycles(p, n) for p in parts))

    @classmethod
    def trivial(cls, n: int) -> PermGroup:
        return cls(n, ())

    @classmethod
    def cyclic(cls, n: int) -> PermGroup:
        if n <= 1:
            return cls.trivial(n)
        return cls(n, (tuple((i + 1) % n for i in range(n)),))

    @classmethod
    def dihedral(cls, n: int) -> PermGroup:
        if n <= 1:
            return cls.trivial(n)
        return cls(n, cls.cyclic(n).generators + (tuple(range(n - 1, -1, -1)),))

    @classmethod
    def symmetric(cls, n: int) -> PermGroup:
        """Generated by adjacent transpositions (i, i+1)."""
        gens = []
        for i in range(n - 1):
            p = list(range(n))
            p[i], p[i + 1] = p[i + 1], p[i]
            gens.append(tuple(p))
        return cls(n, tuple(gens))

    @classmethod
    def random(cls, n: int, rng: random.Random, k: int = 2) -> PermGroup:
        gens = []
        for _ in range(k):
            p = list(range(n))
            rng.shuffle(p)
            gens.append(tuple(p))
        return cls(n, tuple(gens))

    def identity(self) -> Perm:
        return tuple(range(self.n))

    def elements(self, cap: int | None = None) -> set[Perm]:
        """Closure of the generators under composition."""
        cap = enumeration_cap() if cap is None else cap
        ident = self.identity()
        els = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in self.generators:
                    c = compose(g, a)
                    if c not in els:
                        els.add(c)
                        if len(els) > cap:
                            raise CapExceeded(f"group order exceeds cap {cap}")
                        nxt.append(c)
            frontier = nxt
        return els

    def order(self) -> int:
        return len(self.elements())

    def describe(self) -> str:
        return ";".join(format_cycles(g) for g in self.generators) or "()"


def burnside_count(g: PermGroup, r: int, cap: int | None = None) -> int:
    """Orbits of g on [r]^[n]: mean of r^(number of cycles) over the group."""
    if r < 1:
        raise ValueError("r must be >= 1")
    els = g.elements(cap)
    total = sum(r ** cycle_count(p) for p in els)
    count, rem = divmod(total, len(els))
    assert rem == 0, "Burnside sum not divisible by the group order"
    return count


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def necklace_count(r: int, n: int) -> int:
    """c_{r,n} = (1/n) sum over d | n of phi(d) r^(n/d)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = sum(euler_phi(d) * r ** (n // d) for d in range(1, n + 1) if n % d == 0)
    return total // n


def bracelet_count(r: int, n: int) -> int:
    c = necklace_count(r, n)
    if n % 2 == 0:
        num = 2 * c + (r + 1) * r ** (n // 2)
        assert num % 4 == 0
        return num // 4
    num = c + r ** ((n + 1) // 2)
    assert num % 2 == 0
    return num // 2
