"""Formula-versus-oracle sweeps, used by the ``verify`` command and the test suite."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .complexes import Filtration, Simplex, build_persistence_complex
from .groups import PermGroup, bracelet_count, burnside_count, necklace_count
from .homology import (
    betti_at,
    cohomology_iso_type,
    graded_cohomology,
    graded_homology,
    homology_iso_type,
)
from .oracle import enumerate_orbits, oracle_power, snapshot_homology
from .poly import FieldSpec
from .powers import (
    ModuleDescriptor,
    exterior_power,
    g_power,
    symmetric_power,
    tensor_power,
)


@dataclass
class Check:
    family: str
    case: str
    ok: bool
    detail: str = ""


def iter_descriptors(max_r: int, max_s: int, max_exp: int):
    """Every R^r + sum R/t^l with r <= max_r, at most max_s torsion summands, l <= max_exp.

    Torsion lists are taken up to reordering; order invariance is tested separately.
    """
    for r in range(max_r + 1):
        for s in range(max_s + 1):
            for exps in itertools.combinations_with_replacement(range(1, max_exp + 1), s):
                yield ModuleDescriptor.make(r, list(exps))


def power_cases(m: ModuleDescriptor, n: int, rng: random.Random):
    """(name, formula value, oracle mode) triples for one descriptor and exponent."""
    yield "tensor", lambda: tensor_power(m, n), "tensor"
    yield "sym", lambda: symmetric_power(m, n), PermGroup.symmetric(n)
    yield "ext", lambda: exterior_power(m, n), "exterior"
    groups = {
        "trivial": PermGroup.trivial(n),
        "cyclic": PermGroup.cyclic(n),
        "dihedral": PermGroup.dihedral(n),
        "symmetric": PermGroup.symmetric(n),
        "random": PermGroup.random(n, rng, 2),
    }
    for name, g in groups.items():
        yield f"G={name}", (lambda g=g: g_power(m, n, g)), g


def power_sweep(max_r=2, max_s=3, max_exp=4, max_n=4, seed=0, max_n_wide=3, wide=4):
    """Compare every power formula with the presentation-matrix oracle.

    Descriptors with r + s >= ``wide`` stop at ``max_n_wide``.
    """
    rng = random.Random(seed)
    for m in iter_descriptors(max_r, max_s, max_exp):
        top = max_n if m.free_rank + m.s < wide else min(max_n, max_n_wide)
        for n in range(top + 1):
            for name, formula, mode in power_cases(m, n, rng):
                got = formula()
                want = oracle_power(m, n, mode)
                label = name if not isinstance(mode, PermGroup) or name != "G=random" else f"G=<{mode.describe()}>"
                yield Check(f"power {name.split('=')[0]}", f"{label} n={n} M={m}", got == want,
                            "" if got == want else f"formula {got} != oracle {want}")


def counting_sweep(max_r=4, max_n=6, seed=0, random_groups=3):
    rng = random.Random(seed)
    for r in range(1, max_r + 1):
        for n in range(1, max_n + 1):
            c = len(enumerate_orbits(PermGroup.cyclic(n), r))
            yield Check("necklace", f"r={r} n={n}", c == necklace_count(r, n), f"{c} vs {necklace_count(r, n)}")
            d = len(enumerate_orbits(PermGroup.dihedral(n), r))
            yield Check("bracelet", f"r={r} n={n}", d == bracelet_count(r, n), f"{d} vs {bracelet_count(r, n)}")
            groups = [PermGroup.trivial(n), PermGroup.cyclic(n), PermGroup.dihedral(n), PermGroup.symmetric(n)]
            groups += [PermGroup.random(n, rng, 2) for _ in range(random_groups)]
            for g in groups:
                orbits = len(enumerate_orbits(g, r))
                b = burnside_count(g, r)
                yield Check("burnside", f"r={r} G=<{g.describe()}>", orbits == b, f"{orbits} vs {b}")


def random_filtration(rng: random.Random, max_simplices=25, max_dim=3, max_steps=5) -> Filtration:
    """Random closed complex with monotone births."""
    nv = rng.randint(1, 7)
    steps = rng.randint(0, max_steps)
    keys: set = set()
    for _ in range(rng.randint(1, 8)):
        d = rng.randint(0, min(max_dim, nv - 1))
        top = tuple(sorted(rng.sample(range(nv), d + 1)))
        closure = {
            face for k in range(1, len(top) + 1) for face in itertools.combinations(top, k)
        }
        if len(keys | closure) > max_simplices:
            continue
        keys |= closure
    used = sorted({v for k in keys for v in k})
    relabel = {v: i for i, v in enumerate(used)}
    keys = {tuple(relabel[v] for v in k) for k in keys}
    births: dict = {}
    layers: list[list[Simplex]] = []
    for d in range(max(len(k) for k in keys)):
        layer = sorted(k for k in keys if len(k) == d + 1)
        if d:
            rng.shuffle(layer)
        out = []
        for k in layer:
            lo = max((births[k[:i] + k[i + 1:]] for i in range(len(k))), default=0) if d else 0
            b = rng.randint(lo, steps) if rng.random() < 0.6 else lo
            births[k] = b
            out.append(Simplex(k, b))
        layers.append(out)
    return Filtration([f"v{i}" for i in range(len(used))], steps, layers).validate()


def homology_sweep(count=200, fields=(FieldSpec(0), FieldSpec(2), FieldSpec(5)), seed=0):
    """Persistent (co)homology against snapshot homology, SNF and universal coefficients."""
    rng = random.Random(seed)
    for trial in range(count):
        f = random_filtration(rng)
        for field in fields:
            c = build_persistence_complex(f, field)
            tag = f"#{trial} {field} N={f.steps} sizes={[len(l) for l in f.simplices]}"
            top = c.top_dim + 1
            hs = [graded_homology(c, n) for n in range(top + 1)]
            cohs = [graded_cohomology(c, n) for n in range(top + 1)]
            bad = []
            for n in range(top + 1):
                for k in range(f.steps + 1):
                    want = snapshot_homology(f, n, k, field)
                    if betti_at(hs[n], k) != want:
                        bad.append(f"H_{n}@{k}: {betti_at(hs[n], k)} vs {want}")
            yield Check("snapshot", tag, not bad, "; ".join(bad))
            mism = [n for n in range(top + 1) if graded_homology(c, n).iso_type() != homology_iso_type(c, n)]
            mism += [f"^{n}" for n in range(top + 1)
                     if graded_cohomology(c, n).iso_type() != cohomology_iso_type(c, n)]
            yield Check("paths", tag, not mism, f"mismatch in {mism}")
            uct = []
            for n in range(top + 1):
                prev = hs[n - 1].iso_type()[1] if n else ()
                want = (hs[n].rank, tuple(sorted(prev)))
                if cohs[n].iso_type() != want:
                    uct.append(n)
            yield Check("uct", tag, not uct, f"fails at n={uct}")


def summarize(checks) -> list[tuple[str, int, int]]:
    table: dict[str, list[int]] = {}
    for ch in checks:
        row = table.setdefault(ch.family, [0, 0])
        row[0 if ch.ok else 1] += 1
    return [(fam, p, f) for fam, (p, f) in table.items()]
