"""Text and JSON encodings shared by the CLI."""

from __future__ import annotations

import csv
import io
from fractions import Fraction

from .complexes import InputError
from .homology import PersistenceModule
from .poly import QQ, FieldSpec, parse_poly
from .powers import ModuleDescriptor


def parse_module(text: str, field: FieldSpec = QQ) -> ModuleDescriptor:
    """``"r=2; t^2, t^3"``: free rank then torsion generators. Either part may be absent."""
    r = 0
    tors = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if part.replace(" ", "").startswith("r="):
            try:
                r = int(part.split("=", 1)[1])
            except ValueError:
                raise InputError("syntax", f"bad free rank in {part!r}") from None
            if r < 0:
                raise InputError("syntax", "free rank must be nonnegative")
            continue
        for g in part.split(","):
            if not g.strip():
                continue
            try:
                tors.append(parse_poly(g, field))
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError("syntax", str(exc)) from None
    try:
        return ModuleDescriptor.make(r, tors, field)
    except ValueError as exc:
        raise InputError("syntax", str(exc)) from None


def module_json(m: PersistenceModule, n: int, field: FieldSpec) -> dict:
    return {
        "n": n,
        "field": str(field),
        "free": list(m.free),
        "torsion": [{"birth": b, "lifetime": l} for b, l in m.torsion],
    }


def descriptor_json(m: ModuleDescriptor) -> dict:
    # big integers as strings
    return {
        "free": str(m.free_rank),
        "torsion": [{"gen": str(p), "mult": str(k)} for p, k in m.torsion],
    }


def barcode_csv(modules: list[tuple[int, PersistenceModule]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["dim", "birth", "death"])
    for n, m in modules:
        for birth, death in sorted(m.bars(), key=lambda bd: (bd[0], bd[1] is None, bd[1] or 0)):
            w.writerow([n, birth, "inf" if death is None else death])
    return buf.getvalue()


def parse_points(text: str) -> list[tuple[Fraction, ...]]:
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            points.append(tuple(Fraction(x) for x in line.replace(",", " ").split()))
        except (ValueError, ZeroDivisionError):
            raise InputError("syntax", f"bad coordinate in {line!r}", lineno) from None
    return points


def parse_rationals(text: str) -> list[Fraction]:
    try:
        return [Fraction(x) for x in text.replace(",", " ").split()]
    except (ValueError, ZeroDivisionError):
        raise InputError("syntax", f"bad rational list {text!r}") from None
