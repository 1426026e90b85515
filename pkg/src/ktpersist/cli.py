"""Command-line front end: homology, cohomology, power, present, rips, verify."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from . import formats
from .complexes import (
    InputError,
    build_persistence_complex,
    parse_complex,
    parse_filtration,
    rips_filtration,
)
from .groups import CapExceeded, PermGroup, enumeration_cap
from .homology import persistent_cohomology, persistent_homology
from .poly import FieldSpec
from .powers import (
    algebra_presentation,
    cyclic_power,
    dihedral_power,
    exterior_power,
    g_power,
    symmetric_power,
    tensor_power,
)
from . import verify as sweeps

COMMANDS = ("homology", "cohomology", "power", "present", "rips", "verify")


class CliError(Exception):
    def __init__(self, code: str, message: str, location: str | None = None):
        super().__init__(message)
        self.code, self.message, self.location = code, message, location


@dataclass
class RunConfig:
    command: str
    field: FieldSpec = dc_field(default_factory=FieldSpec)
    input: str | None = None
    dim: int | None = None
    group: str | None = None
    output: str = "json"
    cap: int = dc_field(default_factory=enumeration_cap)
    options: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise CliError("config", f"unknown command {self.command!r}")


def _field_arg(text):
    try:
        return FieldSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ktpersist", description="Persistent homology over K[t] and powers of persistence modules.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, output="json"):
        p.add_argument("--field", type=_field_arg, default=FieldSpec(0), help="q (default) or p:<prime>")
        p.add_argument("--output", choices=("json", "text"), default=output)

    for name in ("homology", "cohomology"):
        p = sub.add_parser(name, help=f"persistent {name} of a filtration or filtered complex")
        p.add_argument("input", help="filtration (.flt) or generic complex file; '-' for stdin")
        p.add_argument("--dim", type=int, help="only this chain degree")
        if name == "homology":
            p.add_argument("--cohomology", action="store_true", help="compute cohomology instead")
        p.add_argument("--barcode", metavar="CSV", help="also write dim,birth,death rows here")
        p.add_argument("--jobs", type=int, default=1, help="degrees computed concurrently")
        common(p)

    p = sub.add_parser("power", help="tensor/symmetric/exterior/group powers of a module")
    p.add_argument("kind", choices=("tensor", "sym", "ext", "cyclic", "dihedral", "group"))
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--module", required=True, help='e.g. "r=2; t^2, t^3"')
    p.add_argument("--group", help='generators in cycle notation, e.g. "(1 2 3);(1 2)"')
    common(p)

    p = sub.add_parser("present", help="algebra presentation of T(M), S(M) or Λ(M)")
    p.add_argument("flavor", choices=("free", "sym", "ext"))
    p.add_argument("--module", required=True)
    common(p, output="text")

    p = sub.add_parser("rips", help="Vietoris-Rips filtration of a point cloud, written as a .flt file")
    p.add_argument("input", help="one point per line, rational coordinates")
    p.add_argument("--radii", required=True, help='strictly increasing radii, e.g. "1/2 1 3/2"')
    p.add_argument("--max-dim", type=int, default=2)
    p.add_argument("--output", choices=("text",), default="text")

    p = sub.add_parser("verify", help="closed formulas against brute-force oracles")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--max-s", type=int, default=2)
    p.add_argument("--max-r", type=int, default=2)
    p.add_argument("--max-exp", type=int, default=3)
    p.add_argument("--filtrations", type=int, default=20, help="random filtrations for the homology sweep")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", choices=("json", "text"), default="text")
    return ap


def config_from_args(args) -> RunConfig:
    command = args.command
    if command == "homology" and getattr(args, "cohomology", False):
        command = "cohomology"
    opts = {k: v for k, v in vars(args).items() if k not in ("command", "field", "input", "dim", "group", "output")}
    return RunConfig(
        command=command,
        field=getattr(args, "field", FieldSpec(0)),
        input=getattr(args, "input", None),
        dim=getattr(args, "dim", None),
        group=getattr(args, "group", None),
        output=args.output,
        options=opts,
    )


def _read(path: str, stdin) -> str:
    if path == "-":
        return stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError("io", f"cannot read input: {exc.strerror}", path) from None


def _load_complex(text: str, field: FieldSpec):
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            break
    else:
        line = ""
    if line.startswith("gens") or line.startswith("boundary"):
        return parse_complex(text, field), None
    f = parse_filtration(text)
    return build_persistence_complex(f, field), f


def _run_homology(cfg: RunConfig, stdin) -> str:
    c, _ = _load_complex(_read(cfg.input, stdin), cfg.field)
    dims = [cfg.dim] if cfg.dim is not None else list(range(c.top_dim + 1))
    if cfg.dim is not None and cfg.dim < 0:
        raise CliError("config", "--dim must be nonnegative")
    fn = persistent_cohomology if cfg.command == "cohomology" else persistent_homology
    jobs = max(1, cfg.options.get("jobs") or 1)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        modules = list(pool.map(lambda n: fn(c, n), dims))
    barcode = cfg.options.get("barcode")
    if barcode:
        text = formats.barcode_csv(list(zip(dims, modules)))
        try:
            Path(barcode).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise CliError("io", f"cannot write barcode: {exc.strerror}", barcode) from None
    if cfg.output == "text":
        sym = "H^" if cfg.command == "cohomology" else "H_"
        return "\n".join(f"{sym}{n} = {m}" for n, m in zip(dims, modules)) + "\n"
    payload = [formats.module_json(m, n, cfg.field) for n, m in zip(dims, modules)]
    return json.dumps(payload[0] if cfg.dim is not None else payload) + "\n"


def _run_power(cfg: RunConfig) -> str:
    m = formats.parse_module(cfg.options["module"], cfg.field)
    n = cfg.options["n"]
    if n < 0:
        raise CliError("config", "-n must be nonnegative")
    kind = cfg.options["kind"]
    if cfg.group and kind != "group":
        raise CliError("config", "--group only applies to 'power group'")
    if kind == "tensor":
        out = tensor_power(m, n)
    elif kind == "sym":
        out = symmetric_power(m, n)
    elif kind == "ext":
        out = exterior_power(m, n)
    elif kind in ("cyclic", "dihedral"):
        if n < 1:
            raise CliError("config", f"{kind} power needs n >= 1")
        out = (cyclic_power if kind == "cyclic" else dihedral_power)(m, n, cfg.cap)
    else:
        if cfg.group is None:
            raise CliError("config", "'power group' needs --group")
        try:
            g = PermGroup.parse(cfg.group, n)
        except ValueError as exc:
            raise CliError("syntax", str(exc), "--group") from None
        out = g_power(m, n, g, cfg.cap)
    if cfg.output == "text":
        return f"{out}\n"
    return json.dumps(formats.descriptor_json(out)) + "\n"


def _run_present(cfg: RunConfig) -> str:
    m = formats.parse_module(cfg.options["module"], cfg.field)
    pres = algebra_presentation(m, cfg.options["flavor"])
    if cfg.output == "json":
        return json.dumps({
            "flavor": pres.flavor,
            "free_gens": list(pres.free_gens),
            "torsion_gens": list(pres.torsion_gens),
            "relations": [{"coeff": str(a), "gen": y} for a, y in pres.relations],
            "text": str(pres),
        }, ensure_ascii=False) + "\n"
    return f"{pres}\n"


def _run_rips(cfg: RunConfig, stdin) -> str:
    points = formats.parse_points(_read(cfg.input, stdin))
    radii = formats.parse_rationals(cfg.options["radii"])
    return rips_filtration(points, radii, cfg.options["max_dim"]).to_text()


def _run_verify(cfg: RunConfig) -> tuple[str, bool]:
    o = cfg.options
    checks = list(sweeps.power_sweep(o["max_r"], o["max_s"], o["max_exp"], o["max_n"], o["seed"]))
    checks += list(sweeps.counting_sweep(seed=o["seed"]))
    if o["filtrations"]:
        checks += list(sweeps.homology_sweep(o["filtrations"], seed=o["seed"]))
    table = sweeps.summarize(checks)
    ok = all(f == 0 for _, _, f in table)
    if cfg.output == "json":
        return json.dumps({
            "ok": ok,
            "families": [{"family": fam, "pass": p, "fail": f} for fam, p, f in table],
            "failures": [{"family": c.family, "case": c.case, "detail": c.detail} for c in checks if not c.ok],
        }) + "\n", ok
    width = max(len(fam) for fam, _, _ in table)
    lines = [f"{'family':<{width}}  {'pass':>6}  {'fail':>6}  status"]
    for fam, p, f in table:
        lines.append(f"{fam:<{width}}  {p:>6}  {f:>6}  {'PASS' if f == 0 else 'FAIL'}")
    for c in checks:
        if not c.ok:
            lines.append(f"FAILED {c.family}: {c.case}: {c.detail}")
    return "\n".join(lines) + "\n", ok


def run(cfg: RunConfig, stdin=None) -> tuple[int, str]:
    """Execute one command; returns (exit code, stdout text). Raises CliError on failure."""
    stdin = stdin if stdin is not None else sys.stdin
    try:
        if cfg.command in ("homology", "cohomology"):
            return 0, _run_homology(cfg, stdin)
        if cfg.command == "power":
            return 0, _run_power(cfg)
        if cfg.command == "present":
            return 0, _run_present(cfg)
        if cfg.command == "rips":
            return 0, _run_rips(cfg, stdin)
        text, ok = _run_verify(cfg)
        return (0 if ok else 1), text
    except InputError as exc:
        loc = f"{cfg.input}:{exc.line}" if exc.line is not None and cfg.input else cfg.input
        raise CliError(exc.code, exc.message, loc) from None
    except CapExceeded as exc:
        raise CliError("cap_exceeded", str(exc)) from None


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        cfg = config_from_args(args)
        code, text = run(cfg, stdin)
    except CliError as exc:
        err = {"error": {"code": exc.code, "message": exc.message, "location": exc.location}}
        stderr.write(json.dumps(err) + "\n")
        return 1
    stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
