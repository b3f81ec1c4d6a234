"""Command-line front end.

Exit codes: 0 all checks pass, 1 a check failed, 2 input error, 3 resource cap.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .algebra import (
    associativity_check, convolve, involution, invariance_under_substitution,
    is_positive_definite, rep_check,
)
from .bisections import (
    enumerate_bisections, reconstruct, reconstruct_components, semidirect_structure,
    verify_bisection_group,
)
from .catalog import C2_4_ORDER, c2_4_bisection_labels
from .core import (
    DEFAULT_CAPS, CapExceeded, Caps, Report, SymmetroidsError, is_connected, verify_groupoid_axioms,
)
from .dsl import DSLError, load_function, load_groupoid, load_symmetroid
from .morphisms import fundamental_sequence
from .symmetroid import (
    canonical_little_symmetroid, canonical_symmetroid, reversibility_symmetroid,
    verify_two_groupoid, vertical_orbits,
)
from .symmetry import (
    SymmetroidBisection, UndefinedCompositeError, compute_cocycle,
    flat_bisection_group, identity_symmetroid_bisection, inner_symmetry_group, is_flat,
    wigner_embedding,
)

SCHEMA = "symmetroids.run/1"
EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

# presentation-only names for the C2(4) arrows
PAPER_ARROW_LABELS = {"1+": "1_+", "1-": "1_-", "s+": "σ_+", "s-": "σ_-",
                      "a1": "α_1", "a2": "α_2", "b1": "β_1", "b2": "β_2"}

SYMMETROID_KINDS = {
    "little": canonical_little_symmetroid,
    "canonical": canonical_symmetroid,
    "reversibility": reversibility_symmetroid,
}


@dataclass
class RunReport:
    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    reports: list[Report] = field(default_factory=list)
    text: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)

    def to_dict(self) -> dict:
        return {"schema": SCHEMA, "version": __version__, "command": self.command,
                "inputs": self.inputs, "ok": self.ok, "results": self.results,
                "reports": [r.to_dict() for r in self.reports]}

    def render(self) -> str:
        out = list(self.text)
        for r in self.reports:
            out.append(r.render())
        if any(r.failures() for r in self.reports):
            status = "FAIL"
        elif any(r.capped for r in self.reports):
            status = "NOT VERIFIED"
        else:
            status = "PASS"
        out.append(f"{status}: {self.command}")
        return "\n".join(out) + "\n"


# ---------------------------------------------------------------- helpers

def _digest(path: str) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _is_smd(path: str) -> bool:
    return Path(path).suffix == ".smd"


def _arrow_names(g, mode: str) -> list[str]:
    if mode == "paper" and set(g.arrow_labels) == set(PAPER_ARROW_LABELS):
        return [PAPER_ARROW_LABELS[l] for l in g.arrow_labels]
    return list(g.arrow_labels)


def bisection_names(bg, mode: str = "plain") -> list[str]:
    if mode == "paper":
        names = c2_4_bisection_labels(bg)
        if names is not None:
            return names
    return [b.label() for b in bg]


def format_table(bg, mode: str = "plain") -> str:
    """The multiplication table, entry (row i, column j) = b_i ∘ b_j.

    Rows and columns list the isotropic bisections (φ_b = id, identity first)
    before the rest; a rule separates the two blocks.
    """
    names = bisection_names(bg, mode)
    iso = [i for i, b in enumerate(bg) if list(b.phi) == list(range(bg.groupoid.n_objects))]
    if mode == "paper" and c2_4_bisection_labels(bg) is not None:
        order = [names.index(n) for n in C2_4_ORDER]
    else:
        order = [bg.identity] + [i for i in iso if i != bg.identity] + [i for i in range(len(bg)) if i not in iso]
    niso = len(iso)
    w = max(len(n) for n in names)
    cell = lambda s: s.ljust(w)
    head = [cell(names[j]) for j in order]

    def row(first, items):
        parts = [cell(first), "|", " ".join(items[:niso])]
        if len(items) > niso:
            parts += ["|", " ".join(items[niso:])]
        return " ".join(parts).rstrip()

    def rule():
        segs = ["-" * (w + 1), "-" * (niso * (w + 1) + 1)]
        if len(order) > niso:
            segs.append("-" * ((len(order) - niso) * (w + 1)))
        return "+".join(segs)

    lines = [row("∘", head), rule()]
    for k, i in enumerate(order):
        if k == niso and niso < len(order):
            lines.append(rule())
        lines.append(row(names[i], [cell(names[int(bg.table[i, j])]) for j in order]))
    return "\n".join(lines) + "\n"


def _load_base(path: str, caps: Caps):
    if _is_smd(path):
        return load_symmetroid(path, validate=False, caps=caps).base
    return load_groupoid(path)


def _load_symmetroid(path: str, kind: str, caps: Caps, validate: bool = False):
    if _is_smd(path):
        return load_symmetroid(path, validate=validate, caps=caps)
    return SYMMETROID_KINDS[kind](load_groupoid(path), caps)


def _bisection_json(b, s) -> dict:
    g = s.base
    return {"cells": {g.arrow_labels[a]: s.labels[c] for a, c in enumerate(b.cells)},
            "variance": b.variance}


# ---------------------------------------------------------------- commands

def cmd_verify(a, rr: RunReport, caps: Caps):
    if _is_smd(a.file):
        s = load_symmetroid(a.file, validate=False, caps=caps)
        rr.reports.append(verify_two_groupoid(s, caps))
        rr.results["cells"] = s.n_cells
    else:
        g = load_groupoid(a.file)
        rr.reports.append(verify_groupoid_axioms(g, caps))
        rr.results.update(objects=g.n_objects, arrows=g.n_arrows)
        rr.text.append(f"{g.n_objects} objects, {g.n_arrows} arrows")


def cmd_bisections(a, rr: RunReport, caps: Caps):
    g = _load_base(a.file, caps)
    bg = enumerate_bisections(g, caps)
    names = bisection_names(bg, a.labels)
    arrows = _arrow_names(g, a.labels)
    rr.reports.append(verify_bisection_group(bg))
    rows = []
    for n, b in zip(names, bg):
        chosen = {g.object_labels[x]: arrows[c] for x, c in enumerate(b.arrows)}
        phi = {g.object_labels[x]: g.object_labels[y] for x, y in enumerate(b.phi)}
        rows.append({"name": n, "arrows": chosen, "phi": phi})
        rr.text.append(f"{n}: " + ", ".join(f"{x}->{c}" for x, c in chosen.items()))
    rr.results.update(count=len(bg), bisections=rows)
    rr.text.insert(0, f"{len(bg)} bisections")


def cmd_table(a, rr: RunReport, caps: Caps):
    g = _load_base(a.file, caps)
    bg = enumerate_bisections(g, caps)
    rr.reports.append(verify_bisection_group(bg))
    names = bisection_names(bg, a.labels)
    rr.results["labels"] = names
    rr.results["table"] = [[names[int(bg.table[i, j])] for j in range(len(bg))] for i in range(len(bg))]
    rr.text.append(format_table(bg, a.labels).rstrip("\n"))


def cmd_reconstruct(a, rr: RunReport, caps: Caps):
    g = _load_base(a.file, caps)
    if not is_connected(g):
        parts = reconstruct_components(g, caps)
        rr.reports += [p.report for p in parts]
        rr.results["components"] = [p.groupoid.n_arrows for p in parts]
        rr.text.append(f"disconnected: reconstructed {len(parts)} components separately")
        return
    r = reconstruct(g, caps)
    rr.reports.append(r.report)
    names = bisection_names(r.bisections, a.labels)
    ag = r.action_groupoid
    n = g.n_objects

    def trip(i):
        b, x = divmod(i, n)
        return f"({g.object_labels[r.bisections[b].phi[x]]};{names[b]};{g.object_labels[x]})"

    kern = [trip(i) for i in sorted(r.kernel.arrows)]
    classes = [[trip(i) for i in cls] for cls in r.quotient.classes]
    arrows = _arrow_names(g, a.labels)
    rr.results.update(
        action_arrows=ag.n_arrows, kernel=kern, classes=classes,
        isomorphism={"[" + ", ".join(cls) + "]": arrows[int(r.induced(k))] for k, cls in enumerate(classes)},
        witness_found=r.witness is not None)
    rr.text.append("1 -> N -> 𝒢×Ω -> A(𝒢×Ω) -> 1")
    rr.text.append(f"|𝒢| = {len(r.bisections)}, |𝒢×Ω| = {ag.n_arrows}, |N| = {len(kern)}, classes = {len(classes)}")
    rr.text.append("N = {" + ", ".join(kern) + "}")
    for k, cls in enumerate(classes):
        rr.text.append(f"  [{', '.join(cls)}] -> {arrows[int(r.induced(k))]}")


def cmd_symmetroid(a, rr: RunReport, caps: Caps):
    g = _load_base(a.file, caps)
    s = SYMMETROID_KINDS[a.kind](g, caps)
    rr.reports.append(verify_two_groupoid(s, caps))
    orbits = [[g.arrow_labels[x] for x in o] for o in vertical_orbits(s)]
    rr.results.update(kind=a.kind, cells=s.n_cells, orbits=orbits)
    rr.text.append(f"{a.kind} symmetroid: {s.n_cells} cells over {g.n_arrows} arrows")
    rr.text.append("orbits: " + "; ".join("{" + ", ".join(o) + "}" for o in orbits))
    if a.list:
        rr.results["cell_list"] = [s.describe(i) for i in range(s.n_cells)]
        rr.text += [s.describe(i) for i in range(s.n_cells)]


def cmd_flat(a, rr: RunReport, caps: Caps):
    s = _load_symmetroid(a.file, a.kind, caps)
    fb = flat_bisection_group(s, caps, a.strategy)
    rr.reports.append(fb.report)
    rr.results.update(count=len(fb), strategy=fb.strategy,
                      elements=[_bisection_json(b, s) for b in fb],
                      table=fb.table.tolist())
    rr.text.append(f"{len(fb)} flat bisections ({fb.strategy})")
    for i, b in enumerate(fb):
        rr.text.append(f"f{i} [{b.variance}]: " + " ".join(s.labels[c] for c in b.cells))


def cmd_inner(a, rr: RunReport, caps: Caps):
    s = _load_symmetroid(a.file, a.kind, caps)
    inn = inner_symmetry_group(s, caps=caps)
    rr.reports += [inn.flat.report, inn.report]
    rr.results.update(flat=len(inn.flat), inner=inn.members, not_applicable=inn.not_applicable,
                      normal=inn.normal,
                      transformations={str(i): nt.describe() for i, nt in inn.transformations.items()})
    rr.text.append(f"{len(inn)} inner of {len(inn.flat)} flat; not applicable (anti or mixed): {inn.not_applicable}")
    rr.text.append(f"normal in the flat group: {inn.normal}")
    for i, nt in inn.transformations.items():
        rr.text.append(f"f{i}: Φ = {nt.describe()}")


def cmd_wigner(a, rr: RunReport, caps: Caps):
    s = _load_symmetroid(a.file, a.kind, caps)
    inn = inner_symmetry_group(s, caps=caps)
    rr.reports.append(inn.report)
    canonical = canonical_symmetroid(s.base, caps) if s.kind != "canonical" else s
    certs = []
    for i in inn.members:
        w = wigner_embedding(s, inn.flat[i], inn.transformations[i], canonical)
        rr.reports.append(w.report)
        certs.append({"flat": i, "phi": w.transformation.describe(),
                      "left": [canonical.labels[c] for c in w.left.cells],
                      "right": [canonical.labels[c] for c in w.right.cells],
                      "transcript": w.transcript()})
        rr.text.append(f"f{i}: Φ = {w.transformation.describe()}")
        for row in w.transcript():
            rr.text.append(f"  {row['arrow']}: {row['left']} ∘V {row['right']} = {row['product']} (b_Φ {row['b_phi']})")
    rr.results["certificates"] = certs


def cmd_cocycle(a, rr: RunReport, caps: Caps):
    s = _load_symmetroid(a.file, a.kind, caps)
    g = s.base
    cells = list(identity_symmetroid_bisection(s).cells)
    for spec in a.cell or []:
        arrow, _, cell = spec.partition("=")
        try:
            i = g.arrow(arrow)
            c = list(s.labels).index(cell)
        except (KeyError, ValueError):
            raise DSLError(f"--cell {spec!r}: unknown arrow or cell") from None
        cells[i] = c
    b = SymmetroidBisection(s, cells)
    fl = is_flat(b)
    table, nontrivial = [], 0
    for ap in range(g.n_arrows):
        for al in range(g.n_arrows):
            if g.compose[ap, al] < 0:
                continue
            entry = {"left": g.arrow_labels[ap], "right": g.arrow_labels[al]}
            try:
                gam = compute_cocycle(b, ap, al)
                entry["gamma"] = s.labels[gam]
                entry["trivial"] = bool(gam == s.vunit[s.src[gam]])
                nontrivial += not entry["trivial"]
            except UndefinedCompositeError as exc:
                entry["gamma"] = None
                entry["undefined"] = str(exc)
            table.append(entry)
    rep = Report("cocycle")
    defined = [e for e in table if e["gamma"] is not None]
    rep.add("flat iff every cocycle value is trivial",
            bool(fl) == (len(defined) == len(table) and nontrivial == 0))
    rr.reports.append(rep)
    rr.results.update(flat=bool(fl), variance=fl.variance, nontrivial=nontrivial, cocycle=table)
    rr.text.append(f"flat: {bool(fl)} ({fl.variance}); nontrivial values: {nontrivial}")
    for e in table:
        if e["gamma"] is None:
            rr.text.append(f"  γ({e['left']}, {e['right']}) undefined")
        elif not e["trivial"] or a.all:
            rr.text.append(f"  γ({e['left']}, {e['right']}) = {e['gamma']}")


def cmd_algebra(a, rr: RunReport, caps: Caps):
    if a.op == "rep-check":
        g = load_groupoid(a.groupoid)
        rr.reports.append(rep_check(enumerate_bisections(g, caps)))
        if a.associativity:
            rr.reports.append(associativity_check(g))
        return
    if a.op == "convolve":
        g = load_groupoid(a.groupoid)
        if len(a.functions) != 2:
            raise DSLError("convolve takes two .fun files")
        f, h = (load_function(p, g) for p in a.functions)
        out = convolve(f, h)
        rr.results["product"] = out.to_dict()
        rr.text.append(repr(out))
        return
    if a.op == "pd-check":
        g = load_groupoid(a.groupoid)
        if len(a.functions) != 1:
            raise DSLError("pd-check takes one .fun file")
        pr = is_positive_definite(load_function(a.functions[0], g), a.tol)
        rr.reports.append(pr.report)
        rr.results.update(pr.to_dict())
        return
    if a.op == "invariance":
        if a.symmetroid is None:
            raise DSLError("invariance needs --symmetroid")
        s = _load_symmetroid(a.symmetroid, a.kind, caps)
        if len(a.functions) != 1:
            raise DSLError("invariance takes one .fun file")
        f = load_function(a.functions[0], s.base)
        rr.reports.append(invariance_under_substitution(f, s))
        return
    raise DSLError(f"unknown algebra operation {a.op!r}")


def cmd_decompose(a, rr: RunReport, caps: Caps):
    g = _load_base(a.file, caps)
    fs = fundamental_sequence(g)
    rr.reports.append(fs.report)
    rr.results["isotropy"] = [g.arrow_labels[x] for x in sorted(fs.isotropy.arrows)]
    rr.text.append("G0 = {" + ", ".join(rr.results["isotropy"]) + "}")
    rr.results["gamma_orders"] = [sp.gamma.order for sp in fs.splittings]
    rr.text.append(f"components: {len(fs.splittings)}, |Γ| per component: {rr.results['gamma_orders']}")
    if fs.connected:
        bg = enumerate_bisections(g, caps)
        names = bisection_names(bg, a.labels)
        sd = semidirect_structure(bg, caps=caps)
        rr.reports.append(sd.report)
        rr.results.update(
            kernel=[names[i] for i in sd.kernel], quotient_order=sd.quotient.order,
            section=[names[i] for i in sd.section], homomorphic_section=sd.homomorphic,
            conjugation={names[sd.section[h]]: {names[k]: names[v] for k, v in m.items()}
                         for h, m in sd.conjugation.items()})
        rr.text.append("𝒢0 = {" + ", ".join(rr.results["kernel"]) + "}, |ℋ| = " + str(sd.quotient.order))
        rr.text.append("section: " + ", ".join(rr.results["section"])
                       + (" (homomorphic)" if sd.homomorphic else " (set-theoretic only)"))
        for h, m in rr.results["conjugation"].items():
            rr.text.append(f"W[{h}]: " + ", ".join(f"{k}->{v}" for k, v in m.items()))


COMMANDS = {
    "verify": cmd_verify, "bisections": cmd_bisections, "table": cmd_table,
    "reconstruct": cmd_reconstruct, "symmetroid": cmd_symmetroid, "flat": cmd_flat,
    "inner": cmd_inner, "wigner": cmd_wigner, "cocycle": cmd_cocycle,
    "algebra": cmd_algebra, "decompose": cmd_decompose,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the versioned JSON report")
    common.add_argument("--labels", choices=["plain", "paper"], default="plain",
                        help="presentation labels (C2(4) gets its conventional names under 'paper')")
    common.add_argument("--cap", action="append", default=[], metavar="KEY=VALUE",
                        help=f"override a resource cap ({', '.join(Caps.__dataclass_fields__)})")
    kind = argparse.ArgumentParser(add_help=False)
    kind.add_argument("--kind", choices=sorted(SYMMETROID_KINDS), default="canonical",
                      help="symmetroid to build when FILE is a .gpd")

    p = argparse.ArgumentParser(prog="symmetroids", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name, hlp in [("verify", "check groupoid (.gpd) or symmetroid (.smd) axioms"),
                      ("bisections", "list the bisection group"),
                      ("table", "bisection multiplication table"),
                      ("reconstruct", "rebuild the groupoid from its bisections"),
                      ("decompose", "fundamental sequence and semidirect structure")]:
        sp = sub.add_parser(name, parents=[common], help=hlp)
        sp.add_argument("file")
    sp = sub.add_parser("symmetroid", parents=[common], help="build and verify a canonical symmetroid")
    sp.add_argument("kind", choices=sorted(SYMMETROID_KINDS))
    sp.add_argument("file")
    sp.add_argument("--list", action="store_true", help="list every cell")
    sp = sub.add_parser("flat", parents=[common, kind], help="flat bisection group")
    sp.add_argument("file")
    sp.add_argument("--strategy", choices=["auto", "lift", "search"], default="auto")
    for name, hlp in [("inner", "inner symmetries"), ("wigner", "factorizations in the canonical symmetroid")]:
        sp = sub.add_parser(name, parents=[common, kind], help=hlp)
        sp.add_argument("file")
    sp = sub.add_parser("cocycle", parents=[common, kind], help="cocycle of a bisection")
    sp.add_argument("file")
    sp.add_argument("--cell", action="append", metavar="ARROW=CELL",
                    help="replace the identity choice at ARROW (repeatable)")
    sp.add_argument("--all", action="store_true", help="also print trivial values")
    sp = sub.add_parser("algebra", parents=[common, kind], help="groupoid algebra checks")
    sp.add_argument("op", choices=["convolve", "pd-check", "invariance", "rep-check"])
    sp.add_argument("functions", nargs="*", help=".fun files")
    sp.add_argument("--groupoid", help=".gpd file the functions live on")
    sp.add_argument("--symmetroid", help=".smd (or .gpd with --kind) for invariance")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--associativity", action="store_true", help="rep-check: also check all basis triples")
    return p


def _caps(items: Sequence[str]) -> Caps:
    caps = DEFAULT_CAPS
    for item in items:
        k, sep, v = item.partition("=")
        if not sep:
            raise DSLError(f"--cap expects KEY=VALUE, got {item!r}")
        try:
            caps = caps.replace(**{k.strip(): int(v)})
        except (KeyError, ValueError) as exc:
            raise DSLError(f"--cap {item!r}: {exc}") from None
    return caps


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if args.command == "algebra" and args.op != "invariance" and not args.groupoid:
        args.groupoid = args.functions.pop(0) if args.op == "rep-check" and args.functions else None
        if not args.groupoid:
            err.write("error: --groupoid is required\n")
            return EXIT_INPUT
    rr = RunReport(args.command if args.command != "algebra" else f"algebra {args.op}")
    try:
        caps = _caps(args.cap)
        for attr in ("file", "groupoid", "symmetroid"):
            path = getattr(args, attr, None)
            if path:
                rr.inputs[path] = _digest(path)
        for path in getattr(args, "functions", None) or []:
            rr.inputs[path] = _digest(path)
        COMMANDS[args.command](args, rr, caps)
    except CapExceeded as exc:
        err.write(f"resource cap exceeded: {exc}\n")
        return EXIT_CAP
    except (DSLError, OSError, SymmetroidsError, ValueError, KeyError) as exc:
        err.write(f"input error: {exc}\n")
        return EXIT_INPUT
    out.write(json.dumps(rr.to_dict(), indent=2, ensure_ascii=False) + "\n" if args.json else rr.render())
    if any(r.failures() for r in rr.reports):
        return EXIT_FAIL
    return EXIT_CAP if any(r.capped for r in rr.reports) else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
