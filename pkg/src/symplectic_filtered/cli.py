"""Command-line front end: ``symfilt dims|ring|lefschetz|verify|symbol|torus``.

Exit codes: 0 on success, 1 when a verification fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from .ainfty import FilteredAlgebra, commutativity_failures, ring_table
from .exterior import Form
from .filtered import filtered_complex, primitive_cohomologies
from .mapping_torus import (FiberedAlgebra, MonodromyError, analyze_monodromy, load_generators,
                            orthogonality_failures, pairing_image, radical_matches, resolve_monodromy)
from .model import ModelError, resolve_model
from .properties import SUITES, run_property_suite
from .resolution import (dimension_formula_check, lefschetz_map_analysis, verify_filtered_triangle,
                         verify_les)
from .symbol import symbol_exactness

SCHEMA = "symplectic-filtered/1"
ALL_SUITES = list(SUITES) + ["les", "triangle", "formulas"]


class InputError(Exception):
    """Bad command-line input that argparse cannot catch."""


# -- plain data --------------------------------------------------------------------

def plain(value):
    """JSON-ready copy: fractions become strings, tuples become lists."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Form):
        return str(value)
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    return value


def _vector(values) -> str:
    return "(" + ", ".join(str(v) for v in values) + ")"


class Report:
    def __init__(self, command: list[str], subject: dict):
        self.command = command
        self.subject = subject
        self.result: dict = {}
        self.lines: list[str] = []
        self.ok = True

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def document(self) -> dict:
        return {"schema": SCHEMA, "command": self.command, "subject": self.subject,
                "passed": self.ok, "result": plain(self.result)}

    def render(self, fmt: str) -> str:
        if fmt == "machine":
            return json.dumps(self.document(), sort_keys=True, indent=2) + "\n"
        status = [] if self.ok else ["", "FAILED"]
        return "\n".join(self.lines + status) + "\n"


def _model_subject(model) -> dict:
    return {"kind": "model", "name": model.name, "dimension": model.dim, "sha256": model.identity}


def _load(reference: str):
    try:
        return resolve_model(reference)
    except ModelError as exc:
        raise InputError(str(exc)) from exc


def _check_p(model, p):
    if p is not None and not 0 <= p <= model.n:
        raise InputError(f"--p must lie in 0..{model.n}")


# -- commands ---------------------------------------------------------------------------

def cmd_dims(args, report: Report) -> None:
    model = _load(args.model)
    report.subject = _model_subject(model)
    _check_p(model, args.p)
    betti = list(model.betti)
    report.result["betti"] = betti
    report.line(f"model {model.name} (dim {model.dim})")
    report.line(f"betti  {_vector(betti)}")
    filtered = {}
    for p in [args.p] if args.p is not None else range(model.n + 1):
        fc = filtered_complex(model, p)
        plus = fc.plus_dims()
        minus = [fc.slot("-", k).dim for k in range(fc.top_degree + 1)]
        filtered[str(p)] = {"plus": plus, "minus": minus, "index": fc.index()}
        report.line(f"F{p}H+ {_vector(plus)}   degrees 0..{fc.top_degree}")
        report.line(f"F{p}H- {_vector(minus)}   degrees 0..{fc.top_degree}")
        report.line(f"index  {fc.index()}")
    report.result["filtered"] = filtered
    prim = primitive_cohomologies(model)
    report.result["primitive"] = prim
    names = {"del+": "PH del+ ", "del-": "PH del- ", "ddL": "PH ddL  ", "d+dL": "PH d+dL "}
    for key, label in names.items():
        report.line(f"{label}{_vector(prim[key])}   degrees 0..{len(prim[key]) - 1}")


def _combination(values, reps) -> str:
    parts = []
    for c, rep in zip(values, reps):
        if c:
            parts.append(f"{c}*[{rep}]")
    return " + ".join(parts) if parts else "0"


def cmd_ring(args, report: Report) -> None:
    model = _load(args.model)
    report.subject = _model_subject(model)
    p = args.p if args.p is not None else 0
    _check_p(model, p)
    table = ring_table(model, p, perturbations=1, seed=args.seed)
    alg = FilteredAlgebra(model, p)
    reps = {j: [x.form for x in alg.representatives(j)] for j in range(alg.top + 1)}
    report.line(f"model {model.name}, p = {p}, gradings 0..{alg.top} (barred past {alg.middle})")
    report.line(f"dims {_vector(table.dims)}")
    blocks = []
    for (j, k), block in sorted(table.blocks.items()):
        if j > k or not block.target_dim:
            continue
        entries = []
        for a in range(block.source_dims[0]):
            for b in range(block.source_dims[1]):
                if j == k and b < a:
                    continue
                value = block.products[a][b]
                if any(value):
                    entries.append({"left": a, "right": b, "class": value})
        blocks.append({"gradings": [j, k], "image_dim": block.image_dim, "products": entries})
        if entries:
            report.line(f"({j},{k}) -> {j + k}: image dim {block.image_dim}")
            for e in entries:
                left, right = reps[j][e["left"]], reps[k][e["right"]]
                report.line(f"  [{left}] x [{right}] = {_combination(e['class'], reps[j + k])}")
    report.result = {"p": p, "dims": table.dims, "representatives": reps, "blocks": blocks,
                     "failures": table.failures + commutativity_failures(table)}
    if p == 0 and (model.n, model.n) in table.blocks:
        image = table.block(model.n, model.n).image_dim
        report.result["middle_pairing_image_dim"] = image
        report.line(f"PH{model.n} x PH{model.n} -> PH{model.n - 1}(del-) image dim {image}")
    if report.result["failures"]:
        report.ok = False
        for failure in report.result["failures"]:
            report.line(f"  failure: {failure}")


def cmd_lefschetz(args, report: Report) -> None:
    model = _load(args.model)
    report.subject = _model_subject(model)
    rs = [args.r] if args.r is not None else list(range(1, model.n + 1))
    if any(not 1 <= r <= model.n for r in rs):
        raise InputError(f"--r must lie in 1..{model.n}")
    out = {}
    report.line(f"model {model.name}: L^r on de Rham cohomology")
    for r in rs:
        analysis = lefschetz_map_analysis(model, r)
        rows = [{"k": rec.k, "rank": rec.rank, "kernel": rec.kernel, "cokernel": rec.cokernel}
                for rec in analysis.records.values() if rec.k + 2 * r <= model.dim]
        out[str(r)] = rows
        report.line(f"r = {r}")
        report.line("  k  rank  ker  cok")
        for row in rows:
            report.line(f"  {row['k']:<2} {row['rank']:>4} {row['kernel']:>4} {row['cokernel']:>4}")
    report.result = {"lefschetz": out}


def _les_summary(les) -> dict:
    return {"title": les.title, "nodes": len(les.nodes), "exact": all(les.exact),
            "failures": les.failures}


def cmd_verify(args, report: Report) -> None:
    model = _load(args.model)
    report.subject = _model_subject(model)
    suites = [args.suite] if args.suite else ALL_SUITES
    results = {}
    report.line(f"model {model.name}: seed {args.seed}, {args.samples} samples per suite")
    for name in suites:
        if name in SUITES:
            res = run_property_suite(model, name, args.samples, args.seed)
            entry = {"samples": res.samples, "passed": res.passed, "failures": res.failures}
        elif name == "les":
            rs = [args.r] if args.r is not None else range(1, model.n + 1)
            reports = [verify_les(model, r) for r in rs]
            entry = {"passed": all(x.passed for x in reports), "sequences": [_les_summary(x) for x in reports],
                     "failures": [f for x in reports for f in x.failures]}
        elif name == "triangle":
            pairs = [(l, r) for l in range(model.n) for r in range(1, model.n - l + 1)]
            if args.l is not None:
                pairs = [(l, r) for l, r in pairs if l == args.l]
            if args.r is not None:
                pairs = [(l, r) for l, r in pairs if r == args.r]
            reports = [verify_filtered_triangle(model, l, r) for l, r in pairs]
            entry = {"passed": all(x.passed for x in reports), "sequences": [_les_summary(x) for x in reports],
                     "failures": [f for x in reports for f in x.failures]}
        else:
            check = dimension_formula_check(model)
            entry = {"passed": check.passed, "checks": len(check.checks),
                     "failures": [f"{n}: {a} != {b}" for n, a, b in check.failures]}
        results[name] = entry
        report.ok &= entry["passed"]
        report.line(f"  {name:<14} {'pass' if entry['passed'] else 'FAIL'}")
        for failure in entry["failures"][:10]:
            report.line(f"    {failure}")
    report.result = {"seed": args.seed, "samples": args.samples, "suites": results}


def cmd_symbol(args, report: Report) -> None:
    if args.dim is None or args.dim < 2 or args.dim > 8 or args.dim % 2:
        raise InputError("--dim must be an even integer in 2..8")
    n = args.dim // 2
    report.subject = {"kind": "symbol", "dimension": args.dim}
    ps = [args.p] if args.p is not None else list(range(n + 1))
    if any(not 0 <= p <= n for p in ps):
        raise InputError(f"--p must lie in 0..{n}")
    out = {}
    for p in ps:
        sym = symbol_exactness(args.dim, p)
        out[str(p)] = {"passed": sym.passed,
                       "positions": [{"label": pos.label, "dim": pos.dim, "rank_in": pos.rank_in,
                                      "rank_out": pos.rank_out} for pos in sym.positions]}
        report.ok &= sym.passed
        status = "exact at every position" if sym.passed else "not exact at " + ", ".join(sym.failures())
        report.line(f"dim {args.dim}, p = {p}: {len(sym.positions)} positions, {status}")
    report.result = {"symbol": out}


def cmd_torus(args, report: Report) -> None:
    try:
        data = resolve_monodromy(args.monodromy)
        inv = analyze_monodromy(data)
        algebra = FiberedAlgebra(data, inv)
        gens = load_generators(algebra)
    except MonodromyError as exc:
        raise InputError(str(exc)) from exc
    canonical = json.dumps({"tau": data.tau_star, "J": data.intersection, "labels": data.labels,
                            "chains": plain(inv.chains), "generators": plain(list(data.ph2_generators))},
                           sort_keys=True)
    report.subject = {"kind": "monodromy", "name": data.name, "rank": data.rank,
                      "sha256": hashlib.sha256(canonical.encode()).hexdigest()}
    table = inv.dimension_table()
    pairing = pairing_image(data, gens)
    orthogonal = radical_matches(data) and not orthogonality_failures(data, seed=args.seed)
    report.ok = orthogonal
    products = [{"left": pairing.generators[i], "right": pairing.generators[j], "integrals": v}
                for (i, j), v in sorted(pairing.nonzero().items())]
    report.result = {"q": inv.q, "p": inv.p, "block_sizes": inv.block_sizes, "dimensions": table,
                     "orthogonality": orthogonal, "generators": pairing.generators, "probes": pairing.probes,
                     "products": products, "pairing_image_dim": pairing.dim, "witnesses": pairing.witnesses}
    report.line(f"{data.name}: rank {data.rank}, q = {inv.q}, p = {inv.p}, blocks {list(inv.block_sizes)}")
    report.line(f"betti {_vector(table['betti'])}")
    report.line(f"PH1 del+ = PH1 del- = {table['PH1_del+']}")
    report.line(f"PH2 ddL = PH2 d+dL = {table['PH2_ddL']}")
    report.line(f"ker ^ im orthogonality {'holds' if orthogonal else 'FAILS'}")
    report.line(f"products integrated against {', '.join(pairing.probes)}:")
    for e in products:
        report.line(f"  {e['left']} x {e['right']} -> {_vector(e['integrals'])}")
    report.line(f"pairing image dim {pairing.dim}")


# -- parser -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symfilt", description="Filtered cohomologies of symplectic models.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["table", "machine"], default="table")
    common.add_argument("--out", type=Path, help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", parents=[common], help="Betti numbers and filtered/primitive cohomology")
    p.add_argument("model")
    p.add_argument("--p", type=int)
    p.set_defaults(run=cmd_dims)

    p = sub.add_parser("ring", parents=[common], help="class-level products on F^pH")
    p.add_argument("model")
    p.add_argument("--p", type=int)
    p.set_defaults(run=cmd_ring)

    p = sub.add_parser("lefschetz", parents=[common], help="kernels and cokernels of L^r")
    p.add_argument("model")
    p.add_argument("--r", type=int)
    p.set_defaults(run=cmd_lefschetz)

    p = sub.add_parser("verify", parents=[common], help="run property and exactness suites")
    p.add_argument("model")
    p.add_argument("--suite", choices=ALL_SUITES)
    p.add_argument("--r", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("symbol", parents=[common], help="exactness of the symbol sequence")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--p", type=int)
    p.set_defaults(run=cmd_symbol)

    p = sub.add_parser("torus", parents=[common], help="monodromy invariants and the pairing image")
    p.add_argument("monodromy")
    p.set_defaults(run=cmd_torus)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    report = Report(argv, {})
    try:
        args.run(args, report)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = report.render(args.format)
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
