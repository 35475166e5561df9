"""Batch CLI: configuration, fixture verification, and report emission.

Exit codes: 0 success, 2 fixture mismatch, 3 pole/degenerate point,
4 configuration error.  All outputs are byte-deterministic given
(config, seed): reports embed the algebra spec and seed, never timestamps.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import builders, golden
from .chambers import Constraint, polygon_vertices
from .heckecore import HeckeAlgebra
from .modules import module_from_json, principal_series, split_irreducible
from .ratlinalg import frac
from .rootdata import ConfigurationError
from .unitary import (
    PoleError,
    rank_one_factors,
    scan_spherical,
    spherical_signature_table,
)

EXIT_OK = 0
EXIT_FIXTURE = 2
EXIT_POLE = 3
EXIT_CONFIG = 4

GOLDEN_SETS = {
    "steinberg-chars": lambda args: golden.run_steinberg_chars(),
    "maxpar-tables": lambda args: golden.run_maxpar_tables(
        tuple(args.get("c_values", ("2", "5/2")))
    ),
    "maxpar-intervals": lambda args: golden.run_maxpar_intervals(args.get("c", "2")),
    "w-structure": lambda args: golden.run_w_structure(),
    "g2-table": lambda args: golden.run_g2_table(),
    "nine-cases": lambda args: golden.run_nine_cases(
        tuple(args["c_values"]) if args.get("c_values") else None
    ),
    "f4-regions": lambda args: golden.run_f4_regions(args.get("c", "2")),
    "matching": lambda args: golden.run_matching(),
}


def _load_config(path):
    try:
        cfg = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read config: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigurationError("config must be a JSON object")
    return cfg


def _algebra_from_config(cfg) -> HeckeAlgebra:
    spec = cfg.get("algebra")
    if not spec or "type" not in spec:
        raise ConfigurationError("config.algebra.type is required")
    long_v = spec.get("long", spec.get("single", "1"))
    short_v = spec.get("short")
    return builders.algebra(spec["type"], str(long_v), None if short_v is None else str(short_v))


def _labelmap(cfg, algebra):
    t = algebra.rs.cartan_type
    if t == "F4":
        return builders.f4_labels()
    if t == "G2":
        return golden._g2_labelmap_for(algebra)
    # generic: positional names chi00, chi01, ...
    from .labels import LabelMap

    wc = algebra.wchars()
    by_name = {f"chi{k:02d}": chi for k, chi in enumerate(wc.irreducibles())}
    return LabelMap(wchars=wc, by_name=by_name,
                    name_of={c.values: n for n, c in by_name.items()})


def _emit(out_dir, name, fmt, payload):
    out = Path(out_dir) if out_dir else None
    if fmt == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
        suffix = ".json"
    elif fmt == "csv":
        text = _to_csv(payload)
        suffix = ".csv"
    else:
        text = _to_markdown(payload)
        suffix = ".md"
    if out:
        out.mkdir(parents=True, exist_ok=True)
        (out / (name + suffix)).write_text(text)
    else:
        sys.stdout.write(text)


def _to_csv(payload):
    buf = io.StringIO()
    rows = payload.get("rows")
    if rows:
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(payload.get("columns", []))
        for row in rows:
            w.writerow(row)
    else:
        buf.write(json.dumps(payload, sort_keys=True) + "\n")
    return buf.getvalue()


def _to_markdown(payload):
    rows = payload.get("rows")
    buf = io.StringIO()
    title = payload.get("title")
    if title:
        buf.write(f"# {title}\n\n")
    if rows:
        cols = payload.get("columns", [])
        buf.write("| " + " | ".join(str(c) for c in cols) + " |\n")
        buf.write("|" + "---|" * len(cols) + "\n")
        for row in rows:
            buf.write("| " + " | ".join(str(x) for x in row) + " |\n")
    meta = {k: v for k, v in payload.items() if k not in ("rows", "columns", "title")}
    if meta:
        buf.write("\n```json\n" + json.dumps(meta, indent=2, sort_keys=True) + "\n```\n")
    return buf.getvalue()


def cmd_char_table(cfg, args, out_dir, fmt):
    H = _algebra_from_config(cfg)
    lm = _labelmap(cfg, H)
    wc = H.wchars()
    classes = wc.classes()
    cols = ["label", "dim", "b"] + [
        f"cls{k}(len{c.rep.length},sz{c.size})" for k, c in enumerate(classes)
    ]
    rows = []
    for name in sorted(lm.by_name, key=_label_key):
        chi = lm.chi(name)
        rows.append([name, chi.dim, chi.b_invariant] + [str(v) for v in chi.values])
    payload = {
        "title": f"Character table of W({H.rs.cartan_type})",
        "columns": cols,
        "rows": rows,
        "algebra": cfg.get("algebra"),
        "seed": cfg.get("seed", 0),
        "label_notes": list(lm.notes),
    }
    _emit(out_dir, f"char-table-{H.rs.cartan_type}", fmt, payload)
    return EXIT_OK


def _label_key(name):
    parts = name.split("_")
    try:
        return (int(parts[0]), int(parts[1]))
    except (ValueError, IndexError):
        return (999, 0)


def cmd_operator(cfg, args, out_dir, fmt):
    H = _algebra_from_config(cfg)
    lm = _labelmap(cfg, H)
    family = args.get("family")
    points = args.get("points", ["0"])
    rows = []
    if family:
        sym = golden.symbolic_family(family, H)
        data = builders.load_fixture("maxpar_tables.json")
        lowest = data["cases"][family]["lowest"]
        low = lm.chi(lowest)
        wc = H.wchars()
        present = sorted(wc.decompose(sym.family.w_character()), key=lambda c: lm.name(c))
        for pt in points:
            t = frac(pt)
            for chi in present:
                p, q, z = sym.signature_at(chi, low, t)
                rows.append([str(t), lm.name(chi), p, q, z])
    else:
        for pt in points:
            nu = [frac(x) for x in pt]
            table = spherical_signature_table(H, lm, nu)
            for name in sorted(table.entries, key=_label_key):
                p, q, z = table.entries[name]
                rows.append(["(" + ",".join(str(x) for x in nu) + ")", name, p, q, z])
    payload = {
        "title": "Signature tables",
        "columns": ["point", "type", "p", "q", "z"],
        "rows": rows,
        "algebra": cfg.get("algebra"),
        "family": family,
        "seed": cfg.get("seed", 0),
    }
    _emit(out_dir, "operator", fmt, payload)
    return EXIT_OK


def cmd_scan(cfg, args, out_dir, fmt):
    H = _algebra_from_config(cfg)
    lm = _labelmap(cfg, H)
    cut = None
    if args.get("cut"):
        coeffs = [frac(x) for x in args["cut"]["coeffs"]]
        cut = (coeffs, frac(args["cut"]["rhs"]))
    regions = scan_spherical(
        H,
        lm,
        wall_filter=args.get("walls", "all"),
        cut=cut,
        petite=args.get("petite"),
        samples=int(args.get("samples", 3)),
    )
    out_regions = []
    for reg in regions:
        item = {
            "signs": list(reg.signs),
            "sample": [str(x) for x in reg.samples[0]],
            "samples": [[str(x) for x in s] for s in reg.samples],
            "verdict": "unitary" if reg.verdict else "non-unitary",
            "failing_types": list(reg.witness),
        }
        if H.rs.rank == 2:
            cons = [Constraint(tuple(a), Fraction(0), 1) for a in H.rs.simple_roots]
            for (coeffs, rhs), s in zip(reg.walls, reg.signs):
                cons.append(Constraint(tuple(coeffs), rhs, s))
            bound = 4 * (1 + max(c for _, c in reg.walls))
            for i in range(H.rs.ambient_dim):
                e = [Fraction(0)] * H.rs.ambient_dim
                e[i] = Fraction(1)
                cons.append(Constraint(tuple(e), Fraction(bound), -1))
                cons.append(Constraint(tuple(e), Fraction(-bound), 1))
            item["polygon"] = [
                [str(x) for x in p] for p in polygon_vertices(cons, H.rs.ambient_dim)
            ] if H.rs.ambient_dim == 2 else []
        out_regions.append(item)
    payload = {
        "title": f"Spherical unitarity scan: {H.rs.cartan_type}",
        "walls": [[list(map(str, a)), str(c)] for a, c in regions[0].walls] if regions else [],
        "regions": out_regions,
        "unitary_count": sum(1 for r in regions if r.verdict),
        "algebra": cfg.get("algebra"),
        "seed": cfg.get("seed", 0),
    }
    _emit(out_dir, f"scan-{H.rs.cartan_type}", fmt, payload)
    return EXIT_OK


def cmd_golden(cfg, args, out_dir, fmt):
    names = args.get("set", "all")
    if names == "all":
        names = list(GOLDEN_SETS)
    elif isinstance(names, str):
        names = [names]
    unknown = [n for n in names if n not in GOLDEN_SETS]
    if unknown:
        raise ConfigurationError(f"unknown golden set(s): {unknown}")
    reports = []
    ok = True
    for n in names:
        rep = GOLDEN_SETS[n](args)
        reports.append(rep)
        ok = ok and rep["ok"]
    payload = {
        "title": "Golden fixture verification",
        "columns": ["fixture", "check", "ok", "detail"],
        "rows": [
            [rep["fixture"], c["name"], "PASS" if c["ok"] else "FAIL",
             "" if c["ok"] else c["detail"][:200]]
            for rep in reports
            for c in rep["checks"]
        ],
        "ok": ok,
        "algebra": cfg.get("algebra"),
        "seed": cfg.get("seed", 0),
    }
    _emit(out_dir, "golden", fmt, payload)
    return EXIT_OK if ok else EXIT_FIXTURE


def cmd_im_dual(cfg, args, out_dir, fmt):
    H = _algebra_from_config(cfg)
    lm = _labelmap(cfg, H)
    counts = {k: int(v) for k, v in args.get("character", {}).items()}
    if args.get("quotient"):
        spec = args["quotient"]
        sym = golden.symbolic_family(spec["family"], H)
        data = builders.load_fixture("maxpar_tables.json")
        counts = golden._quotient_counts(sym, lm, data["cases"][spec["family"]]["lowest"],
                                         frac(spec["point"]))
    twisted = {lm.sgn_twist_name(k): v for k, v in counts.items()}
    double = {lm.sgn_twist_name(k): v for k, v in twisted.items()}
    payload = {
        "title": "Iwahori-Matsumoto transform",
        "input": counts,
        "im_dual": twisted,
        "double_is_identity": double == counts,
        "algebra": cfg.get("algebra"),
        "seed": cfg.get("seed", 0),
    }
    _emit(out_dir, "im-dual", fmt, payload)
    return EXIT_OK


def cmd_decompose(cfg, args, out_dir, fmt):
    H = _algebra_from_config(cfg)
    seed = int(cfg.get("seed", 0))
    if args.get("module_file"):
        data = json.loads(Path(args["module_file"]).read_text())
        levi = tuple(data.get("simple_indices", range(H.rs.rank)))
        p = builders._parabolic_cached(H, levi) if len(levi) < H.rs.rank else None
        datum = module_from_json(H, p, data)
    else:
        levi = tuple(int(i) for i in args.get("levi", range(H.rs.rank)))
        lam = [frac(x) for x in args["lambda"]]
        p = builders._parabolic_cached(H, levi) if len(levi) < H.rs.rank else None
        datum = principal_series(H, lam, p)
    factors = split_irreducible(datum, seed=seed)
    from .wchar import WeylChars

    sub = datum.sub_root_system()
    wc = WeylChars(sub)
    rows = []
    for k, f in enumerate(sorted(factors, key=lambda f: f.dim)):
        dec = wc.decompose(f.w_character())
        rows.append([
            k, f.dim,
            "ds" if f.is_discrete_series() else ("tempered" if f.is_tempered() else "-"),
            " + ".join(f"{m}x(dim{chi.dim},b{chi.b_invariant})" for chi, m in sorted(dec.items(), key=lambda cm: (cm[0].dim, cm[0].b_invariant))),
        ])
    payload = {
        "title": "Composition factors",
        "columns": ["index", "dim", "temperedness", "W-character"],
        "rows": rows,
        "algebra": cfg.get("algebra"),
        "seed": seed,
    }
    _emit(out_dir, "decompose", fmt, payload)
    return EXIT_OK


COMMANDS = {
    "char-table": cmd_char_table,
    "operator": cmd_operator,
    "scan": cmd_scan,
    "golden": cmd_golden,
    "im-dual": cmd_im_dual,
    "decompose": cmd_decompose,
}


def main(argv=None):
    parser = argparse.ArgumentParser(prog="uhecke", description=__doc__)
    parser.add_argument("--config", required=True, help="JSON run configuration")
    parser.add_argument("--command", choices=sorted(COMMANDS), help="overrides config.command")
    parser.add_argument("--out", help="output directory (default: stdout)")
    parser.add_argument("--format", choices=["csv", "json", "md"], default="json")
    parser.add_argument("--seed", type=int, help="overrides config.seed")
    parser.add_argument("--jobs", type=int, default=1, help="parallel workers for scans")
    opts = parser.parse_args(argv)
    try:
        cfg = _load_config(opts.config)
        if opts.seed is not None:
            cfg["seed"] = opts.seed
        cfg.setdefault("seed", 0)
        cfg["jobs"] = opts.jobs
        command = opts.command or cfg.get("command")
        if command not in COMMANDS:
            raise ConfigurationError(f"unknown command {command!r}")
        args = cfg.get("args", {})
        return COMMANDS[command](cfg, args, opts.out, opts.format)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PoleError as exc:
        print(f"pole/degenerate point: {exc}", file=sys.stderr)
        return EXIT_POLE


if __name__ == "__main__":
    sys.exit(main())
