"""Command-line driver: character tables, dimension checks, Deligne-Lusztig reports, lemma trials."""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from ringrep import dlgeom, lemmas, verify
from ringrep import torus as tor
from ringrep.charkit import FiniteGroup, abelian_characters, character_table, conjugacy_classes, inner_product
from ringrep.cyclotomic import Cyclotomic
from ringrep.matgrp import enumerate_sl_fixed

FORMAT_VERSION = 1
EXIT_OK, EXIT_MISMATCH, EXIT_INVALID = 0, 1, 2
DEFAULT_SEED = 42


class InvalidInput(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    q: int = 2
    r: int = 2
    n: int = 2
    variety: str = "all"
    omega: int | None = None
    trials: int = 1000
    seed: int = DEFAULT_SEED
    output: str | None = None
    cache_dir: str = ".ringrep-cache"

    def validate(self):
        if self.q not in (2, 3, 5):
            raise InvalidInput("q must be one of 2, 3, 5")
        if self.r not in (1, 2, 3):
            raise InvalidInput("r must be one of 1, 2, 3")
        if self.n not in (2, 3):
            raise InvalidInput("n must be 2 or 3")
        if self.trials < 0:
            raise InvalidInput("trials must be non-negative")


# -- output helpers --------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    return x


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2) + "\n"


def write_atomic(path, text: str):
    path = Path(path)
    if path.parent != Path(""):
        path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def aligned(rows, header) -> str:
    rows = [[str(c) for c in row] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines)


def fmt_cyclotomic(c) -> str:
    if c.is_rational():
        return str(c.coeffs[0])
    terms = []
    for i, a in enumerate(c.coeffs):
        if not a:
            continue
        mono = "1" if i == 0 else (f"z{c.N}" if i == 1 else f"z{c.N}^{i}")
        if i and a in (1, -1):
            terms.append(("-" if a < 0 else "+") + mono)
        else:
            terms.append(f"{a:+}" + ("" if i == 0 else "*" + mono))
    s = "".join(terms)
    return s[1:] if s.startswith("+") else s


# -- character tables with a disk cache ------------------------------------------------------

def cache_path(cfg: RunConfig) -> Path:
    return Path(cfg.cache_dir) / f"table-n{cfg.n}-q{cfg.q}-r{cfg.r}-v{FORMAT_VERSION}.json"


def compute_table_json(n: int, q: int, r: int) -> dict:
    if n == 2 and r == 2 and q in (2, 3):
        table = dlgeom.group_context(q, r).table
    else:
        G = FiniteGroup.from_matrices(enumerate_sl_fixed(n, q, r), name=f"SL{n}")
        table = character_table(conjugacy_classes(G))
    meta = {"n": n, "q": q, "r": r, "format_version": FORMAT_VERSION}
    out = table.to_json(meta, rep_encoder=lambda g: [list(x) for x in g.raw])
    out["degrees"] = table.degrees
    out["sum_of_squares"] = sum(d * d for d in table.degrees)
    return out


def load_table_json(cfg: RunConfig, use_cache: bool = True) -> tuple[dict, str]:
    path = cache_path(cfg)
    if use_cache and path.exists():
        return json.loads(path.read_text()), "cache"
    data = json.loads(dumps(compute_table_json(cfg.n, cfg.q, cfg.r)))
    if use_cache:
        write_atomic(path, dumps(data))
    return data, "computed"


def cmd_table(cfg: RunConfig, args) -> tuple[int, dict, str]:
    if args.check_cache:
        cached, _ = load_table_json(cfg, use_cache=True)
        fresh = json.loads(dumps(compute_table_json(cfg.n, cfg.q, cfg.r)))
        same = cached == fresh
        report = {"cache_path": str(cache_path(cfg)), "identical": same}
        return (EXIT_OK if same else EXIT_MISMATCH), report, f"cache {'matches' if same else 'DIFFERS from'} recomputation"
    data, source = load_table_json(cfg, use_cache=not args.no_cache)
    classes = data["classes"]
    header = ["chi", "deg"] + [f"{c['order']}/{c['size']}" for c in classes]
    rows = []
    for i, chi in enumerate(data["irreducibles"]):
        rows.append([f"chi{i}", chi["degree"]] + [fmt_cyclotomic(Cyclotomic.from_json(v)) for v in chi["values"]])
    text = [f"SL{cfg.n}(F{cfg.q}[e]/e^{cfg.r}): |G| = {data['order']}, {data['num_classes']} classes, "
            f"sum deg^2 = {data['sum_of_squares']} ({source})",
            "columns: element order / class size", aligned(rows, header)]
    return EXIT_OK, data, "\n".join(text)


# -- dimension checks ---------------------------------------------------------------------

def cmd_verify_dims(cfg: RunConfig, args) -> tuple[int, dict, str]:
    if cfg.r != 2 or cfg.n != 2:
        raise InvalidInput("verify-dims compares SL2 at r = 2")
    data, _ = load_table_json(cfg, use_cache=not args.no_cache)
    rows = verify.table_check(cfg.q, data["degrees"])
    report = {"q": cfg.q, "table": rows, "order": data["order"], "sum_of_squares": data["sum_of_squares"]}
    status = [r["status"] for r in rows]
    lines = [f"degree table, q={cfg.q}: sum deg^2 = {data['sum_of_squares']} (|G| = {data['order']})",
             aligned([[r["degree"], "; ".join(r["rows"]), r["published"], r["computed"], r["status"]] for r in rows],
                      ["degree", "rows", "published", "computed", "status"])]
    if data["sum_of_squares"] != data["order"]:
        status.append(verify.MISMATCH)
    if args.itemizations:
        if cfg.q not in (2, 3):
            raise InvalidInput("itemizations need q in {2, 3}")
        for name, fn in (("X~", verify.xtil_check), ("X~'", verify.xprime_check), ("X~''", verify.xtilpp_check)):
            items = fn(cfg.q)
            report[name] = items
            status += [x["status"] for x in items]
            lines.append(f"\n{name} isotypic pieces")
            lines.append(aligned([[json.dumps(_jsonable(x["omega"])), x["status"]] for x in items], ["omega", "status"]))
        lid = verify.lefschetz_identity_check(cfg.q)
        report["lefschetz_identity"] = lid
        status.append(lid["status"])
        lines.append(f"\nL(1,1) = {lid['L(1,1)']}, published alternating sum = {lid['published_sum']}: {lid['status']}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["degree", "rows", "published", "computed", "status"])
            for r in rows:
                w.writerow([r["degree"], "; ".join(r["rows"]), r["published"], r["computed"], r["status"]])
    code = EXIT_OK
    if verify.MISMATCH in status:
        code = EXIT_MISMATCH
    elif verify.ERRATUM in status:
        if args.expect_table_erratum:
            lines.append("warning: degree-(q^2-1)/2 row differs from the published count (expected erratum)")
        else:
            code = EXIT_MISMATCH
    report["exit_code"] = code
    return code, report, "\n".join(lines)


# -- Deligne-Lusztig reports ------------------------------------------------------------------

VARIETIES = {"xtil": "X~", "xtil_prime": "X~'", "xtil_pp": "X~''"}


def _needs_small_q(cfg):
    if cfg.q not in (2, 3):
        raise InvalidInput("the finite models are built for q in {2, 3}")


def cmd_dl(cfg: RunConfig, args) -> tuple[int, dict, str]:
    _needs_small_q(cfg)
    table = dlgeom.group_context(cfg.q).table
    chosen = list(VARIETIES) if cfg.variety == "all" else [cfg.variety]
    report = {"q": cfg.q, "degrees": table.degrees, "pieces": []}
    lines = []
    for key in chosen:
        name = VARIETIES[key]
        if key == "xtil_prime":
            gp = dlgeom.build_xtil_prime(cfg.q).gamma
            omegas = [(f"Gamma'[{i}]", v) for i, v in enumerate(abelian_characters(gp))]
        else:
            T = tor.build_torus("split" if key == "xtil" else "nonsplit", cfg.q, 2)
            omegas = [(str(list(w.exps)), w) for w in tor.all_characters(T)]
        if cfg.omega is not None:
            if not 0 <= cfg.omega < len(omegas):
                raise InvalidInput(f"omega index out of range 0..{len(omegas) - 1}")
            omegas = [omegas[cfg.omega]]
        for label, w in omegas:
            v = dlgeom.assemble_R(name, cfg.q, w, label=label)
            entry = v.to_json(table)
            entry["omega"] = label
            match = v.irreducible_match()
            entry["irreducible"] = None if match is None else {"index": match[0], "sign": match[1]}
            report["pieces"].append(entry)
            cons = " + ".join(f"{m}*chi{i}[{d}]" for i, d, m in v.constituents(table)) or "0"
            lines.append([name, label, v.degree, cons])
    text = aligned(lines, ["variety", "omega", "degree", "constituents"])
    return EXIT_OK, report, text


def cmd_gram(cfg: RunConfig, args) -> tuple[int, dict, str]:
    _needs_small_q(cfg)
    T = tor.build_torus("nonsplit", cfg.q, 2)
    chars = tor.all_characters(T)
    if not args.all:
        chars = [w for w in chars if tor.is_regular(w)]
    Rs = [dlgeom.assemble_R("X~''", cfg.q, w) for w in chars]
    G = dlgeom.gram(Rs)
    P = [[tor.predicted_gram(a, b) for b in chars] for a in chars]
    regular = [tor.is_regular(w) for w in chars]
    bad = [(i, j) for i in range(len(chars)) for j in range(len(chars))
           if regular[i] and regular[j] and G[i][j] != P[i][j]]
    report = {"q": cfg.q, "thetas": [list(w.exps) for w in chars], "regular": regular,
              "gram": G, "predicted": P, "mismatches": bad}
    lines = [f"Gram matrix of R^theta, non-split torus, q={cfg.q}",
             aligned([[str(list(w.exps))] + [str(x) for x in row] for w, row in zip(chars, G)],
                     ["theta"] + [str(i) for i in range(len(chars))]),
             f"regular entries differing from the prediction: {len(bad)}"]
    code = EXIT_OK if not bad else EXIT_MISMATCH
    if args.disjointness:
        dis = disjointness_report(cfg.q)
        report["disjointness"] = dis
        lines.append(f"pairs not norm-orbit equivalent: {dis['pairs_checked']}, nonzero inner products: "
                     f"{len(dis['violations'])}")
        if dis["violations"]:
            code = EXIT_MISMATCH
    return code, report, "\n".join(lines)


def disjointness_report(q: int, n_max: int = 4) -> dict:
    """<R^theta, R^theta'> = 0 whenever theta, theta' are not norm-orbit equivalent."""
    pieces = []
    for kind, name in (("split", "X~"), ("nonsplit", "X~''")):
        T = tor.build_torus(kind, q, 2)
        for w in tor.all_characters(T):
            pieces.append((w, dlgeom.assemble_R(name, q, w)))
    checked, violations = 0, []
    for w1, R1 in pieces:
        for w2, R2 in pieces:
            if tor.norm_orbit_equivalent(w1, w2, n_max=n_max):
                continue
            checked += 1
            ip = inner_product(R1.values, R2.values)
            if ip != 0:
                violations.append([repr(w1), repr(w2), ip])
    return {"q": q, "n_max": n_max, "pairs_checked": checked, "violations": violations}


def cmd_span(cfg: RunConfig, args) -> tuple[int, dict, str]:
    _needs_small_q(cfg)
    rep = dlgeom.span_check(cfg.q)
    lines = [f"family size {rep['family_size']} {rep['family_sizes']}, irreducibles {rep['num_irreducibles']}",
             f"rational rank: {rep['rank']}",
             f"irreducibles outside the span: {rep['outside_span']} (degrees {rep['outside_span_degrees']})",
             f"irreducibles orthogonal to every member: {rep['orthogonal_to_family']}",
             f"regular character in span: {rep['regular_in_span']}"]
    return EXIT_OK, rep, "\n".join(lines)


def cmd_lemmas(cfg: RunConfig, args) -> tuple[int, dict, str]:
    if cfg.r < 2:
        raise InvalidInput("the commutation calculus needs r >= 2")
    try:
        rep = lemmas.run_lemma_trials(cfg.n, cfg.q, cfg.r, cfg.trials, cfg.seed)
    except AssertionError as exc:
        return EXIT_MISMATCH, {"ok": False, "error": str(exc)}, f"FAILED: {exc}"
    lines = [f"SL{cfg.n}, q={cfg.q}, r={cfg.r}, seed={cfg.seed}",
             f"1.6(a): {rep['1.6a']} trials", f"1.6(b)/(c): {rep['1.6bc']}",
             f"1.6(c) uniqueness (SL2, q=2, r=2): {rep['1.6c_uniqueness_sl2']} pairs",
             f"1.7: {rep['1.7']} trials", f"1.8: {rep['1.8']} trials, cover {rep['1.8_cover']}", "all passed"]
    return EXIT_OK, rep, "\n".join(lines)


def cmd_flags(cfg: RunConfig, args) -> tuple[int, dict, str]:
    ft = dlgeom.flag_positions(cfg.q, args.m)
    rep = {"q": cfg.q, "m": args.m, "lines": len(ft.lines), "counts": ft.counts}
    text = f"q={cfg.q}, m={args.m}: {len(ft.lines)} lines; " + ", ".join(f"{k}: {v}" for k, v in ft.counts.items())
    return EXIT_OK, rep, text


COMMANDS = {
    "table": cmd_table,
    "verify-dims": cmd_verify_dims,
    "dl": cmd_dl,
    "gram": cmd_gram,
    "span": cmd_span,
    "lemmas": cmd_lemmas,
    "flags": cmd_flags,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ringrep", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, q=2, r=2, n=2):
        sp.add_argument("--q", type=int, default=q)
        sp.add_argument("--r", type=int, default=r)
        sp.add_argument("--n", type=int, default=n)
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--output", "-o", help="write the JSON report to this file")
        sp.add_argument("--json", action="store_true", help="print JSON instead of text")
        sp.add_argument("--no-cache", action="store_true")
        return sp

    sp = common(sub.add_parser("table", help="character table of SL_n(F_q[e]/e^r)"))
    sp.add_argument("--check-cache", action="store_true", help="compare the cached table with a recomputation")
    sp = common(sub.add_parser("verify-dims", help="compare degree counts with the published table"))
    sp.add_argument("--itemizations", action="store_true", help="also check the per-omega itemizations")
    sp.add_argument("--expect-table-erratum", action="store_true")
    sp.add_argument("--csv", help="write the degree comparison as CSV")
    sp = common(sub.add_parser("dl", help="isotypic pieces of the three coverings"))
    sp.add_argument("--variety", choices=["all", *VARIETIES], default="all")
    sp.add_argument("--omega", type=int)
    sp = common(sub.add_parser("gram", help="Gram matrix of R^theta over the non-split torus"))
    sp.add_argument("--all", action="store_true", help="include non-regular theta")
    sp.add_argument("--disjointness", action="store_true", help="check inner products of non-equivalent pairs")
    common(sub.add_parser("span", help="rational span of the virtual characters"))
    sp = common(sub.add_parser("lemmas", help="seeded trials of the commutation calculus"), q=2, r=3, n=3)
    sp.add_argument("--trials", type=int, default=1000)
    sp = common(sub.add_parser("flags", help="relative positions of (L, F(L))"))
    sp.add_argument("--m", type=int, default=1)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    cfg = RunConfig(
        command=args.command, q=args.q, r=args.r, n=args.n,
        variety=getattr(args, "variety", "all"), omega=getattr(args, "omega", None),
        trials=getattr(args, "trials", 1000), seed=args.seed, output=args.output,
        cache_dir=os.environ.get("RINGREP_CACHE_DIR", ".ringrep-cache"),
    )
    try:
        cfg.validate()
        code, report, text = COMMANDS[cfg.command](cfg, args)
    except (InvalidInput, ValueError) as exc:
        print(f"ringrep: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if cfg.output:
        write_atomic(cfg.output, dumps(report))
    sys.stdout.write(dumps(report) if args.json else text + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
