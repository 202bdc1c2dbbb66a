"""Command-line front end.

Exit codes: 0 ok, 1 mismatch or failed check, 2 usage error.  Output depends
only on the arguments, so identical invocations print identical bytes.
Set ``CHEREDNIK_THREADS`` to run ``verify-all`` suites in parallel processes.
"""

from __future__ import annotations

import argparse
import csv
import difflib
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from . import dirac as dr
from . import global_dirac as gd
from . import modules as mo
from .field import ScalarParseError, format_scalar, parse_scalar, symbol
from .group import ParameterFunction, ReflectionGroup, build_group
from .laurent import GradedCharacter, LPoly

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

GOLDEN_ORDERS = {
    "B2-matrices": ("B2", "I2(4)", ["11x0", "0x2", "1x1"], "b2_matrices.txt"),
    "G2-matrices": ("G2", "I2(6)", ["phi'_{1,3}", "phi''_{1,3}", "phi_{2,2}", "phi_{2,1}"], "g2_matrices.txt"),
}

CHECK_ERRORS = (
    AssertionError,
    dr.InconsistentCharacters,
    dr.NoInfinitesimalCharacter,
    mo.NonIntegerMultiplicity,
)


class UsageError(ValueError):
    pass


class GoldenMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Parsed common flags.

    ``c`` is ``"c"`` (or ``"generic"``) for the symbolic parameter, one scalar
    for a constant function, or comma-separated scalars, one per reflection
    class.  ``t`` defaults to 1, or to 0 for the restricted commands.
    """

    group: str = "Z2"
    tau: str | None = None
    t: str | None = None
    c: str = "c"
    cutoff: int | None = None
    format: str = "json"
    seed: int = 0

    def build_group(self) -> ReflectionGroup:
        try:
            return build_group(self.group)
        except (KeyError, ValueError) as exc:
            raise UsageError(f"unknown group {self.group!r}") from exc

    def params(self, G: ReflectionGroup, default_t=Fraction(1)) -> ParameterFunction:
        t = default_t if self.t is None else _scalar(self.t)
        if self.c in ("c", "generic"):
            return ParameterFunction.generic(G, t)
        parts = [_scalar(p) for p in self.c.split(",")]
        if len(parts) == 1:
            return ParameterFunction.constant(G, parts[0], t)
        if len(parts) != len(G.reflection_classes):
            raise UsageError(f"{G.name} has {len(G.reflection_classes)} reflection classes, got {len(parts)} values of c")
        return ParameterFunction(G, tuple(parts), t)

    def irrep(self, G: ReflectionGroup, required: bool = True):
        if self.tau is None:
            if required:
                raise UsageError("--tau is required")
            return None
        try:
            return G.irrep(self.tau).label
        except KeyError as exc:
            raise UsageError(str(exc)) from exc


def _scalar(text: str):
    try:
        return parse_scalar(text)
    except (ScalarParseError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse scalar {text!r}") from exc


def _config(args) -> RunConfig:
    return RunConfig(
        group=args.group,
        tau=args.tau,
        t=args.t,
        c=args.c,
        cutoff=args.cutoff,
        format=args.format,
        seed=args.seed,
    )


# ---------------------------------------------------------------------------
# emitters


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, GradedCharacter):
        return x.to_json()
    if isinstance(x, LPoly):
        return str(x)
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    return format_scalar(x)


def _cell(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    if v is None:
        return ""
    return str(v)


def render(payload: dict, fmt: str) -> str:
    """JSON, CSV or an aligned text table; ``rows`` (a list of dicts) drive CSV and tables."""
    data = _jsonable(payload)
    if fmt == "json":
        return json.dumps(data, indent=2, sort_keys=True)
    if fmt == "table" and "text" in payload:
        return payload["text"]
    rows = data.get("rows")
    if rows is None:
        rows = [{"key": k, "value": v} for k, v in sorted(data.items()) if k != "text"]
    cols = []
    for row in rows:
        for k in row:
            if k not in cols:
                cols.append(k)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for row in rows:
            w.writerow([_cell(row.get(k)) for k in cols])
        return buf.getvalue().rstrip("\n")
    cells = [[_cell(row.get(k)) for k in cols] for row in rows]
    widths = [max([len(k)] + [len(r[i]) for r in cells]) for i, k in enumerate(cols)]
    lines = ["  ".join(k.ljust(w) for k, w in zip(cols, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for r in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
    return "\n".join(lines)


def matrix_text(header: str, order: list, d: dict, n: dict, G: ReflectionGroup) -> str:
    """Matrices [d], [n] and the scalar [d][n] in the golden-file layout."""
    lines = [header, "[d]"]
    lines += [" | ".join(str(d[(a, b)]) for b in order) for a in order]
    lines.append("[n]")
    lines += [" | ".join(str(n[(a, b)]) for b in order) for a in order]
    lines.append("[d][n]")
    lines.append(_scalar_product(d, n, order))
    return "\n".join(lines) + "\n"


def _scalar_product(d: dict, n: dict, order: list) -> str:
    prod = dr.matrix_product(d, n, order)
    diag = prod[(order[0], order[0])]
    for a in order:
        for b in order:
            if prod[(a, b)] != (diag if a == b else LPoly()):
                return "not a scalar matrix"
    return str(diag)


# ---------------------------------------------------------------------------
# commands


def _module(cfg: RunConfig, G, kind: str, level: int):
    tau = cfg.irrep(G)
    restricted = kind in ("baby-verma", "simple-head")
    c = cfg.params(G, Fraction(0) if restricted else Fraction(1))
    if restricted and c.t != 0:
        raise UsageError(f"{kind} needs t = 0")
    if kind == "standard":
        return mo.StandardModule(G, tau, c)
    if kind == "irM":
        return mo.IntegralReflectionM(G, tau, c)
    if kind == "irX":
        return mo.IntegralReflectionX(G, tau, c, level)
    M = mo.BabyVerma(G, tau, c)
    return mo.SimpleHead(M) if kind == "simple-head" else M


def _default_cutoff(cfg: RunConfig, G) -> int:
    return cfg.cutoff if cfg.cutoff is not None else 2 * max(G.fundamental_degrees)


def cmd_group(cfg: RunConfig, args) -> tuple[dict, bool]:
    G = cfg.build_group()
    rows = []
    for lab in G.labels():
        ir = G.irreps[lab]
        row = {"irrep": lab, "dim": ir.dim, "aliases": ",".join(ir.aliases)}
        for i, cls in enumerate(G.classes):
            row[f"class{i}"] = format_scalar(ir.character[cls[0]])
        rows.append(row)
    payload = G.to_json()
    payload.update(
        {
            "coxeter_number": G.coxeter_number if G.is_real else None,
            "classes": [list(cls) for cls in G.classes],
            "reflection_classes": [list(cls) for cls in G.reflection_classes],
            "P_G": str(G.P_G),
            "rows": rows,
        }
    )
    return payload, True


def cmd_module(cfg: RunConfig, args) -> tuple[dict, bool]:
    G = cfg.build_group()
    M = _module(cfg, G, args.kind, args.level)
    cutoff = None if args.kind in ("baby-verma", "simple-head") else _default_cutoff(cfg, G)
    ch = M.character if isinstance(M, mo.SimpleHead) else mo.graded_character(M, cutoff)
    failures = mo.check_relations(M, min(cutoff, 3) if cutoff is not None else None, raise_on_failure=False)
    payload = {
        "group": G.name,
        "kind": args.kind,
        "tau": M.tau_label,
        "t": M.c.t,
        "c": [format_scalar(v) for v in M.c.values],
        "cutoff": cutoff,
        "character": ch,
        "dimension": sum(p.at_one() * G.irreps[lab].dim for lab, p in ch.data.items()),
        "relations_ok": not failures,
        "rows": [{"irrep": e["irrep"], "poly": e["poly"]} for e in ch.to_json()],
    }
    if args.kind == "simple-head" and not M.c.is_symbolic():
        generic = mo.SimpleHead(mo.BabyVerma(G, M.rep.label, ParameterFunction.generic(G, Fraction(0)))).character
        payload["singular_locus"] = generic != ch
        if generic != ch:
            print(f"warning: c lies on the singular locus for L({M.tau_label}); generic head is {generic}", file=sys.stderr)
    return payload, not failures


def cmd_dirac(cfg: RunConfig, args) -> tuple[dict, bool]:
    G = cfg.build_group()
    action = args.action
    if action in ("matrices", "ep", "mirror"):
        c = cfg.params(G, Fraction(0))
        if c.t != 0:
            raise UsageError(f"dirac {action} works with the restricted algebra (t = 0)")
        try:
            order = [G.irrep(lab).label for lab in args.order.split(",")] if args.order else G.labels()
        except KeyError as exc:
            raise UsageError(str(exc)) from exc
        if action == "matrices":
            d = dr.dirac_index_matrix(G, c, order)
            n = dr.multiplicity_matrix(G, c, order)
            ok = dr.check_inverse(G, d, n, order)
            header = f"# {G.name}, t = 0; row order {', '.join(order)}"
            return {
                "order": order,
                "d": [[str(d[(a, b)]) for b in order] for a in order],
                "n": [[str(n[(a, b)]) for b in order] for a in order],
                "d_times_n": _scalar_product(d, n, order),
                "inverse_ok": ok,
                "text": matrix_text(header, order, d, n, G).rstrip("\n"),
            }, ok
        if action == "mirror":
            rows = [{"irrep": lab, "ok": dr.mirror_check(G, c, lab)} for lab in order]
            return {"group": G.name, "rows": rows}, all(r["ok"] for r in rows)
        heads = dr.restricted_heads(G, c)
        d = dr.dirac_index_matrix(G, c, order)
        hi = G.rank + max(max(h[1].degrees()) for h in heads.values()) + 2
        rows = []
        for tau in order:
            chM = mo.graded_character(mo.StandardModule(G, tau, c), hi)
            for sig in order:
                a = dr.ep_pairing(G, chM, heads[sig][1], "index", hi=hi)
                b = dr.ep_pairing(G, chM, heads[sig][1], "elliptic", hi=hi)
                rows.append({"M": tau, "L": sig, "index_route": str(a), "elliptic_route": str(b), "ok": a == b == d[(sig, tau)]})
        return {"group": G.name, "rows": rows}, all(r["ok"] for r in rows)
    M = _module(cfg, G, args.kind, args.level)
    cutoff = None if args.kind in ("baby-verma", "simple-head") else (cfg.cutoff if cfg.cutoff is not None else 3)
    head = {"group": G.name, "kind": args.kind, "tau": M.tau_label, "cutoff": cutoff}
    if action == "square-check":
        res = dr.dirac_square_check(M, cutoff)
        res["g_invariance_checked"] = dr.g_invariance_check(M, cutoff)
        return dict(head, **res), True
    if action == "index":
        ch = M.character if isinstance(M, mo.SimpleHead) else mo.graded_character(M, cutoff)
        idx = dr.dirac_index(G, ch, cutoff)
        via = dr.index_from_cohomology(M, cutoff)
        if cutoff is not None:
            via = via.truncate(None, cutoff)
        return dict(head, index=idx, from_cohomology=via, agree=idx == via, rows=idx.to_json()), idx == via
    if action == "cohomology":
        coh = dr.dirac_cohomology(M, cutoff)
        rows = []
        for n, res in sorted(coh.items()):
            for sign in ("+", "-"):
                if any(v != 0 for v in res[sign]):
                    for lab, m in sorted(G.decompose_int(res[sign]).items()):
                        rows.append({"degree": n, "sign": sign, "irrep": lab, "mult": m})
        return dict(head, rows=rows), True
    if action == "char-formula":
        cutoff = cutoff if cutoff is not None else max(M.degrees(None))
        ch = M.character if isinstance(M, mo.SimpleHead) else mo.graded_character(M, cutoff)
        via = dr.index_from_cohomology(M, cutoff)
        return dict(head, **dr.character_formula_check(G, ch, cutoff, index=via)), True
    raise UsageError(f"unknown dirac action {action!r}")


def cmd_global(cfg: RunConfig, args) -> tuple[dict, bool]:
    action = args.action
    if action == "z2-suite":
        rows = gd.z2_suite(cutoff=cfg.cutoff if cfg.cutoff is not None else 3)
        for row in rows:
            row["certificate"] = {k: row["certificate"][k] for k in ("K0", "level", "used_level", "cutoff", "stable")}
        ok = all(r["ker_ok"] and r["coker_ok"] and r["plus_ok"] and r["stable"] for r in rows)
        return {"group": "Z2", "t": "1", "rows": rows}, ok
    G = cfg.build_group()
    tau = cfg.irrep(G)
    c = cfg.params(G, Fraction(1))
    cutoff = cfg.cutoff if cfg.cutoff is not None else (2 if G.rank == 1 else 1)
    head = {"group": G.name, "tau": tau, "t": c.t, "c": [format_scalar(v) for v in c.values], "cutoff": cutoff}
    if action == "square-check":
        level = args.level if args.level is not None else cutoff + G.rank
        D = gd.GlobalDirac(G, tau, c, level)
        sq = gd.global_square_check(D, cutoff)
        comm = gd.check_commutation(D, cutoff)
        canc = gd.cancellation_identities(D, min(cutoff, 1))
        rows = gd.isotypic_scalar_check(D, min(level, 2))
        return dict(head, level=level, square=sq, commutation_checked=comm, cancellation=canc, rows=rows), True
    if c.is_symbolic() and action in ("kernel", "index"):
        raise UsageError("kernel and index need a specialised c (and t != 0)")
    if action == "kernel":
        eps = 0 if args.eps == "+" else 1
        res = gd.kernel_cokernel(G, tau, c, eps, cutoff, level=args.level)
        rows = [{"part": "ker", **e} for e in res["ker"].to_json()] + [{"part": "coker", **e} for e in res["coker"].to_json()]
        return dict(head, eps=args.eps, ker=res["ker"], coker=res["coker"], certificate=res["certificate"], rows=rows), bool(
            res["certificate"].get("stable", True)
        )
    if action == "index":
        res = gd.global_index_check(G, tau, c, cutoff)
        return dict(head, index=res["index"], expected=res["expected"], ok=res["ok"], certificate=res["certificate"]), res["ok"]
    if action == "do-complex":
        if c.t != 1:
            raise UsageError("the Dunkl-Opdam complex is taken at t = 1")
        weight = cfg.cutoff if cfg.cutoff is not None else 12
        res = gd.do_complex(G, tau, c, weight)
        rows = [{"i": i, **e} for i, H in sorted(res["homology"].items()) for e in H.to_json()]
        out = dict(head, cutoff=weight, rows=rows, **{k: res[k] for k in ("higher_vanish", "h0_is_tau", "agree", "h0_contains_tau")})
        return out, res["agree"]
    raise UsageError(f"unknown global action {action!r}")


def _golden(name: str) -> str:
    return resources.files("cherednik").joinpath("golden", name).read_text(encoding="utf-8")


def reproduce_matrices(table: str) -> str:
    group, alias, printed, _ = GOLDEN_ORDERS[table]
    G = build_group(group)
    c = ParameterFunction.constant(G, symbol("c"), Fraction(0))
    order = [G.irrep(lab).label for lab in printed]
    d = dr.dirac_index_matrix(G, c, order)
    n = dr.multiplicity_matrix(G, c, order)
    header = f"# {group} = {alias}, t = 0, constant c; cuspidal block in row order {', '.join(printed)}"
    return matrix_text(header, order, d, n, G)


def z2_kernel_rows(cutoff: int = 3) -> list:
    """Kernel of D^- and its cokernel shape for Z2, t = 1, 2c = -tau(s)(2k+1)."""
    G = build_group("Z2")
    rows = []
    for tau in ("triv", "sgn"):
        ts = G.irrep(tau).character[1]
        for k in range(3):
            cv = Fraction(-ts * (2 * k + 1), 2)
            c = ParameterFunction.constant(G, cv, Fraction(1))
            res = gd.kernel_cokernel(G, tau, c, 1, cutoff)
            if not res["certificate"]["stable"]:
                raise GoldenMismatch(f"cokernel not stable at cutoff {cutoff} for tau={tau}, c={cv}")
            ker = res["ker"]
            n = 2 * k + 1
            sigma = "sgn" if tau == "triv" else "triv"
            want = mo.graded_character(mo.IntegralReflectionM(G, sigma, c), cutoff + n).shift(-n).truncate(None, cutoff)
            coker = f"q^-{n} * M({sigma})" if res["coker"] == want else str(res["coker"])
            degrees = {}
            for lab in ker.labels():
                for e, m in sorted(ker[lab].terms.items()):
                    degrees.setdefault(lab, []).extend([e] * int(m))
            rows.append(
                {
                    "tau": tau,
                    "c": str(cv),
                    "k": k,
                    "ker_minus_dim": sum(len(v) for v in degrees.values()),
                    "ker_minus_degrees": degrees,
                    "coker_minus": coker,
                }
            )
    return rows


def _z2_text(rows: list) -> str:
    return json.dumps({"group": "Z2", "t": "1", "rows": rows}, indent=2, sort_keys=True)


def cmd_reproduce(cfg: RunConfig, args) -> tuple[str, bool]:
    table = args.table
    if table in GOLDEN_ORDERS:
        if args.c is not None or args.tau is not None:
            raise UsageError(f"{table} takes no --c/--tau filter")
        got = reproduce_matrices(table)
        want = _golden(GOLDEN_ORDERS[table][3])
        summary = ""
    else:
        golden = json.loads(_golden("z2_kernels.json"))
        rows = z2_kernel_rows()
        keep = _z2_filter(args)
        got = _z2_text([r for r in rows if keep(r)])
        want_rows = [r for r in golden["rows"] if keep(r)]
        if not want_rows:
            raise UsageError("no golden Z2 row matches the --c/--tau filter")
        want = _z2_text(want_rows)
        summary = "\n".join(
            f"tau={r['tau']} c={r['c']} k={r['k']}: ker D^- has dimension {r['ker_minus_dim']}, coker D^- = {r['coker_minus']}"
            for r in want_rows
        )
    if got != want:
        diff = difflib.unified_diff(want.splitlines(), got.splitlines(), "golden", "computed", lineterm="")
        return "\n".join(diff), False
    return (got.rstrip("\n") + ("\n" + summary if summary else "") + f"\n{table}: match"), True


def _z2_filter(args):
    cv = None if args.c is None else Fraction(_scalar(args.c))
    tau = args.tau

    def keep(row):
        if cv is not None and Fraction(row["c"]) != cv:
            return False
        return tau is None or row["tau"] == tau

    return keep


def cmd_verify_all(cfg: RunConfig, args) -> tuple[dict, bool]:
    from .verify import run_all

    threads = int(os.environ.get("CHEREDNIK_THREADS", "1") or 1)
    rows = run_all(cfg.seed, args.cases, workers=threads)
    return {"seed": cfg.seed, "rows": rows}, all(r["ok"] for r in rows)


# ---------------------------------------------------------------------------
# parser


def _common(p: argparse.ArgumentParser, group_default: str = "Z2") -> None:
    p.add_argument("--group", default=group_default, help="Zl, I2(m), B2 or G2")
    p.add_argument("--tau", help="irrep label or alias")
    p.add_argument("--t", help="scalar t (default 1, or 0 for restricted commands)")
    p.add_argument("--c", default="c", help="'c' for generic, a scalar, or comma-separated values per reflection class")
    p.add_argument("--cutoff", type=int)
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.add_argument("--seed", type=int, default=0)


MODULE_KINDS = ("standard", "irM", "irX", "baby-verma", "simple-head")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cherednik", description="Exact computations with rational Cherednik algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", help="reflection data and character table")
    _common(p)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("module", help="graded character of a module realization")
    p.add_argument("kind", choices=MODULE_KINDS)
    p.add_argument("--level", type=int, default=1, help="filtration level for irX")
    _common(p)
    p.set_defaults(func=cmd_module)

    p = sub.add_parser("dirac", help="local Dirac operator")
    p.add_argument("action", choices=("square-check", "index", "cohomology", "matrices", "char-formula", "ep", "mirror"))
    p.add_argument("--kind", choices=MODULE_KINDS, default="standard")
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--order", help="comma-separated irrep labels for matrix rows")
    _common(p)
    p.set_defaults(func=cmd_dirac)

    p = sub.add_parser("global", help="global Dirac operator")
    p.add_argument("action", choices=("square-check", "kernel", "index", "do-complex", "z2-suite"))
    p.add_argument("--eps", choices=("+", "-"), default="-")
    p.add_argument("--level", type=int, help="truncation level (default: certified)")
    _common(p)
    p.set_defaults(func=cmd_global)

    p = sub.add_parser("reproduce", help="compare against the bundled golden tables")
    p.add_argument("table", choices=("B2-matrices", "G2-matrices", "Z2-kernels"))
    p.add_argument("--c")
    p.add_argument("--tau")
    p.add_argument("--format", choices=("json", "csv", "table"), default="table")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("verify-all", help="run every property suite")
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv", "table"), default="table")
    p.set_defaults(func=cmd_verify_all)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.func is cmd_reproduce:
            text, ok = cmd_reproduce(None, args)
            print(text)
            return EXIT_OK if ok else EXIT_MISMATCH
        if args.func is cmd_verify_all:
            cfg = RunConfig(seed=args.seed, format=args.format)
        else:
            cfg = _config(args)
        payload, ok = args.func(cfg, args)
        print(render(payload, cfg.format))
        return EXIT_OK if ok else EXIT_MISMATCH
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GoldenMismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except CHECK_ERRORS as exc:
        print(f"check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
