"""Command-line front end: ``arithtop {link,primes,classgroup,covering,zeta-ranks,selftest}``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from itertools import permutations
from typing import List, Optional

from . import plotting
from .chainring import expand_rank_product, zeta_rank_inversion
from .classgroup import DiscriminantError, FormClassGroup, genus_rank_check, predict_vs_oracle, two_sylow
from .covering import CoveringError, FiniteAction, decompose, galois_check, group_library, subgroups_over_derived, transfer_kernel
from .linkinv import (
    AlexanderError,
    DiagramError,
    FramingError,
    LinkPresentation,
    MissingMilnorError,
    alexander_polynomial,
    branched_cover_order,
    cover_homology_ranks,
    cyclic_cover_is_qhs,
    iwasawa_growth_check,
    link_milnor_table,
    linking_numbers,
    load_link_file,
    pd_to_wirtinger,
    t_l_matrix,
    wirtinger_longitudes,
)
from .magnus import check_symmetries
from .primeinv import (
    PreconditionError,
    PrimeSet,
    SearchExhausted,
    UserMuTable,
    arith_milnor_table,
    class_group_prediction,
    four_rank_prediction,
    legendre,
    lk_l,
    redei_matrix,
    redei_triple,
    t_s_matrix,
)
from .report import Report, matrix_rows, maybe_join, render_text, write_csv
from .words import WordSyntaxError

USER_ERRORS = (ValueError, KeyError, DiagramError, FramingError, AlexanderError, PreconditionError,
               SearchExhausted, DiscriminantError, CoveringError, WordSyntaxError, OSError)


# --- link -------------------------------------------------------------------

def cmd_link(args, rep: Report) -> None:
    obj = load_link_file(args.file)
    rep.inputs = {"file": args.file, "degree": args.degree, "l": args.l, "d": args.d}
    wirt = None
    with rep.timed("longitudes"):
        if isinstance(obj, tuple):
            n, words = obj
            lp = LinkPresentation.from_strings(n, words)
            rep.provenance.append("longitudes read from file")
        else:
            wirt = pd_to_wirtinger(obj)
            lp = wirtinger_longitudes(wirt, max(args.degree, args.d or 0))
            rep.provenance.append("longitudes derived from the planar diagram")
    res = rep.results
    res["components"] = lp.n
    res["longitudes"] = [str(y) for y in lp.longitudes]
    lk = linking_numbers(lp)
    res["linking_matrix"] = lk
    if lp.n >= 2 or args.degree >= 2:
        D = max(2, args.degree)
        with rep.timed("milnor"):
            table = link_milnor_table(lp, D)
        res["milnor"] = [
            {"index": r["index"], "mu": r["mu"], "delta": r["delta"], "mubar": table.signed_mubar(tuple(map(int, r["index"].split())))}
            for r in table.to_rows() if lp.n >= 2
        ]
        viol = check_symmetries(table)
        res["symmetry_violations"] = [{"kind": v.kind, "indices": str(v.indices), "detail": v.detail} for v in viol]
        rep.check("milnor symmetries", not viol)
    else:
        table = None

    if wirt is not None and wirt.n_components == 1:
        with rep.timed("alexander"):
            delta = alexander_polynomial(wirt)
        res["alexander"] = str(delta)
        res["alexander_at_1"] = delta.evaluate(1)
        res["branched_cover_orders"] = {str(k): branched_cover_order(delta, k) for k in range(2, args.covers + 1)}
        if args.growth_p:
            fit = iwasawa_growth_check(delta, args.growth_p, args.growth_n)
            res["growth_fit"] = fit.as_dict()
            if args.report_dir:
                rep.files.append(plotting.growth_plot(list(range(1, args.growth_n + 1)), fit.valuations,
                                                      fit.as_dict(), args.growth_p,
                                                      maybe_join(args.report_dir, "growth.png")))

    if args.d:
        if lp.n == 1:
            rep.provenance.append("knot: the cyclic cover is a rational homology sphere")
            qhs = True
        elif args.assume_qhs:
            rep.provenance.append("rational homology sphere hypothesis asserted by the user")
            qhs = True
        elif wirt is not None:
            qhs = cyclic_cover_is_qhs(wirt, args.l)
            rep.provenance.append(f"rational homology sphere hypothesis checked from the diagram: {qhs}")
        else:
            qhs = False
        if not qhs:
            rep.errors.append("cover ranks need a rational homology sphere; pass --assume-qhs for longitude-only input")
        else:
            if table is None or table.D < args.d:
                table = link_milnor_table(lp, max(2, args.d))
            with rep.timed("ranks"):
                rr = cover_homology_ranks(lp, args.l, args.d, assume_qhs=True, table=table)
            res["cover_ranks"] = {
                "l": args.l,
                "e": {str(k): v for k, v in sorted(rr.e.items())},
                "valuations": {str(k): v for k, v in sorted(rr.valuations.items())},
                "invariant_exponents": rr.invariant_exponents(),
                "warnings": rr.warnings,
            }
            if args.report_dir:
                T = t_l_matrix(table, args.l, args.d).to_ints()
                rep.files.append(write_csv(maybe_join(args.report_dir, "t_l_matrix.csv"),
                                           ["row"] + [str(j + 1) for j in range(lp.n)], matrix_rows(T)))
                ds = sorted(rr.e)
                rep.files.append(plotting.bar_chart([str(d) for d in ds], [rr.e[d] for d in ds],
                                                    maybe_join(args.report_dir, "cover_ranks.png"),
                                                    title=f"p^d-ranks, l = {args.l}", ylabel="e_d"))

    if args.report_dir:
        n = lp.n
        rep.files.append(write_csv(maybe_join(args.report_dir, "linking_matrix.csv"),
                                   ["row"] + [str(j + 1) for j in range(n)], matrix_rows(lk)))
        if n >= 2:
            rep.files.append(plotting.matrix_heatmap(lk, maybe_join(args.report_dir, "linking_matrix.png"),
                                                     title="linking numbers"))
        if table is not None and n >= 2:
            rows = [(r["index"], r["mu"], r["delta"], r["mubar"]) for r in res["milnor"]]
            rep.files.append(write_csv(maybe_join(args.report_dir, "milnor.csv"),
                                       ["index", "mu", "delta", "mubar"], rows))
            nz = [r for r in rows if r[3]]
            if nz:
                rep.files.append(plotting.bar_chart([r[0] for r in nz], [r[3] for r in nz],
                                                    maybe_join(args.report_dir, "mubar.png"),
                                                    title="nonzero mu-bar", ylabel="mu-bar"))
        if "branched_cover_orders" in res:
            items = sorted(res["branched_cover_orders"].items(), key=lambda kv: int(kv[0]))
            rep.files.append(write_csv(maybe_join(args.report_dir, "branched_covers.csv"),
                                       ["fold", "order"], items))
            # order 0 marks an infinite group; plot log10 of the finite ones
            rep.files.append(plotting.bar_chart([k for k, _ in items],
                                                [math.log10(v) if v else 0.0 for _, v in items],
                                                maybe_join(args.report_dir, "branched_covers.png"),
                                                title="branched cyclic covers (0 = infinite)",
                                                ylabel="log10 |H_1|"))


# --- primes -----------------------------------------------------------------

def cmd_primes(args, rep: Report) -> None:
    if args.set_file:
        with open(args.set_file) as fh:
            S = PrimeSet.from_json(json.load(fh))
    else:
        S = PrimeSet(args.l, args.primes)
    rep.inputs = {"l": S.l, "primes": S.primes, "d": args.d, "mu_table": args.mu_table}
    res = rep.results
    res["e_S"] = S.e_S
    n, ps = S.n, S.primes
    if S.l == 2:
        res["legendre"] = [[legendre(p, q) if p != q else 0 for q in ps] for p in ps]
    res["lk"] = [[lk_l(p, q, S.l) if p != q else 0 for q in ps] for p in ps]
    if S.l == 2 and n >= 3:
        trip = {}
        for t in permutations(range(n), 3):
            a, b, c = (ps[i] for i in t)
            if all(legendre(x, y) == 1 for x, y in permutations((a, b, c), 2)):
                trip[" ".join(str(i + 1) for i in t)] = redei_triple(a, b, c)
        res["triple_symbols"] = trip
    user = UserMuTable.load(args.mu_table) if args.mu_table else None
    with rep.timed("table"):
        table = arith_milnor_table(S, user=user)
    res["mu_table"] = table.to_rows()
    for c in table.conflicts:
        rep.errors.append(f"user entry {c.index} = {c.supplied} conflicts with computed {c.computed} mod {c.modulus}")
    if user is not None:
        rep.provenance.append(f"user-supplied entries from {args.mu_table} (modulus {user.m})")
    rep.provenance.append("entries of length <= 2 from power residue symbols; length 3 (l = 2) from triple symbols")
    viol = table.check_shuffles(S.modulus)
    if S.l == 2:
        viol += check_symmetries(table.as_milnor_table(2, 3))
    res["symmetry_violations"] = [{"kind": v.kind, "indices": str(v.indices), "detail": v.detail} for v in viol]
    rep.check("arithmetic milnor symmetries", not viol)
    res["redei_matrix"] = redei_matrix(S)
    res["e_2_from_redei_matrix"] = four_rank_prediction(S)
    with rep.timed("prediction"):
        pred = class_group_prediction(S, args.d, table)
    res["prediction"] = pred.as_dict()
    if S.l == 2:
        if 2 in pred.e:
            rep.check("e_2 from matrix agrees with T_S^(2)", pred.e[2] == res["e_2_from_redei_matrix"])
    else:
        rep.provenance.append("for l > 2 the printed matrix (row sums) and T_S^(2) (column sums) may give different e_2")
    shown = max(pred.e)
    TS = t_s_matrix(table, shown)
    if S.l == 2:
        T = TS.to_ints()
        res["t_s_matrix"] = {"d": shown, "entries_mod_2^d": T}
        heat, heat_title = T, f"T_S^({shown}) mod 2^{shown}"
    else:
        T = [[" ".join(map(str, x)) for x in row] for row in TS.to_digit_rows()]
        res["t_s_matrix"] = {"d": shown, "pi_digits": T}
        heat = [[x.valuation() for x in row] for row in TS.rows]
        heat_title = f"pi-valuations of T_S^({shown})"
    if args.verify:
        if S.l != 2:
            rep.errors.append("--verify needs l = 2: the form-class oracle covers quadratic fields only")
        else:
            with rep.timed("oracle"):
                cmp = predict_vs_oracle(S, args.d, pred)
            res["oracle"] = cmp.as_dict()
            rep.check("class group prediction vs form-class oracle", cmp.passed)
    if args.report_dir:
        rep.files.append(write_csv(maybe_join(args.report_dir, "mu_table.csv"),
                                   ["index", "value", "modulus", "provenance", "note"],
                                   [tuple(r.values()) for r in res["mu_table"]]))
        rep.files.append(write_csv(maybe_join(args.report_dir, "t_s_matrix.csv"),
                                   ["row"] + [str(j + 1) for j in range(n)], matrix_rows(T)))
        rep.files.append(plotting.matrix_heatmap(heat, maybe_join(args.report_dir, "t_s_matrix.png"),
                                                 title=heat_title, labels=[str(p) for p in ps]))
        ds = sorted(pred.e)
        second = None
        if "oracle" in res:
            second = [int(res["oracle"]["oracle_e"].get(str(d), 0)) for d in ds]
        rep.files.append(write_csv(maybe_join(args.report_dir, "ranks.csv"), ["d", "predicted", "oracle"],
                                   [(d, pred.e[d], None if second is None else second[i]) for i, d in enumerate(ds)]))
        rep.files.append(plotting.bar_chart([str(d) for d in ds], [pred.e[d] for d in ds],
                                            maybe_join(args.report_dir, "ranks.png"), title="p^d-ranks",
                                            ylabel="e_d", second=second, legend=("predicted", "oracle")))


# --- classgroup / covering / zeta-ranks --------------------------------------

def cmd_classgroup(args, rep: Report) -> None:
    rep.inputs = {"disc": args.disc}
    with rep.timed("classgroup"):
        G = FormClassGroup(args.disc)
        st = G.structure()
    rep.results.update(st.as_dict())
    rep.results["two_sylow"] = two_sylow(st, 2).invariant_factors
    g = genus_rank_check(args.disc, st)
    rep.results["genus"] = g.as_dict()
    rep.check("genus 2-rank", g.ok)
    if args.report_dir:
        rep.files.append(write_csv(maybe_join(args.report_dir, "classes.csv"), ["class", "a", "b", "c"],
                                   [(i, f.a, f.b, f.c) for i, f in enumerate(G.reps)]))
        fs = st.invariant_factors or [1]
        rep.files.append(plotting.bar_chart([f"d{i + 1}" for i in range(len(fs))], fs,
                                            maybe_join(args.report_dir, "invariant_factors.png"),
                                            title=f"D = {args.disc}", ylabel="invariant factor"))


def cmd_covering(args, rep: Report) -> None:
    res = rep.results
    if args.file:
        with open(args.file) as fh:
            act = FiniteAction.from_json(json.load(fh))
        rep.inputs = {"file": args.file}
        dec = decompose(act)
        res["decomposition"] = dec.as_dict()
        rep.check("sum of e f equals degree", dec.total() == act.degree)
        if args.galois:
            g = galois_check(act)
            res["galois"] = g.as_dict()
            rep.check("Galois identities", g.ok)
    if args.transfer_library:
        rows = []
        for G in group_library():
            for H in subgroups_over_derived(G):
                r = transfer_kernel(G, H)
                rows.append({"group": G.name, "order": r.order_gamma, "index": r.index,
                             "kernel_order": r.kernel_order, "divisible": r.divisible})
        res["transfer"] = rows
        rep.check("transfer kernel order divisible by index", all(r["divisible"] for r in rows))
        if args.report_dir:
            rep.files.append(write_csv(maybe_join(args.report_dir, "transfer.csv"),
                                       list(rows[0].keys()), [tuple(r.values()) for r in rows]))
    if not args.file and not args.transfer_library:
        rep.errors.append("give an action file or --transfer-library")


def cmd_zeta(args, rep: Report) -> None:
    f = [int(x) for x in args.coeffs]
    rep.inputs = {"coeffs": f, "D": args.D}
    a = zeta_rank_inversion(f, args.D)
    rep.results["ranks"] = {str(k + 1): v for k, v in enumerate(a)}
    back = expand_rank_product(a, args.D)
    padded = (f + [0] * (args.D + 1))[: args.D + 1]
    rep.check("product expansion reproduces the series", back == padded)
    if args.report_dir:
        rep.files.append(write_csv(maybe_join(args.report_dir, "ranks.csv"), ["k", "a_k"],
                                   [(k + 1, v) for k, v in enumerate(a)]))
        rep.files.append(plotting.bar_chart([str(k + 1) for k in range(len(a))], a,
                                            maybe_join(args.report_dir, "ranks.png"), ylabel="a_k"))


def cmd_selftest(args, rep: Report) -> None:
    from .selftest import run_selftest
    for name, ok, err in run_selftest():
        rep.check(name, ok)
        if err:
            rep.errors.append(f"{name}: {err}")


# --- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arithtop", description="Link invariants, prime invariants and class-group checks.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=None,
                        help="output format (default text; json for classgroup)")
    common.add_argument("--out", help="also write the JSON report to this file")
    common.add_argument("--report-dir", help="write CSV tables and PNG figures here")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("link", parents=[common], help="invariants of a link from PD, braid or longitude JSON")
    s.add_argument("file")
    s.add_argument("--degree", type=int, default=3, help="Milnor table degree (max |I|)")
    s.add_argument("--l", type=int, default=2)
    s.add_argument("--d", type=int, default=0, help="compute p^d-ranks of the l-fold cover up to d")
    s.add_argument("--covers", type=int, default=6, help="branched cover orders for folds 2..N")
    s.add_argument("--growth-p", type=int, default=0)
    s.add_argument("--growth-n", type=int, default=4)
    s.add_argument("--assume-qhs", action="store_true", help="assert the cover is a rational homology sphere")
    s.set_defaults(func=cmd_link)

    s = sub.add_parser("primes", parents=[common], help="arithmetic invariants of a set of primes")
    s.add_argument("primes", nargs="*", type=int)
    s.add_argument("--set-file", help='PrimeSet JSON {"l": 2, "primes": [...]}')
    s.add_argument("--l", type=int, default=2)
    s.add_argument("--d", type=int, default=3)
    s.add_argument("--mu-table", help='user table {"m": 8, "entries": {"1 2 1": 3}}')
    s.add_argument("--verify", action="store_true", help="compare with the form-class oracle")
    s.set_defaults(func=cmd_primes)

    s = sub.add_parser("classgroup", parents=[common], help="narrow class group of a fundamental discriminant")
    s.add_argument("--disc", type=int, required=True)
    s.set_defaults(func=cmd_classgroup)

    s = sub.add_parser("covering", parents=[common], help="decomposition law and transfer kernels")
    s.add_argument("file", nargs="?")
    s.add_argument("--galois", action="store_true")
    s.add_argument("--transfer-library", action="store_true")
    s.set_defaults(func=cmd_covering)

    s = sub.add_parser("zeta-ranks", parents=[common], help="ranks a_k from a series prod (1 - t^k)^{a_k}")
    s.add_argument("coeffs", nargs="+", help="series coefficients f_0 f_1 ...")
    s.add_argument("--D", type=int, default=8)
    s.set_defaults(func=cmd_zeta)

    s = sub.add_parser("selftest", parents=[common], help="run the worked examples")
    s.set_defaults(func=cmd_selftest)
    return p


def _classgroup_json(rep: Report) -> str:
    # flat object so that invariant_factors and order sit at the top level
    out = dict(rep.results)
    out["checks"] = rep.checks
    out["errors"] = rep.errors
    return json.dumps(out, indent=2)


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Report(args.command, argv)
    try:
        args.func(args, rep)
    except MissingMilnorError as exc:
        rep.errors.append(f"missing Milnor data: {exc.args[0]}")
    except USER_ERRORS as exc:
        rep.errors.append(f"{type(exc).__name__}: {exc}")
    text = rep.to_json(args.timing)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    fmt = args.format or ("json" if args.command == "classgroup" else "text")
    if fmt == "json":
        print(text if args.command != "classgroup" else _classgroup_json(rep))
    else:
        d = rep.to_dict(args.timing)
        d.pop("checks")
        d.pop("errors")
        print(render_text(d))
        for name, verdict in rep.checks.items():
            print(f"{verdict} {name}")
        for e in rep.errors:
            print(f"ERROR {e}", file=sys.stderr)
    return 0 if rep.ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
