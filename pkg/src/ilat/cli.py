"""Command-line interface: ``ilat <subcommand> ...``.

Every subcommand builds a JSON-able report; human output is a rendering of
the same report.  Exit status is 0 on success, 1 on domain errors and 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import bernoulli, delta, iwasawa, kubota_leopoldt as kl_mod, lattice_classes as lc, poly, reducibility
from .cache import KLCache, resolve_cache_dir
from .errors import IlatError
from .padic import is_prime, valuation

SCHEMA_VERSION = 1
DEFAULT_N = 8
DEFAULT_M = 8
HYPOTHESES = ("Red", "Dp-dist", "Lambda", "Gorenstein")

log = logging.getLogger("ilat")


class CommandFailed(IlatError):
    """A check run by the command did not pass; the report is still emitted."""


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def render_human(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                inner = ", ".join(f"{k}={_scalar(item[k])}" for k in sorted(item))
                lines.append(f"{pad}- {inner}")
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return "\n".join(lines)


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_scalar(v[k])}" for k in sorted(v)) + "}"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def envelope(command: str, result: dict, args=None) -> dict:
    out = {"schema_version": SCHEMA_VERSION, "command": command, "result": result}
    if args is not None and hasattr(args, "assume"):
        out["hypotheses"] = {"required": list(lc.ASSERTED_HYPOTHESES), "asserted": sorted(set(args.assume or []))}
    return out


def emit(report: dict, as_json: bool, stream=None) -> None:
    stream = stream or sys.stdout
    stream.write(dumps(report) if as_json else render_human(report) + "\n")


# argument types; failures here become usage errors naming the flag


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return v


def odd_prime(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an odd prime, got {text!r}")
    if v == 2 or not is_prime(v):
        raise argparse.ArgumentTypeError(f"expected an odd prime, got {text!r}")
    return v


def kl_key(text: str) -> tuple[int, int, int, int]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected p,j,N,M")
    try:
        p, j, N, M = (int(x) for x in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected four integers p,j,N,M, got {text!r}")
    if p == 2 or not is_prime(p) or N < 2 or M < 2:
        raise argparse.ArgumentTypeError(f"need an odd prime p and N, M >= 2, got {text!r}")
    return p, j, N, M


# shared computations


def compute_kl(p: int, j: int, N: int, M: int, cache_dir=None, u: int | None = None) -> kl_mod.KLSeries:
    root = resolve_cache_dir(cache_dir)
    j = bernoulli.OmegaPowerCharacter(p, j).j
    if u is not None and u != 1 + p:
        # cache keys assume the default generator
        return kl_mod.kl_series(p, j, N, M, u=u)
    if root is None:
        return kl_mod.kl_series(p, j, N, M)
    cache = KLCache(root)
    hit = cache.get(p, j, N, M)
    if hit is not None:
        log.info("cache hit for (p, j, N, M) = (%d, %d, %d, %d)", p, j, N, M)
        return hit
    series = kl_mod.kl_series(p, j, N, M)
    cache.put(series)
    return series


def factorization_from_args(args) -> lc.IdealFactorization:
    if args.from_kl:
        p, j, N, M = args.from_kl
        series = compute_kl(p, j, N, M, getattr(args, "cache_dir", None))
        return kl_mod.kl_factorization(series, args.lambda_max)
    if args.mu is None:
        raise argparse.ArgumentTypeError("--mu is required unless --from-kl is given")
    factors = lc.parse_factor_spec(args.factors or "", args.p, args.assume_irreducible)
    return lc.IdealFactorization(args.mu, tuple(factors))


def lattice_report(fact: lc.IdealFactorization, pfour: bool | None) -> dict:
    with_p = fact.mu > 0
    out = {
        "factorization": fact.to_json(),
        "count_free": lc.count_free(fact),
        "divisors": [list(t.coords(with_p)) for t in lc.divisor_set(fact)],
        "coordinates": list(fact.coordinate_names()),
        "variation_sets": {
            "i_odd": lc.variation_set(fact, "odd").to_json(with_p),
            "i_even": lc.variation_set(fact, "even").to_json(with_p),
        },
    }
    if pfour is not None:
        out["theorem5_variation"] = {"pfour": pfour, **lc.theorem5_variation(fact, pfour).to_json(with_p)}
    return out


def kl_report(series: kl_mod.KLSeries, lambda_max: int, verify: bool) -> tuple[dict, bool]:
    W = iwasawa.weierstrass(series.series)
    fact = kl_mod.factorization_of(series.series, lambda_max)
    out = {
        "p": series.p,
        "chi_omega_exp": series.j,
        "series": series.series.to_json(),
        "guaranteed_N": series.guaranteed_N,
        "construction": series.construction,
        "weights": list(series.weights),
        "working_precision": series.working_precision,
        "u": str(series.u),
        "invariants": {"mu": W.mu, "lambda": W.lam},
        "distinguished": [str(c) for c in W.distinguished],
        "factorization": fact.to_json(),
    }
    if fact.certified:
        out["count_free"] = lc.count_free(fact)
    ok = True
    if verify:
        rows = kl_mod.verify_interpolation(series, range(2, series.M + 3))
        out["interpolation"] = [r.to_json() for r in rows]
        ok = all(r.ok for r in rows)
    return out, ok


# subcommands


def cmd_irregular_pairs(args) -> int:
    pairs = bernoulli.scan_irregular_pairs(args.pmax, args.workers)
    result = {"p_max": args.pmax, "pairs": [{"p": p, "k": k} for p, k in pairs], "count": len(pairs)}
    if args.json:
        emit(envelope("irregular-pairs", result), True)
    else:
        for p, k in pairs:
            print(f"{p}\t{k}")
        print(f"# {len(pairs)} irregular pairs with p <= {args.pmax}")
    return 0


def cmd_kl(args) -> int:
    if args.u is not None and (args.u - 1 - args.p) % (args.p * args.p):
        raise argparse.ArgumentTypeError(f"--u: must be congruent to 1+p mod p^2, got {args.u}")
    series = compute_kl(args.p, args.chi_omega_exp, args.prec_p, args.prec_t, args.cache_dir, args.u)
    result, ok = kl_report(series, args.lambda_max, args.verify)
    if args.figure:
        from .plotting import plot_newton_polygon

        plot_newton_polygon(list(series.series.residues), args.p, series.guaranteed_N, args.figure,
                            f"L_p(omega^{series.j}) mod (p^{series.guaranteed_N}, T^{series.M})")
        result["figure"] = str(args.figure)
    emit(envelope("kl", result), args.json)
    if not ok:
        raise CommandFailed("interpolation check failed")
    return 0


def cmd_weierstrass(args) -> int:
    if args.poly:
        coeffs = poly.parse_poly(args.poly)
    else:
        coeffs = [int(c) for c in args.coeffs.split(",")]
    M = args.prec_t or len(coeffs)
    f = iwasawa.IwasawaSeries.from_coeffs(args.p, args.prec_p, coeffs, M)
    W = iwasawa.weierstrass(f)
    fact = kl_mod.factorization_of(f, args.lambda_max)
    result = {
        "input": f.to_json(),
        "mu": W.mu,
        "lambda": W.lam,
        "distinguished": [str(c) for c in W.distinguished],
        "distinguished_label": poly.format_poly(W.distinguished),
        "distinguished_precision": W.dist_precision,
        "unit": W.unit.to_json(),
        "guaranteed_N": W.guaranteed_N,
        "factorization": fact.to_json(),
        "reconstructs": W.reconstruct() == f,
    }
    if args.figure:
        from .plotting import plot_newton_polygon

        plot_newton_polygon(list(f.residues), args.p, args.prec_p, args.figure)
        result["figure"] = str(args.figure)
    emit(envelope("weierstrass", result), args.json)
    return 0


def cmd_lattice_count(args) -> int:
    fact = factorization_from_args(args)
    result = lattice_report(fact, args.pfour)
    emit(envelope("lattice-count", result, args), args.json)
    return 0


def cmd_lattice_graph(args) -> int:
    if args.dot == "-" and args.json_out == "-":
        raise argparse.ArgumentTypeError("--dot and --json cannot both write to stdout")
    fact = factorization_from_args(args)
    graph = lc.rectangle_graph(fact)
    report = envelope("lattice-graph", {"count_free": lc.count_free(fact), "graph": graph.to_json(),
                                        "factorization": fact.to_json()}, args)
    wrote_stdout = False
    if args.dot:
        dot = graph.to_dot()
        if args.dot == "-":
            sys.stdout.write(dot)
            wrote_stdout = True
        else:
            Path(args.dot).write_text(dot)
    if args.figure:
        from .plotting import plot_lattice_graph

        plot_lattice_graph(graph, args.figure)
    if args.json_out:
        if args.json_out == "-":
            sys.stdout.write(dumps(report))
            wrote_stdout = True
        else:
            Path(args.json_out).write_text(dumps(report))
    if not wrote_stdout:
        emit(report, False)
    return 0


def cmd_dvr_analyze(args) -> int:
    try:
        obj = json.loads(Path(args.rep).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise argparse.ArgumentTypeError(f"--rep: cannot read {args.rep}: {exc}")
    rep = reducibility.MatrixRep.from_json(obj)
    res = reducibility.reducibility_ideal(rep, args.word_bound)
    result = {"p": rep.p, "N": rep.N, "word_bound": args.word_bound, **res.to_json()}
    result["eigenbasis"] = [[str(x) for x in row] for row in res.basis]
    if args.chain:
        chain = reducibility.lattice_chain(rep, args.word_bound)
        result["chain"] = chain.to_json()
        result["chain"]["stable"] = all(reducibility.is_stable(B, rep) for B in chain.bases)
    if args.brute_force is not None:
        result["brute_force_classes"] = reducibility.brute_force_classes(rep, args.brute_force)
    emit(envelope("dvr analyze", result), args.json)
    return 0


def cmd_delta_check(args) -> int:
    exp = delta.tau_coefficients(args.nmax)
    rows = delta.congruence_table(args.lmax, exp)
    vals = [r.valuation for r in rows if r.l != delta.EISENSTEIN_PRIME and r.valuation is not None]
    result = {
        "l_max": args.lmax,
        "n_max": args.nmax,
        "rows": [r.to_json() for r in rows],
        "all_congruent": all(r.congruent for r in rows),
        "min_j_valuation": min(vals) if vals else None,
    }
    emit(envelope("delta check", result), args.json)
    if not result["all_congruent"]:
        raise CommandFailed("an Eisenstein congruence failed")
    return 0


def end_to_end_691(N: int = 3, M: int = 3, cache_dir=None, report_dir=None) -> dict:
    """Delta checks, the omega^11 series at 691, lattice counts and variation sets."""
    stages = {}
    stage = "delta"
    try:
        exp = delta.tau_coefficients(1000)
        rows = delta.congruence_table(200, exp)
        stages["delta"] = {
            "all_congruent": all(r.congruent for r in rows),
            "primes_checked": len(rows),
            "tau_691_mod_691": exp(691) % 691,
            "pfour_generator_valuation": delta.pfour_generator_valuation(exp),
            "min_j_valuation": min(r.valuation for r in rows if r.l != 691),
        }
        stage = "irregular-pair"
        stages["irregular_pair"] = {"p": 691, "k": 12, "irregular": bernoulli.is_irregular_pair(691, 12)}
        stage = "kl"
        series = compute_kl(691, 11, N, M, cache_dir)
        kl_out, ok = kl_report(series, iwasawa.DEFAULT_LAMBDA_MAX, True)
        w12 = iwasawa.specialize(series.series, 12, series.u)
        v12 = valuation(w12)
        kl_out["weight12_valuation"] = v12 if isinstance(v12, int) else str(v12)
        kl_out["interpolation_ok"] = ok
        stages["kl"] = kl_out
        stage = "lattices"
        fact = kl_mod.kl_factorization(series)
        stages["lattices"] = lattice_report(fact, True)
        stage = "figures"
        if report_dir is not None:
            from .plotting import plot_lattice_graph, plot_newton_polygon

            out = Path(report_dir)
            out.mkdir(parents=True, exist_ok=True)
            graph = lc.rectangle_graph(fact)
            (out / "lattice_graph.dot").write_text(graph.to_dot())
            plot_lattice_graph(graph, out / "lattice_graph.png", "free stable lattice classes, p = 691")
            plot_newton_polygon(list(series.series.residues), 691, N, out / "newton_polygon.png",
                                "L_p(omega^11) at p = 691")
            stages["figures"] = ["lattice_graph.dot", "lattice_graph.png", "newton_polygon.png"]
    except IlatError as exc:
        raise IlatError(f"stage {stage} failed: {exc}") from exc
    return stages


def cmd_showcase(args) -> int:
    result = end_to_end_691(args.prec_p, args.prec_t, args.cache_dir, args.report_dir)
    report = envelope("showcase-691", result, args)
    if args.report_dir:
        Path(args.report_dir, "report.json").write_text(dumps(report))
    emit(report, args.json)
    if not result["kl"]["interpolation_ok"] or not result["delta"]["all_congruent"]:
        raise CommandFailed("showcase checks failed")
    return 0


def _add_assume(sp) -> None:
    sp.add_argument("--assume", action="append", choices=HYPOTHESES, default=[],
                    help="record a hypothesis as asserted by the user (repeatable)")


def _add_factorization(sp) -> None:
    sp.add_argument("--mu", type=nonneg_int)
    sp.add_argument("--factors", default="", help='e.g. "T+5:1,T^2+5:2"')
    sp.add_argument("--p", type=odd_prime, help="prime used to certify factor irreducibility")
    sp.add_argument("--assume-irreducible", action="store_true",
                    help="treat uncertified factors as irreducible")
    sp.add_argument("--from-kl", type=kl_key, metavar="p,j,N,M")
    sp.add_argument("--lambda-max", type=positive_int, default=iwasawa.DEFAULT_LAMBDA_MAX)
    sp.add_argument("--cache-dir")
    _add_assume(sp)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ilat", description="Stable lattices, Iwasawa invariants and p-adic L-series.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("irregular-pairs", help="scan for irregular pairs (p, k)")
    sp.add_argument("--pmax", type=positive_int, required=True)
    sp.add_argument("--workers", type=positive_int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_irregular_pairs)

    sp = sub.add_parser("kl", help="Kubota-Leopoldt series in Z_p[[T]]")
    sp.add_argument("--p", type=odd_prime, required=True)
    sp.add_argument("--chi-omega-exp", type=int, required=True)
    sp.add_argument("--prec-p", type=positive_int, default=DEFAULT_N)
    sp.add_argument("--prec-t", type=positive_int, default=DEFAULT_M)
    sp.add_argument("--lambda-max", type=positive_int, default=iwasawa.DEFAULT_LAMBDA_MAX)
    sp.add_argument("--cache-dir")
    sp.add_argument("--u", type=positive_int, help="topological generator value (default 1+p)")
    sp.add_argument("--verify", action="store_true", help="check specializations at weights 2..M+2")
    sp.add_argument("--figure", help="write the Newton polygon to this image file")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_kl)

    sp = sub.add_parser("weierstrass", help="Weierstrass preparation of a truncated series")
    sp.add_argument("--p", type=odd_prime, required=True)
    sp.add_argument("--prec-p", type=positive_int, default=DEFAULT_N)
    sp.add_argument("--prec-t", type=positive_int)
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--coeffs", help="comma-separated c0,c1,...")
    src.add_argument("--poly", help='polynomial in T, e.g. "T^2+3*T+10"')
    sp.add_argument("--lambda-max", type=positive_int, default=iwasawa.DEFAULT_LAMBDA_MAX)
    sp.add_argument("--figure")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_weierstrass)

    sp = sub.add_parser("lattice-count", help="count free stable lattice classes")
    _add_factorization(sp)
    sp.add_argument("--pfour", action=argparse.BooleanOptionalAction, default=None,
                    help="whether condition (pFour) holds; enables the i = 0 variation set")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_lattice_count)

    sp = sub.add_parser("lattice-graph", help="graph of free stable lattice classes")
    _add_factorization(sp)
    sp.add_argument("--dot", metavar="FILE", help="write DOT ('-' for stdout)")
    sp.add_argument("--json", dest="json_out", metavar="FILE", help="write JSON ('-' for stdout)")
    sp.add_argument("--figure", metavar="FILE", help="render the graph to an image file")
    sp.set_defaults(func=cmd_lattice_graph)

    sp = sub.add_parser("dvr", help="representations over Z_p")
    dsub = sp.add_subparsers(dest="dvr_command", required=True)
    dp = dsub.add_parser("analyze", help="ideal of reducibility and stable lattice chain")
    dp.add_argument("--rep", required=True)
    dp.add_argument("--word-bound", type=positive_int, default=reducibility.DEFAULT_WORD_BOUND)
    dp.add_argument("--chain", action="store_true")
    dp.add_argument("--brute-force", type=nonneg_int, metavar="J", help="also count lattices by search below p^J")
    dp.add_argument("--json", action="store_true")
    dp.set_defaults(func=cmd_dvr_analyze)

    sp = sub.add_parser("delta", help="Ramanujan Delta fixtures")
    dsub = sp.add_subparsers(dest="delta_command", required=True)
    dp = dsub.add_parser("check", help="Eisenstein congruences mod 691")
    dp.add_argument("--lmax", type=positive_int, required=True)
    dp.add_argument("--nmax", type=positive_int, default=1000)
    dp.add_argument("--json", action="store_true")
    dp.set_defaults(func=cmd_delta_check)

    sp = sub.add_parser("showcase-691", help="end-to-end run of the Delta / 691 example")
    sp.add_argument("--prec-p", type=positive_int, default=3)
    sp.add_argument("--prec-t", type=positive_int, default=3)
    sp.add_argument("--cache-dir")
    sp.add_argument("--report-dir", help="write report.json, DOT and figures here")
    sp.add_argument("--json", action="store_true")
    _add_assume(sp)
    sp.set_defaults(func=cmd_showcase)
    return ap


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        parser.print_usage(sys.stderr)
        print(f"ilat: error: {exc}", file=sys.stderr)
        return 2
    except (IlatError, ValueError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return 1


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
