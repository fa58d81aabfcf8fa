"""Command-line front end: reproducible sort/measure/model experiments.

Subcommands: ``sort``, ``bound``, ``model``, ``oracle``, ``experiment``,
``gen``.  Data goes to standard output (or ``--out``); errors go to
standard error with exit code 1 for usage problems, 2 for data problems
and 3 for refused budgets.  Identical configuration and seed produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
from pathlib import Path

from . import models, oracle
from .metrics import mu_bounds, run_count
from .orders import FAMILIES, RECURSIVE_FAMILIES, OrderError, OrderSpec, sort_table
from .table import (
    EncodedTable,
    Permutation,
    TableError,
    encode,
    load_delimited,
    permute_columns,
    profile,
    shuffle_rows,
)

EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_BUDGET = 3

COLUMN_POLICIES = (
    "as_given",
    "increasing_cardinality",
    "decreasing_cardinality",
    "explicit",
    "exhaustive",
)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the contract wants 1
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit((EXIT_USAGE, f"{self.prog}: error: {message}"))


class UsageError(Exception):
    pass


def _parse_int_list(text: str, flag: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated integers, got {text!r}")


def _add_input_args(p: argparse.ArgumentParser, synthetic_ok: bool = True):
    p.add_argument("--input", help="delimited text file to load")
    p.add_argument("--delimiter", default=",", help="field delimiter (default ,)")
    p.add_argument("--header", action="store_true", help="first line is a header")
    p.add_argument(
        "--value-order",
        default="alphabetical",
        choices=("alphabetical", "frequency_desc"),
        help="per-column value order used when encoding file input",
    )
    if synthetic_ok:
        p.add_argument("--cards", help="synthetic column cardinalities, e.g. 4,8,16")
        p.add_argument("--p", type=float, help="synthetic tuple presence probability")
        p.add_argument("--sparse", action="store_true",
                       help="sample the synthetic table without enumerating the space")
    p.add_argument("--seed", type=int, default=0, help="seed for anything random")


def _load_table(args, synthetic_ok: bool = True) -> EncodedTable:
    if args.input:
        raw = load_delimited(args.input, args.delimiter, args.header)
        return encode(raw, args.value_order)
    if synthetic_ok and args.cards:
        if args.p is None:
            raise UsageError("synthetic input needs both --cards and --p")
        cards = _parse_int_list(args.cards, "--cards")
        model = models.UniformModel(cards, args.p)
        return oracle.generate_uniform(model, args.seed, sparse=args.sparse)
    raise UsageError("no input: pass --input FILE or --cards LIST --p FLOAT")


def _column_permutation(t: EncodedTable, args) -> Permutation:
    policy = args.col_order
    cards = t.cardinalities
    c = t.n_cols
    if args.family == "hilbert" and policy != "as_given" and not args.force_hilbert_perm:
        # Hilbert run counts are column-order oblivious; skip the policy
        # unless explicitly forced.
        print("note: hilbert ignores --col-order (use --force-hilbert-perm)",
              file=sys.stderr)
        return Permutation.identity(c)
    if policy == "as_given":
        return Permutation.identity(c)
    if policy == "increasing_cardinality":
        # ties broken by original column index
        return Permutation(tuple(sorted(range(c), key=lambda j: (cards[j], j))))
    if policy == "decreasing_cardinality":
        return Permutation(tuple(sorted(range(c), key=lambda j: (-cards[j], j))))
    if policy == "explicit":
        if not args.perm:
            raise UsageError("--col-order explicit needs --perm")
        return Permutation(_parse_int_list(args.perm, "--perm"))
    if policy == "exhaustive":
        return oracle.best_column_order(t, args.family).best_perm
    raise UsageError(f"unknown column policy {policy!r}")


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _write_table(t: EncodedTable, path: str, delimiter: str):
    lines = []
    if t.column_names:
        lines.append(delimiter.join(t.column_names))
    for row in t.decoded_rows():
        lines.append(delimiter.join(row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_gen(args) -> int:
    cards = _parse_int_list(args.cards, "--cards")
    model = models.UniformModel(cards, args.p)
    t = oracle.generate_uniform(model, args.seed, sparse=args.sparse)
    lines = [args.delimiter.join(row) for row in t.decoded_rows()]
    _emit("\n".join(lines) + "\n" if lines else "", args.out)
    return 0


def cmd_sort(args) -> int:
    t = _load_table(args)
    perm = _column_permutation(t, args)
    spec = OrderSpec(args.family, perm)
    result = sort_table(t, spec)
    stats = run_count(result)
    payload = {
        "schema": 1,
        "family": args.family,
        "column_permutation": list(perm.mapping),
        "cards": list(result.cardinalities),
        "n_rows": result.n_rows,
    }
    payload.update(stats.as_json())
    if args.out:
        _write_table(result, args.out, args.delimiter)
    sys.stdout.write(_json_dumps(payload))
    return 0


def cmd_bound(args) -> int:
    t = _load_table(args)
    report = mu_bounds(profile(t))
    payload = {
        "schema": 1,
        "cards": list(t.cardinalities),
        "distinct_rows": profile(t).distinct_rows,
    }
    payload.update(report.as_json())
    _emit(_json_dumps(payload), args.out)
    return 0


def _model_expectations(args) -> int:
    cards = _parse_int_list(args.cards, "--cards")
    if args.p is None:
        raise UsageError("model needs --p")
    family = args.family
    orders_to_report = [Permutation.identity(len(cards)).mapping]
    if args.all_orders:
        import itertools

        orders_to_report = list(itertools.permutations(range(len(cards))))
    rows = []
    for mapping in orders_to_report:
        permuted = tuple(cards[j] for j in mapping)
        if args.p >= 1.0:
            # complete table: exact counts, both Gray families agree
            fam = "lexicographic" if family == "lexicographic" else "gray"
            per_column, total = models.complete_runs(permuted, fam)
            rows.append(
                {
                    "permutation": list(mapping),
                    "cards": list(permuted),
                    "expected_runs": [float(x) for x in per_column],
                    "expected_total_runs": float(total),
                    "exact": True,
                }
            )
        else:
            rep = models.expected_runs(models.UniformModel(permuted, args.p), family)
            entry = rep.as_json()
            entry["permutation"] = list(mapping)
            entry["cards"] = list(permuted)
            entry["exact"] = False
            rows.append(entry)
    if args.format == "tsv":
        lines = ["permutation\tcards\texpected_total_runs"]
        for r in rows:
            lines.append(
                ",".join(map(str, r["permutation"]))
                + "\t" + ",".join(map(str, r["cards"]))
                + "\t" + repr(r["expected_total_runs"])
            )
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(_json_dumps({"schema": 1, "family": family, "p": args.p, "orders": rows}),
              args.out)
    return 0


def _model_lemmas(args) -> int:
    fams = (
        list(models.LEMMA_FAMILIES) if args.family in (None, "both")
        else [args.family]
    )
    pairs = []
    if args.sweep:
        n2, n3 = _parse_int_list(args.sweep, "--sweep")
        pairs = [(n2, n3)]
    else:
        n_max = args.n_max
        pairs = [(a, b) for a in range(2, n_max + 1) for b in range(a + 1, n_max + 1)]
    if args.format == "tsv" and args.sweep:
        lines = ["p\tN2\tN3\tlhs\trhs\tgap"]
        for fam in fams:
            for p, a, b, lhs, rhs, gap in models.inequality_sweep(
                n2, n3, fam, args.grid_points, args.dps
            ):
                lines.append(f"{p!r}\t{a}\t{b}\t{lhs!r}\t{rhs!r}\t{gap!r}")
        _emit("\n".join(lines) + "\n", args.out)
        return 0
    reports = []
    all_hold = True
    for fam in fams:
        for a, b in pairs:
            rep = models.check_order_inequality(a, b, fam, args.grid_points, args.dps)
            reports.append(rep.as_json())
            all_hold &= rep.holds
    _emit(_json_dumps({"schema": 1, "all_hold": all_hold, "checks": reports}), args.out)
    return 0


def cmd_model(args) -> int:
    if args.check_lemmas or args.sweep:
        return _model_lemmas(args)
    return _model_expectations(args)


def cmd_oracle(args) -> int:
    if args.fuzz:
        return _oracle_fuzz(args)
    if args.mu_sweep:
        return _oracle_mu_sweep(args)
    t = _load_table(args)
    result = oracle.brute_force_min_runs(t, args.limit)
    sorted_runs = run_count(sort_table(t, OrderSpec(args.family))).total_runs
    payload = {
        "schema": 1,
        "n_rows": t.n_rows,
        "cards": list(t.cardinalities),
    }
    payload.update(result.as_json())
    payload["heuristic_family"] = args.family
    payload["heuristic_runs"] = sorted_runs
    payload["heuristic_ratio"] = f"{sorted_runs}/{result.optimal_runs}"
    if args.column_search:
        payload["column_search"] = oracle.best_column_order(
            t, args.family, args.budget
        ).as_json()
    _emit(_json_dumps(payload), args.out)
    return 0


def _oracle_mu_sweep(args) -> int:
    t = _load_table(args)
    ks = _parse_int_list(args.ks, "--ks") if args.ks else None
    rows = oracle.mu_sweep(t, ks=ks, trials_per_k=args.trials, seed=args.seed)
    lines = ["k\tmean_mu\ttrials"]
    for k, mean, trials in rows:
        lines.append(f"{k}\t{mean!r}\t{trials}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _oracle_fuzz(args) -> int:
    """Random tables: how often does every recursive sort miss the optimum?"""
    if not args.cards or args.p is None:
        raise UsageError("--fuzz needs --cards and --p")
    cards = _parse_int_list(args.cards, "--cards")
    suboptimal = 0
    checked = 0
    for trial in range(args.fuzz):
        t = oracle.generate_uniform(
            models.UniformModel(cards, args.p), args.seed + trial
        )
        if t.n_rows == 0:
            continue
        try:
            best = oracle.brute_force_min_runs(t, args.limit).optimal_runs
        except oracle.BudgetError:
            continue
        checked += 1
        recursive_best = min(
            min(cs.per_perm.values())
            for cs in (
                oracle.best_column_order(t, fam, args.budget)
                for fam in RECURSIVE_FAMILIES
            )
        )
        if recursive_best > best:
            suboptimal += 1
    _emit(
        _json_dumps(
            {
                "schema": 1,
                "tables_checked": checked,
                "recursive_suboptimal": suboptimal,
                "frequency": (suboptimal / checked) if checked else 0.0,
            }
        ),
        args.out,
    )
    return 0


def cmd_experiment(args) -> int:
    if not args.cards or args.p is None:
        raise UsageError("experiment needs --cards and --p")
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    cards = _parse_int_list(args.cards, "--cards")
    fams = args.methods.split(",") if args.methods else ["shuffled", *FAMILIES]
    totals: dict[str, list[int]] = {f: [] for f in fams}
    for trial in range(args.trials):
        t = oracle.generate_uniform(
            models.UniformModel(cards, args.p), args.seed + trial
        )
        for fam in fams:
            if fam == "shuffled":
                # generate_uniform already emits a seeded shuffled order
                ordered = t
            elif fam in FAMILIES:
                ordered = sort_table(t, OrderSpec(fam))
            else:
                raise UsageError(f"unknown method {fam!r}")
            totals[fam].append(run_count(ordered).total_runs)
    lines = ["method\tmean_runs\tstd_runs\ttrials"]
    for fam in fams:
        vals = totals[fam]
        mean = statistics.fmean(vals)
        std = statistics.stdev(vals) if len(vals) > 1 else 0.0
        lines.append(f"{fam}\t{mean!r}\t{std!r}\t{len(vals)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="runsort", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="write a synthetic uniform table as CSV")
    p_gen.add_argument("--cards", required=True)
    p_gen.add_argument("--p", type=float, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--sparse", action="store_true")
    p_gen.add_argument("--delimiter", default=",")
    p_gen.add_argument("--out")
    p_gen.set_defaults(func=cmd_gen)

    p_sort = sub.add_parser("sort", help="sort a table and report run statistics")
    _add_input_args(p_sort)
    p_sort.add_argument("--family", default="lexicographic", choices=FAMILIES)
    p_sort.add_argument("--col-order", default="as_given", choices=COLUMN_POLICIES)
    p_sort.add_argument("--perm", help="explicit column permutation, e.g. 2,0,1")
    p_sort.add_argument("--force-hilbert-perm", action="store_true")
    p_sort.add_argument("--out", help="write the reordered table here")
    p_sort.set_defaults(func=cmd_sort)

    p_bound = sub.add_parser("bound", help="suboptimality bounds for a table")
    _add_input_args(p_bound)
    p_bound.add_argument("--out")
    p_bound.set_defaults(func=cmd_bound)

    p_model = sub.add_parser("model", help="analytic expectations and lemma checks")
    p_model.add_argument("--cards")
    p_model.add_argument("--p", type=float)
    p_model.add_argument("--family", default="lexicographic",
                         choices=(*models.LEMMA_FAMILIES, "both"))
    p_model.add_argument("--all-orders", action="store_true",
                         help="evaluate every column permutation")
    p_model.add_argument("--check-lemmas", action="store_true",
                         help="sample the column-swap inequalities on a p grid")
    p_model.add_argument("--sweep", help="emit the grid for one N2,N3 pair")
    p_model.add_argument("--n-max", type=int, default=10)
    p_model.add_argument("--grid-points", type=int, default=999)
    p_model.add_argument("--dps", type=int, default=50)
    p_model.add_argument("--format", default="json", choices=("json", "tsv"))
    p_model.add_argument("--out")
    p_model.set_defaults(func=cmd_model)

    p_oracle = sub.add_parser("oracle", help="exact minimum RunCount at desk scale")
    _add_input_args(p_oracle)
    p_oracle.add_argument("--family", default="lexicographic", choices=FAMILIES)
    p_oracle.add_argument("--limit", type=int, default=15,
                          help="max distinct rows for the exact search")
    p_oracle.add_argument("--budget", type=int, default=8,
                          help="max columns for exhaustive column search")
    p_oracle.add_argument("--column-search", action="store_true")
    p_oracle.add_argument("--fuzz", type=int,
                          help="check N random tables for recursive suboptimality")
    p_oracle.add_argument("--mu-sweep", action="store_true",
                          help="mean mu over random k-column projections, as TSV")
    p_oracle.add_argument("--ks", help="projection widths for --mu-sweep, e.g. 1,2,3")
    p_oracle.add_argument("--trials", type=int, default=1000,
                          help="projections per width for --mu-sweep")
    p_oracle.add_argument("--out")
    p_oracle.set_defaults(func=cmd_oracle)

    p_exp = sub.add_parser("experiment", help="mean RunCount per method over trials")
    p_exp.add_argument("--cards", required=True)
    p_exp.add_argument("--p", type=float, required=True)
    p_exp.add_argument("--trials", type=int, default=20)
    p_exp.add_argument("--seed", type=int, default=0)
    p_exp.add_argument("--methods",
                       help="comma list from: shuffled," + ",".join(FAMILIES))
    p_exp.add_argument("--out")
    p_exp.set_defaults(func=cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if isinstance(exc.code, tuple):
            code, message = exc.code
            print(message, file=sys.stderr)
            return code
        return 0 if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"runsort: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except oracle.BudgetError as exc:
        print(f"runsort: budget refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (TableError, OrderError, ValueError, OSError) as exc:
        print(f"runsort: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
