"""Command-line surface: classification, census, quotient reports, self-checks.

Four subcommands, all batch-oriented and deterministic:

    stability            classify one (d_beta, d_gamma) cell, showing the
                         evaluated inequalities
    census               full table of cells with labeled counts and totals
    git-classify         closed-form vs brute-force torus-quotient class for
                         a JSON file of configurations, with S-representatives
    local-model-verify   run the exact local-model property suite

Exit codes: 0 success, 1 usage or input error, 2 a check or oracle
disagreement failed.  Output is byte-identical for identical flags and
seed; census and git-classify also emit CSV.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from . import local_model
from .configuration import Configuration, config_from_json, config_to_json
from .errors import InvalidGenusError, LengthMismatchError, SearchSpaceError
from .git_engine import (
    DEFAULT_SEARCH_BUDGET,
    GitClass,
    Linearization,
    bruteforce_search,
    classify_closed_form,
    s_equivalence_representative,
)
from .stability import (
    ModuliParams,
    StabilityClass,
    census,
    classify_counts,
    milnor_wood_admits_stable,
    polystable_split_degrees,
)

USAGE_ERROR = 1
CHECK_FAILURE = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse reserves exit code 2 for usage errors; here 2 means a failed
    # check, so usage problems are rerouted through _UsageError -> exit 1
    def error(self, message: str) -> None:
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="su12fiber",
        description="Exact stability, census, and torus-quotient reports "
        "for rank-3 fiber data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, *, moduli: bool = True) -> None:
        if moduli:
            p.add_argument("--genus", type=int, required=True, help="curve genus, >= 2")
            p.add_argument(
                "--degree", type=int, default=0, help="line bundle degree (default 0)"
            )
        p.add_argument(
            "--format",
            choices=("json", "csv"),
            default="json",
            help="output format (default json)",
        )
        p.add_argument("--output", help="write the report here instead of stdout")

    p = sub.add_parser("stability", help="classify one vanishing-count cell")
    common(p)
    p.add_argument("--dbeta", type=int, required=True, help="slots where beta vanishes")
    p.add_argument("--dgamma", type=int, required=True, help="slots where gamma vanishes")

    p = sub.add_parser("census", help="classify every cell and count partitions")
    common(p)

    p = sub.add_parser("git-classify", help="torus-quotient classes for a config file")
    common(p)
    p.add_argument(
        "--input", required=True, help="JSON array of serialized configurations"
    )
    p.add_argument(
        "--rmax", type=int, default=1, help="highest linearization power to sweep"
    )

    p = sub.add_parser("local-model-verify", help="run the exact local-model suite")
    common(p, moduli=False)
    p.add_argument(
        "--truncation", type=int, default=8, help="series truncation order (default 8)"
    )
    p.add_argument("--seed", type=int, default=0, help="suite RNG seed (default 0)")
    p.add_argument(
        "--cases", type=int, default=200, help="randomized cases per check (default 200)"
    )
    return parser


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _csv_text(header: Sequence[str], rows: Sequence[Sequence], comments: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    for line in comments:
        buf.write(f"# {line}\n")
    return buf.getvalue()


def _warn_degree(p: ModuliParams) -> None:
    if not milnor_wood_admits_stable(p.g, p.d):
        sys.stderr.write(
            f"warning: degree {p.d} is outside the strict Milnor-Wood range "
            f"for genus {p.g}; no stable objects exist there\n"
        )


# stability


def _inequality(label: str, lhs: int, op: str, bound_name: str, rhs: int) -> dict:
    holds = lhs < rhs if op == "<" else lhs <= rhs
    return {
        "comparison": f"{label} {op} {bound_name}",
        "values": f"{lhs} {op} {rhs}",
        "holds": holds,
    }


def _cmd_stability(args: argparse.Namespace) -> int:
    p = ModuliParams(args.genus, args.degree)
    d_beta, d_gamma = args.dbeta, args.dgamma
    if d_beta < 0 or d_gamma < 0 or d_beta + d_gamma > p.N:
        raise _UsageError(
            f"need d_beta, d_gamma >= 0 with d_beta + d_gamma <= {p.N}"
        )
    _warn_degree(p)
    cls = classify_counts(p, d_beta, d_gamma)
    d_rest = p.N - d_beta - d_gamma
    payload = {
        "command": "stability",
        "genus": p.g,
        "degree": p.d,
        "slots": p.N,
        "d_beta": d_beta,
        "d_gamma": d_gamma,
        "d_rest": d_rest,
        "gamma_bound": p.gamma_bound,
        "beta_bound": p.beta_bound,
        "inequalities": [
            _inequality("d_gamma", d_gamma, "<", "gamma_bound", p.gamma_bound),
            _inequality("d_beta", d_beta, "<", "beta_bound", p.beta_bound),
            _inequality("d_gamma", d_gamma, "<=", "gamma_bound", p.gamma_bound),
            _inequality("d_beta", d_beta, "<=", "beta_bound", p.beta_bound),
        ],
        "stability": cls.value,
        "stratum_dimension": p.g + d_rest if cls is StabilityClass.STABLE else None,
        "split_degrees": (
            list(polystable_split_degrees(p))
            if cls is StabilityClass.STRICTLY_POLYSTABLE
            else None
        ),
    }
    if args.format == "json":
        _emit(_json_text(payload), args.output)
    else:
        header = ["genus", "degree", "d_beta", "d_gamma", "d_rest", "stability", "stratum_dimension"]
        row = [p.g, p.d, d_beta, d_gamma, d_rest, cls.value, payload["stratum_dimension"]]
        comments = [f"{iq['values']} -> {iq['holds']}" for iq in payload["inequalities"]]
        _emit(_csv_text(header, [row], comments), args.output)
    return 0


# census


def _cmd_census(args: argparse.Namespace) -> int:
    p = ModuliParams(args.genus, args.degree)
    _warn_degree(p)
    result = census(p)
    totals = {cls.value: result.class_total(cls) for cls in StabilityClass}
    if args.format == "json":
        payload = {
            "command": "census",
            "genus": p.g,
            "degree": p.d,
            "slots": p.N,
            "rows": [
                {
                    "d_beta": r.d_beta,
                    "d_gamma": r.d_gamma,
                    "d_rest": r.d_r,
                    "stability": r.stability.value,
                    "labeled_count": r.labeled_count,
                    "stratum_dimension": r.stratum_dim,
                }
                for r in result.rows
            ],
            "totals": {**totals, "all": result.grand_total},
        }
        _emit(_json_text(payload), args.output)
    else:
        header = ["d_beta", "d_gamma", "d_rest", "stability", "labeled_count", "stratum_dimension"]
        rows = [
            [r.d_beta, r.d_gamma, r.d_r, r.stability.value, r.labeled_count,
             "" if r.stratum_dim is None else r.stratum_dim]
            for r in result.rows
        ]
        comments = [f"total {name} {count}" for name, count in totals.items()]
        comments.append(f"total all {result.grand_total}")
        _emit(_csv_text(header, rows, comments), args.output)
    return 0


# git-classify


def _load_configurations(path: str, expected_slots: int) -> list[Configuration]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _UsageError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise _UsageError(f"{path} must hold a JSON array of configurations")
    configs = []
    for k, entry in enumerate(data):
        try:
            c = config_from_json(entry)
        except (ValueError, TypeError) as exc:
            raise _UsageError(f"{path}[{k}]: {exc}") from exc
        if c.size != expected_slots:
            raise _UsageError(
                f"{path}[{k}]: configuration has {c.size} slots, expected {expected_slots}"
            )
        configs.append(c)
    return configs


def _witness_json(witness) -> Optional[dict]:
    if witness is None:
        return None
    power, exponents = witness
    return {"power": power, "exponents": list(exponents)}


def _cmd_git_classify(args: argparse.Namespace) -> int:
    p = ModuliParams(args.genus, args.degree)
    if not milnor_wood_admits_stable(p.g, p.d):
        raise _UsageError(
            f"degree {p.d} is outside the strict Milnor-Wood range for genus "
            f"{p.g}: the weight parameter and stable locus degenerate"
        )
    if args.rmax < 1:
        raise _UsageError("--rmax must be >= 1")
    lin = Linearization.for_moduli(p)
    configs = _load_configurations(args.input, p.N)

    reports = []
    all_agree = True
    for k, c in enumerate(configs):
        closed = classify_closed_form(c, lin)
        outcome = bruteforce_search(c, lin, args.rmax, DEFAULT_SEARCH_BUDGET)
        agree = closed is outcome.git_class
        all_agree = all_agree and agree
        if closed is GitClass.UNSTABLE:
            representative = None
        else:
            representative = config_to_json(s_equivalence_representative(c, lin))
        reports.append(
            {
                "index": k,
                "input": config_to_json(c),
                "closed_form": closed.value,
                "brute_force": outcome.git_class.value,
                "agreement": agree,
                "fixed_point": outcome.fixed_point,
                "monomials_enumerated": outcome.monomials_enumerated,
                "semistable_witness": _witness_json(outcome.semistable_witness),
                "stable_witness": _witness_json(outcome.stable_witness),
                "representative": representative,
            }
        )

    if args.format == "json":
        payload = {
            "command": "git-classify",
            "genus": p.g,
            "degree": p.d,
            "slots": p.N,
            "weight_parameter": p.n,
            "r_max": args.rmax,
            "configurations": reports,
            "all_agree": all_agree,
        }
        _emit(_json_text(payload), args.output)
    else:
        header = ["index", "closed_form", "brute_force", "agreement", "fixed_point",
                  "monomials_enumerated"]
        rows = [
            [r["index"], r["closed_form"], r["brute_force"], r["agreement"],
             r["fixed_point"], r["monomials_enumerated"]]
            for r in reports
        ]
        _emit(_csv_text(header, rows, [f"all_agree {all_agree}"]), args.output)
    return 0 if all_agree else CHECK_FAILURE


# local-model-verify


def _cmd_local_verify(args: argparse.Namespace) -> int:
    if args.truncation < 2:
        raise _UsageError("--truncation must be >= 2")
    if args.cases < 1:
        raise _UsageError("--cases must be >= 1")
    report = local_model.verification_suite(args.truncation, args.seed, args.cases)
    if args.format == "json":
        _emit(_json_text({"command": "local-model-verify", **report}), args.output)
    else:
        header = ["name", "passed", "detail"]
        rows = [[c["name"], c["passed"], c["detail"]] for c in report["checks"]]
        _emit(
            _csv_text(header, rows, [f"all_passed {report['all_passed']}"]),
            args.output,
        )
    return 0 if report["all_passed"] else CHECK_FAILURE


_DISPATCH = {
    "stability": _cmd_stability,
    "census": _cmd_census,
    "git-classify": _cmd_git_classify,
    "local-model-verify": _cmd_local_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _DISPATCH[args.command](args)
    except _UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_ERROR
    except (InvalidGenusError, LengthMismatchError, SearchSpaceError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_ERROR
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_ERROR


def entry() -> None:
    sys.exit(main())
