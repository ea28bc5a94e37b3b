"""Command line front end: orbitlift {validate,lift,triple,moment,verify-all,dims}."""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .checks import DETERMINISTIC, CheckResult, random_suite_tasks, tableau_checks
from .corpus import admissible_tableaux
from .dualpair import build_moment_lift, build_wspace, sigma_report
from .sl2 import grading_report, grade, mx_dimension_report
from .tableaux import YoungTableau, build_module, is_admissible, lift_size, theta_lift_tableau

EXIT_OK, EXIT_FAIL, EXIT_SCHEMA = 0, 1, 2

TABLEAU_CHECKS = tuple(k for k in DETERMINISTIC if k.startswith(("tableaux.", "sl2.relations")))
TRIPLE_CHECKS = tuple(k for k in DETERMINISTIC if k.startswith(("sl2.", "hermitian.")))
LIFT_CHECKS = ("dualpair.moment_lift", "dualpair.sigma")


class SchemaError(ValueError):
    pass


class Info(CheckResult):
    """An informational record: always passes and carries a value."""

    def __init__(self, id, value, anchor):
        super().__init__(id, True, None, "info")
        self.value = value
        self.anchor = anchor

    def to_json(self):
        return {"id": self.id, "paper_anchor": self.anchor, "status": "pass", "value": self.value}


def _load_json(path):
    try:
        if path in (None, "-"):
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError("cannot read %s: %s" % (path, exc)) from exc


def _parse_tableau(obj, default_name="input"):
    if not isinstance(obj, dict):
        raise SchemaError("a tableau must be a JSON object, got %s" % type(obj).__name__)
    try:
        tab, eps = YoungTableau.from_json(obj)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError("bad tableau: %s" % exc) from exc
    return obj.get("name", default_name), tab, eps


def _load_corpus(path):
    obj = _load_json(path)
    if isinstance(obj, dict) and "tableaux" in obj:
        obj = obj["tableaux"]
    if isinstance(obj, dict):
        obj = [obj]
    if not isinstance(obj, list):
        raise SchemaError("expected a tableau, a list of tableaux or {\"tableaux\": [...]}")
    return [_parse_tableau(o, "t%03d" % k) for k, o in enumerate(obj)]


def _threads():
    try:
        return max(1, int(os.environ.get("ORBITLIFT_THREADS", "1")))
    except ValueError:
        return 1


def _run_tasks(tasks):
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(lambda f: f(), tasks))
    flat = []
    for r in results:
        flat.extend(r if isinstance(r, list) else [r])
    return flat


def _emit(records, output):
    lines = [json.dumps(r.to_json(), sort_keys=True, separators=(",", ":"), default=str)
             for r in sorted(records, key=lambda r: r.id)]
    text = "\n".join(lines) + ("\n" if lines else "")
    _write(text, output)
    return EXIT_OK if all(r.ok for r in records) else EXIT_FAIL


def _write(text, output):
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(output, "w") as fh:
            fh.write(text)


def cmd_validate(args):
    name, tab, eps = _parse_tableau(_load_json(args.input))
    records = tableau_checks(name, tab, eps, TABLEAU_CHECKS)
    records.append(Info("info.dim/" + name, tab.size, "dimension of V over D"))
    records.append(Info("info.partition/" + name, tab.partition, "partition of the tableau"))
    return _emit(records, args.output)


def _dim_vtilde(args, tab):
    return args.dim_vtilde if args.dim_vtilde is not None else tab.size + tab.num_parts


def cmd_lift(args):
    name, tab, eps = _parse_tableau(_load_json(args.input))
    dvt = _dim_vtilde(args, tab)
    try:
        lifted = theta_lift_tableau(tab, eps, dvt)
    except ValueError as exc:
        return _emit([CheckResult("dualpair.moment_lift/" + name, False, {"error": str(exc)})], args.output)
    records = tableau_checks(name, tab, eps, LIFT_CHECKS, dim_Vtilde=dvt)
    records.append(Info("info.lifted_tableau/" + name, lifted.to_json(-eps), "tableau of the lifted orbit"))
    records.append(Info("info.lifted_partition/" + name, lifted.partition, "partition of the lifted orbit"))
    records.append(Info("info.s/" + name, lift_size(tab, dvt), "length of the added column of 1s"))
    return _emit(records, args.output)


def cmd_triple(args):
    name, tab, eps = _parse_tableau(_load_json(args.input))
    records = tableau_checks(name, tab, eps, TRIPLE_CHECKS + ("sl2.relations",))
    if is_admissible(tab, eps):
        V, gamma = build_module(tab, eps)
        gr = grade(gamma)
        records.append(Info("info.grading/" + name, grading_report(gr), "dimensions of V_i and g_i"))
        rep = mx_dimension_report(gamma, gr, tab)
        records.append(Info("info.mx/" + name, rep, "dimension of m_X against the attached forms"))
        records.append(Info("info.triple/" + name, gamma.to_json(), "X, H, Y"))
    return _emit(records, args.output)


def cmd_moment(args):
    name, tab, eps = _parse_tableau(_load_json(args.input))
    try:
        lift = build_moment_lift(tab, eps, _dim_vtilde(args, tab))
    except ValueError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_FAIL
    dump = lift.to_json()
    _write(json.dumps(dump, sort_keys=True, separators=(",", ":")) + "\n", args.output)
    return EXIT_OK if all(dump["checks"].values()) else EXIT_FAIL


def cmd_dims(args):
    name, tab, eps = _parse_tableau(_load_json(args.input))
    if not is_admissible(tab, eps):
        return _emit([CheckResult("tableaux.admissible/" + name, False, None)], args.output)
    dvt = _dim_vtilde(args, tab)
    lift = build_moment_lift(tab, eps, dvt)
    rep = sigma_report(lift)
    records = [
        Info("info.dim_V/" + name, tab.size, "dimension of V over D"),
        Info("info.dim_Vtilde/" + name, dvt, "dimension of V~ over D"),
        Info("info.grading/" + name, grading_report(lift.grading), "dimensions of V_i and g_i"),
        Info("info.grading_tilde/" + name, grading_report(lift.grading_t), "dimensions of V~_i and g~_i"),
        Info("info.dim_W/" + name, build_wspace(lift).dim, "dimension of W over Q"),
        CheckResult("dualpair.sigma/" + name, rep["dims_match"], rep, "dualpair.sigma"),
    ]
    return _emit(records, args.output)


def cmd_verify_all(args):
    if args.input:
        corpus = _load_corpus(args.input)
    else:
        corpus = admissible_tableaux(args.max_part)
    tasks = [(lambda n=n, t=t, e=e: tableau_checks(n, t, e)) for n, t, e in corpus]
    pool = []
    for n, t, e in corpus:
        if t.size <= args.pool_size and is_admissible(t, e):
            pool.append((n, build_moment_lift(t, e)))
    tasks.extend(random_suite_tasks(pool, args.samples, args.seed, args.bound))
    return _emit(_run_tasks(tasks), args.output)


def build_parser():
    p = argparse.ArgumentParser(prog="orbitlift", description="Exact constructions and checks for lifts of nilpotent orbits.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_input=True):
        sp.add_argument("--input", required=needs_input, help="JSON input file ('-' for stdin)")
        sp.add_argument("--output", default=None, help="output file (default stdout)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=int, default=100)
        sp.add_argument("--bound", type=int, default=10, help="bound on random numerators and denominators")
        sp.add_argument("--max-part", type=int, default=8, help="largest tableau size in the generated corpus")
        sp.add_argument("--dim-vtilde", type=int, default=None, help="dimension of V~ (default: smallest lift)")

    for name, fn, helptext in (
        ("validate", cmd_validate, "check a tableau and the module it builds"),
        ("lift", cmd_lift, "lift a tableau and check the canonical T"),
        ("triple", cmd_triple, "grading data of the sl2-triple of a tableau"),
        ("moment", cmd_moment, "dump the canonical T with X and X~"),
        ("dims", cmd_dims, "dimensions of the graded pieces and of W"),
    ):
        sp = sub.add_parser(name, help=helptext)
        common(sp)
        sp.set_defaults(func=fn)
    sp = sub.add_parser("verify-all", help="run every suite over a corpus")
    common(sp, needs_input=False)
    sp.add_argument("--pool-size", type=int, default=5, help="largest tableau used by the randomized suites")
    sp.set_defaults(func=cmd_verify_all)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        sys.stderr.write("schema error: %s\n" % exc)
        return EXIT_SCHEMA


if __name__ == "__main__":
    sys.exit(main())
