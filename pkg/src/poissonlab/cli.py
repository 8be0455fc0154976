"""Command-line front end: ``poissonlab <command> ...``.

Exit codes: 0 pass, 1 not witnessed / failed, 2 usage error, 3 unsupported input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .exact import ExactMatrix, to_fraction
from .lie import (LieAlgebraSpec, centralizer, classical, index, nilpotent_orbits,
                  nilpotent_representative, parse_algebra, principal_triple_gl, sample_regular,
                  semisimple_representative, subspace_elements)
from .mf_gt import Unsupported
from .partitions import Partition
from .report import FORMATS, ConfigError, RunConfig, VerificationReport, build_config, to_jsonable

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 1, 2, 3


class UsageError(ValueError):
    pass


class UnsupportedInput(ValueError):
    pass


# -- element specifications ---------------------------------------------------------

def parse_matrix_literal(text: str, n: int) -> ExactMatrix:
    try:
        rows = json.loads(text)
        M = ExactMatrix([[to_fraction(v) for v in row] for row in rows])
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad matrix literal: {exc}") from exc
    if M.nrows != n or M.ncols != n:
        raise UsageError(f"matrix literal must be {n} x {n}")
    return M


def _values(text: str) -> list[Fraction]:
    try:
        return [to_fraction(v) for v in text.split(",") if v.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad value list {text!r}") from exc


def random_semisimple(g: LieAlgebraSpec, rng, bound: int) -> ExactMatrix:
    """Semisimple element with small integer spectrum (repeats allowed)."""
    if g.family in ("gl", "sl"):
        vals = [Fraction(rng.randint(-3, 3)) for _ in range(g.n)]
        if g.family == "sl":
            vals[-1] -= sum(vals)
        return semisimple_representative(g, vals)
    if g.family == "so":
        return semisimple_representative(g, [rng.randint(0, 3) for _ in range(g.n // 2)])
    raise UnsupportedInput(f"no semisimple sampler for {g.identifier}")


def parse_orbit(g: LieAlgebraSpec, spec: str, config: RunConfig, label: str = "orbit") -> ExactMatrix:
    spec = spec.strip()
    rng = config.rng(label)
    try:
        if spec == "point":
            return ExactMatrix.zeros(g.n)
        if spec.startswith("["):
            x = parse_matrix_literal(spec, g.n)
            if not g.contains(x):
                raise UsageError("matrix literal is not in the algebra")
            return x
        kind, _, arg = spec.partition(":")
        if kind == "nilpotent":
            variant = 0
            if arg.endswith(("+", "-")):
                variant, arg = int(arg.endswith("-")), arg[:-1]
            return nilpotent_representative(g, Partition.parse(arg), variant)
        if kind == "strong":
            if g.family != "gl":
                raise UnsupportedInput("strongly nilpotent representatives exist for gl only")
            from .mf_gt import strongly_nilpotent
            return strongly_nilpotent(Partition.parse(arg)).e
        if kind == "semisimple":
            return semisimple_representative(g, _values(arg))
        if kind == "random-semisimple":
            return random_semisimple(g, rng, config.coefficient_bound)
        if kind == "random-regular":
            if arg:
                rng = config.rng(f"{label}:{arg}")
            return sample_regular(g, rng, config.coefficient_bound)
    except NotImplementedError as exc:
        raise UnsupportedInput(str(exc)) from exc
    except UnsupportedInput:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    raise UsageError(f"unknown orbit specification {spec!r}")


def parse_shift(g: LieAlgebraSpec, spec: str, config: RunConfig) -> ExactMatrix:
    """``random-regular[:seed]``, ``nilpotent:e|f``, ``gs-chain:<t>``, or any orbit spec."""
    kind, _, arg = spec.strip().partition(":")
    if kind == "nilpotent" and arg in ("e", "f"):
        if g.family not in ("gl", "sl"):
            raise UnsupportedInput("principal triples are built for gl and sl")
        e, _, f = principal_triple_gl(g.n)
        return e if arg == "e" else f
    if kind == "gs-chain":
        if g.family != "gl":
            raise UnsupportedInput("the chain direction a(t) lives in gl")
        try:
            t = to_fraction(arg)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad parameter {arg!r}") from exc
        return ExactMatrix.diag([t ** i for i in range(g.n)])
    return parse_orbit(g, spec, config, label="shift")


# -- commands --------------------------------------------------------------------------

def _algebra(text: str) -> LieAlgebraSpec:
    try:
        return parse_algebra(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_mf_verify(args, config: RunConfig, report: VerificationReport) -> None:
    from .pencils import NotRegular, mf_completeness_verdict

    g = _algebra(args.algebra)
    a = parse_shift(g, args.a, config)
    x = parse_orbit(g, args.orbit, config)
    try:
        v = mf_completeness_verdict(g, a, x, config.rng("mf-verify"), config.sample_budget,
                                    config.coefficient_bound)
    except NotRegular as exc:
        raise UsageError(str(exc)) from exc
    report.add("mf-complete-on-orbit",
               "shift subalgebra differentials reach rank l + dim(Gx)/2 on the orbit",
               v.complete, algebra=g.identifier, a=a, x=x, result=v.to_json())


def cmd_gt(args, config: RunConfig, report: VerificationReport):
    from .mf_gt import gt_completeness_verdict, paint_pattern, strongly_nilpotent

    if args.gt_command == "pattern":
        r = Partition.parse(args.partition)
        pat = paint_pattern(r)
        report.add("colour-pattern-counts", "red = n, green = dim O / 2, total = n(n+1)/2",
                   pat.count("red") == r.n and pat.count("green") == r.orbit_dim() // 2
                   and pat.total == r.n * (r.n + 1) // 2, partition=str(r), pattern=pat.to_json())
        return pat.render(config.output_format)
    if args.gt_command == "strong-nilpotent":
        if args.algebra:
            g = _algebra(args.algebra)
            if g.family != "gl":
                raise UnsupportedInput(f"no strongly nilpotent elements are constructed for "
                                       f"{g.identifier}")
        r = Partition.parse(args.partition)
        cert = strongly_nilpotent(r)
        report.add("strongly-nilpotent-certificate",
                   "corners nilpotent of collapsed types; span n + dim O / 2; intersection n",
                   True, certificate=cert.to_json())
        if config.output_format == "json":
            return cert.to_json()
        lines = ["\t".join(row) for row in cert.e.to_strings()]
        lines.append(f"dim_span = {cert.dim_span}, "
                     f"dim_intersection = {cert.dim_intersection_with_centralizer}")
        return "\n".join(lines)
    g = _algebra(args.algebra)
    if g.family not in ("gl", "so"):
        raise UnsupportedInput("the chain subalgebra is defined for gl and so")
    x = parse_orbit(g, args.orbit, config)
    v = gt_completeness_verdict(g, x, config.rng("gt-verify"), config.sample_budget,
                                config.coefficient_bound)
    report.add("gt-complete-on-orbit", "chain subalgebra image in g/g^x has dimension dim(Gx)/2",
               v.complete, algebra=g.identifier, x=x, result=v.to_json())


def cmd_pencil(args, config: RunConfig, report: VerificationReport):
    from .pencils import DegeneratePencil, NotSkew, SkewPencil, check_jk_properties, jordan_kronecker_census

    try:
        text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
        p = SkewPencil.from_json(text)
    except (OSError, ValueError, NotSkew) as exc:
        raise UsageError(f"invalid pencil: {exc}") from exc
    try:
        census = jordan_kronecker_census(p, config.rng("pencil-locus"))
    except DegeneratePencil as exc:
        raise UsageError(str(exc)) from exc
    props = check_jk_properties(p, config.rng("pencil-members"))
    report.add("pencil-kernel-sum", "dim(L meet ker C) = dim V - m for sampled members",
               props["i"], census=census.to_json())
    if props["ii"] is not None:
        report.add("pencil-kernel-sum-regular", "dim L = dim V - m/2 when all members are regular",
                   props["ii"], L_dim=props["L_dim"])
    report.add("pencil-kernel-sum-bound", "dim L <= dim V - m + rank(C)/2 for singular members",
               props["iii"], singular_members=props["singular_checked"])
    return census.to_json()


ELASHVILI_LIMITS = {"gl": 6, "so": 7, "sl": 6}


def cmd_elashvili(args, config: RunConfig, report: VerificationReport) -> None:
    g = _algebra(args.algebra)
    limit = ELASHVILI_LIMITS.get(g.family)
    if limit is None:
        raise UnsupportedInput(f"nilpotent orbits are enumerated for gl, sl and so, not {g.family}")
    if g.n > limit and not args.force:
        raise UnsupportedInput(f"{g.identifier} exceeds the default size guard (use --force)")
    for orbit in nilpotent_orbits(g):
        cent = centralizer(g, orbit.representative)
        cert = index(g, subspace_elements(g, cent), config.rng(f"elashvili:{orbit.label}"),
                     trials=5, bound=config.coefficient_bound, check=False)
        report.add(f"centralizer-index:{orbit.label}", "index of the centraliser equals the rank",
                   cert.value == g.rank_l and cert.agreeing == cert.trials,
                   algebra=g.identifier, partition=orbit.label, index=cert.value,
                   rank=g.rank_l, ranks=list(cert.ranks), witness=cert.witness)


def cmd_corank(args, config: RunConfig, report: VerificationReport) -> None:
    from .corank import PairSpec, hamiltonian_report

    try:
        pair = PairSpec.parse(args.pair)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    x = parse_orbit(pair.G, args.orbit, config)
    rep = hamiltonian_report(pair, x, config.rng("corank"), config.sample_budget,
                             config.coefficient_bound, strict=False)
    report.add("corank-routes-agree", "all available corank computations coincide",
               rep.routes_agree, pair=pair.identifier, x=x)
    report.add("corank-value", "corank of the subgroup action on the orbit (0 = coisotropic)",
               rep.corank == 0 or not pair.strong_gelfand, report=rep.to_json())


def cmd_commute(args, config: RunConfig, report: VerificationReport) -> None:
    from .invariants import c1_subalgebra, check_poisson_commutative, gt_subalgebra, mf_subalgebra

    g = _algebra(args.algebra)
    try:
        if args.family == "mf":
            A = mf_subalgebra(g, parse_shift(g, args.a, config))
        elif args.family == "gt":
            A = gt_subalgebra(g)
        else:
            A = c1_subalgebra(g)
    except ValueError as exc:
        raise UnsupportedInput(str(exc)) from exc
    res = check_poisson_commutative(A, config.rng("commute"), args.points, config.coefficient_bound)
    report.add(f"poisson-commutative:{args.family}", "all generator brackets vanish at random points",
               res.passed, algebra=g.identifier, points=res.points, pairs=res.pairs,
               bound=res.bound, counterexamples=list(res.nonzero))


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="RNG seed (default: env or config)")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="sample budget per verdict")
    common.add_argument("--bound", type=int, default=argparse.SUPPRESS, help="random coefficient bound B")
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS, help="output format")
    common.add_argument("--report", default=argparse.SUPPRESS, help="append a JSON-lines report here")
    common.add_argument("--config", default=argparse.SUPPRESS, help="flat key = value config file")

    parser = argparse.ArgumentParser(prog="poissonlab", parents=[common],
                                     description="Exact verification of commutative subalgebras")
    sub = parser.add_subparsers(dest="command", required=True)

    mf = sub.add_parser("mf", parents=[common], help="shift subalgebras")
    mf_sub = mf.add_subparsers(dest="mf_command", required=True)
    mfv = mf_sub.add_parser("verify", parents=[common])
    mfv.add_argument("--algebra", required=True)
    mfv.add_argument("--a", default="random-regular")
    mfv.add_argument("--orbit", required=True)

    gt = sub.add_parser("gt", parents=[common], help="chain subalgebras")
    gt_sub = gt.add_subparsers(dest="gt_command", required=True)
    gtv = gt_sub.add_parser("verify", parents=[common])
    gtv.add_argument("--algebra", required=True)
    gtv.add_argument("--orbit", required=True)
    gts = gt_sub.add_parser("strong-nilpotent", parents=[common])
    gts.add_argument("--partition", required=True)
    gts.add_argument("--algebra", default=None)
    gtp = gt_sub.add_parser("pattern", parents=[common])
    gtp.add_argument("--partition", required=True)

    pen = sub.add_parser("pencil", parents=[common], help="analyse a pencil JSON file")
    pen.add_argument("file", help="pencil JSON, or - for stdin")

    ela = sub.add_parser("elashvili", parents=[common], help="index of nilpotent centralisers")
    ela.add_argument("--algebra", required=True)
    ela.add_argument("--force", action="store_true", help="lift the size guard")

    cor = sub.add_parser("corank", parents=[common], help="corank of a chain-pair action")
    cor.add_argument("--pair", required=True)
    cor.add_argument("--orbit", required=True)

    com = sub.add_parser("commute", parents=[common], help="Poisson-commutativity oracle")
    com.add_argument("--algebra", required=True)
    com.add_argument("--family", choices=("mf", "gt", "c1"), required=True)
    com.add_argument("--a", default="random-regular")
    com.add_argument("--points", type=int, default=100)
    return parser


COMMANDS = {"mf": cmd_mf_verify, "gt": cmd_gt, "pencil": cmd_pencil, "elashvili": cmd_elashvili,
            "corank": cmd_corank, "commute": cmd_commute}


def _emit(result, config: RunConfig, report: VerificationReport, out) -> None:
    if result is None:
        result = report.summary() if config.output_format == "ascii" else report.to_json()
    if isinstance(result, str):
        print(result, file=out)
    else:
        print(json.dumps(to_jsonable(result), sort_keys=True, indent=2), file=out)


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        opt = vars(args)
        config = build_config(opt.get("config"), seed=opt.get("seed"),
                              sample_budget=opt.get("budget"), coefficient_bound=opt.get("bound"),
                              output_format=opt.get("format"), report_path=opt.get("report"))
    except (ConfigError, OSError) as exc:
        print(f"poissonlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = VerificationReport(argv, config)
    try:
        result = COMMANDS[args.command](args, config, report)
    except UsageError as exc:
        print(f"poissonlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnsupportedInput, Unsupported) as exc:
        print(f"poissonlab: unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    _emit(result, config, report, out)
    if config.report_path:
        report.append_to(config.report_path)
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
