"""Command-line interface: ``hahnaut <command> ...``.

Exit codes: 0 success, 1 property failure, 2 input or verification error,
64 usage error.  ``--format kv`` prints ``key=value`` lines in a fixed order.

Automorphism config files are TOML::

    rho = "conj"              # or "id"
    tau = [[1, 1], [0, 1]]    # identity when omitted
    x = ["2", "(1+1r)"]       # k^* values on the lattice generators
    u = ["1 + t^[0,1]", "1"]  # 1-unit values; cutoff from --cutoff unless O(...) given
    level = 1                 # rational groups only

or, for an automorphism given by the images of the generators::

    rho = "id"
    images = ["t + t^2"]
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import tomli

from .autalg import (
    AutNormalForm,
    BlackBoxAut,
    HomToUnits,
    apply_aut,
    compose_nf,
    decompose,
    invert_nf,
)
from .coeffs import FieldAut, FieldDescriptor
from .errors import HahnError, UnknownSuite
from .exponents import Exponent, GroupDescriptor, OrderAutMatrix, oaut_check
from .laurent import (
    LaurentUnit,
    MoebiusMap,
    moebius_classify,
    moebius_compose,
    moebius_to_series,
    schilling_inverse,
    schilling_xs,
    sigma_u_apply,
)
from .parsing import (
    format_field_element,
    format_series,
    parse_exponent,
    parse_field_element,
    parse_matrix,
    parse_series,
)
from .puiseux import PuiseuxSeries, puiseux_apply_aut, puiseux_unit_pow_q
from .rayner import (
    FamilyPolicy,
    SupportDescriptor,
    family_check_axioms,
    family_check_oaut_stability,
    sample_descriptors,
)
from .sampling import rng_for
from .suites import run_suite, suite_names

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_INPUT = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- session --------------------------------------------------------------------


def parse_field(text: str) -> FieldDescriptor:
    if text == "q":
        return FieldDescriptor.rationals()
    if text.startswith("qsqrt:"):
        try:
            return FieldDescriptor.quadratic(int(text[6:]))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    raise argparse.ArgumentTypeError(f"unknown field {text!r} (use q or qsqrt:<m>)")


def parse_group(text: str) -> GroupDescriptor:
    parts = text.split(":")
    try:
        if parts[0] == "z" and len(parts) == 2:
            return GroupDescriptor.integer(int(parts[1]))
        if parts[0] == "q" and len(parts) == 3:
            return GroupDescriptor.rational(int(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    raise argparse.ArgumentTypeError(f"unknown group {text!r} (use z:<n> or q:<d>:<L>)")


class Session:
    """Field, group, cutoff, seed and output format shared by every command."""

    def __init__(self, args):
        self.field = args.field
        self.group = args.group
        self.seed = args.seed
        self.format = args.format
        self.cutoff = self._cutoff(args.cutoff)

    def _cutoff(self, text: str) -> Exponent:
        g = parse_exponent(text)
        if len(g) == 1 and self.group.dimension > 1:
            g = self.group.depth(g[0])
        if len(g) != self.group.dimension:
            raise UsageError(f"cutoff {text} does not match {self.group}")
        if not g.is_positive():
            raise UsageError("cutoff must be positive")
        return g

    def series(self, text: str, group=None):
        return parse_series(text, group or self.group, self.field, self.cutoff)


def _emit(session: Session, pairs: list) -> None:
    sep = "=" if session.format == "kv" else ": "
    for k, v in pairs:
        print(f"{k}{sep}{v}")


# -- automorphism configs ---------------------------------------------------------


def load_config(path: str, session: Session):
    """An :class:`AutNormalForm`, or a :class:`BlackBoxAut` for ``images`` configs."""
    try:
        with open(path, "rb") as fh:
            data = tomli.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except tomli.TOMLDecodeError as exc:
        raise UsageError(f"{path}: {exc}") from None
    group = session.group
    if "level" in data:
        if not group.is_rational:
            raise UsageError("'level' applies to rational groups only")
        group = GroupDescriptor.rational(group.dimension, int(data["level"]))
    field = session.field
    rho = FieldAut(data.get("rho", "id"))
    unknown = set(data) - {"rho", "tau", "x", "u", "level", "images"}
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    if "images" in data:
        # an image of t^g is known below g + depth unless an O-term says otherwise
        depth = _depth(session, group)
        images = [
            parse_series(s, group, field, gen + depth)
            for s, gen in zip(data["images"], group.generators())
        ]
        return BlackBoxAut.from_generators(rho, images, group, field)
    d = group.dimension
    tau = oaut_check(data["tau"], group) if "tau" in data else OrderAutMatrix.identity(d, group.kind)
    xs = [parse_field_element(str(v), field) for v in data.get("x", ["1"] * d)]
    depth = _depth(session, group)
    us = [parse_series(s, group, field, depth) for s in data.get("u", ["1"] * d)]
    return AutNormalForm(
        rho,
        tau,
        HomToUnits.field_units(xs, group, field),
        HomToUnits.one_units(us, group, field),
    )


def _depth(session: Session, group: GroupDescriptor) -> Exponent:
    return session.cutoff if group.dimension == len(session.cutoff) else group.depth(session.cutoff[-1])


def _as_nf(aut, session: Session) -> AutNormalForm:
    if isinstance(aut, AutNormalForm):
        return aut
    return decompose(aut, session.cutoff)


def _nf_pairs(nf: AutNormalForm, prefix: str = "") -> list:
    out = [(f"{prefix}rho", nf.rho.value)]
    tau = "[" + ",".join("[" + ",".join(str(c) for c in row) + "]" for row in nf.tau.entries) + "]"
    out.append((f"{prefix}tau", tau))
    for i, v in enumerate(nf.x.values):
        out.append((f"{prefix}x.{i}", format_field_element(v)))
    for i, v in enumerate(nf.u.values):
        out.append((f"{prefix}u.{i}", format_series(v)))
    return out


# -- commands --------------------------------------------------------------------


def cmd_eval(args, session):
    aut = load_config(args.config, session)
    a = session.series(args.series, aut.group)
    out = apply_aut(aut, a) if isinstance(aut, AutNormalForm) else aut(a)
    _emit(session, [("result", format_series(out))])
    return EXIT_OK


def cmd_compose(args, session):
    s1 = _as_nf(load_config(args.first, session), session)
    s2 = _as_nf(load_config(args.second, session), session)
    nf = compose_nf(s1, s2, session.cutoff if s1.group.dimension == len(session.cutoff) else None)
    _emit(session, _nf_pairs(nf))
    return EXIT_OK


def cmd_decompose(args, session):
    aut = load_config(args.config, session)
    box = aut.black_box() if isinstance(aut, AutNormalForm) else aut
    nf = decompose(box, _depth(session, aut.group))
    ok = True
    if isinstance(aut, AutNormalForm):
        ok = nf.same_components(aut)
    _emit(session, _nf_pairs(nf) + [("verdict", "OK" if ok else "MISMATCH")])
    return EXIT_OK if ok else EXIT_INPUT


def cmd_invert(args, session):
    nf = _as_nf(load_config(args.config, session), session)
    inv = invert_nf(nf, _depth(session, nf.group))
    _emit(session, _nf_pairs(inv))
    return EXIT_OK


def _laurent_unit(text, session):
    return LaurentUnit(parse_series(text, GroupDescriptor.integer(1), session.field, _rank_one(session)))


def _rank_one(session):
    return Exponent((session.cutoff[-1],))


def cmd_laurent(args, session):
    if args.op == "xs":
        out = schilling_xs(_laurent_unit(args.u, session), _laurent_unit(args.v, session))
        _emit(session, [("result", format_series(out.series))])
    elif args.op == "inv":
        out = schilling_inverse(_laurent_unit(args.u, session))
        _emit(session, [("result", format_series(out.series))])
    else:
        u = _laurent_unit(args.u, session)
        a = parse_series(args.series, GroupDescriptor.integer(1), session.field, _rank_one(session))
        out = sigma_u_apply(u, FieldAut(args.rho), a)
        _emit(session, [("result", format_series(out))])
    return EXIT_OK


def _moebius(text, session) -> MoebiusMap:
    rows = parse_matrix(text)
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise UsageError("a Moebius map is a 2x2 matrix [[a,b],[c,d]]")
    (a, b), (c, d) = rows
    return MoebiusMap(a, b, c, d, session.field)


def _moebius_text(m: MoebiusMap) -> str:
    a, b, c, d = (format_field_element(v) for v in m.entries)
    return f"[[{a},{b}],[{c},{d}]]"


def cmd_moebius(args, session):
    if args.op == "classify":
        m = _moebius(args.matrix, session)
        _emit(session, [("map", _moebius_text(m)), ("class", moebius_classify(m).value)])
    elif args.op == "compose":
        m = moebius_compose(_moebius(args.matrix, session), _moebius(args.other, session))
        _emit(session, [("result", _moebius_text(m)), ("class", moebius_classify(m).value)])
    else:
        m = _moebius(args.matrix, session)
        _emit(session, [("result", format_series(moebius_to_series(m, _rank_one(session))))])
    return EXIT_OK


def cmd_puiseux(args, session):
    q1 = GroupDescriptor.rational(1)
    if args.op == "pow":
        u = parse_series(args.u, q1, session.field, _rank_one(session))
        out = puiseux_unit_pow_q(u, Fraction(args.q))
        _emit(session, [("result", str(PuiseuxSeries.parse(format_series(out), session.field)))])
        return EXIT_OK
    if not session.group.is_rational or session.group.dimension != 1:
        raise UsageError("puiseux apply needs --group q:1:<L>")
    aut = load_config(args.config, session)
    nf = _as_nf(aut, session)
    a = parse_series(args.series, q1, session.field, _rank_one(session))
    _emit(session, [("result", str(puiseux_apply_aut(nf, a)))])
    return EXIT_OK


def _policy(text: str) -> FamilyPolicy:
    if text == "puiseux":
        return FamilyPolicy.puiseux()
    if text == "lattice":
        return FamilyPolicy.lattice()
    if text == "countable":
        return FamilyPolicy.cardinality(None)
    if text.startswith("cardinality:"):
        return FamilyPolicy.cardinality(int(text.split(":", 1)[1]))
    raise UsageError(f"unknown family {text!r}")


def _parse_support(text: str) -> SupportDescriptor:
    """``"0, 1/2, 3+"``: finite points, a trailing ``s+`` adds a tail from s."""
    items = [i.strip() for i in text.split(",") if i.strip()]
    try:
        if items and items[-1].endswith("+"):
            start = Fraction(items.pop()[:-1])
            return SupportDescriptor.with_tail([Fraction(i) for i in items], start)
        return SupportDescriptor.finite([Fraction(i) for i in items])
    except ValueError as exc:
        raise UsageError(f"bad support {text!r}: {exc}") from exc


def cmd_rayner(args, session):
    policy = _policy(args.family)
    samples = [_parse_support(t) for t in args.support or []]
    samples += sample_descriptors(session.seed, args.samples)
    ceiling = Fraction(args.ceiling)
    report = family_check_axioms(policy, samples, ceiling)
    rng = rng_for(session.seed, "rayner-cli")
    scales = [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(args.scales)]
    stab = family_check_oaut_stability(policy, scales, samples)
    lines = report.lines()[1:-1] + stab.lines()[1:-1]
    ok = report.passed and stab.passed
    if session.format == "kv":
        print(f"family={policy}")
        print(f"seed={session.seed}")
        print(f"ceiling={ceiling}")
        for line in lines:
            print(line)
        print(f"verdict={'pass' if ok else 'fail'}")
    else:
        print(f"family {policy}, seed {session.seed}, ceiling {ceiling}")
        for line in lines:
            print("  " + line.replace("=", ": ", 1))
        print("OK" if ok else "FAILED")
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_verify(args, session):
    names = suite_names() if args.suite == "all" else [args.suite]
    ok = True
    for name in names:
        rep = run_suite(name, session.seed)
        ok = ok and rep.passed
        if session.format == "kv":
            print("\n".join(rep.kv_lines()))
        else:
            print(rep.text())
    return EXIT_OK if ok else EXIT_PROPERTY


# -- argument parsing ---------------------------------------------------------------


def _common(parser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--field", type=parse_field, default=d(FieldDescriptor.rationals()), help="q or qsqrt:<m>")
    parser.add_argument("--group", type=parse_group, default=d(GroupDescriptor.integer(1)), help="z:<n> or q:<d>:<L>")
    parser.add_argument("--cutoff", default=d("8"), help="series cutoff / relative precision (default 8)")
    parser.add_argument("--seed", type=int, default=d(0))
    parser.add_argument("--format", choices=("text", "kv"), default=d("text"))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hahnaut", description="Truncated Hahn series and their automorphisms.")
    _common(p, suppress=False)
    shared = _Parser(add_help=False)
    _common(shared, suppress=True)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("eval", parents=[shared], help="apply an automorphism to a series")
    s.add_argument("config")
    s.add_argument("series")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("compose", parents=[shared], help="normal form of FIRST o SECOND")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("decompose", parents=[shared], help="normal form of an automorphism, with round trip check")
    s.add_argument("config")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("invert", parents=[shared], help="normal form of the inverse")
    s.add_argument("config")
    s.set_defaults(func=cmd_invert)

    lp = sub.add_parser("laurent", help="Schilling product tools over G = Z")
    lsub = lp.add_subparsers(dest="op", required=True, parser_class=_Parser)
    s = lsub.add_parser("xs", parents=[shared], help="u xs v")
    s.add_argument("u")
    s.add_argument("v")
    s = lsub.add_parser("inv", parents=[shared], help="inverse for xs")
    s.add_argument("u")
    s = lsub.add_parser("apply", parents=[shared], help="sigma_u applied to a series")
    s.add_argument("u")
    s.add_argument("series")
    s.add_argument("--rho", choices=("id", "conj"), default="id")
    lp.set_defaults(func=cmd_laurent)

    mp = sub.add_parser("moebius", help="Moebius maps t -> (at+b)/(ct+d)")
    msub = mp.add_subparsers(dest="op", required=True, parser_class=_Parser)
    s = msub.add_parser("classify", parents=[shared])
    s.add_argument("matrix")
    s = msub.add_parser("compose", parents=[shared])
    s.add_argument("matrix")
    s.add_argument("other")
    s = msub.add_parser("expand", parents=[shared])
    s.add_argument("matrix")
    mp.set_defaults(func=cmd_moebius)

    pp = sub.add_parser("puiseux", help="Puiseux series tools")
    psub = pp.add_subparsers(dest="op", required=True, parser_class=_Parser)
    s = psub.add_parser("pow", parents=[shared], help="u^q for a 1-unit u")
    s.add_argument("u")
    s.add_argument("q")
    s = psub.add_parser("apply", parents=[shared], help="apply an automorphism over q:1:L")
    s.add_argument("config")
    s.add_argument("series")
    pp.set_defaults(func=cmd_puiseux)

    rp = sub.add_parser("rayner", help="support-set family checks")
    rsub = rp.add_subparsers(dest="op", required=True, parser_class=_Parser)
    s = rsub.add_parser("check", parents=[shared])
    s.add_argument("--family", default="puiseux", help="puiseux, lattice, countable or cardinality:<n>")
    s.add_argument("--ceiling", default="3")
    s.add_argument("--samples", type=int, default=20)
    s.add_argument("--scales", type=int, default=50)
    s.add_argument("--support", action="append", metavar="SET", help="extra sample, e.g. \"0, 1\" or \"1/2, 3/2+\" (tail from 3/2)")
    rp.set_defaults(func=cmd_rayner)

    s = sub.add_parser("verify", parents=[shared], help="run a seeded property suite")
    s.add_argument("suite", help="suite name or 'all': " + ", ".join(suite_names()))
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        session = Session(args)
        return args.func(args, session)
    except UnknownSuite as exc:
        print(f"error: UnknownSuite: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HahnError, ArithmeticError, ValueError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
