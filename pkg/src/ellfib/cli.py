"""Command-line interface: ``ellfib <subcommand> ...``.

Exit codes: 0 on success, 1 when the input is mathematically rejected,
2 on parse errors and usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from .dualgraph import fundamental_cycle, fundamental_genus, parse_igr, smith_group
from .errors import EllfibError, ParseError
from .lattice import KodairaConfiguration, mw_lookup, trivial_lattice
from .mutation import (
    GoodMutationCertificate,
    check_E_conditions,
    disjoint_section_constraints,
    enumerate_mutations,
    parse_certificate,
    parse_plan,
    verify_good_mutation,
)
from .singularity import (
    classify_rdp,
    parse_sing,
    theta_free_test,
    tjurina_number,
    zariski_homological_test,
)
from .weierstrass import (
    Place,
    classify_surface,
    parse_wsurf,
    singularity_profile,
    tate,
    twistor_field,
)

OK, REJECTED, USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _num(x):
    """JSON-friendly numbers: fractions become strings like ``"2/3"``."""
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    return x


def _inf(x):
    return x if isinstance(x, int) else str(x)


# ------------------------------------------------------------ commands -----

def cmd_tate(args):
    W = parse_wsurf(_read(args.file))
    rep = tate(W, Place.parse(args.at, W.field))
    return [rep.line()], rep.as_dict()


def cmd_surface(args):
    s = classify_surface(parse_wsurf(_read(args.file)))
    lines = [f.line() for f in s.singular_fibers]
    lines.append(f"configuration={s.configuration()} sigma_v={s.sigma_v} rational={str(s.rational).lower()}")
    lines += [f"warning: {w}" for w in s.warnings()]
    data = {
        "fibers": [f.as_dict() for f in s.singular_fibers],
        "configuration": s.configuration(),
        "sigma_v": s.sigma_v,
        "rational": s.rational,
        "warnings": s.warnings(),
    }
    return lines, data


def cmd_fpb(args):
    prof = singularity_profile(parse_wsurf(_read(args.file)))
    lines = [p.line() for p in prof.places]
    tau = "?" if prof.total_tau is None else prof.total_tau
    lines.append(f"total_tau={tau} rational={str(prof.all_rational).lower()}")
    data = {
        "places": [
            {
                "place": p.place,
                "source": p.src.kodaira,
                "lang": p.src.lang,
                "pullback": p.dst.kodaira,
                "lambda": p.dst.lam,
                "singularities": p.singularity_names(),
                "tau": p.tau,
            }
            for p in prof.places
        ],
        "total_tau": prof.total_tau,
        "rational": prof.all_rational,
    }
    return lines, data


def cmd_sing(args):
    h, D = parse_sing(_read(args.file))
    tau = tjurina_number(h)
    free = theta_free_test(h)
    data = {
        "tau": _inf(tau),
        "L1": _inf(free.len_j),
        "L2": _inf(free.len_j_frob),
        "free": free.free,
    }
    lines = [f"tau={_inf(tau)}", f"L1={_inf(free.len_j)} L2={_inf(free.len_j_frob)} free={str(free.free).lower()}"]
    try:
        label = classify_rdp(h)
    except EllfibError:
        label = None
    if label is not None:
        data["rdp"] = label.name
        data["zariski_flag"] = label.zariski
        lines.append(f"rdp={label.name} zariski_flag={str(label.zariski).lower()}")
    if D is not None:
        z = zariski_homological_test(h, D)
        data["zariski_homological"] = z
        lines.append(f"zariski_homological={str(z).lower()}")
    return lines, data


def cmd_fundcycle(args):
    G, _ = parse_igr(_read(args.file))
    Z = fundamental_cycle(G)
    g = fundamental_genus(G)
    return [f"Z = {' '.join(map(str, Z))}; genus={g}"], {"Z": list(Z), "genus": g}


def cmd_smith(args):
    G, _ = parse_igr(_read(args.file))
    d = smith_group(G)
    return [f"smith = {' '.join(map(str, d))}"], {"smith": d}


def cmd_mw(args):
    config = KodairaConfiguration.parse(args.config)
    T = trivial_lattice(config)
    look = mw_lookup(T.roots)
    lines = [f"config={config} T={T.roots} rank={look.rank}"]
    entries = []
    for e in look.entries:
        lines.append(
            f"No.{e.no} MW={e.mw.format()} narrow={e.narrow.format()} torsion={e.torsion_label()}"
        )
        entries.append({
            "no": e.no,
            "mw": [[_num(x) for x in row] for row in e.mw.gram],
            "narrow": [[_num(x) for x in row] for row in e.narrow.gram],
            "torsion": list(e.torsion),
        })
    if look.missing:
        lines.append("no shipped Mordell-Weil row for this root type")
    return lines, {"config": str(config), "T": str(T.roots), "rank": look.rank, "entries": entries}


def cmd_height(args):
    cert = parse_certificate(_read(args.file))
    if not isinstance(cert, GoodMutationCertificate) or not cert.claims:
        raise ParseError("certificate has no height claims")
    if not args.config:
        raise ParseError("height needs --config with the fiber types and places")
    config = _config_with_places(args.config)
    rep = disjoint_section_constraints(config, cert.claims)
    lines = [f"ok: {c}" for c in rep.checks] + [f"failed: {f}" for f in rep.failures]
    lines += [f"forced {k} = {v}" for k, v in rep.forced.items()]
    data = {"ok": rep.ok, "checks": list(rep.checks), "failures": list(rep.failures),
            "forced": rep.forced}
    return lines, data, (OK if rep.ok else REJECTED)


def _config_with_places(text: str) -> KodairaConfiguration:
    """``"I6@0 III@inf"``: fiber types with their places (default 0, 1, 2, ...)."""
    fibers, places = [], []
    for i, tok in enumerate(text.replace("+", " ").split()):
        fib, _, place = tok.partition("@")
        fibers.append(fib)
        places.append(place or str(i))
    return KodairaConfiguration(tuple(fibers), tuple(places))


def cmd_mutate(args):
    prof = singularity_profile(parse_wsurf(_read(args.file)))
    if args.plan:
        plans = [parse_plan(_read(args.plan), prof)]
    else:
        plans = enumerate_mutations(prof)
    cert = parse_certificate(_read(args.cert)) if args.cert else None
    lines, out, code = [], [], OK
    for k, plan in enumerate(plans):
        res = verify_good_mutation(plan, cert) if cert is not None else None
        rep = check_E_conditions(plan, prof, res)
        lines.append(f"plan {k}: status={plan.status}")
        lines += [f"  {c.describe()}" for c in plan.choices]
        lines += [f"  {ln}" for ln in rep.lines()]
        if res is not None:
            lines += [f"  {ln}" for ln in res.lines()]
            if not res:
                code = REJECTED
        out.append({
            "status": plan.status,
            "choices": [
                {"place": c.place, "case": c.case, "action": c.action, "E": list(c.chosen),
                 "singularities": c.singularity_names(), "tau": c.tau}
                for c in plan.choices
            ],
            "conditions": rep.status,
            "total_tau": rep.total_tau,
            "ok": rep.ok,
            "verified": None if res is None else res.ok,
        })
    return lines, {"plans": out}, code


def cmd_twistor(args):
    try:
        l0, l1, l2 = (int(x) for x in (args.l0, args.l1, args.l2))
    except ValueError:
        raise ParseError("coefficients must be field elements written as integers") from None
    rep = twistor_field(l0, l1, l2)
    return [rep.line()], rep.as_dict()


# ------------------------------------------------------------- driver ------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ellfib", description="Elliptic fibrations in characteristic 2.")
    p.add_argument("--json", action="store_true", help="print JSON instead of text")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("tate", help="Tate's algorithm at one place")
    s.add_argument("file")
    s.add_argument("--at", required=True, help="place: a field element or 'inf'")
    s.set_defaults(func=cmd_tate)
    s = sub.add_parser("surface", help="all singular fibers")
    s.add_argument("file")
    s.set_defaults(func=cmd_surface)
    s = sub.add_parser("fpb", help="Frobenius pullback and its singularity profile")
    s.add_argument("file")
    s.set_defaults(func=cmd_fpb)
    s = sub.add_parser("sing", help="Tjurina number, freeness and Zariski tests")
    s.add_argument("file")
    s.set_defaults(func=cmd_sing)
    s = sub.add_parser("fundcycle", help="fundamental cycle and its genus")
    s.add_argument("file")
    s.set_defaults(func=cmd_fundcycle)
    s = sub.add_parser("smith", help="elementary divisors of the intersection matrix")
    s.add_argument("file")
    s.set_defaults(func=cmd_smith)
    s = sub.add_parser("mw", help="Mordell-Weil lattice lookup")
    s.add_argument("--config", required=True, help='fiber configuration, e.g. "III+3+2^2+1"')
    s.set_defaults(func=cmd_mw)
    s = sub.add_parser("height", help="check the height claims of a certificate")
    s.add_argument("file")
    s.add_argument("--config", help='fibers with places, e.g. "I6@0 III@inf"')
    s.set_defaults(func=cmd_height)
    s = sub.add_parser("mutate", help="enumerate or check mutations")
    s.add_argument("file")
    s.add_argument("--plan")
    s.add_argument("--cert")
    s.set_defaults(func=cmd_mutate)
    s = sub.add_parser("twistor", help="type and zeros of a vector field on P^1")
    s.add_argument("l0")
    s.add_argument("l1")
    s.add_argument("l2")
    s.set_defaults(func=cmd_twistor)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        result = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE
    except EllfibError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return REJECTED
    lines, data, code = result if len(result) == 3 else (*result, OK)
    if args.json:
        print(json.dumps(data, sort_keys=True, default=str))
    else:
        print("\n".join(lines))
    return code


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
