# (c) Copyright The markoff toolkit authors 2026

"""
The `markoff` command.

    markoff [--format json|csv|table] [--cache DIR] [--threads N] [--p-max N] [--debug] <command> ...

Exit status: 0 when every verdict passes, 1 on usage errors, 2 when a computed fact
contradicts a proven statement (the reproduction payload is printed as JSON).
"""
import argparse
import csv
import logging
import sys

from . import congruence, cusp_comb, markoff_z, modular, nielsen
from .action import GENERATOR_SETS, orbit_decompose
from .cache import Cache, OrbitRecord
from .errors import GroupBuildError, InvariantViolation, UsageError
from .groups import load_group_spec
from .log import logger, set_log_level
from .options import RunOptions
from .surface import t_values
from .util import to_pretty_json
from .version import VERSION

FORMATS = ('json', 'csv', 'table')


class Report(object):
    """ A JSON payload plus the flat rows the csv and table views are derived from. """

    def __init__(self, payload, columns, rows):
        self.payload = payload
        self.columns = columns
        self.rows = rows


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_run_flags(parser, suppress):
    default = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    parser.add_argument("--format", choices=FORMATS, default=default(None), help="output format (default json)")
    parser.add_argument("--cache", metavar="DIR", default=default(None),
                        help="cache directory (MARKOFF_CACHE_DIR wins over this)")
    parser.add_argument("--threads", type=int, default=default(None), help="worker threads")
    parser.add_argument("--p-max", dest="p_max", type=int, default=default(None), help="largest prime accepted")
    parser.add_argument("--debug", action="store_true", default=default(False), help="debug logging")


def _higman_flags(parser):
    parser.add_argument("--group", required=True, help="group spec file or corpus name (e.g. A5, SL2_5)")
    parser.add_argument("--higman-order", dest="higman_order", type=int, default=None,
                        help="only commutators of this order")


def build_parser():
    common = ArgumentParser(add_help=False)
    _add_run_flags(common, suppress=True)

    parser = ArgumentParser(prog="markoff", description="Markoff surfaces mod p and Nielsen classes")
    parser.add_argument("--version", action="version", version="%(prog)s " + VERSION)
    _add_run_flags(parser, suppress=False)
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    sub = commands.add_parser("orbits", parents=[common], help="orbit decomposition of X_t(F_p)")
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--t", type=int, default=-2)
    sub.add_argument("--gens", default="gamma",
                     help="generator set (%s) or comma separated moves" % ", ".join(sorted(GENERATOR_SETS)))
    sub.add_argument("--subset", choices=('all', 'star', 'origin_excluded'), default='star')
    sub.add_argument("--method", choices=('labels', 'bfs'), default='labels')

    sub = commands.add_parser("genus", parents=[common], help="genus and ramification of M_p")
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--monodromy", action="store_true", help="also report the sign quotient monodromy")

    sub = commands.add_parser("cusps", parents=[common], help="cusp widths of M_p or cusp records of a group")
    where = sub.add_mutually_exclusive_group(required=True)
    where.add_argument("--p", type=int)
    where.add_argument("--group")
    sub.add_argument("--higman-order", dest="higman_order", type=int, default=None)

    sub = commands.add_parser("congruence", parents=[common], help="orbit size divisibility verdicts")
    sub.add_argument("--p", type=int)
    sub.add_argument("--t", type=int, default=None)
    sub.add_argument("--all-t", dest="all_t", action="store_true", help="every t != 2")
    sub.add_argument("--sweep", action="store_true", help="every odd prime up to --p-max and every t != 2")

    sub = commands.add_parser("nielsen", parents=[common], help="Out+ orbits on Nielsen classes of a group")
    _higman_flags(sub)

    sub = commands.add_parser("delta", parents=[common], help="delta classes of generating pairs of a group")
    _higman_flags(sub)

    sub = commands.add_parser("tree", parents=[common], help="integral Markoff triples up to a bound")
    sub.add_argument("--bound", type=int, required=True)
    sub.add_argument("--surface", choices=sorted(markoff_z.SURFACES), default='M')

    sub = commands.add_parser("strong-approx", parents=[common], help="reduction of integral points mod n")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--method", choices=('orbit', 'tree'), default='orbit')

    sub = commands.add_parser("frobenius", parents=[common], help="Markoff numbers modulo p = 3 mod 4")
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--bound", type=int, required=True)

    sub = commands.add_parser("crosscheck", parents=[common], help="SL2(F_p) pairs against X*_{-2}(F_p)")
    sub.add_argument("--p", type=int, required=True)
    return parser


def _check_p(options, p):
    if p > options.p_max:
        raise UsageError("p = %d is beyond the --p-max safety cap %d" % (p, options.p_max))
    return p


def _higman_of(group, order):
    if order is None:
        return None
    higman = nielsen.higman_classes(group, order=order)
    if not higman:
        raise UsageError("%s has no noncentral class of order %d" % (group.name, order))
    return higman


def _gens_of(text):
    if text in GENERATOR_SETS:
        return text
    return [g.strip() for g in text.split(",") if g.strip()]


def _point(rep):
    return " ".join(str(c) for c in rep)


def run_orbits(args, options, cache):
    p = _check_p(options, args.p)
    gens = _gens_of(args.gens)
    if args.method == 'labels':
        record = cache.orbits(p, args.t, gens, args.subset)
    else:
        record = OrbitRecord.from_decomposition(orbit_decompose(cache.points(p, args.t), gens, args.subset, 'bfs'))
    payload = record.to_dict()
    rows = [(_point(o['rep']), o['size']) for o in payload['orbits']]
    return Report(payload, ('rep', 'size'), rows)


def run_genus(args, options, cache):
    p = _check_p(options, args.p)
    table = cache.points(p, -2)
    payload = modular.genus(p, table).to_dict()
    if args.monodromy:
        payload['monodromy'] = modular.monodromy_report(p, table).to_dict()
    rows = [(p, c['degree'], c['fiber0'], c['fiber1728'], c['cusps'], c['genus']) for c in payload['components']]
    return Report(payload, ('p', 'degree', 'fiber0', 'fiber1728', 'cusps', 'genus'), rows)


def run_cusps(args, options, cache):
    if args.group is not None:
        group = load_group_spec(args.group)
        records = cusp_comb.cusp_records(group, _higman_of(group, args.higman_order))
        payload = {'group': group.name, 'order': group.n, 'gens': 'out_plus', 'version': VERSION,
                   'cusps': [r.to_dict() for r in records]}
        rows = [(r.delta.index, group.format(r.delta.u), group.format(r.delta.h), r.delta.higman, r.width,
                 r.a_order, r.vertical) for r in records]
        return Report(payload, ('index', 'u', 'h', 'higman', 'width', 'a_order', 'vertical'), rows)

    p = _check_p(options, args.p)
    profile = modular.ramification_profile(p, cache.points(p, -2))
    payload = {'p': p, 't': -2, 'gens': 'out_plus', 'version': VERSION, 'cusps': profile.cusps,
               'count': len(profile.cusps), 'closed_form': str(modular.cusp_count_closed(p))}
    widths = sorted(set(profile.cusps))
    rows = [(w, profile.cusps.count(w)) for w in widths]
    return Report(payload, ('width', 'count'), rows)


def run_congruence(args, options, cache):
    columns = ('p', 't', 'rep', 'size', 'rule', 'modulus', 'pass')
    if args.sweep:
        failures = congruence.verify_range(options.p_max, options.threads)
        if failures:
            raise InvariantViolation("orbit size congruence failed", verdicts=[v.to_dict() for v in failures])
        payload = {'p_max': options.p_max, 'gens': 'gamma', 'version': VERSION, 'failures': 0}
        return Report(payload, ('p_max', 'failures'), [(options.p_max, 0)])

    if args.p is None:
        raise UsageError("congruence needs --p or --sweep")
    p = _check_p(options, args.p)
    if args.all_t:
        ts = t_values(p)
    else:
        ts = [-2 if args.t is None else args.t]
    verdicts = []
    for t in ts:
        verdicts.extend(congruence.verify_surface(p, t, table=cache.points(p, t)))
    payload = {'p': p, 't': [int(t) % p for t in ts], 'gens': 'gamma', 'version': VERSION,
               'verdicts': [v.to_dict() for v in verdicts]}
    rows = [(v.p, v.t, _point(v.rep), v.size, v.rule, v.modulus, "pass" if v.passed else "FAIL") for v in verdicts]
    return Report(payload, columns, rows)


def run_nielsen(args, options, cache):
    group = load_group_spec(args.group)
    report = nielsen.out_plus_orbits(group, _higman_of(group, args.higman_order))
    payload = report.to_dict()
    if not report.passed():
        raise InvariantViolation("orbit size congruence failed", **payload)
    rows = [(s.higman, group.format(s.representative), s.order, s.classes, " ".join(map(str, s.quotient_sizes)),
             s.modulus) for s in report.strata]
    return Report(payload, ('higman', 'representative', 'order', 'classes', 'quotient_sizes', 'modulus'), rows)


def run_delta(args, options, cache):
    group = load_group_spec(args.group)
    deltas = cusp_comb.delta_classes(group, _higman_of(group, args.higman_order))
    payload = {'group': group.name, 'order': group.n, 'gens': 'gammaInf', 'version': VERSION,
               'delta_classes': [d.to_dict() for d in deltas]}
    rows = [(d.index, group.format(d.u), group.format(d.h), d.higman, d.width) for d in deltas]
    return Report(payload, ('index', 'u', 'h', 'higman', 'width'), rows)


def run_tree(args, options, cache):
    triples = markoff_z.grow_tree(args.bound, args.surface)
    payload = {'surface': args.surface, 'bound': args.bound, 'version': VERSION,
               'triples': [list(T.as_tuple()) for T in triples]}
    return Report(payload, ('x', 'y', 'z'), [T.as_tuple() for T in triples])


def run_strong_approx(args, options, cache):
    report = markoff_z.strong_approx(args.n, args.method)
    payload = report.to_dict()
    if not report.holds:
        logger.warning("n=%d: coverage incomplete (%d of %d)", args.n, report.covered, report.target)
    columns = ('n', 'target', 'covered', 'mixed', 'holds', 'conditional')
    return Report(payload, columns, [tuple(payload[k] for k in columns)])


def run_frobenius(args, options, cache):
    p = _check_p(options, args.p)
    report = markoff_z.frobenius_residues(p, args.bound)
    rows = [(r, count, r in report.forbidden) for r, count in enumerate(report.histogram)]
    return Report(report.to_dict(), ('residue', 'count', 'forbidden'), rows)


def run_crosscheck(args, options, cache):
    p = _check_p(options, args.p)
    nielsen.sl2_crosscheck(p)
    cusp_comb.cusp_crosscheck(p)
    payload = {'p': p, 't': -2, 'gens': 'out_plus', 'version': VERSION, 'trace_bijection': True,
               'cusp_counts': True}
    return Report(payload, ('p', 'trace_bijection', 'cusp_counts'), [(p, True, True)])


COMMANDS = {
    'orbits': run_orbits,
    'genus': run_genus,
    'cusps': run_cusps,
    'congruence': run_congruence,
    'nielsen': run_nielsen,
    'delta': run_delta,
    'tree': run_tree,
    'strong-approx': run_strong_approx,
    'frobenius': run_frobenius,
    'crosscheck': run_crosscheck,
}


def render(report, output_format, out):
    if output_format == 'json':
        out.write(to_pretty_json(report.payload) + "\n")
    elif output_format == 'csv':
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(report.columns)
        writer.writerows(report.rows)
    else:
        cells = [[str(c) for c in report.columns]] + [[str(c) for c in row] for row in report.rows]
        widths = [max(len(row[i]) for row in cells) for i in range(len(report.columns))]
        lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
        lines.insert(1, "  ".join("-" * w for w in widths))
        out.write("\n".join(lines) + "\n")


def dispatch(args, options, out):
    """
    Runs one parsed command.

    :return: exit status
    """
    cache = Cache(options.cache_dir, options.threads)
    try:
        report = COMMANDS[args.command](args, options, cache)
    except InvariantViolation as exc:
        logger.error("%s: %s", args.command, exc)
        out.write(to_pretty_json(exc.to_dict()) + "\n")
        return 2
    except (UsageError, GroupBuildError) as exc:
        logger.error("%s: %s", args.command, exc)
        return 1
    render(report, options.output_format, out)
    return 0


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        sys.stderr.write("markoff: error: %s\n" % exc)
        return 1

    options = RunOptions(cache_dir=args.cache, threads=args.threads, p_max=args.p_max, output_format=args.format)
    if args.debug:
        options.debug = True
        options.log_level = logging.DEBUG
    set_log_level(options.log_level)
    logger.debug("markoff %s: %s", VERSION, vars(args))
    return dispatch(args, options, out)
