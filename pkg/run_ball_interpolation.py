#!/usr/bin/env python3
'''
Command-line driver: projector norms, the regular-simplex table, the psi curve,
the d_n series, the minimal-projector search and the absorption index.

Data goes to standard output (or --out), diagnostics to standard error.
Exit codes: 0 success, 2 parse or configuration error, 3 degenerate simplex or
failed precondition, 4 spline range error.
'''

import sys
from argparse import ArgumentParser

import numpy as np
import pandas as pd

from ball_interpolation import util_mod
from ball_interpolation import geometry
from ball_interpolation import projector_norm as pn
from ball_interpolation import regular_simplex
from ball_interpolation import absorption
from ball_interpolation import optimizer
import save_results
import utils


EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DEGENERATE = 3
EXIT_SPLINE = 4

DEFAULT_MC_SAMPLES = 100000
DEFAULT_CURVE_SAMPLES = 201

# xi output fields that need the exact norm; null past the enumeration cap
XI_NORM_FIELDS = ('norm', 'sandwich_lower', 'sandwich_upper', 'sandwich_holds',
                  'right_side_tight', 'one_point')



def _ball_for(args, simplex):
    # --ball string, then --ball-file, else the centered ball of the simplex
    if args.ball is not None:
        return utils.parse_ball(args.ball)
    if args.ball_file is not None:
        return utils.load_ball(args.ball_file)
    return geometry.centered_ball(simplex)


def cmd_norm(args, out):
    simplex = utils.load_simplex(args.simplex_file)
    ball = _ball_for(args, simplex)
    if args.method == 'montecarlo':
        bound = pn.norm_lower_bound_mc(simplex, ball, args.samples, args.seed)
        if out.format == 'json':
            save_results.write_json({'lower_bound': bound,
                                     'samples': args.samples,
                                     'seed': args.seed}, out)
        else:
            save_results.write_table(pd.DataFrame({'lower_bound': [bound]}),
                                     out)
        return EXIT_OK
    cert = pn.projector_norm(simplex, ball)
    if out.format == 'json':
        save_results.write_json(save_results.certificate_to_dict(cert), out)
    else:
        row = {'value': cert.value, 'k': cert.k}
        row.update({'x{}'.format(i + 1): coordinate
                    for i, coordinate in enumerate(cert.extremal_point)})
        save_results.write_table(pd.DataFrame([row]), out)
    return EXIT_OK



def cmd_regular_table(args, out):
    n_list = utils.parse_n_list(args.n_list)
    reports = regular_simplex.regular_table(n_list)
    save_results.write_table(regular_simplex.report_rows(reports), out)
    return EXIT_OK


def cmd_psi_curve(args, out):
    curve = regular_simplex.psi_curve(args.n, args.samples)
    save_results.write_table(curve, out)
    return EXIT_OK


def cmd_dn_series(args, out):
    series = regular_simplex.dn_series(args.n_from, args.n_to,
                                       with_spline=args.spline)
    save_results.write_table(series, out)
    return EXIT_OK



def cmd_minimize(args, out):
    overrides = {}
    if args.config is not None:
        overrides.update(utils.read_search_overrides_from_json(args.config))
    overrides.update(utils.parse_overrides(args.set))
    if args.seed is not None:
        overrides['seed'] = args.seed
    config = optimizer.make_search_config(args.n, **overrides)
    result = optimizer.minimize_norm(config, verbose=args.verbose)
    if out.format == 'json':
        save_results.write_json(save_results.search_result_to_dict(result),
                                out)
    else:
        save_results.write_table(pd.DataFrame({
            'restart': np.arange(len(result.history)),
            'best_norm': result.history}), out)
    return EXIT_OK



def cmd_xi(args, out):
    simplex = utils.load_simplex(args.simplex_file)
    ball = _ball_for(args, simplex)
    result = absorption.absorption_index_ball(simplex, ball)
    if simplex.n + 1 > util_mod.ENUMERATION_CAP:
        print('note: n+1 = {} exceeds the exact-norm cap {}; norm and '
              'sandwich fields are left empty'.format(
                  simplex.n + 1, util_mod.ENUMERATION_CAP), file=sys.stderr)
        sandwich = dict.fromkeys(XI_NORM_FIELDS)
    else:
        sandwich = _sandwich_fields(simplex, ball, result.xi)
    if out.format == 'json':
        save_results.write_json(
            save_results.absorption_to_dict(result, sandwich=sandwich), out)
    else:
        row = {'xi': result.xi, 'binding_face': result.binding_face}
        row.update({key: value for key, value in sandwich.items()
                    if key != 'one_point'})
        save_results.write_table(pd.DataFrame([row]), out)
    return EXIT_OK


def _sandwich_fields(simplex, ball, xi):
    cert = pn.projector_norm(simplex, ball)
    lower, upper = absorption.sandwich_bounds(cert.value, simplex.n)
    witness = pn.one_point_witness(cert, geometry.lagrange_basis(simplex))
    return {
        'norm': float(cert.value),
        'sandwich_lower': float(lower),
        'sandwich_upper': float(upper),
        'sandwich_holds': absorption.sandwich_check(cert.value, xi, simplex.n),
        'right_side_tight': bool(abs(upper - xi)
                                 <= absorption.SANDWICH_TOLERANCE),
        'one_point': None if witness is None else [float(x) for x in witness],
    }




def get_parser():
    common = ArgumentParser(add_help=False)
    common.add_argument('--format', choices=save_results.OUTPUT_FORMATS,
                        default='csv')
    common.add_argument('--out', default=None,
                        help='output file (default: standard output)')
    common.add_argument('--precision', type=int,
                        default=save_results.DEFAULT_PRECISION,
                        help='significant digits, 6 to 17')
    common.add_argument('--verbose', '-v', action='store_true',
                        help='progress bars on standard error')

    ball_options = ArgumentParser(add_help=False)
    ball_options.add_argument('simplex_file')
    ball_options.add_argument('--ball', default=None,
                              help='"c1,...,cn;R" (default: centered ball)')
    ball_options.add_argument('--ball-file', default=None)

    parser = ArgumentParser(description=__doc__.strip().splitlines()[0])
    commands = parser.add_subparsers(dest='command', required=True)

    norm = commands.add_parser('norm', parents=[common, ball_options])
    norm.add_argument('--method', choices=('exact', 'montecarlo'),
                      default='exact')
    norm.add_argument('--samples', type=int, default=DEFAULT_MC_SAMPLES)
    norm.add_argument('--seed', type=int, default=0)
    norm.set_defaults(handler=cmd_norm)

    table = commands.add_parser('regular-table', parents=[common])
    table.add_argument('n_list', nargs='?', default='',
                       help='e.g. "1-15,50,100,1000"')
    table.set_defaults(handler=cmd_regular_table)

    curve = commands.add_parser('psi-curve', parents=[common])
    curve.add_argument('n', type=int)
    curve.add_argument('--samples', type=int, default=DEFAULT_CURVE_SAMPLES)
    curve.set_defaults(handler=cmd_psi_curve)

    series = commands.add_parser('dn-series', parents=[common])
    series.add_argument('n_from', type=int)
    series.add_argument('n_to', type=int)
    series.add_argument('--spline', action='store_true')
    series.set_defaults(handler=cmd_dn_series)

    minimize = commands.add_parser('minimize', parents=[common])
    minimize.add_argument('n', type=int)
    minimize.add_argument('--seed', type=int, default=None)
    minimize.add_argument('--config', default=None,
                          help='JSON file of search parameters')
    minimize.add_argument('--set', action='append', default=[],
                          metavar='KEY=VALUE',
                          help='override one search parameter')
    minimize.set_defaults(handler=cmd_minimize)

    xi = commands.add_parser('xi', parents=[common, ball_options])
    xi.set_defaults(handler=cmd_xi)
    return parser



def main(argv=None):
    parser = get_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        out = save_results.make_output_spec(args.format, args.out,
                                            args.precision)
        return args.handler(args, out)
    except util_mod.SplineRangeError as exc:
        print('error: {}'.format(exc), file=sys.stderr)
        return EXIT_SPLINE
    except (util_mod.DegenerateSimplexError, util_mod.PreconditionError,
            util_mod.EnumerationCapError, util_mod.SearchError) as exc:
        print('error: {}'.format(exc), file=sys.stderr)
        return EXIT_DEGENERATE
    except (util_mod.BallInterpolationError, OSError) as exc:
        print('error: {}'.format(exc), file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
