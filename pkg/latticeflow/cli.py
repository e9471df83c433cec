""" Command line interface: python -m latticeflow <command> """
import os
import sys
import argparse

import numpy as np
import pandas as pd

from . import __version__
from .config import Config
from .lattice import SpaceSetting, WeightScheme, lattice_points, shift_points, random_shift, \
                     save_generating_vector, load_generating_vector, cbc_construct, worst_case_report, \
                     select_rate_plan, build_weights, appendix_constant, gap_bound
from .models import regularity_profile, check_restrictions, load_network, save_network, glorot_init, train, \
                    estimate_generalization, write_training_log
from .research import DEFAULT_CONFIG, ExperimentSpec, experiment_lattice, training_points, run_experiment, \
                      run_baseline, plot_data, plot_results, rate_table, write_csv
from ._const import FLOAT_FORMAT, PROFILE_COLUMNS
from .exceptions import LatticeFlowException, ValidationError
from .utils_random import stream_rng, TRAIN_SHIFT_STREAM, INIT_STREAM, EVAL_SHIFT_STREAM


def load_spec(args):
    """ ExperimentSpec from --config with --gv, --seed and --threads applied on top """
    config = Config.load(args.config, DEFAULT_CONFIG) if args.config else DEFAULT_CONFIG.copy()
    for key in ('gv', 'seed', 'threads'):
        value = getattr(args, key, None)
        if value is not None:
            config[key] = value
    return ExperimentSpec.from_config(config)


def _emit(frame, out):
    if out:
        write_csv(frame, out)
    else:
        frame.to_csv(sys.stdout, index=False, float_format=FLOAT_FORMAT)


def _require_gv(args):
    if not args.gv:
        raise ValidationError(f"{args.command} needs a generating vector file, pass --gv")


def _setting(args):
    if args.setting == 'a':
        return SpaceSetting.sobolev()
    if args.setting == 'b':
        return SpaceSetting.korobov(args.alpha)
    return SpaceSetting.non_hilbert(args.alpha)


def _weights(args, spec, setting, dim):
    """ Product weights γ^j with --product, else the weights tailored to the target """
    if args.product is not None:
        return WeightScheme.product(args.product ** np.arange(1, dim + 1))
    b = spec.target.b
    plan = select_rate_plan(b.p_star, setting.label)
    if plan.alpha != setting.alpha:
        raise ValidationError(f'the target needs α = {plan.alpha} in setting {setting.label}, '
                              f'got --alpha {setting.alpha}')
    return build_weights(setting, b.prefix(dim) if dim < b.dim else b, plan)


def cmd_points(args):
    _require_gv(args)
    gv = load_generating_vector(args.gv)
    points = lattice_points(gv)
    if args.seed is not None:
        points = shift_points(points, random_shift(stream_rng(args.seed, TRAIN_SHIFT_STREAM), gv.dim))
    _emit(pd.DataFrame(points, columns=[f'y_{j}' for j in range(1, gv.dim + 1)]), args.out)


def cmd_cbc(args):
    spec = load_spec(args)
    setting = _setting(args)
    weights = _weights(args, spec, setting, args.dim)
    gv, errors = cbc_construct(args.n, args.dim, weights, setting, method=args.method, return_errors=True,
                               bar=args.bar)
    if args.out:
        save_generating_vector(gv, args.out)
    else:
        print(gv.n)
        print('\n'.join(str(int(z)) for z in gv.z))
    print(f'criterion after s={args.dim}: {errors[-1]:.17g}', file=sys.stderr)


def cmd_wce(args):
    _require_gv(args)
    spec = load_spec(args)
    gv = load_generating_vector(args.gv)
    setting = _setting(args)
    report = worst_case_report(gv, _weights(args, spec, setting, gv.dim), setting)
    print(f'N = {gv.n}, s = {gv.dim}, setting {setting.label}, α = {setting.alpha}')
    print(f'worst-case error: {report.error:.17g}')
    for lam, bound, admissible in zip(report.lambdas, report.bounds, report.admissible):
        print(f'  λ = {lam:.6f}: bound {bound:.6e}' if admissible else f'  λ = {lam:.6f}: no finite bound')
    print(f'dominated by every finite bound: {report.dominated}')


def cmd_bounds(args):
    spec = load_spec(args)
    target = spec.target
    b = target.b
    print(f'b_j = η j^-q / a_min with η = {target.eta}, q = {target.q}, a_min = {target.a_min:.6f}, p* = {b.p_star:g}')
    for label in ('a', 'b', 'c'):
        plan = select_rate_plan(b.p_star, label)
        print(f'setting {label}: α = {plan.alpha}, λ = {plan.lam:.6f}, r = {plan.rate:g}, r/2 = {plan.half_rate:g}')
        try:
            weights = build_weights(plan.setting, b, plan)
            if args.gamma:
                for subset, value in weights.table(args.gamma):
                    print(f'    γ_{set(subset)} = {value:.6e}')
            constant = appendix_constant(plan.setting, b, plan, args.kappa_sl, b.dim)
            print(f'    appendix constant (κ S_L = {args.kappa_sl:g}): {constant:.6e}')
            for n in args.n:
                print(f'    gap bound at N = {n}: {gap_bound(plan, target.C, constant, n):.6e}')
        except LatticeFlowException as error:
            print(f'    {error}')


def cmd_audit(args):
    spec = load_spec(args)
    net = load_network(args.network)
    target = spec.target
    profile = regularity_profile(net, b=target.b)
    report = check_restrictions(profile, target.b, args.rho, target.C)
    _emit(pd.DataFrame(profile.rows(), columns=PROFILE_COLUMNS), args.out)
    print(f'restrictions hold: {report.passed}, κ = {report.kappa:.6g}', file=sys.stderr)
    for name, values in report.violations.items():
        print(f'  violated {name}: {values}', file=sys.stderr)


def cmd_train(args):
    spec = load_spec(args)
    seed = spec.seed
    activation = args.activation or spec.activations[0]
    gv = experiment_lattice(spec)
    points = training_points(spec, gv, args.n, seed)
    target = spec.target
    net = glorot_init(spec.dims, rng=stream_rng(seed, INIT_STREAM), activation=activation, periodic=spec.periodic)
    result = train(spec.train_config(args.mode, seed), net, points, target(points), b=target.b, bar=args.bar)
    shift = random_shift(stream_rng(seed, EVAL_SHIFT_STREAM), spec.dim)
    estimate = estimate_generalization(result.net, target, gv, shift, M=spec.eval_points,
                                       train_error=result.final_error, points=points, seed=seed)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        save_network(result.net, os.path.join(args.out, 'network.txt'))
        write_training_log(result, os.path.join(args.out, 'training_log.csv'))
    print(f'{activation}/{args.mode} N={args.n} seed={seed}: epochs={result.epochs} ({result.stop_reason}) '
          f'E_T={estimate.train_error:.6e} E_G={estimate.generalization_error:.6e} gap={estimate.gap:.6e}')


def cmd_experiment(args):
    spec = load_spec(args)
    out = args.out or 'experiment'
    _, aggregated = run_experiment(spec, out=out, bar=args.bar)
    if args.plot:
        plot_results(plot_data(aggregated), path=os.path.join(out, 'figure.png'))
    print(aggregated.to_string(index=False))


def cmd_baseline(args):
    _emit(run_baseline(load_spec(args)), args.out)


def cmd_rates(args):
    table = rate_table(pd.read_csv(args.records))
    print(table.to_string(index=False))


def make_parser():
    """ Parser with one subcommand per operation """
    parser = argparse.ArgumentParser(prog='latticeflow', description='Lattice rules and deep networks')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    commands = parser.add_subparsers(dest='command', required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='key = value file on top of the defaults')
    common.add_argument('--gv', help='generating vector file')
    common.add_argument('--out', help='output file or directory')
    common.add_argument('--seed', type=int, help='seed of the random streams')
    common.add_argument('--threads', type=int, help='parallel experiment cells')
    common.add_argument('--bar', action='store_true', help='show progress bars')

    space = argparse.ArgumentParser(add_help=False)
    space.add_argument('--setting', choices=['a', 'b', 'c'], default='b')
    space.add_argument('--alpha', type=int, default=3, help='smoothness of settings b and c')
    space.add_argument('--product', type=float, help='product weights γ_j = PRODUCT^j instead of the tailored ones')

    command = commands.add_parser('points', parents=[common], help='write lattice points, shifted with --seed')
    command.set_defaults(func=cmd_points)

    command = commands.add_parser('cbc', parents=[common, space], help='construct a generating vector')
    command.add_argument('n', type=int)
    command.add_argument('dim', type=int)
    command.add_argument('--method', choices=['auto', 'naive', 'fft'], default='auto')
    command.set_defaults(func=cmd_cbc)

    command = commands.add_parser('wce', parents=[common, space], help='worst-case error and its bounds')
    command.set_defaults(func=cmd_wce)

    command = commands.add_parser('bounds', parents=[common], help='rate plans, weights and error bounds')
    command.add_argument('--gamma', type=int, default=0, help='print γ_u for |u| up to this size')
    command.add_argument('--kappa-sl', type=float, default=1.0, dest='kappa_sl')
    command.add_argument('--n', type=int, nargs='*', default=[2 ** 10])
    command.set_defaults(func=cmd_bounds)

    command = commands.add_parser('audit', parents=[common], help='regularity profile of a saved network')
    command.add_argument('network')
    command.add_argument('--rho', type=float, default=1.0)
    command.set_defaults(func=cmd_audit)

    command = commands.add_parser('train', parents=[common], help='train one network')
    command.add_argument('n', type=int)
    command.add_argument('--activation')
    command.add_argument('--mode', choices=['tailored', 'standard'], default='tailored')
    command.set_defaults(func=cmd_train)

    command = commands.add_parser('experiment', parents=[common], help='run the experiment grid')
    command.add_argument('--plot', action='store_true', help='render figure.png')
    command.set_defaults(func=cmd_experiment)

    command = commands.add_parser('baseline', parents=[common], help='kernel and trig baselines on the grid')
    command.set_defaults(func=cmd_baseline)

    command = commands.add_parser('rates', parents=[common], help='fit gap rates of a records CSV')
    command.add_argument('records')
    command.set_defaults(func=cmd_rates)
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        args.func(args)
    except LatticeFlowException as error:
        print(f'latticeflow {args.command}: {error}', file=sys.stderr)
        return 2
    return 0
