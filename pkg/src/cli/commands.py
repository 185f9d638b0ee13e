"""
Command Module
Subcommand dispatch for the carpetlab command line:
dim, weights, lydim, optimize, boxcount, entropy, render, invariance, sample
"""

from __future__ import annotations

import argparse
from datetime import datetime
from pathlib import Path
import sys

sys.path.append(str(Path(__file__).parent.parent.parent))
from config.carpet_config import carpet_config
from src.boxlab.exact_counts import exact_box_counts
from src.boxlab.partition_entropy import partition_entropy_series
from src.boxlab.regression import fit_dimension_slope
from src.boxlab.sampled_counts import sampled_box_counts
from src.carpet.chaos_game import DEFAULT_DEPTH, sample_points
from src.cli.invariance import invariance_report
from src.cli.render import render_raster
from src.cli.spec_document import load_spec_document
from src.dimension.formulas import dimension_report, ly_dimension, optimal_weights, row_profile
from src.dimension.weights import Weights, load_weights
from src.numopt.ascent import AscentConfig, distance_to_closed_form, maximize_dimension
from src.utils.errors import CarpetLabError, FitError
from src.utils.logger import get_logger

logger = get_logger(__name__)


class CliUsageError(CarpetLabError):
    """Bad flags or arguments"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliUsageError(message)


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ','.join(_fmt(v) for v in value)
    return str(value)


def _print_report(values: dict, prefix: str = '', stream=None):
    stream = stream or sys.stdout
    for key, value in values.items():
        print(f"{prefix}{key}: {_fmt(value)}", file=stream)


def _emit_csv(text: str, out):
    if out:
        target = carpet_config.resolve_output(out)
        target.write_text(text, encoding='utf-8')
        logger.info(f"✅ Saved CSV: {target}")
    else:
        sys.stdout.write(text)


def _add_weight_options(parser, required=False):
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument('--weights', metavar='FILE', help='JSON weights file in digit order')
    group.add_argument('--uniform', action='store_true', help='uniform weights over digits')
    group.add_argument('--optimal', action='store_true', help='closed-form dimension-maximizing weights')


def _resolve_weights(args, spec) -> Weights:
    if getattr(args, 'weights', None):
        return load_weights(args.weights, spec)
    if getattr(args, 'optimal', False):
        return optimal_weights(row_profile(spec))
    return Weights.uniform(spec)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog='carpetlab', description='Dimension theory of reflected grid carpets')
    commands = parser.add_subparsers(dest='command', metavar='COMMAND', parser_class=_Parser)
    commands.required = True

    dim = commands.add_parser('dim', help='closed-form Hausdorff dimension')
    dim.add_argument('spec')

    weights = commands.add_parser('weights', help='closed-form optimal weights p and q')
    weights.add_argument('spec')

    lydim = commands.add_parser('lydim', help='dimension of a Bernoulli measure')
    lydim.add_argument('spec')
    _add_weight_options(lydim, required=True)

    optimize = commands.add_parser('optimize', help='numerical ascent to the optimal weights')
    optimize.add_argument('spec')
    optimize.add_argument('--eta', type=float, default=AscentConfig.eta)
    optimize.add_argument('--tol', type=float, default=AscentConfig.tolerance)
    optimize.add_argument('--max-iter', type=int, default=AscentConfig.max_iterations)
    optimize.add_argument('--backtracking', type=float, default=AscentConfig.backtracking)
    optimize.add_argument('--out', help='write the iter,objective trace CSV here')

    boxcount = commands.add_parser('boxcount', help='exact or sampled box counts and slope fit')
    boxcount.add_argument('spec')
    boxcount.add_argument('--lmin', type=int, required=True)
    boxcount.add_argument('--lmax', type=int, required=True)
    mode = boxcount.add_mutually_exclusive_group()
    mode.add_argument('--exact', action='store_true', help='exact enumeration (default)')
    mode.add_argument('--sample', type=int, metavar='N', help='chaos-game points')
    boxcount.add_argument('--depth', type=int, default=DEFAULT_DEPTH)
    boxcount.add_argument('--seed', type=int, default=0)
    boxcount.add_argument('--fit-lmin', type=int)
    boxcount.add_argument('--fit-lmax', type=int)
    boxcount.add_argument('--out', help='write the CSV here instead of stdout')
    _add_weight_options(boxcount)

    entropy = commands.add_parser('entropy', help='partition entropy series')
    entropy.add_argument('spec')
    entropy.add_argument('--lmin', type=int, default=1)
    entropy.add_argument('--lmax', type=int, required=True)
    entropy.add_argument('--out', help='write the CSV here instead of stdout')
    _add_weight_options(entropy)

    render = commands.add_parser('render', help='PGM raster of the level-K cylinders')
    render.add_argument('spec')
    render.add_argument('--level', type=int, required=True)
    render.add_argument('--size', type=int, required=True)
    render.add_argument('--out', required=True)
    render.add_argument('--glyph', action='store_true')

    invariance = commands.add_parser('invariance', help='signature reassignment experiment')
    invariance.add_argument('spec')
    invariance.add_argument('--trials', type=int, required=True)
    invariance.add_argument('--seed', type=int, default=0)
    invariance.add_argument('--fit-lmin', type=int, default=4)
    invariance.add_argument('--fit-lmax', type=int, default=8)
    invariance.add_argument('--out', help='write the JSON report here instead of stdout')

    sample = commands.add_parser('sample', help='chaos-game points as x,y CSV')
    sample.add_argument('spec')
    sample.add_argument('--count', type=int, required=True)
    sample.add_argument('--depth', type=int, default=DEFAULT_DEPTH)
    sample.add_argument('--seed', type=int, default=0)
    sample.add_argument('--out', help='write the CSV here instead of stdout')
    _add_weight_options(sample)

    return parser


class CarpetLab:
    """Runs one subcommand per invocation"""

    def __init__(self, args):
        self.args = args
        self.spec = load_spec_document(args.spec)
        self.profile = row_profile(self.spec)

    def dim(self):
        report = dimension_report(self.profile)
        _print_report({
            'hausdorff_dimension': report.hausdorff,
            'S': report.S,
            'beta': report.beta,
            't': list(report.t),
            'box_dimension_closed_form': report.box_closed_form,
            'box_equals_hausdorff': report.box_equals_hausdorff,
        })

    def weights(self):
        w = optimal_weights(self.profile)
        _print_report({
            'p': w.as_list(),
            'q': [float(v) for v in w.q],
        })

    def lydim(self):
        w = _resolve_weights(self.args, self.spec)
        _print_report({
            'ly_dimension': ly_dimension(self.profile, w),
            'hausdorff_dimension': dimension_report(self.profile).hausdorff,
        })

    def optimize(self):
        cfg = AscentConfig(
            max_iterations=self.args.max_iter,
            eta=self.args.eta,
            tolerance=self.args.tol,
            backtracking=self.args.backtracking,
        )
        trace = maximize_dimension(self.profile, Weights.uniform(self.spec), cfg)
        if self.args.out:
            _emit_csv(trace.to_frame().to_csv(index=False, float_format='%.17g'), self.args.out)
        _print_report({
            'iterations': trace.iterations,
            'converged': trace.converged,
            'objective': trace.final_objective,
            **distance_to_closed_form(self.profile, trace),
            'p': trace.weights.as_list(),
        })

    def boxcount(self):
        args = self.args
        if args.sample is None and (args.weights or args.uniform or args.optimal):
            raise CliUsageError("--weights, --uniform and --optimal need --sample N")
        if args.sample is not None:
            w = _resolve_weights(args, self.spec)
            points = sample_points(self.spec, w, args.sample, args.depth, args.seed)
            series = sampled_box_counts(points, args.lmin, args.lmax, self.spec.m)
        else:
            series = exact_box_counts(self.spec, args.lmin, args.lmax)

        _emit_csv(series.to_csv(), args.out)

        report = dimension_report(self.profile)
        summary = {
            'method': series.provenance['method'],
            'hausdorff_dimension': report.hausdorff,
            'box_dimension_closed_form': report.box_closed_form,
            'box_equals_hausdorff': report.box_equals_hausdorff,
        }
        try:
            fit = fit_dimension_slope(series, self.spec.m, args.fit_lmin, args.fit_lmax)
        except FitError as e:
            logger.warning(f"Slope fit skipped: {e}")
        else:
            summary.update({
                'slope': fit.slope,
                'stderr': fit.stderr,
                'fit_levels': f"{fit.levels[0]}..{fit.levels[-1]}",
                'discrepancy': fit.slope - report.hausdorff,
            })
            if not report.box_equals_hausdorff:
                logger.warning(
                    f"Row counts are not uniform: box-count slope {fit.slope:.4f} against "
                    f"Hausdorff dimension {report.hausdorff:.4f} "
                    f"(closed-form box dimension {report.box_closed_form:.4f})"
                )
        _print_report(summary, prefix='# ')

    def entropy(self):
        w = _resolve_weights(self.args, self.spec)
        series = partition_entropy_series(self.spec, w, self.args.lmin, self.args.lmax)
        _emit_csv(series.to_csv(), self.args.out)

    def render(self):
        image = render_raster(self.spec, self.args.level, self.args.size, self.args.glyph)
        target = image.save(carpet_config.resolve_output(self.args.out))
        _print_report({'image': str(target), 'width': image.width, 'height': image.height})

    def invariance(self):
        report = invariance_report(
            self.spec, self.args.trials, self.args.seed,
            fit_levels=(self.args.fit_lmin, self.args.fit_lmax),
        )
        text = report.to_json()
        if self.args.out:
            target = carpet_config.resolve_output(self.args.out)
            target.write_text(text, encoding='utf-8')
            logger.info(f"✅ Saved invariance report: {target}")
        else:
            sys.stdout.write(text)

    def sample(self):
        w = _resolve_weights(self.args, self.spec)
        points = sample_points(self.spec, w, self.args.count, self.args.depth, self.args.seed)
        _emit_csv(points.to_frame().to_csv(index=False, float_format='%.17g'), self.args.out)

    def run(self):
        return getattr(self, self.args.command)()


def run_command(argv=None) -> int:
    """
    Parse arguments and run one subcommand

    Args:
        argv (list[str] | None): Arguments without the program name

    Returns:
        int: 0 on success, 1 on validation errors, 2 on budget/depth errors
    """
    start_time = datetime.now()
    try:
        args = build_parser().parse_args(argv)
        logger.debug(f"Running '{args.command}' with {vars(args)}")
        CarpetLab(args).run()
    except CarpetLabError as e:
        logger.debug(f"Command failed: {type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_status
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except SystemExit as e:
        # --help exits through argparse
        return int(e.code or 0)

    duration = (datetime.now() - start_time).total_seconds()
    logger.info(f"Command completed in {duration:.2f} seconds")
    return 0
