#!/usr/bin/env python3
"""
JL Dissimilarity Projector
==========================

Random projection for symmetric hollow dissimilarity matrices that need not be
Euclidean or even metric.

Features:
- Classical JL baseline on the absolute-eigenvalue embedding
- Pseudo-Euclidean (p, q) JL transform with per-pair distortion bounds
- Generalized power-distance JL transform with an additive 4·ε·r² term
- Synthetic non-Euclidean datasets and graph hop-count matrices
- Bound validation, relative-error reports, relational k-means and charts

Exit codes: 0 success, 1 usage or configuration error, 2 data error,
3 numerical failure.
"""

import argparse
import json
import sys

import numpy as np
import pandas as pd

import config
from chart_generator import ChartGenerator
from datagen import (BallSpec, SimplexSpec, SpectrumSpec, gen_balls, gen_simplex,
                     gen_spectrum, graph_hops, power_favoring_spec, pq_favoring_spec)
from dissim_core import DissimilarityError, NumericalError
from evaluation import METHODS
from jl_pipeline import JLPipeline
from matrix_io import (RunManifest, to_jsonable, read_edge_list, read_matrix,
                       write_json, write_matrix, write_records)
from pq_embed import norm_ratio_sample
from projection import ConfigError, ProjectionConfig

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """argparse parser that raises instead of exiting with status 2."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(data: dict, path: str = None, quiet: bool = False):
    if path:
        write_json(data, path)
        if not quiet:
            print(f"✓ Report written: {path}")
    else:
        print(json.dumps(to_jsonable(data), indent=2))


def _projection_config(args) -> ProjectionConfig:
    return ProjectionConfig(args.epsilon, args.const, args.seed)


def _settings(args) -> dict:
    return {k: v for k, v in vars(args).items() if k != 'handler'}


def cmd_gen(args) -> int:
    if args.kind == 'simplex':
        matrix = gen_simplex(SimplexSpec(args.n, args.alpha, args.seed, args.gap_power))
    elif args.kind == 'ball':
        matrix = gen_balls(BallSpec(args.n, args.dim, (args.rmin, args.rmax), args.seed))
    elif args.preset == 'pq-favoring':
        matrix = gen_spectrum(pq_favoring_spec(args.n, args.seed))
    elif args.preset == 'power-favoring':
        matrix = gen_spectrum(power_favoring_spec(args.n, args.seed))
    else:
        positive = np.linspace(1.0, 2.0, args.p)
        negative = np.linspace(1.0, 2.0, args.q)
        matrix = gen_spectrum(SpectrumSpec(args.n, tuple(positive), tuple(negative), args.seed))

    write_matrix(matrix, args.out)
    if not args.quiet:
        print(f"✓ Generated {args.kind} matrix (n = {matrix.n}) -> {args.out}")
    return EXIT_OK


def cmd_ingest_graph(args) -> int:
    matrix = graph_hops(read_edge_list(args.edges))
    write_matrix(matrix, args.out)
    if not args.quiet:
        print(f"✓ Hop-count matrix (n = {matrix.n}) -> {args.out}")
    return EXIT_OK


def cmd_project(args) -> int:
    manifest = RunManifest('project', [args.input], _settings(args))
    cfg = _projection_config(args)
    pipeline = JLPipeline(read_matrix(args.input), quiet=args.quiet)
    result = pipeline.project(args.method, cfg, args.radius_override, args.radius_rule)
    report = pipeline.report(result)

    if args.out_matrix:
        write_matrix(result.D_hat, args.out_matrix)
        if not args.quiet:
            print(f"✓ Reconstructed matrix written: {args.out_matrix}")
    _emit(report.to_dict(manifest.finish().to_dict()), args.out_report, args.quiet)
    return EXIT_OK


def cmd_validate(args) -> int:
    manifest = RunManifest('validate', [args.input], _settings(args))
    cfg = _projection_config(args)
    matrix = read_matrix(args.input)
    pipeline = JLPipeline(matrix, quiet=args.quiet)
    result = pipeline.project(args.method, cfg, args.radius_override, args.radius_rule)
    D_hat = np.array(matrix.entries) if args.identity_debug else result.D_hat
    check = pipeline.validate(result, D_hat)

    records = check.records
    if args.sample is not None and len(records) > args.sample:
        records = records.sample(n=args.sample, random_state=cfg.seed).sort_values(['i', 'j'])
    if args.out_csv:
        write_records(records, args.out_csv)
        if not args.quiet:
            print(f"✓ Pair records written: {args.out_csv} ({len(records)} rows)")

    summary = {
        'manifest': manifest.finish().to_dict(),
        'method': args.method,
        'n': matrix.n,
        'm': result.m,
        'epsilon': cfg.epsilon,
        'identity_debug': args.identity_debug,
        'pairs_checked': int(len(check.records)),
    }
    if args.method == 'jl-pq':
        summary['violation_rate'] = check.violation_rate
        summary['null_pairs'] = check.null_pairs
    else:
        summary['radius'] = result.radius or 0.0
        summary['max_residual'] = check.max_residual
        summary['bound_4er2'] = check.bound
        summary['fraction_within'] = check.fraction_within
    _emit(summary, args.out_report, args.quiet)
    return EXIT_OK


def cmd_kmeans(args) -> int:
    manifest = RunManifest('kmeans', [args.input], _settings(args))
    cfg = _projection_config(args)
    pipeline = JLPipeline(read_matrix(args.input), quiet=args.quiet)
    methods = METHODS if args.method == 'all' else (args.method,)
    results = pipeline.kmeans_comparison(args.k, cfg, args.restarts, methods)
    results['manifest'] = manifest.finish().to_dict()
    _emit(results, args.out, args.quiet)
    return EXIT_OK


def cmd_describe(args) -> int:
    manifest = RunManifest('describe', [args.input], _settings(args))
    pipeline = JLPipeline(read_matrix(args.input), quiet=args.quiet)
    stats = pipeline.describe()
    stats['manifest'] = manifest.finish().to_dict()
    _emit(stats, args.out, args.quiet)
    return EXIT_OK


def cmd_compare(args) -> int:
    manifest = RunManifest('compare', [args.input], _settings(args))
    cfg = _projection_config(args)
    pipeline = JLPipeline(read_matrix(args.input), quiet=args.quiet)
    reports = pipeline.compare(cfg, args.radius_override, args.radius_rule)
    manifest_dict = manifest.finish().to_dict()

    if args.out_csv:
        table = pd.DataFrame([{'method': r.method, 'm': r.m, 'm_total': r.m_total,
                               **r.stats.to_dict()} for r in reports])
        write_records(table, args.out_csv)
    _emit({'manifest': manifest_dict, 'reports': [r.to_dict() for r in reports]},
          args.out_report, args.quiet)
    return EXIT_OK


def cmd_plot(args) -> int:
    records = pd.read_csv(args.records)
    charts = ChartGenerator(args.chart_dir, quiet=args.quiet)
    limit = args.max_pairs or (config.PLOT_SAMPLE_PAIRS if args.kind == 'ratio'
                               else config.RESIDUAL_SAMPLE_PAIRS)
    if len(records) > limit:
        records = records.sample(n=limit, random_state=args.seed).sort_values(['i', 'j'])
    if args.kind == 'ratio':
        missing = {'d', 'd_hat', 'c_ij', 'within'} - set(records.columns)
        if missing:
            raise DissimilarityError(f"{args.records} lacks columns {sorted(missing)}")
        path = charts.plot_ratio_bounds(records, args.epsilon, args.name or 'pq_ratio_bounds')
    else:
        if 'residual' not in records.columns:
            raise DissimilarityError(f"{args.records} lacks a 'residual' column")
        path = charts.plot_residuals(records, args.epsilon, args.radius, args.shrink,
                                     args.name or 'power_residuals')
    return EXIT_OK if path else EXIT_DATA


def cmd_norm_ratio(args) -> int:
    sample = norm_ratio_sample(args.p, args.q, args.trials, args.seed)
    _emit(sample.summary(args.c), args.out, args.quiet)
    return EXIT_OK


def _add_projection_flags(parser):
    parser.add_argument('input', help='CSV dissimilarity matrix')
    parser.add_argument('--method', choices=METHODS, default='jl-pq')
    parser.add_argument('--epsilon', type=float, default=config.EPSILON)
    parser.add_argument('--const', type=float, default=config.DIM_CONSTANT,
                        help='constant c in m = ceil(c·log2(n)/ε²)')
    parser.add_argument('--seed', type=int, default=config.SEED)
    parser.add_argument('--radius-override', type=float, default=None)
    parser.add_argument('--radius-rule', choices=('minimal', 'half-root'), default='minimal')


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog='jl-dissim', description='JL projection for dissimilarity matrices')
    parser.add_argument('--quiet', action='store_true', help='suppress progress output')
    sub = parser.add_subparsers(dest='command', parser_class=ArgumentParser)
    sub.required = True

    gen = sub.add_parser('gen', help='generate a synthetic dissimilarity matrix')
    gen.add_argument('kind', choices=('simplex', 'ball', 'spectrum'))
    gen.add_argument('--n', type=int, required=True)
    gen.add_argument('--seed', type=int, default=config.SEED)
    gen.add_argument('--alpha', type=float, default=None, help='simplex dominance (default 20·n)')
    gen.add_argument('--gap-power', type=float, default=config.SIMPLEX_GAP_POWER)
    gen.add_argument('--dim', type=int, default=config.BALL_DIM)
    gen.add_argument('--rmin', type=float, default=config.BALL_RMIN)
    gen.add_argument('--rmax', type=float, default=config.BALL_RMAX)
    gen.add_argument('--preset', choices=('pq-favoring', 'power-favoring'), default=None)
    gen.add_argument('--p', type=int, default=0)
    gen.add_argument('--q', type=int, default=0)
    gen.add_argument('--out', required=True)
    gen.set_defaults(handler=cmd_gen)

    ingest = sub.add_parser('ingest-graph', help='hop-count matrix from an edge list')
    ingest.add_argument('edges')
    ingest.add_argument('--out', required=True)
    ingest.set_defaults(handler=cmd_ingest_graph)

    project = sub.add_parser('project', help='project a matrix and report relative errors')
    _add_projection_flags(project)
    project.add_argument('--out-report', default=None)
    project.add_argument('--out-matrix', default=None)
    project.set_defaults(handler=cmd_project)

    validate = sub.add_parser('validate', help='check projected pairs against the error bounds')
    _add_projection_flags(validate)
    validate.add_argument('--sample', type=int, default=None, help='keep this many random pairs')
    validate.add_argument('--identity-debug', action='store_true', help='validate D against itself')
    validate.add_argument('--out-csv', default=None)
    validate.add_argument('--out-report', default=None)
    validate.set_defaults(handler=cmd_validate)

    kmeans = sub.add_parser('kmeans', help='relational k-means on original and projected data')
    kmeans.add_argument('input')
    kmeans.add_argument('--k', type=int, required=True)
    kmeans.add_argument('--method', choices=METHODS + ('all',), default='all')
    kmeans.add_argument('--epsilon', type=float, default=config.EPSILON)
    kmeans.add_argument('--const', type=float, default=config.DIM_CONSTANT)
    kmeans.add_argument('--seed', type=int, default=config.SEED)
    kmeans.add_argument('--restarts', type=int, default=config.KMEANS_RESTARTS)
    kmeans.add_argument('--out', default=None)
    kmeans.set_defaults(handler=cmd_kmeans)

    describe = sub.add_parser('describe', help='signature and geometry statistics')
    describe.add_argument('input')
    describe.add_argument('--out', default=None)
    describe.set_defaults(handler=cmd_describe)

    compare = sub.add_parser('compare', help='relative errors of all three methods')
    compare.add_argument('input')
    compare.add_argument('--epsilon', type=float, default=config.EPSILON)
    compare.add_argument('--const', type=float, default=config.DIM_CONSTANT)
    compare.add_argument('--seed', type=int, default=config.SEED)
    compare.add_argument('--radius-override', type=float, default=None)
    compare.add_argument('--radius-rule', choices=('minimal', 'half-root'), default='minimal')
    compare.add_argument('--out-report', default=None)
    compare.add_argument('--out-csv', default=None)
    compare.set_defaults(handler=cmd_compare)

    plot = sub.add_parser('plot', help='render a validation CSV')
    plot.add_argument('records')
    plot.add_argument('--kind', choices=('ratio', 'residual'), required=True)
    plot.add_argument('--epsilon', type=float, default=config.EPSILON)
    plot.add_argument('--radius', type=float, default=0.0)
    plot.add_argument('--shrink', type=float, default=config.RESIDUAL_DISPLAY_SHRINK)
    plot.add_argument('--chart-dir', default=config.CHART_SAVE_PATH)
    plot.add_argument('--name', default=None)
    plot.add_argument('--max-pairs', type=int, default=None,
                      help=f'pairs drawn (default {config.PLOT_SAMPLE_PAIRS} ratio / {config.RESIDUAL_SAMPLE_PAIRS} residual)')
    plot.add_argument('--seed', type=int, default=config.SEED)
    plot.set_defaults(handler=cmd_plot)

    ratio = sub.add_parser('norm-ratio', help='sphere sampling of the (p, q) norm ratio')
    ratio.add_argument('--p', type=int, required=True)
    ratio.add_argument('--q', type=int, required=True)
    ratio.add_argument('--trials', type=int, default=10000)
    ratio.add_argument('--seed', type=int, default=config.SEED)
    ratio.add_argument('--c', type=float, default=None, help='report the fraction below c')
    ratio.add_argument('--out', default=None)
    ratio.set_defaults(handler=cmd_norm_ratio)

    return parser


def main(argv=None) -> int:
    """Parse arguments, run one command and map failures to exit codes"""
    try:
        args = build_parser().parse_args(argv)
        return args.handler(args)
    except UsageError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as e:
        print(f"❌ Invalid configuration: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, np.linalg.LinAlgError) as e:
        print(f"❌ Numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (DissimilarityError, ValueError, OSError) as e:
        print(f"❌ Data error: {e}", file=sys.stderr)
        return EXIT_DATA
    except KeyboardInterrupt:
        print("\n\n⚠️  Interrupted by user.", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
