"""
Command-line interface

Subcommands: construct, analyze, project, bound, table, verify. Reports go to
stdout; logs, error messages and progress bars go to stderr.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from . import families
from .bounds import (
    BoundCalculator,
    DerivationPolicy,
    cs_projection_bound,
    csima_sawyer_bound,
    generate_table,
    improved_cells,
    ip_bound,
    render_table,
    smalls_bound,
)
from .config import Config, load_config, save_default_config
from .errors import (
    EXIT_VERIFICATION,
    OrdinaryPlanesError,
    UnsupportedBackendError,
    UnsupportedDimensionError,
)
from .geometry import (
    Configuration,
    FloatConfiguration,
    dump_configuration,
    load_configuration,
    project_from_point,
)
from .incidence import (
    check_bettercount,
    check_ints,
    check_trivcount,
    per_point_from_profile,
    pigeonhole_check,
    profile_document,
    secant_profile,
    secant_profile_numeric,
)
from .logging_config import log_error_with_context, log_system_info, setup_logging
from .parallel import resolve_workers
from .verify import DEFAULT_GROUPS, GROUPS, VerifyContext, render_claims, run_verification

logger = logging.getLogger('ordinaryplanes')

BOUND_METHODS = ('best', 'ip', 'project2', 'smalls', 'cs', 'upper')


def write_output(text: str, out: Optional[str]):
    """Write a report to a file, or to stdout when no file is given"""
    if not text.endswith('\n'):
        text += '\n'
    if out:
        path = Path(out).expanduser()
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        logger.info(f"Wrote {path}")
    else:
        sys.stdout.write(text)


def cmd_construct(args, config: Config, workers: int) -> int:
    spec = families.FamilySpec(
        family=args.family,
        n=args.n,
        d=args.d,
        variant=args.variant,
        backend=args.backend,
        alphas=tuple(args.alphas) if args.alphas else None,
        seed=config.seed,
    )
    built = families.construct(spec)
    if isinstance(built, families.CombinatorialModel):
        profile = families.combinatorial_profile(built, keep_hyperplanes=True)
        identities = {'trivcount': check_trivcount(profile), 'bettercount': check_bettercount(profile)}
        doc = profile_document(profile, identities, per_point=per_point_from_profile(profile))
        write_output(doc.model_dump_json(indent=2, exclude_none=True), args.out)
        return 0
    write_output(dump_configuration(built), args.out)
    return 0


def cmd_analyze(args, config: Config, workers: int) -> int:
    c = load_configuration(args.input)
    keep = args.per_point or args.hyperplanes
    if isinstance(c, FloatConfiguration):
        profile = secant_profile_numeric(c, config.eps, keep_hyperplanes=keep)
    else:
        profile = secant_profile(
            c,
            validate=not args.skip_validation,
            keep_hyperplanes=keep,
            workers=workers,
            show_progress=config.progress_enabled,
            simple_progress=config.simple_progress,
        )

    identities = {'trivcount': check_trivcount(profile), 'bettercount': check_bettercount(profile)}
    ints_witness = None
    if args.check_identities and isinstance(c, Configuration):
        identities['ints'], ints_witness = check_ints(c)

    doc = profile_document(
        profile,
        identities,
        per_point=per_point_from_profile(profile) if args.per_point else None,
        include_hyperplanes=args.hyperplanes,
        ints_witness=ints_witness,
    )
    write_output(doc.model_dump_json(indent=2, exclude_none=True), args.out)

    if args.check_identities and not all(identities.values()):
        failed = [name for name, ok in identities.items() if not ok]
        logger.error(f"Identity check failed: {', '.join(failed)}")
        return EXIT_VERIFICATION
    return 0


def cmd_project(args, config: Config, workers: int) -> int:
    c = load_configuration(args.input)
    if isinstance(c, FloatConfiguration):
        raise UnsupportedBackendError("Projection needs an exact configuration")
    projected = project_from_point(c, args.point)
    report = pigeonhole_check(c, workers=workers)
    write_output(dump_configuration(projected), args.out)

    # Keep stdout parseable when the configuration itself went there
    stream = sys.stdout if args.out else sys.stderr
    print(f"N (ordinary hyperplanes of source): {report.ordinary}", file=stream)
    print(f"N_x (ordinary hyperplanes through point {args.point}): {report.per_point[args.point]}", file=stream)
    if args.check_pigeonhole:
        x = report.minimizer
        relation = '=' if report.equality else ('>' if report.inequality_holds else '<')
        print(
            f"d*N {relation} n*N_x at x = {x}: {report.d}*{report.ordinary} = {report.d * report.ordinary}, "
            f"{report.n}*{report.per_point[x]} = {report.n * report.per_point[x]}"
            + (" (equality)" if report.equality else ""),
            file=stream,
        )
        if not (report.inequality_holds and report.double_count_holds):
            logger.error("Projection averaging inequality fails")
            return EXIT_VERIFICATION
    return 0


def cmd_bound(args, config: Config, workers: int) -> int:
    n, d, method = args.n, args.d, args.method
    calculator = BoundCalculator(config.policy, config.ip_search_limit, workers)
    calculator.check_cell(n, d)
    if method == 'best':
        result = calculator.best_lower(n, d)
    elif method == 'upper':
        result = calculator.best_upper(n, d)
    elif method == 'ip':
        result = ip_bound(n, d, config.ip_search_limit)
    elif method == 'project2':
        result = cs_projection_bound(n, d)
    elif method == 'smalls':
        result = smalls_bound(n, d)
    else:
        if d != 2:
            raise UnsupportedDimensionError(f"The planar bound needs d = 2, got {d}")
        result = csima_sawyer_bound(n)
    write_output(result.to_document().model_dump_json(indent=2, exclude_none=True), args.out)
    return 0


def cmd_table(args, config: Config, workers: int) -> int:
    calculator = BoundCalculator(config.policy, config.ip_search_limit, workers)
    table = generate_table(
        config.table_n_max,
        config.table_d_max,
        row_limits=config.table_row_limits,
        calculator=calculator,
    )
    if calculator.policy is DerivationPolicy.STRONGEST:
        base = generate_table(
            config.table_n_max,
            config.table_d_max,
            row_limits=config.table_row_limits,
            calculator=BoundCalculator(DerivationPolicy.PUBLISHED, config.ip_search_limit, workers),
        )
        better = improved_cells(base, table)
        if better:
            logger.info("Cells improved over the published derivation: " + ', '.join(
                f"e_{c.d}({c.n}) >= {c.lower}" for c in better
            ))
        else:
            logger.info("No cell improves on the published derivation")
    write_output(render_table(table, args.format), args.out)
    return 0


def cmd_verify(args, config: Config, workers: int) -> int:
    groups: List[str] = list(args.only) if args.only else list(DEFAULT_GROUPS)
    if args.properties and 'properties' not in groups:
        groups.append('properties')
    context = VerifyContext(
        eps=config.eps,
        workers=workers,
        seed=config.seed,
        samples=config.property_samples,
        row_limits=config.table_row_limits,
        ip_search_limit=config.ip_search_limit,
    )
    claims = run_verification(
        groups,
        context,
        show_progress=config.progress_enabled,
        simple_progress=config.simple_progress,
    )
    write_output(render_claims(claims), args.out)
    return 0 if all(c.passed for c in claims) else EXIT_VERIFICATION


COMMANDS = {
    'construct': cmd_construct,
    'analyze': cmd_analyze,
    'project': cmd_project,
    'bound': cmd_bound,
    'table': cmd_table,
    'verify': cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='ordinary-hyperplanes',
        description=f'ordinaryplanes v{__version__} - ordinary hyperplanes of point sets in real projective space',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Build the cube and count its ordinary planes
  ordinary-hyperplanes construct --family cube --out cube.json
  ordinary-hyperplanes analyze cube.json --per-point --check-identities

  # Project from a vertex and check the averaging inequality
  ordinary-hyperplanes project cube.json --point 0 --out fano.json --check-pigeonhole

  # Bounds on e_d(n)
  ordinary-hyperplanes bound --n 8 --d 4 --method ip
  ordinary-hyperplanes table --format md

  # Recompute the known results
  ordinary-hyperplanes verify
  ordinary-hyperplanes verify --only table --only ip
        """
    )

    # Config options
    parser.add_argument('--config',
                        help='Path to config file')
    parser.add_argument('--generate-config',
                        action='store_true',
                        help='Generate default config file and exit')

    # Logging options
    parser.add_argument('--log-level',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'],
                        help='Logging level (default: INFO)')
    parser.add_argument('--log-file',
                        help='Write logs to file')
    parser.add_argument('-v', '--verbose',
                        action='store_true',
                        default=None,
                        help='Verbose output (DEBUG level)')
    parser.add_argument('-q', '--quiet',
                        action='store_true',
                        default=None,
                        help='Quiet mode (errors only)')

    # Processing options
    parser.add_argument('--threads',
                        dest='workers',
                        help="Worker processes for hyperplane enumeration (number or 'auto', default: 1)")

    # Progress options
    parser.add_argument('--no-progress',
                        action='store_true',
                        default=None,
                        help='Disable progress bars')
    parser.add_argument('--simple-progress',
                        action='store_true',
                        default=None,
                        help='Use simple progress (terminal compatibility)')

    parser.add_argument('--version',
                        action='version',
                        version=f'ordinaryplanes v{__version__}')

    sub = parser.add_subparsers(dest='command', metavar='command')

    p = sub.add_parser('construct', help='Build a configuration from a named family')
    p.add_argument('--family', required=True, choices=families.FAMILIES)
    p.add_argument('--n', type=int, help='Number of points')
    p.add_argument('--d', type=int, help='Dimension')
    p.add_argument('--variant', type=int, default=0,
                   help='Deleted point index for odd-n ring families, deleted vertex for cube_minus_vertex')
    p.add_argument('--alphas', nargs='+', help='Parameters of the odd d+3 construction, as p/q')
    p.add_argument('--backend', choices=families.BACKENDS + tuple(families.BACKEND_ALIASES),
                   help='exact, float or comb (default: the family\'s natural backend)')
    p.add_argument('--seed', type=int, help='Seed for the random family')
    p.add_argument('--out', help='Output file (default: stdout)')

    p = sub.add_parser('analyze', help='Secant profile of a configuration file')
    p.add_argument('input', help='Configuration JSON file')
    p.add_argument('--per-point', action='store_true', help='Report ordinary hyperplanes through each point')
    p.add_argument('--hyperplanes', action='store_true', help='List every spanned hyperplane with its points')
    p.add_argument('--check-identities', action='store_true',
                   help='Check the counting identities (exit 3 on failure)')
    p.add_argument('--eps', type=float, help='Incidence tolerance for floating inputs (default: 1e-7)')
    p.add_argument('--skip-validation', action='store_true',
                   help='Record degenerate subsets instead of rejecting the input')
    p.add_argument('--out', help='Output file (default: stdout)')

    p = sub.add_parser('project', help='Project a configuration from one of its points')
    p.add_argument('input', help='Configuration JSON file')
    p.add_argument('--point', type=int, required=True, help='Index of the projection centre')
    p.add_argument('--out', help='Output file (default: stdout)')
    p.add_argument('--check-pigeonhole', action='store_true',
                   help='Check d*N >= n*N_x for the point with fewest ordinary hyperplanes')

    p = sub.add_parser('bound', help='Lower or upper bound on e_d(n)')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--d', type=int, required=True)
    p.add_argument('--method', choices=BOUND_METHODS, default='best')
    p.add_argument('--policy', choices=[policy.value for policy in DerivationPolicy])
    p.add_argument('--out', help='Output file (default: stdout)')

    p = sub.add_parser('table', help='Table of small values of e_d(n)')
    p.add_argument('--format', choices=['md', 'csv', 'json'], default='md')
    p.add_argument('--policy', choices=[policy.value for policy in DerivationPolicy])
    p.add_argument('--n-max', type=int, dest='table_n_max')
    p.add_argument('--d-max', type=int, dest='table_d_max')
    p.add_argument('--out', help='Output file (default: stdout)')

    p = sub.add_parser('verify', help='Recompute the known results and report claim by claim')
    p.add_argument('--only', action='append', choices=GROUPS, metavar='GROUP',
                   help=f"Run only this group (repeatable): {', '.join(GROUPS)}")
    p.add_argument('--properties', action='store_true', help='Include the randomized property suite')
    p.add_argument('--seed', type=int, help='Seed for randomized checks (default: 2016)')
    p.add_argument('--samples', type=int, dest='property_samples',
                   help='Random configurations in the property suite (default: 200)')
    p.add_argument('--out', help='Output file (default: stdout)')

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    # Handle --generate-config
    if args.generate_config:
        try:
            target = Path(args.config).expanduser() if args.config else None
            fmt = 'json' if target is not None and target.suffix.lower() == '.json' else 'yaml'
            config_path = save_default_config(target, fmt)
            print(f"Generated default config file: {config_path}")
            return 0
        except ValueError as e:
            print(f"Error generating config file: {e}", file=sys.stderr)
            return 1

    if not args.command:
        parser.print_help()
        return 1

    try:
        config = load_config(args)
    except ValueError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return 1

    setup_logging(
        log_level=config.log_level,
        log_file=config.log_file,
        verbose=config.verbose,
        quiet=config.quiet
    )

    workers = resolve_workers(config.workers)
    if config.verbose:
        log_system_info(workers)

    source = getattr(args, 'input', None)
    try:
        return COMMANDS[args.command](args, config, workers)
    except OrdinaryPlanesError as e:
        log_error_with_context(e, f"{args.command} failed", source)
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code
    except (ValueError, OSError) as e:
        log_error_with_context(e, f"{args.command} failed", source)
        print(f"Error: {e}", file=sys.stderr)
        return 1
    except Exception as e:
        print(f"Unexpected error: {e}", file=sys.stderr)
        logger.error(f"Unexpected error in {args.command}", exc_info=True)
        return 1


if __name__ == '__main__':
    sys.exit(main())
