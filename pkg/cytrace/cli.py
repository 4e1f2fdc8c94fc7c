import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import pandas as pd
from tqdm import tqdm

import cytrace
from cytrace.categories.barcat import cyclic_bar, diagonal_restriction, frobenius_bar, nerve, project_to_nerve
from cytrace.categories.fincat import get_builtin_category, is_groupoid_like, validate_category
from cytrace.categories.indexcat import (
    build_index_category, check_theta_iso, factor_unique, index_isomorphism, index_relations, natural_numbers_functor)
from cytrace.common.checks.check import Violation
from cytrace.common.errors import NotInvertibleError, ResidualError, SchemaError, TruncationError, UsageError
from cytrace.common.rings import get_ring
from cytrace.common.schemas import load_artifact, monoid_to_json, save_artifact
from cytrace.common.utils import atomic_write, dump_json, truncation_set
from cytrace.complexes.builtin import get_builtin
from cytrace.complexes.homology import homology_through
from cytrace.complexes.simplicial import compose_maps, validate, validate_map
from cytrace.complexes.subdivision import edgewise_subdivide, verify_cube_face_relations
from cytrace.witt.trace import as_matrix, char_series, trc0
from cytrace.witt.witt_vector import (
    WittVector, frobenius_witt, ghost, quotient_set, restrict_witt, to_series, verschiebung_witt, witt_add,
    witt_mul, witt_neg, witt_sub)

logger = logging.getLogger('cytrace')

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_SCHEMA = 0, 1, 2, 3

witt_ops = ['add', 'sub', 'mul', 'neg', 'frob', 'ver', 'restrict', 'ghost', 'series']

def _int_list(value):
    try:
        return [int(v) for v in value.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f'{value!r} is not a comma-separated list of integers')

def _report_verdict(violations):
    for v in violations[:10]:
        print(f'  {v}')
    if len(violations) > 10:
        print(f'  ... {len(violations) - 10} more')
    return EXIT_PASS if not violations else EXIT_FAIL

def _ring(tag):
    try:
        return get_ring(tag)
    except SchemaError as e:
        raise UsageError(str(e))

def _load_complex(config):
    if config.input is not None:
        _, X = load_artifact(config.input, expected=['simplicial'])
        return X
    if config.builtin is None:
        raise UsageError('Give either --input or --builtin')
    return get_builtin(config.builtin, config.truncation)

def _load_monoid(name_or_path):
    if os.path.exists(name_or_path):
        _, C = load_artifact(name_or_path, expected=['category', 'monoid'])
        return C
    if name_or_path not in cytrace.builtin_categories:
        raise UsageError(f'{name_or_path} is neither a file nor one of {cytrace.builtin_categories}')
    return get_builtin_category(name_or_path)

def cmd_subdivide(config):
    X = _load_complex(config)
    sub = edgewise_subdivide(X, config.r)
    Y = sub.result
    print(f'sd_{config.r} {X.name}: truncation {Y.truncation}, counts {Y.counts}, cyclic {Y.is_cyclic}')
    if config.emit:
        save_artifact(Y, config.emit)
    return _report_verdict(validate(Y))

def cmd_barcy(config):
    C = _load_monoid(config.monoid)
    N = config.degree
    X = cyclic_bar(C, N)
    print(f'Bcy({C.name}): counts {X.counts}')
    violations = validate_category(C)
    if config.check == 'valid':
        violations += validate(X) + validate(nerve(C, N))
    for r in config.r:
        if (N + 1) // r < 1:
            raise TruncationError(f'r = {r} needs the cyclic bar construction through degree {r - 1}')
        if config.check == 'diagonal':
            dr = diagonal_restriction(C, r, N, X=X)
            violations += validate_map(dr.delta) + validate_map(dr.restriction)
        elif config.check == 'frobenius':
            violations += validate_map(frobenius_bar(C, r, N, X=X))
        elif config.check == 'projection':
            p = project_to_nerve(C, N, X=X)
            F = frobenius_bar(C, r, N, X=X)
            pF = compose_maps(p, F)
            for k in range(F.truncation + 1):
                if list(pF[k]) != list(p[k]):
                    violations.append(Violation(f'p Fbar_{r} = p', degree=k))
    if config.emit:
        save_artifact(X, config.emit)
    return _report_verdict(violations)

def cmd_homology(config):
    X = _load_complex(config)
    through = X.truncation - 1 if config.through is None else config.through
    if through >= X.truncation:
        raise TruncationError(f'H_{through} needs simplices of degree {through + 1}, beyond the truncation {X.truncation}')
    groups = homology_through(X, through)
    payload = {str(k): {'betti': H.betti, 'torsion': list(H.torsion)} for k, H in enumerate(groups)}
    for k, H in enumerate(groups):
        print(f'H_{k} = {H}')
    if config.emit:
        dump_json(payload, config.emit)
    return EXIT_PASS

def cmd_indexcat(config):
    B = config.bound
    C = build_index_category(B)
    print(f'{C.name}: {C.n_objects} objects, {C.n_morphisms} morphisms')
    if config.check == 'relations':
        n_cases, violations = index_relations(C)
        print(f'{n_cases} relation instances')
    elif config.check == 'factorization':
        violations = []
        for phi in C.morphisms:
            fac = factor_unique(phi)
            if (fac.r, fac.s) != (phi.r, phi.s):
                violations.append(Violation('phi = F_r o R_s', witness=tuple(phi)))
        if config.morphism:
            if len(config.morphism) != 4:
                raise UsageError('--morphism takes four integers m,n,r,s')
            try:
                fac = factor_unique(config.morphism)
            except SchemaError as e:
                raise UsageError(str(e))
            print(f'{tuple(config.morphism)} = F_{fac.r} o R_{fac.s}')
    elif config.check == 'grothendieck':
        violations = index_isomorphism(B)
    else:
        F = natural_numbers_functor(B)
        violations = []
        for n in F.fibers[0].objects:
            report = check_theta_iso(F, '*', n)
            if not report.implication_holds:
                violations += report.theta_witnesses[:1]
            print(f'Theta at n = {n}: hypothesis {report.hypothesis_holds}, iso {report.theta_iso}')
    return _report_verdict(violations)

def _parse_witt(ring, S, coords, what):
    if coords is None:
        raise UsageError(f'{what} needs coordinates')
    values = [ring.parse(v.strip()) for v in coords.split(',')]
    return WittVector(ring, S, values)

def cmd_witt(config):
    ring = _ring(config.ring)
    S = truncation_set(config.trunc)
    op = config.op
    if op == 'ver':
        x = _parse_witt(ring, quotient_set(S, config.r), config.coords, '--coords')
    else:
        x = _parse_witt(ring, S, config.coords, '--coords')
    if op in ('add', 'sub', 'mul'):
        y = _parse_witt(ring, S, config.other, '--other')
        result = {'add': witt_add, 'sub': witt_sub, 'mul': witt_mul}[op](x, y)
    elif op == 'neg':
        result = witt_neg(x)
    elif op == 'frob':
        result = frobenius_witt(x, config.r)
    elif op == 'ver':
        result = verschiebung_witt(x, config.r, S)
    elif op == 'restrict':
        if config.to is None:
            raise UsageError('restrict needs --to')
        result = restrict_witt(x, truncation_set(config.to))
    elif op == 'ghost':
        print(f'ghost {list(zip(x.S, map(ring.serialize, ghost(x))))}')
        return EXIT_PASS
    else:
        print(f'series {[ring.serialize(c) for c in to_series(x)]}')
        return EXIT_PASS
    print(result)
    if config.emit:
        save_artifact(result, config.emit)
    return EXIT_PASS

def cmd_trace(config):
    ring = _ring(config.ring)
    try:
        matrix = json.loads(config.matrix)
    except json.JSONDecodeError as e:
        raise UsageError(f'--matrix is not a JSON list of rows: {e.msg}')
    S = truncation_set(config.trunc)
    x = trc0(ring, matrix, S, strict=config.strict, allow_singular=config.allow_singular)
    print(f'det(1 {"-" if config.sign < 0 else "+"} tA) = '
          f'{[ring.serialize(c) for c in char_series(ring, as_matrix(ring, matrix), max(S), sign=config.sign)]}')
    print(f'trc0 = {x}')
    print(f'ghost = {[ring.serialize(w) for w in ghost(x)]}')
    if config.emit:
        save_artifact(x, config.emit)
    return EXIT_PASS

def cmd_coherence(config):
    rows = verify_cube_face_relations(config.primes)
    violations = []
    for row in rows:
        print(f'U = {row["U"]}, V = {row["V"]}, {row["face"]}: {"pass" if row["passed"] else "FAIL"}')
        if not row['passed']:
            violations.append(Violation(f'{row["face"]} face of the cube', witness=row['V']))
    return _report_verdict(violations)

def cmd_export(config):
    if config.builtin in cytrace.builtin_complexes:
        save_artifact(get_builtin(config.builtin, config.truncation), config.emit)
    elif config.builtin in cytrace.builtin_categories:
        C = get_builtin_category(config.builtin)
        if C.n_objects == 1:
            dump_json(monoid_to_json(C), config.emit)
        else:
            save_artifact(C, config.emit)
    else:
        raise UsageError(f'{config.builtin} not recognized. Must be one of '
                         f'{cytrace.builtin_complexes + cytrace.builtin_categories}.')
    print(f'Wrote {config.emit}')
    return EXIT_PASS

def cmd_inspect(config):
    kind, obj = load_artifact(config.path)
    print(f'kind: {kind}')
    if kind == 'simplicial':
        print(f'name: {obj.name}')
        print(f'cyclic: {obj.is_cyclic}')
        for k, count in enumerate(obj.counts):
            print(f'  degree {k}: {count} simplices')
    elif kind in ('category', 'monoid'):
        print(f'name: {obj.name}')
        print(f'objects: {obj.n_objects}, morphisms: {obj.n_morphisms}, groupoid-like: {is_groupoid_like(obj)}')
    elif kind == 'witt':
        print(f'ring: {obj.ring.tag}')
        print(f'S: {list(obj.S)}')
        print(f'coords: {[obj.ring.serialize(a) for a in obj.coords]}')
        print(f'ghost: {[obj.ring.serialize(w) for w in ghost(obj)]}')
    elif kind == 'report':
        checks = obj.get('checks', {})
        failed = [name for name, result in checks.items() if not result.get('passed')]
        print(f'version: {obj.get("version")}, seed: {obj.get("seed")}')
        print(f'{len(checks)} checks, {len(failed)} failed')
        for name in failed:
            print(f'  FAIL {name}')
    else:
        print(f'checks: {obj.get("checks")}')
        print(f'seed: {obj.get("seed", 0)}, bounds: {obj.get("bounds", {})}')
    return EXIT_PASS

def resolve_suites(names):
    """
    Expands aliases and removes duplicates, keeping the first occurrence.
    Unknown names raise UsageError before any suite runs.
    """
    out = []
    for name in names:
        expanded = cytrace.suite_aliases.get(name, [name])
        for suite in expanded:
            if suite not in cytrace.supported_suites:
                raise UsageError(f'The check {suite} is not recognized. Must be one of '
                                 f'{cytrace.supported_suites + list(cytrace.suite_aliases)}.')
            if suite not in out:
                out.append(suite)
    return out

def _run_suite(name, seed, bounds, show_progress=False):
    suite = cytrace.get_suite(name, seed=seed, show_progress=show_progress, **bounds)
    results, results_str = suite.eval()
    return name, {check: result.to_dict() for check, result in results.items()}, results_str

def run_suite(suite_config, jobs=1, show_progress=False):
    """
    Runs every suite named by a suite configuration.

    Args:
        - suite_config (dict): 'checks' (list of suite names or 'all'), 'seed', 'bounds' (suite name -> bounds)
        - jobs (int): worker processes; suites run one per worker
    Output:
        - report (dict): the report artifact
        - report_str (str): human-readable results
    """
    names = resolve_suites(suite_config.get('checks', []))
    seed = int(suite_config.get('seed', 0))
    bounds = suite_config.get('bounds', {}) or {}
    unknown = sorted(set(bounds) - set(names))
    if unknown:
        raise UsageError(f'Bounds given for suites {unknown} that are not being run')
    logger.info('Running %s with seed %d on %d worker(s)', names, seed, jobs)
    # construct every suite first so that bad bounds fail before anything runs
    for name in names:
        cytrace.get_suite(name, seed=seed, **bounds.get(name, {}))
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = [executor.submit(_run_suite, name, seed, bounds.get(name, {})) for name in names]
            outputs = [future.result() for future in futures]
    else:
        outputs = [_run_suite(name, seed, bounds.get(name, {}), show_progress)
                   for name in tqdm(names, desc='suites', disable=not show_progress)]
    checks, report_str = {}, ''
    for name, results, results_str in outputs:
        for check, result in results.items():
            checks[f'{name}.{check}'] = result
        report_str += results_str
    report = {
        'kind': 'report',
        'version': cytrace.__version__,
        'seed': seed,
        'suites': names,
        'checks': checks,
    }
    return report, report_str

def report_passed(report):
    return all(result['passed'] for result in report['checks'].values())

def write_report(report, report_str, output_dir):
    """
    Writes report.json, report.txt and the verdict table report.csv, each atomically.
    """
    os.makedirs(output_dir, exist_ok=True)
    dump_json(report, os.path.join(output_dir, 'report.json'))
    atomic_write(os.path.join(output_dir, 'report.txt'), report_str)
    rows = [{
        'check': name,
        'passed': result['passed'],
        'n_cases': result['n_cases'],
        'n_violations': len(result['violations']),
        'seconds': result['seconds'],
    } for name, result in report['checks'].items()]
    table = pd.DataFrame(rows, columns=['check', 'passed', 'n_cases', 'n_violations', 'seconds'])
    atomic_write(os.path.join(output_dir, 'report.csv'), table.to_csv(index=False))

def cmd_suite(config):
    if config.config is not None:
        _, suite_config = load_artifact(config.config, expected=['suite_config'])
        suite_config = dict(suite_config)
    else:
        suite_config = {'checks': config.checks or []}
    if config.seed is not None:
        suite_config['seed'] = config.seed
    if not isinstance(suite_config.get('checks', []), list):
        raise SchemaError('"checks" must be a list of suite names')
    show_progress = config.jobs == 1 and sys.stderr.isatty()
    report, report_str = run_suite(suite_config, jobs=config.jobs, show_progress=show_progress)
    print(report_str, end='')
    output_dir = config.output_dir or os.environ.get('CYTRACE_OUTPUT_DIR') or '.'
    write_report(report, report_str, output_dir)
    passed = report_passed(report)
    print(f'{len(report["checks"])} checks, {"all passed" if passed else "FAILURES"}; report in {output_dir}')
    return EXIT_PASS if passed else EXIT_FAIL

def get_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, default=None, help='Seed for every random draw; recorded in reports.')
    common.add_argument('--jobs', type=int, default=1, help='Worker processes for the suite runner.')
    common.add_argument('--output_dir', default=None,
                        help='Directory for reports. Defaults to $CYTRACE_OUTPUT_DIR, then the current directory.')
    common.add_argument('--verbose', action='store_true', help='Log at INFO level.')

    parser = argparse.ArgumentParser(prog='cytrace', description='Exact checks for cyclotomic trace combinatorics.')
    parser.add_argument('--version', action='version', version=f'cytrace {cytrace.__version__}')
    subparsers = parser.add_subparsers(dest='command')

    def complex_source(p):
        p.add_argument('--input', default=None, help='A "simplicial" artifact.')
        p.add_argument('--builtin', default=None, choices=cytrace.builtin_complexes)
        p.add_argument('--truncation', type=int, default=4, help='Truncation degree for --builtin.')

    p = subparsers.add_parser('subdivide', parents=[common], help='Edgewise subdivision sd_r X.')
    complex_source(p)
    p.add_argument('--r', type=int, required=True)
    p.add_argument('--emit', default=None)
    p.set_defaults(func=cmd_subdivide)

    p = subparsers.add_parser('barcy', parents=[common], help='Cyclic bar construction of a monoid or category.')
    p.add_argument('--monoid', required=True, help=f'A monoid or category artifact, or one of {cytrace.builtin_categories}.')
    p.add_argument('--degree', type=int, default=4)
    p.add_argument('--check', default='valid', choices=['valid', 'diagonal', 'frobenius', 'projection'])
    p.add_argument('--r', type=_int_list, default=[1, 2])
    p.add_argument('--emit', default=None)
    p.set_defaults(func=cmd_barcy)

    p = subparsers.add_parser('homology', parents=[common], help='Integral homology via Smith normal form.')
    complex_source(p)
    p.add_argument('--through', type=int, default=None)
    p.add_argument('--emit', default=None)
    p.set_defaults(func=cmd_homology)

    p = subparsers.add_parser('indexcat', parents=[common], help='The index category up to a bound.')
    p.add_argument('--bound', type=int, default=24)
    p.add_argument('--check', default='relations', choices=['relations', 'factorization', 'grothendieck', 'theta'])
    p.add_argument('--morphism', type=_int_list, default=None, help='m,n,r,s to factor.')
    p.set_defaults(func=cmd_indexcat)

    p = subparsers.add_parser('witt', parents=[common], help='Truncated big Witt vector arithmetic.')
    p.add_argument('op', choices=witt_ops)
    p.add_argument('--ring', default='z:0')
    p.add_argument('--trunc', type=int, required=True, help='Work over the divisors of this integer.')
    p.add_argument('--coords', default=None)
    p.add_argument('--other', default=None)
    p.add_argument('--r', type=int, default=2)
    p.add_argument('--to', type=int, default=None, help='restrict to the divisors of this integer.')
    p.add_argument('--emit', default=None)
    p.set_defaults(func=cmd_witt)

    p = subparsers.add_parser('trace', parents=[common], help='trc0(A) = det(1 - tA) as a Witt vector.')
    p.add_argument('--matrix', required=True, help="JSON rows, e.g. '[[0,1],[1,0]]'.")
    p.add_argument('--ring', default='z:0')
    p.add_argument('--trunc', type=int, default=4)
    p.add_argument('--sign', type=int, default=-1, choices=[-1, 1])
    p.add_argument('--strict', action='store_true')
    p.add_argument('--allow_singular', action='store_true')
    p.add_argument('--emit', default=None)
    p.set_defaults(func=cmd_trace)

    p = subparsers.add_parser('coherence', parents=[common], help='Face relations of the cube homotopies.')
    p.add_argument('--primes', type=_int_list, default=[2, 3, 5])
    p.set_defaults(func=cmd_coherence)

    p = subparsers.add_parser('suite', parents=[common], help='Run named suites and write a report.')
    p.add_argument('--config', default=None, help='A "suite_config" artifact.')
    p.add_argument('--checks', type=lambda v: [c for c in v.split(',') if c], default=None,
                   help=f'Comma-separated suite names. Available choices are {cytrace.supported_suites} and all.')
    p.set_defaults(func=cmd_suite)

    p = subparsers.add_parser('inspect', parents=[common], help='Summarize an artifact file.')
    p.add_argument('path')
    p.set_defaults(func=cmd_inspect)

    p = subparsers.add_parser('export', parents=[common], help='Write a builtin complex or category as an artifact.')
    p.add_argument('--builtin', required=True)
    p.add_argument('--truncation', type=int, default=4)
    p.add_argument('--emit', required=True)
    p.set_defaults(func=cmd_export)
    return parser

def main(argv=None):
    """
    Entry point of the cytrace command. Returns the process exit code:
    0 when every check passes, 1 on a failed check, 2 on usage errors, 3 on schema errors.
    """
    parser = get_parser()
    try:
        config = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    if config.command is None:
        parser.print_help()
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if config.verbose else logging.WARNING,
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')
    if config.jobs < 1:
        print('--jobs must be a positive integer', file=sys.stderr)
        return EXIT_USAGE
    try:
        return config.func(config)
    except SchemaError as e:
        print(f'schema error: {e}', file=sys.stderr)
        return EXIT_SCHEMA
    except (UsageError, TruncationError, NotInvertibleError, ResidualError) as e:
        print(f'usage error: {e}', file=sys.stderr)
        return EXIT_USAGE

if __name__ == '__main__':
    sys.exit(main())
