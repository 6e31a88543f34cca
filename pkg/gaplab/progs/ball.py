import logging

from gaplab.progs import common

logger = logging.getLogger(__name__)

HEADERS = ('quantity', 'value')


def _document(spectrum, comparison=None, hessian=None):
    spec = spectrum.spec
    document = {
        'n': spec.n,
        'K': spec.K,
        'R': spec.R,
        'lambda1': spectrum.lambda1,
        'lambda2': spectrum.lambda2,
        'gap': spectrum.gap,
        'mode2': list(spectrum.mode2_label),
        'modes': [{'ell': ell, 'k': k, 'lambda': value}
                  for (ell, k), value in sorted(spectrum.modes.items())],
        'ordered': spectrum.ordered,
    }
    if comparison is not None:
        document['comparison'] = {
            'passed': comparison.passed,
            'tolerance': comparison.tolerance,
            'margins': dict(comparison.margins),
        }
    if hessian is not None:
        document['hessian'] = {
            'passed': hessian.passed,
            'bound': hessian.bound,
            'radial_max': hessian.radial_max,
            'tangential_max': hessian.tangential_max,
            'origin': hessian.origin,
        }
    return document


def _rows(document):
    rows = [(k, document[k]) for k in ('lambda1', 'lambda2', 'gap')]
    rows.append(('mode2', 'l={} k={}'.format(*document['mode2'])))
    rows += [(f"lambda(l={m['ell']}, k={m['k']})", m['lambda'])
             for m in document['modes']]
    for section in ('comparison', 'hessian'):
        if section in document:
            rows.append((f'{section}.passed', document[section]['passed']))
    if 'comparison' in document:
        rows += [(f'comparison.{name}', margin) for name, margin
                 in document['comparison']['margins'].items()]
    return rows


def handle(args):
    from gaplab.ball import BallSpec, ball_hessian_check, ball_spectrum
    from gaplab.ball import gap_comparison_check
    from gaplab.schema import BALL_SCHEMA

    common.apply_overrides(args)
    spec = BallSpec(args.n, args.K, args.radius)
    spectrum = ball_spectrum(spec)
    comparison = hessian = None
    if args.compare:
        comparison = gap_comparison_check(spec)
        hessian = ball_hessian_check(spec)
    document = _document(spectrum, comparison, hessian)
    common.emit(args, document, BALL_SCHEMA, _rows(document), HEADERS)
    if args.compare and not (comparison.passed and hessian.passed):
        logger.error("%s: comparison with the model failed (%s)", spec,
                     ', '.join(comparison.failures) or 'hessian')
        return 2
    return 0


def build(parser):
    p = parser.add_parser('ball', help="Dirichlet spectrum of a geodesic "
                                       "ball")
    p.add_argument('--n', type=int, required=True, help="dimension")
    p.add_argument('--K', type=float, required=True, help="curvature >= 0")
    p.add_argument('--radius', type=float, required=True)
    p.add_argument('--compare', action='store_true',
                   help="compare with the model of the same diameter")
    common.add_solver_args(p)
    common.add_output_args(p)
    return 'ball', handle
