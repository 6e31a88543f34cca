import logging

from gaplab.errors import DomainError
from gaplab.progs import common

logger = logging.getLogger(__name__)

HEADERS = ('n', 'K', 'D', 'lambda1', 'lambda2', 'gap', 'normalized_gap')


def _values(axis, values):
    if not values:
        raise DomainError("empty sweep")
    if axis != 'n':
        return values
    if any(v != int(v) for v in values):
        raise DomainError(f"n-sweep values must be integers: {values}")
    return [int(v) for v in values]


def handle(args):
    from gaplab.gap import sweep
    from gaplab.kernels import ModelParams
    from gaplab.schema import SWEEP_SCHEMA

    common.apply_overrides(args)
    axis = args.sweep_axis
    values = _values(axis, args.sweep_values)
    base = {'n': args.n, 'K': args.K, 'D': args.D}
    # the swept parameter needs no base value
    base[axis] = base[axis] if base[axis] is not None else values[0]
    missing = [k for k, v in base.items() if v is None]
    if missing:
        raise DomainError("missing base value for "
                          + ', '.join(f'--{k}' for k in missing))
    result = sweep(axis, values, ModelParams(**base))

    points = [report.as_dict() for _, report in result.points]
    document = {
        'axis': axis,
        'base': {'n': result.base.n, 'K': result.base.K,
                 'D': result.base.D},
        'verdict': result.verdict,
        'points': points,
    }
    logger.info("%s-sweep: %s", axis, result.verdict)
    common.emit(args, document, SWEEP_SCHEMA,
                [[point[k] for k in HEADERS] for point in points], HEADERS)
    return 0


def build(parser):
    p = parser.add_parser('sweep', help="normalized gap along one parameter")
    p.add_argument('--sweep-axis', choices=('D', 'n', 'K'), default='D')
    p.add_argument('--sweep-values', type=common.real_list, required=True,
                   metavar='V1,V2,...', help="strictly increasing values")
    p.add_argument('--n', type=int)
    p.add_argument('--K', type=float)
    p.add_argument('--D', type=float)
    common.add_solver_args(p)
    common.add_output_args(p)
    return 'sweep', handle
