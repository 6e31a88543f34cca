from gaplab.progs import common

HEADERS = ('quantity', 'value')


def handle(args):
    from gaplab import geometry
    from gaplab.schema import GEOMETRY_SCHEMA

    probe = geometry.VariationProbe(args.n, args.K, args.D)
    expansion = geometry.dr_expansion_check(probe)
    second = geometry.second_derivative_in_r_check(probe)
    total, target = geometry.laplacian_comparison_sum(probe)
    document = {
        'n': probe.n,
        'K': probe.K,
        'd0': probe.d0,
        'dr_coefficient': expansion.coefficient,
        'dr_target': expansion.target,
        'dr_rel_error': expansion.rel_error,
        'first_variation': expansion.first_variation,
        'second_derivative': {
            'start': second.coefficients['start'],
            'end': second.coefficients['end'],
            'target': second.target,
            'normal_max': second.normal_max,
        },
        'laplacian_sum': total,
        'laplacian_target': target,
        'jacobi': geometry.jacobi_orthogonality_check(probe),
        'frame': geometry.frame_check(probe),
        'round_trip': geometry.round_trip(probe, probe.d0),
    }
    rows = []
    for key, value in document.items():
        if isinstance(value, dict):
            rows += [(f'{key}.{k}', v) for k, v in value.items()]
        else:
            rows.append((key, value))
    common.emit(args, document, GEOMETRY_SCHEMA, rows, HEADERS)
    return 0


def build(parser):
    p = parser.add_parser('geometry', help="variation of a geodesic segment "
                                           "in the space form")
    common.add_model_args(p, n=3, d_help="segment length d0")
    common.add_output_args(p)
    return 'geometry', handle
