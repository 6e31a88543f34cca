from gaplab.progs import common

HEADERS = ('n', 'K', 'D', 'lambda1', 'lambda2', 'gap', 'normalized_gap',
           'method', 'grid_m', 'residual')


def handle(args):
    from gaplab.gap import gap_report
    from gaplab.kernels import ModelParams
    from gaplab.schema import SOLVE_SCHEMA

    common.apply_overrides(args)
    report = gap_report(ModelParams(args.n, args.K, args.D))
    document = report.as_dict()
    common.emit(args, document, SOLVE_SCHEMA,
                [[document[k] for k in HEADERS]], HEADERS)
    return 0


def build(parser):
    p = parser.add_parser('solve', help="first two eigenvalues of the model")
    common.add_model_args(p)
    common.add_solver_args(p)
    common.add_output_args(p)
    return 'solve', handle
