import argparse

from gaplab import utils
from gaplab.conf import conf
from gaplab.errors import DomainError
from gaplab.schema import validate_schema
from gaplab.solver import METHODS


def real_list(text):
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated reals, got {text!r}")


def add_model_args(p, n=None, K=None, D=None, d_required=True,
                   d_help="diameter"):
    """--n, --K and --D; a flag without a default is required."""
    p.add_argument('--n', type=int, required=n is None, default=n,
                   help="dimension")
    p.add_argument('--K', type=float, required=K is None, default=K,
                   help="curvature")
    p.add_argument('--D', type=float, required=d_required and D is None,
                   default=D, help=d_help)


def add_solver_args(p):
    p.add_argument('--grid', type=int, metavar='M',
                   help="interior nodes of the coarse grid")
    p.add_argument('--method', choices=METHODS)
    p.add_argument('--tol', type=float, help="eigenvalue tolerance")
    p.add_argument('--workers', type=int, help="size of the sweep pool")


def add_output_args(p, formats=utils.FORMATS):
    p.add_argument('--format', choices=formats, default='table')
    p.add_argument('--out', metavar='PATH',
                   help="write to PATH instead of stdout")


def apply_overrides(args):
    """Merge the solver flags of this run into the configuration."""
    solver = {}
    if getattr(args, 'grid', None) is not None:
        if args.grid < 3:
            raise DomainError(f"--grid must be at least 3, got {args.grid}")
        solver['grid-m'] = args.grid
    if getattr(args, 'method', None):
        solver['method'] = args.method
    if getattr(args, 'tol', None) is not None:
        if not args.tol > 0:
            raise DomainError(f"--tol must be positive, got {args.tol!r}")
        solver['tol'] = args.tol
    update = {'solver': solver}
    if getattr(args, 'workers', None) is not None:
        if args.workers < 1:
            raise DomainError(f"--workers must be positive, got "
                              f"{args.workers}")
        update['sweep'] = {'workers': args.workers}
    conf.merge(update)


def emit(args, document, schema, rows, headers):
    """Round, validate and write a document in the requested format;
    ``rows`` feed the table and csv renderings."""
    digits = conf['output']['digits']
    document = utils.rounded(document, digits)
    validate_schema(document, schema)
    if args.format == 'json':
        data = utils.to_json(document)
    elif args.format == 'msgpack':
        data = utils.to_msgpack(document)
    elif args.format == 'csv':
        data = utils.to_csv(rows, headers, digits)
    else:
        data = utils.to_table(rows, headers, digits)
    utils.write_output(data, args.out)
    return document
