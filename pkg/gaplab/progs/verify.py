import logging

from gaplab.progs import common

logger = logging.getLogger(__name__)

FAULT_SHIFT = 1e-3
HEADERS = ('check', 'group', 'status', 'cases', 'failures', 'margin',
           'detail')


def _status(result):
    if not result.failures:
        return 'PASS'
    return 'FAIL' if result.blocking else 'WARN'


def list_checks(args):
    from gaplab.checks import select
    from gaplab.utils import tabulate
    headers = ("Name", "Group", "Module", "Class name")
    rows = [(cls.name, cls.group, cls.__module__, cls.__name__)
            for cls in select(args.filter)]
    print("\n".join(tabulate(rows, headers=headers)))
    return 0


def handle(args):
    from gaplab.checks import select
    from gaplab.conf import conf
    from gaplab.errors import DomainError
    from gaplab.schema import VERIFY_SCHEMA
    from gaplab.solver import clear_cache

    if args.list:
        return list_checks(args)
    common.apply_overrides(args)
    checks = select(args.filter)
    if not checks:
        raise DomainError(f"no check matches {args.filter!r}")
    if args.inject_fault:
        logger.warning("fault injection: second eigenvalues shifted by %g",
                       FAULT_SHIFT)
        conf.merge({'solver': {'lambda2-shift': FAULT_SHIFT}})
        clear_cache()

    results = []
    for cls in checks:
        logger.info("running %s", cls.name)
        results.append(cls().run())
    passed = all(r.passed for r in results)

    document = {
        'passed': passed,
        'fault_injected': bool(args.inject_fault),
        'checks': [r.as_dict() for r in results],
    }
    rows = [(r.name, r.group, _status(r), len(r.cases), len(r.failures),
             r.margin, r.detail) for r in results]
    common.emit(args, document, VERIFY_SCHEMA, rows, HEADERS)
    if not passed:
        failed = [r.name for r in results if not r.passed]
        logger.error("%d properties failed: %s", len(failed),
                     ', '.join(failed))
        return 2
    return 0


def build(parser):
    p = parser.add_parser('verify', help="run the property suite over the "
                                         "configured parameter matrix")
    p.add_argument('--list', action='store_true',
                   help="list the registered checks and exit")
    p.add_argument('--filter', metavar='WORD',
                   help="run the group WORD, or the checks whose name "
                        "contains WORD")
    p.add_argument('--inject-fault', action='store_true',
                   help="shift the second eigenvalue (harness self-test)")
    common.add_solver_args(p)
    common.add_output_args(p)
    return 'verify', handle
