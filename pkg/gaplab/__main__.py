#!/usr/bin/python3

import argparse
import logging
import logging.config
import sys
import yaml

from gaplab.checks import load_builtins, load_from_environ
from gaplab.conf import conf
from gaplab.errors import GapLabError
from gaplab.progs import ball, geometry, plot, solve, sweep, tables, verify
from gaplab.schema import ValidationError


def main(argv=None):
    parser = argparse.ArgumentParser(
        description="spectral gap lab for the constant-curvature model "
                    "operator")
    parser.add_argument(
        '-c',
        '--conf',
        type=argparse.FileType('r'),
        help="custom yaml configuration file to use")
    parser.add_argument(
        '-l',
        '--logging',
        choices=[l.lower() for l in logging._nameToLevel],
        help="logging level (overrides root logger level from file conf)")

    cmd = parser.add_subparsers(dest='command')
    commands = dict(getattr(module, 'build')(cmd)
                    for module in (solve, sweep, ball, geometry, verify,
                                   tables, plot))
    args = parser.parse_args(argv)

    if args.conf:
        # merge user defined conf
        conf.merge(yaml.safe_load(args.conf) or {})

    # default logging config from conf
    logging.config.dictConfig(conf['logging'])

    if args.logging:
        # override root logger level
        logging.root.setLevel(args.logging.upper())

    # import built-in checks
    load_builtins()
    # import user-defined checks
    load_from_environ()

    try:
        func = commands[args.command]
    except KeyError:
        parser.error("missing command")

    try:
        code = func(args)
    except GapLabError as e:
        logging.error("%s: %s", e.__class__.__name__, e)
        code = e.exit_code
    except ValidationError as e:
        logging.error("output does not match its schema: %s", e)
        code = 2
    except OSError as e:
        logging.error("%s", e)
        code = 1
    sys.exit(code)


if __name__ == '__main__':
    main()
