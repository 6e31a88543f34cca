from pathlib import Path
from typing import List, Mapping, Type
import importlib
import logging
import os
import sys

logger = logging.getLogger(__name__)

from gaplab.conf import conf
from gaplab.models import Check


def all() -> Mapping[str, Type[Check]]:
    return Check._registry


def by_name(name: str) -> Type[Check]:
    return all()[name.lower()]


def select(word=None) -> List[Type[Check]]:
    """Registered checks of the group ``word``, or else those whose name
    contains it, in registration order."""
    checks = list(all().values())
    if not word:
        return checks
    word = word.lower()
    group = [c for c in checks if c.group == word]
    return group or [c for c in checks if word in c.name]


def load_builtins():
    for name in __all__:
        importlib.import_module(f'gaplab.checks.{name}')
    logger.debug("%d checks registered", len(all()))


def load_from_environ():
    """Import the user modules listed in GAPLAB_CHECKS (colon-separated),
    looking for them in the ``syspath`` directories too."""
    sys.path.extend(
        str(Path(path).expanduser()) for path in conf.get('syspath', []))
    for module in os.environ.get('GAPLAB_CHECKS', '').split(':'):
        if not module:
            continue
        try:
            importlib.import_module(module)
        except Exception:
            logger.exception("could not load %s", module)


__all__ = [
    'kernels',
    'closedform',
    'monotonicity',
    'bounds',
    'perturbation',
    'eigenfunctions',
    'modulus',
    'balls',
    'geometry',
]
