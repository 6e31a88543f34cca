import dataclasses
import logging
import math
import warnings
from typing import Dict, Iterable, List, Optional, Type

from gaplab.conf import conf
from gaplab.errors import GapLabError

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class CaseResult:
    label: str
    passed: bool
    margin: Optional[float] = None
    detail: str = ''


@dataclasses.dataclass(frozen=True)
class PropertyResult:
    name: str
    group: str
    cases: List[CaseResult]
    blocking: bool = True

    @property
    def failures(self):
        return [c for c in self.cases if not c.passed]

    @property
    def passed(self):
        return not self.blocking or not self.failures

    @property
    def margin(self):
        """The smallest margin over the cases; positive means satisfied."""
        margins = [c.margin for c in self.cases
                   if c.margin is not None and math.isfinite(c.margin)]
        return min(margins) if margins else None

    @property
    def detail(self):
        if self.failures:
            worst = self.failures[0]
            return f"{worst.label}: {worst.detail}".rstrip(': ')
        if not self.blocking:
            return 'reported only'
        return ''

    def as_dict(self):
        return {
            'name': self.name,
            'group': self.group,
            'passed': self.passed,
            'cases': len(self.cases),
            'failures': len(self.failures),
            'margin': self.margin,
            'detail': self.detail,
        }


class MetaCheck(type):
    """Metaclass to customize Check subclasses __repr__()"""

    def __repr__(self):
        return "<{realname}{name}>".format(
            realname=self.__name__,
            name=f' “{self.name}”' if self.name else '')


class Check(metaclass=MetaCheck):
    """
    Abstract verified property.

    Subclass with a ``name`` and a ``group`` (the key of its parameters in
    the ``verify`` configuration section), then implement :meth:`cases` and
    :meth:`evaluate`.
    """
    _registry: Dict[str, Type['Check']] = {}
    name: Optional[str] = None
    group: Optional[str] = None
    # non-blocking checks report their cases but never fail a run
    blocking = True

    def __init_subclass__(cls, register=True, name=None, group=None,
                          **kwargs):
        super().__init_subclass__(**kwargs)
        cls.name = name or cls.__name__.lower()
        if group is not None:
            cls.group = group

        if not register:
            return

        if cls.name in cls._registry:
            full_name = lambda c: f"{c.__module__}.{c.__qualname__}"
            warnings.warn(f"Check registry: name '{cls.name}' for "
                          f"{full_name(cls)} overwrites "
                          f"{full_name(Check._registry[cls.name])}")

        cls._registry[cls.name] = cls

    def __init__(self, settings=None):
        if settings is None:
            settings = conf['verify'].get(self.group, {})
        self.settings = settings

    def cases(self) -> Iterable:
        raise NotImplementedError()

    def evaluate(self, case) -> CaseResult:
        raise NotImplementedError()

    def run(self) -> PropertyResult:
        results = []
        for case in self.cases():
            try:
                result = self.evaluate(case)
            except (GapLabError, ValueError, ArithmeticError,
                    RuntimeError) as e:
                result = CaseResult(str(case), False,
                                    detail=f"{e.__class__.__name__}: {e}")
            if not result.passed:
                log = logger.error if self.blocking else logger.warning
                log("%s: %s failed %s", self.name, result.label,
                    result.detail)
            results.append(result)
        return PropertyResult(self.name, self.group, results, self.blocking)

    @staticmethod
    def within(label, value, expected, rtol=None, atol=0.0):
        """Compare a value with its expectation; margin is the unused part
        of the tolerance."""
        tol = atol + (rtol or 0.0) * abs(expected)
        error = abs(value - expected)
        return CaseResult(label, error <= tol, tol - error,
                          f"got {value!r}, expected {expected!r}")

    @staticmethod
    def at_least(label, value, bound, tol=0.0):
        margin = value - bound
        return CaseResult(label, margin >= -tol, margin + tol,
                          f"{value!r} below {bound!r}")

    @staticmethod
    def at_most(label, value, bound, tol=0.0):
        margin = bound - value
        return CaseResult(label, margin >= -tol, margin + tol,
                          f"{value!r} above {bound!r}")

    @staticmethod
    def combine(label, results):
        """Merge partial results of one case: passed if all passed, margin
        and detail of the tightest one."""
        results = list(results)
        failed = [r for r in results if not r.passed]
        margins = [r.margin for r in results if r.margin is not None]
        worst = failed[0] if failed else None
        return CaseResult(label, not failed,
                          min(margins) if margins else None,
                          f"{worst.label}: {worst.detail}" if worst else '')
