import functools
import platform

import numpy
import scipy


def package_version():
    from importlib.metadata import PackageNotFoundError, version
    try:
        return version('gaplab')
    except PackageNotFoundError:
        return 'unknown'


# Static information; computed once per process.
@functools.lru_cache()
def info():
    return {
        'gaplab': package_version(),
        'python': platform.python_version(),
        'numpy': numpy.__version__,
        'scipy': scipy.__version__,
        'platform': f'{platform.system()}-{platform.machine()}',
    }


def provenance(grid_m):
    return {**info(), 'grid_m': int(grid_m)}
