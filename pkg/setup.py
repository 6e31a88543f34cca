import sys
from setuptools import setup, find_packages

if sys.version_info < (3, 9):
    sys.exit("gaplab requires Python 3.9 or later.")

setup(
    name='gaplab',
    use_scm_version=True,
    packages=find_packages(exclude=['tests']),
    license='GPL',
    description='Numerical lab for the fundamental gap of the '
                'constant-curvature model operator.',
    install_requires=[
        'matplotlib',
        'msgpack',
        'numpy',
        'pyyaml',
        'scipy',
    ],
    setup_requires=['pytest-runner', 'setuptools_scm'],
    tests_require=['pytest', 'pytest-cov', 'pytest-asyncio', 'hypothesis'],
    test_suite='pytest',
    entry_points={
        'console_scripts': ['gaplab = gaplab.__main__:main'],
    },
    package_data={
        'gaplab': ['conf.default.yml', 'reference_tables.yml'],
    },
)
