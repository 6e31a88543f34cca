"""SVG figures, each with a CSV twin holding exactly the plotted data."""

import logging
from pathlib import Path

import numpy as np

from gaplab.progs import common

logger = logging.getLogger(__name__)

D_CURVES = (2, 3, 4)
D_POINTS = 30
N_VALUES = tuple(range(2, 10))
N_SWEEP_D = 1.57


def _figure():
    import matplotlib
    matplotlib.use('Agg')
    import matplotlib.pyplot as plt
    # fixed ids and no timestamp: identical input, identical SVG
    plt.rcParams['svg.hashsalt'] = 'gaplab'
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.grid(True, alpha=0.3)
    return plt, fig, ax


def _save(plt, fig, path):
    try:
        fig.savefig(path, format='svg', metadata={'Date': None})
    except OSError as e:
        raise OSError(f"cannot write {path}: {e.strerror}") from e
    finally:
        plt.close(fig)


def _write(out, name, plt, fig, rows, headers):
    from gaplab.conf import conf
    from gaplab.utils import to_csv, write_output
    write_output(to_csv(rows, headers, conf['output']['digits']),
                 out / f'{name}.csv')
    _save(plt, fig, out / f'{name}.svg')
    logger.info("wrote %s.svg and %s.csv", out / name, out / name)
    return [out / f'{name}.svg', out / f'{name}.csv']


def gap_vs_D(out, K, d_max):
    from gaplab.gap import sweep
    from gaplab.kernels import ModelParams
    values = np.linspace(0.1, d_max, D_POINTS).tolist()
    plt, fig, ax = _figure()
    columns = []
    for n in D_CURVES:
        result = sweep('D', values, ModelParams(n, K, values[0]))
        columns.append(result.normalized_gaps)
        ax.plot(values, result.normalized_gaps, marker='.',
                label=f'n = {n} ({result.verdict})')
    ax.set_xlabel('D')
    ax.set_ylabel('D²(λ̄₂ − λ̄₁)/π²')
    ax.set_title(f'normalized gap, K = {K:g}')
    ax.legend()
    rows = [[D] + [c[j] for c in columns] for j, D in enumerate(values)]
    return _write(out, 'gap_vs_D', plt, fig, rows,
                  ['D'] + [f'n={n}' for n in D_CURVES])


def gap_vs_n(out, K):
    from gaplab.gap import sweep
    from gaplab.kernels import ModelParams
    result = sweep('n', list(N_VALUES), ModelParams(N_VALUES[0], K, N_SWEEP_D))
    plt, fig, ax = _figure()
    ax.plot(N_VALUES, result.normalized_gaps, marker='o')
    ax.axhline(3.0, color='k', linestyle='--', alpha=0.5)
    ax.set_xlabel('n')
    ax.set_ylabel('D²(λ̄₂ − λ̄₁)/π²')
    ax.set_title(f'normalized gap, K = {K:g}, D = {N_SWEEP_D:g}')
    rows = list(zip(N_VALUES, result.normalized_gaps))
    return _write(out, 'gap_vs_n', plt, fig, rows, ['n', 'normalized_gap'])


def n3_closed_form(p, s):
    """Unit weighted-norm first eigenfunction of the n = 3 model."""
    from gaplab.kernels import cs
    return np.sqrt(2 / p.D) * np.cos(np.pi * s / p.D) / cs(p.K, s)


def eigenfunctions(out, p):
    from gaplab.numerics import with_boundary
    from gaplab.solver import solve_model
    report = solve_model(p)
    s = report.grid.closed_nodes
    phi1 = with_boundary(report.pair(1).samples)
    phi2 = with_boundary(report.pair(2).samples)
    plt, fig, ax = _figure()
    ax.plot(s, phi1, label='φ̄₁')
    ax.plot(s, phi2, label='φ̄₂')
    headers = ['s', 'phi1', 'phi2']
    columns = [s, phi1, phi2]
    if p.n == 3:
        exact = n3_closed_form(p, s)
        ax.plot(s, exact, linestyle=':', color='k', label='closed form')
        headers.append('closed_form')
        columns.append(exact)
    ax.set_xlabel('s')
    ax.set_title(f'eigenfunctions, {p}')
    ax.legend()
    return _write(out, 'eigenfunctions', plt, fig,
                  np.column_stack(columns).tolist(), headers)


def profiles(out, p):
    from gaplab.modulus import log_derivative_profile, ratio_profile
    from gaplab.solver import solve_model
    report = solve_model(p)
    f = log_derivative_profile(p, report)
    w = ratio_profile(p, report)
    plt, fig, ax = _figure()
    ax.plot(f.s_nodes, f.f_values, label="f = φ̄₁′/φ̄₁")
    ax.plot(w.s_nodes, w.w_values, label='w̄ = φ̄₂/φ̄₁')
    ax.set_xlabel('s')
    ax.set_title(f'profiles on [0, D/2), {p}')
    ax.legend()
    rows = np.column_stack((f.s_nodes, f.f_values, w.w_values)).tolist()
    return _write(out, 'profiles', plt, fig, rows, ['s', 'f', 'w'])


def handle(args):
    from gaplab.kernels import ModelParams

    common.apply_overrides(args)
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OSError(f"cannot create {out}: {e.strerror}") from e
    p = ModelParams(args.n, args.K, args.D)
    written = (gap_vs_D(out, args.K, args.d_max) + gap_vs_n(out, args.K)
               + eigenfunctions(out, p) + profiles(out, p))
    for path in written:
        print(path)
    return 0


def build(parser):
    p = parser.add_parser('plot', help="figures of the gap and of the "
                                       "eigenfunctions, with CSV twins")
    common.add_model_args(p, n=3, K=1.0, D=1.0,
                          d_help="diameter of the eigenfunction plots")
    p.add_argument('--d-max', type=float, default=3.0,
                   help="upper end of the D-sweep")
    p.add_argument('--out', metavar='DIR', default='plots',
                   help="output directory")
    common.add_solver_args(p)
    return 'plot', handle
