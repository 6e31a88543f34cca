import csv
import io
import json
import math
from pathlib import Path

import msgpack
import numpy as np

from gaplab.errors import DomainError

FORMATS = ('table', 'csv', 'json', 'msgpack')


def round_sig(value, digits):
    """Round a real to ``digits`` significant digits."""
    value = float(value)
    if not math.isfinite(value) or value == 0:
        return value
    return float(f'{value:.{digits}g}')


def rounded(obj, digits):
    """Copy of a JSON-like document with every real rounded."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_sig(obj, digits)
    if isinstance(obj, dict):
        return {k: rounded(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [rounded(v, digits) for v in obj]
    raise TypeError(f"cannot serialize {obj.__class__.__name__}")


def format_cell(value, digits):
    if isinstance(value, bool) or value is None:
        return str(value).lower()
    if isinstance(value, (float, np.floating)):
        return f'{round_sig(value, digits):.{digits}g}'
    return str(value)


def tabulate(rows, headers=None, margin=1, align=None):
    rows = [[str(col) for col in row] for row in rows]
    ncols = len(rows[0]) if rows else len(headers)
    lengths = [-math.inf] * ncols
    if headers:
        # don't side-effect modify rows
        rows = [list(headers)] + rows
    for row in rows:
        lengths = [max(l, len(col)) for l, col in zip(lengths, row)]
    lengths = [l + margin for l in lengths]
    if align is None:
        align = ['<'] * ncols
    fmt = "".join("{:%s{s%d}}%s" % (a, i, " | " if i < ncols - 1 else "")
                  for i, a in enumerate(align))
    for row in rows:
        yield fmt.format(*row, **{f's{i}': l for i, l in enumerate(lengths)})


def to_json(document):
    return json.dumps(document, indent=2) + '\n'


def to_csv(rows, headers, digits):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(headers)
    for row in rows:
        writer.writerow([format_cell(v, digits) for v in row])
    return out.getvalue()


def to_table(rows, headers, digits):
    cells = [[format_cell(v, digits) for v in row] for row in rows]
    return '\n'.join(tabulate(cells, headers=headers)) + '\n'


def to_msgpack(document):
    return msgpack.dumps(document, use_bin_type=True)


def write_output(data, path=None):
    """Write text or bytes to ``path``, or text to stdout."""
    if path is None:
        if isinstance(data, bytes):
            raise DomainError("binary output needs a file, use --out")
        print(data, end='')
        return
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if isinstance(data, bytes):
            path.write_bytes(data)
        else:
            with path.open('w', newline='') as f:
                f.write(data)
    except OSError as e:
        raise OSError(f"cannot write {path}: {e.strerror}") from e
