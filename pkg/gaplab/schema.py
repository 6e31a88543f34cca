class ValidationError(ValueError):
    def __init__(self, path, msg):
        self.path = path
        self.msg = msg
        super().__init__(str(self))

    def __str__(self):
        return f"{self.path or '$'}: {self.msg}"


class O:
    """Optional."""

    def __init__(self, wrapped):
        self.wrapped = wrapped

    def __repr__(self):
        return f"O[{self.wrapped}]"


class Union:
    """Any of."""

    def __init__(self, *wrapped):
        self.wrapped = wrapped

    def __repr__(self):
        return f"Union[{self.wrapped}]"


def human_type_name(cls):
    return {
        bool: "a boolean",
        float: "a real",
        int: "an integer",
        str: "a string",
        type(None): "nothing",
    }.get(cls, f"a {cls.__name__}")


def validate_schema(obj, schema):
    htn = human_type_name

    def explore(obj, schema, path):
        if isinstance(schema, O):
            if obj is None:
                return
            explore(obj, schema.wrapped, path)

        elif isinstance(schema, Union):
            for subtype in schema.wrapped:
                try:
                    explore(obj, subtype, path)
                    return
                except ValidationError:
                    pass
            expected = ' or '.join(htn(s) for s in schema.wrapped)
            raise ValidationError(
                path, f"expected {expected}, got {htn(obj.__class__)}")

        elif isinstance(schema, list):
            subtype, = schema
            if not isinstance(obj, (list, tuple)):
                raise ValidationError(
                    path, f"expected a list, got {htn(obj.__class__)}")
            for i, item in enumerate(obj):
                explore(item, subtype, f'{path}[{i}]')

        elif isinstance(schema, tuple):
            if not isinstance(obj, (list, tuple)) or len(obj) != len(schema):
                raise ValidationError(
                    path, f"expected a list of {len(schema)} items")
            for i, item in enumerate(obj):
                explore(item, schema[i], f'{path}[{i}]')

        elif isinstance(schema, dict):
            if not isinstance(obj, dict):
                raise ValidationError(
                    path, f"expected a mapping, got {htn(obj.__class__)}")
            for key, subtype in schema.items():
                if not isinstance(subtype, O) and key not in obj:
                    raise ValidationError(f'{path}.{key}', "missing")
                explore(obj.get(key), subtype, f'{path}.{key}')

        elif schema is float:
            # integers are acceptable reals, booleans are not
            if isinstance(obj, bool) or not isinstance(obj, (float, int)):
                raise ValidationError(
                    path, f"expected a real, got {htn(obj.__class__)}")

        elif schema is int and isinstance(obj, bool):
            raise ValidationError(path, "expected an integer, got a boolean")

        elif not isinstance(obj, schema):
            raise ValidationError(
                path, f"expected {htn(schema)}, got {htn(obj.__class__)}")

    explore(obj, schema, '')


real = float

PARAMS = {
    'n': int,
    'K': real,
    'D': real,
}

SOLVE_SCHEMA = {
    **PARAMS,
    'lambda1': real,
    'lambda2': real,
    'gap': real,
    'normalized_gap': real,
    'method': str,
    'grid_m': int,
    'residual': real,
}

SWEEP_SCHEMA = {
    'axis': str,
    'base': PARAMS,
    'verdict': str,
    'points': [SOLVE_SCHEMA],
}

BALL_SCHEMA = {
    'n': int,
    'K': real,
    'R': real,
    'lambda1': real,
    'lambda2': real,
    'gap': real,
    'mode2': (int, int),
    'modes': [{'ell': int, 'k': int, 'lambda': real}],
    'ordered': bool,
    'comparison': O({
        'passed': bool,
        'tolerance': real,
        'margins': {'gap': real, 'first-eigenvalue': real,
                    'first-floor': real, 'second-floor': O(real)},
    }),
    'hessian': O({
        'passed': bool,
        'bound': real,
        'radial_max': real,
        'tangential_max': real,
        'origin': real,
    }),
}

GEOMETRY_SCHEMA = {
    'n': int,
    'K': real,
    'd0': real,
    'dr_coefficient': real,
    'dr_target': real,
    'dr_rel_error': real,
    'first_variation': real,
    'second_derivative': {
        'start': real,
        'end': real,
        'target': real,
        'normal_max': real,
    },
    'laplacian_sum': real,
    'laplacian_target': real,
    'jacobi': real,
    'frame': real,
    'round_trip': real,
}

PROVENANCE_SCHEMA = {
    'gaplab': str,
    'python': str,
    'numpy': str,
    'scipy': str,
    'platform': str,
    'grid_m': int,
}

VERIFY_SCHEMA = {
    'passed': bool,
    'fault_injected': bool,
    'checks': [{
        'name': str,
        'group': str,
        'passed': bool,
        'cases': int,
        'failures': int,
        'margin': O(real),
        'detail': str,
    }],
}

TABLES_SCHEMA = {
    'passed': bool,
    'tables': [{
        'name': str,
        'caption': str,
        'cells': [{
            'row': real,
            'column': str,
            'value': real,
            'refined': O(real),
            'reference': real,
            'difference': real,
            'tolerance': real,
            'status': str,
        }],
    }],
    'provenance': PROVENANCE_SCHEMA,
}
