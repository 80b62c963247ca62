import collections
import json
import sys

import numpy as np
import pandas as pd

from ball_interpolation import util_mod



OUTPUT_FORMATS = ('csv', 'json')
DEFAULT_PRECISION = 12
MIN_PRECISION, MAX_PRECISION = 6, 17


# destination None means standard output
OutputSpec = collections.namedtuple('OutputSpec',
                                    ['format', 'destination', 'precision'])



def make_output_spec(format='csv', destination=None,
                     precision=DEFAULT_PRECISION):
    if format not in OUTPUT_FORMATS:
        raise util_mod.ConfigError('Output format must be one of {}, '
                                   'got {!r}'.format(OUTPUT_FORMATS, format))
    if not MIN_PRECISION <= precision <= MAX_PRECISION:
        raise util_mod.ConfigError('Precision must lie in [{}, {}], got '
                                   '{}'.format(MIN_PRECISION, MAX_PRECISION,
                                               precision))
    return OutputSpec(format, destination, int(precision))




def _emit(text, out):
    if out.destination is None:
        sys.stdout.write(text)
    else:
        with open(out.destination, 'w', newline='') as file:
            file.write(text)



def write_table(df, out):
    '''Write a DataFrame as CSV (fixed significant digits) or as a JSON list of
    records, to a file or to standard output.'''
    if out.format == 'csv':
        text = df.to_csv(index=False,
                         float_format='%#.{}g'.format(out.precision),
                         lineterminator='\n')
    else:
        records = [{column: _to_builtin(value, out.precision)
                    for column, value in row.items()}
                   for row in df.to_dict(orient='records')]
        text = json.dumps(records, indent=2, allow_nan=False) + '\n'
    _emit(text, out)
    return text



def write_json(data, out):
    '''Write a dict built by the *_to_dict helpers below. Strict JSON: a
    non-finite float left in ``data`` raises ValueError.'''
    text = json.dumps(data, indent=2, allow_nan=False) + '\n'
    _emit(text, out)
    return text



def _to_builtin(value, precision=None):
    # numpy scalars and arrays into plain JSON values
    if isinstance(value, np.ndarray):
        return [_to_builtin(item, precision) for item in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [_to_builtin(item, precision) for item in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        # JSON has no inf or nan: a degenerate restart is written as null
        if not np.isfinite(value):
            return None
        if precision is not None:
            value = float('{:.{}g}'.format(value, precision))
        return value
    return value



def ball_to_dict(ball):
    return {'center': _to_builtin(ball.center), 'radius': float(ball.radius)}


def simplex_to_dict(simplex):
    return {'vertices': _to_builtin(simplex.vertices)}


def certificate_to_dict(cert):
    return {
        'value': float(cert.value),
        'signs': _to_builtin(cert.signs),
        'extremal_point': _to_builtin(cert.extremal_point),
        'k': int(cert.k),
        'direction': _to_builtin(cert.direction),
        'maximizers': _to_builtin(cert.maximizers),
        'ball': ball_to_dict(cert.ball),
    }


def absorption_to_dict(result, norm=None, sandwich=None):
    '''AbsorptionResult, optionally with the exact norm and the two-sided
    check between them.'''
    data = {
        'xi': float(result.xi),
        'binding_face': int(result.binding_face),
        'face_margins': _to_builtin(result.face_margins),
    }
    if norm is not None:
        data['norm'] = float(norm)
    if sandwich is not None:
        data.update(sandwich)
    return data


def search_result_to_dict(result):
    return {
        'best_norm': float(result.best_norm),
        'best_simplex': simplex_to_dict(result.best_simplex),
        'history': _to_builtin(result.history),
        'regularity_defect': float(result.regularity_defect),
        'best_restart': int(result.best_restart),
        'traces': _to_builtin(result.traces),
    }
