import json
import os

import numpy as np
import pandas as pd

from ball_interpolation import util_mod
from ball_interpolation import geometry
from ball_interpolation import optimizer
from ball_interpolation import absorption
from ball_interpolation import projector_norm as pn



def load_simplex(path):
    '''Read a simplex file: CSV with one vertex per row and no header, or JSON
    {"vertices": [[...], ...]}. Anything unreadable raises MalformedSimplexError.
    '''
    try:
        if os.path.splitext(path)[1].lower() == '.json':
            with open(path, 'r') as file:
                vertices = json.load(file)['vertices']
        else:
            vertices = pd.read_csv(path, header=None).to_numpy(dtype=float)
    except (OSError, KeyError, TypeError, ValueError,
            pd.errors.ParserError) as exc:
        raise util_mod.MalformedSimplexError(
            'Cannot read simplex file {}: {}'.format(path, exc))
    return geometry.make_simplex(vertices)




def parse_ball(text):
    '''Ball from the command-line form "c1,c2,...,cn;R".'''
    try:
        center_text, radius_text = text.split(';')
        center = [float(value) for value in center_text.split(',')]
        radius = float(radius_text)
    except ValueError as exc:
        raise util_mod.BallInterpolationError(
            'Ball should read "c1,...,cn;R", got {!r}: {}'.format(text, exc))
    return geometry.make_ball(center, radius)



def ball_from_dict(data):
    try:
        return geometry.make_ball(data['center'], data['radius'])
    except (KeyError, TypeError) as exc:
        raise util_mod.BallInterpolationError(
            'Ball should be {{"center": [...], "radius": r}}: {}'.format(exc))


def load_ball(path):
    '''Ball from a JSON file {"center": [...], "radius": r}.'''
    try:
        with open(path, 'r') as file:
            data = json.load(file)
    except (OSError, ValueError) as exc:
        raise util_mod.BallInterpolationError(
            'Cannot read ball file {}: {}'.format(path, exc))
    return ball_from_dict(data)




def read_search_overrides_from_json(file_json):
    """Read optimizer overrides from a json file.

    Args:
        file_json (str): Path to the json file, e.g.
            {"restarts": 16, "max_iterations": 8000, "seed": 3}

    Returns:
        dict: parameter name -> value, as in the file.

    """
    try:
        with open(file_json, "r") as f:
            overrides = json.load(f)
    except (OSError, ValueError) as exc:
        raise util_mod.ConfigError('Cannot read search config {}: {}'.format(
            file_json, exc))
    if not isinstance(overrides, dict):
        raise util_mod.ConfigError('Search config must be a JSON object')
    if 'n' in overrides:
        raise util_mod.ConfigError('The dimension is not a search parameter')
    return overrides


def read_search_config_from_json(file_json, n):
    '''SearchConfig for dimension n: the defaults updated with the file.'''
    return optimizer.make_search_config(
        n, **read_search_overrides_from_json(file_json))



def parse_overrides(pairs):
    '''"key=value" strings into a dict; values are parsed as JSON when they can be.'''
    overrides = {}
    for pair in pairs:
        key, separator, value = pair.partition('=')
        if not separator or not key:
            raise util_mod.ConfigError('Override should read key=value, '
                                       'got {!r}'.format(pair))
        try:
            overrides[key] = json.loads(value)
        except ValueError:
            overrides[key] = value
    return overrides



def parse_n_list(text):
    '''Comma separated dimensions with optional ranges: "1-15,50,100".'''
    n_list = []
    for item in filter(None, (part.strip() for part in text.split(','))):
        first, separator, last = item.partition('-')
        try:
            if separator:
                n_list.extend(range(int(first), int(last) + 1))
            else:
                n_list.append(int(first))
        except ValueError:
            raise util_mod.ConfigError('Bad dimension list entry {!r}'.format(
                item))
    for n in n_list:
        util_mod.validate_integer(n, 1)
    return n_list



def simplex_from_dict(data):
    return geometry.make_simplex(data['vertices'])


def certificate_from_dict(data):
    '''Inverse of save_results.certificate_to_dict.'''
    return pn.NormCertificate(
        value=float(data['value']),
        signs=np.array(data['signs'], dtype=int),
        extremal_point=np.array(data['extremal_point'], dtype=float),
        k=int(data['k']),
        direction=np.array(data['direction'], dtype=float),
        maximizers=np.array(data['maximizers'], dtype=np.int8).reshape(
            -1, len(data['signs'])),
        ball=ball_from_dict(data['ball']))


def _objective_value(value):
    # null marks a restart that hit the degeneracy guard
    return np.inf if value is None else float(value)


def search_result_from_dict(data):
    '''Inverse of save_results.search_result_to_dict.'''
    return optimizer.SearchResult(
        best_norm=float(data['best_norm']),
        best_simplex=simplex_from_dict(data['best_simplex']),
        history=[_objective_value(value) for value in data['history']],
        regularity_defect=float(data['regularity_defect']),
        best_restart=int(data['best_restart']),
        traces=[[_objective_value(value) for value in trace]
                for trace in data['traces']])


def absorption_from_dict(data):
    '''Inverse of save_results.absorption_to_dict.'''
    return absorption.AbsorptionResult(
        xi=float(data['xi']),
        binding_face=int(data['binding_face']),
        face_margins=np.array(data['face_margins'], dtype=float))
