# (c) Copyright The markoff toolkit authors 2026

import json
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from ..log import logger


def nested_dictionary():
    return defaultdict(DictionaryOfStan)


# Simple implementation of a nested dictionary.
DictionaryOfStan = nested_dictionary


def _extractor(o):
    if hasattr(o, 'to_dict'):
        return o.to_dict()
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if not hasattr(o, '__dict__'):
        logger.debug("Couldn't serialize non dict type: %s", type(o))
        return {}
    return {k.lower(): v for k, v in o.__dict__.items() if v is not None and not k.startswith('_')}


def to_json(obj):
    """
    Convert obj to compact json.  Report classes expose to_dict(); numpy scalars and Fractions
    are converted on the way.

    :param obj: the object to serialize to json
    :return:  json string
    """
    try:
        return json.dumps(obj, default=_extractor, sort_keys=True, separators=(',', ':'))
    except Exception:
        logger.debug("to_json non-fatal encoding issue: ", exc_info=True)


def to_pretty_json(obj):
    """
    Convert obj to pretty json.  Used for reports meant for humans.

    :param obj: the object to serialize to json
    :return:  json string; encoding errors propagate
    """
    return json.dumps(obj, default=_extractor, sort_keys=True, indent=4, separators=(',', ': '))


def parallel_map(func, items, threads=1):
    """
    Maps func over items, in order, on a thread pool when threads > 1.

    :param func: callable of one argument
    :param items: iterable of arguments
    :param threads: worker count
    :return: list of results in input order
    """
    items = list(items)
    if threads is None or threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))
