"""Python front end for the extended-Poisson calculus engine.

Every function mirrors one CLI subcommand: it takes the same file paths and
options, runs the exact computation, and returns ``(exit_code, report)`` where
``report`` is the parsed JSON report the CLI would print.  ``exit_code`` is 0
when the mathematical check passed and 1 when it failed; malformed input
raises ``RuntimeError`` from the underlying loader.
"""

import json as _json

from . import _epc
from ._epc import __version__


def _wrap(raw):
    code, text = raw
    return code, _json.loads(text)


def check_mc(input, verbose=False):
    return _wrap(_epc.check_mc(input, verbose))


def d2(input, trials=20, seed=0, max_degree=3):
    return _wrap(_epc.d2(input, trials, seed, max_degree))


def gc(input, grid=5):
    return _wrap(_epc.gc(input, grid))


def ellipticity(input, grid=5):
    return _wrap(_epc.ellipticity(input, grid))


def homology(input, complex_kind, cutoff):
    return _wrap(_epc.homology(input, complex_kind, cutoff))


def pairing(input, degree, cutoff):
    return _wrap(_epc.pairing(input, degree, cutoff))


def verify_main1(input, trials=20, seed=0, max_degree=3):
    return _wrap(_epc.verify_main1(input, trials, seed, max_degree))


def modular(input, form="1"):
    return _wrap(_epc.modular(input, form))


def coisotropic(input, subspace):
    return _wrap(_epc.coisotropic(input, subspace))


def poisson_map(source, target, matrix):
    return _wrap(_epc.poisson_map(source, target, matrix))


__all__ = [
    "__version__",
    "check_mc",
    "d2",
    "gc",
    "ellipticity",
    "homology",
    "pairing",
    "verify_main1",
    "modular",
    "coisotropic",
    "poisson_map",
]
