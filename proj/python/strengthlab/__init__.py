"""Exact polynomial rank and Gowers-norm computations over finite fields.

Polynomials are given either as text (``"x1*x2 + 3*x3^2"`` with ``p`` and
``n``) or as a dict in the library's JSON form. Results are plain dicts.
"""

import json

from . import _core
from ._core import ResourceLimitError, StrengthlabError

__all__ = [
    "ResourceLimitError",
    "StrengthlabError",
    "bias",
    "delta",
    "derivative",
    "evaluate",
    "gowers",
    "gowers_exact",
    "homogeneous_part",
    "multilinearize",
    "parse",
    "profile",
    "rank",
    "rank_over_extensions",
    "scan",
    "table",
    "to_text",
    "verify",
]


def _poly(poly):
    return poly if isinstance(poly, str) else json.dumps(poly)


def _call(fn, poly, *args, **kwargs):
    return json.loads(fn(_poly(poly), *args, **kwargs))


def parse(poly, p=0, n=0, s=1):
    return _call(_core.parse, poly, p=p, n=n, s=s)


def to_text(poly, p=0, n=0, s=1):
    return _core.to_text(_poly(poly), p=p, n=n, s=s)


def evaluate(poly, x, p=0, n=0, s=1):
    return _call(_core.evaluate, poly, list(x), p=p, n=n, s=s)["value"]


def delta(poly, t, p=0, n=0, s=1):
    return _call(_core.delta, poly, list(t), p=p, n=n, s=s)


def derivative(poly, t, p=0, n=0, s=1):
    return _call(_core.derivative, poly, list(t), p=p, n=n, s=s)


def homogeneous_part(poly, d, p=0, n=0, s=1):
    return _call(_core.homogeneous_part, poly, d, p=p, n=n, s=s)


def multilinearize(poly, p=0, n=0, s=1, d=None):
    return _call(_core.multilinearize, poly, p=p, n=n, s=s, d=d)


def bias(poly, p=0, n=0, s=1):
    return _call(_core.bias, poly, p=p, n=n, s=s)


def gowers(poly, m, p=0, n=0, s=1, recursive=False, budget=10**10, threads=0):
    return _call(_core.gowers, poly, m, p=p, n=n, s=s, recursive=recursive, budget=budget, threads=threads)


def gowers_exact(poly, p=0, n=0, s=1, d=None, budget=10**10, threads=0):
    return _call(_core.gowers_exact, poly, p=p, n=n, s=s, d=d, budget=budget, threads=threads)


def rank(poly, p=0, n=0, s=1, d=None, budget=10**8, threads=0):
    return _call(_core.rank, poly, p=p, n=n, s=s, d=d, budget=budget, threads=threads)


def rank_over_extensions(poly, ext=(1, 2), p=0, n=0, d=None, budget=10**8, threads=0):
    return _call(_core.rank_over_extensions, poly, list(ext), p=p, n=n, d=d, budget=budget, threads=threads)


def profile(poly, p=0, n=0, s=1, d=None, budget=10**8, threads=0):
    return _call(_core.profile, poly, p=p, n=n, s=s, d=d, budget=budget, threads=threads)


def scan(p, n, d, mode="exhaustive", samples=0, seed=None, budget=None, threads=0, csv=False):
    out = _core.scan(p, n, d, mode=mode, samples=samples, seed=seed, budget=budget, threads=threads, csv=csv)
    return out if csv else json.loads(out)


def verify(p, n, d, trials, seed, threads=0):
    return json.loads(_core.verify(p, n, d, trials, seed, threads=threads))


def table(records, csv=False):
    text = records if isinstance(records, str) else json.dumps(records)
    out = _core.table(text, csv=csv)
    return out if csv else json.loads(out)
