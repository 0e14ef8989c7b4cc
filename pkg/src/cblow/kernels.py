"""Backend selection for the hot kernels.

The compiled extension ``cblow._ckernels`` is used when it was built;
otherwise the pure-Python module ``cblow._pykernels`` is used. Both expose
``transitive_closure``, ``meet_join_tables``, ``join_map_is_iso`` and
``find_isomorphism`` with identical results.
"""
from contextlib import contextmanager

from cblow import _pykernels

try:
    from cblow import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

_active = _ckernels if _ckernels is not None else _pykernels


def backend_name():
    return "cython" if _active is _ckernels and _ckernels is not None else "python"


def set_backend(name):
    global _active
    try:
        _active = BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {sorted(BACKENDS)}")


@contextmanager
def using_backend(name):
    global _active
    prev = _active
    set_backend(name)
    try:
        yield
    finally:
        _active = prev


def transitive_closure(adj):
    return _active.transitive_closure(adj)


def meet_join_tables(leq):
    return _active.meet_join_tables(leq)


def join_map_is_iso(meet, join, factors, tops, target_size):
    return _active.join_map_is_iso(meet, join, factors, tops, target_size)


def lattice_join_map_is_iso(L, factors, tops, target_size):
    """``join_map_is_iso`` on the tables of semilattice ``L``."""
    if _active is _pykernels:
        return _pykernels.join_map_is_iso(L._meet, L._join, factors, tops, target_size)
    return _active.join_map_is_iso(L.meet_table, L.join_table, factors, tops, target_size)


def find_isomorphism(leq_a, leq_b, order, cand):
    return _active.find_isomorphism(leq_a, leq_b, order, cand)
