"""Regular subgroups of holomorphs of finite abelian p-groups and skew braces.

The heavy lifting lives in the C++ extension; every operation returns the
same JSON report the CLI prints, parsed into a dict.
"""

import json as _json

from . import _core
from ._core import BudgetExceeded, InvalidInput, __version__


def _spec(group):
    if isinstance(group, dict):
        return _json.dumps(group)
    return group


def info(group):
    """Order, order statistics and |Aut| for a group spec (dict or JSON)."""
    return _json.loads(_core.info(_spec(group)))


def search(target, ambient, restrict_sylow=True, threads=0, max_nodes=2**64 - 1):
    """Search Hol(ambient) for a regular subgroup isomorphic to target."""
    return _json.loads(
        _core.search(_spec(target), _spec(ambient), restrict_sylow, threads, max_nodes)
    )


def verify_nonab(source, threads=0):
    """Abelian-target construction and normalizer verification for a pc group."""
    return _json.loads(_core.verify_nonab(_spec(source), threads))


def census(ambient, restrict_sylow=True, classify=True, threads=0):
    """All regular subgroups of Hol(ambient), with conjugacy classes."""
    return _json.loads(_core.census(_spec(ambient), restrict_sylow, classify, threads))


def lemma_suite(corpus=60, seed=1, threads=0):
    """Transitivity equivalence and power-formula property suites."""
    return _json.loads(_core.lemma_suite(corpus, seed, threads))


def family(family_id, p, n=None):
    """Spec dict for a catalog fixture."""
    spec = {"kind": "family", "id": family_id, "p": p}
    if n is not None:
        spec["n"] = n
    return spec


def abelian(p, exponents):
    """Spec dict for an abelian p-group of the given invariant type."""
    return {"kind": "abelian", "p": p, "exponents": list(exponents)}


__all__ = [
    "info",
    "search",
    "verify_nonab",
    "census",
    "lemma_suite",
    "family",
    "abelian",
    "InvalidInput",
    "BudgetExceeded",
    "__version__",
]
