"""Python access to the monarel core.

Relations, distributions and reports travel as the same JSON shapes the CLI
reads and writes; here they are plain dicts.
"""

import json

from . import _monarel
from ._monarel import MonarelError, help_text, typecheck

__all__ = [
    "MonarelError",
    "check_laws",
    "help_text",
    "lift",
    "member_dist",
    "member_powerset",
    "run",
    "typecheck",
]


def run(*args):
    """Run ``monarel`` with the given arguments; returns (code, stdout, stderr)."""
    return _monarel.run_cli([str(a) for a in args])


def check_laws(monad, check="monad", max_size=3, samples=500, seed=1):
    return json.loads(_monarel.check_laws(monad, check, max_size, samples, seed))


def member_dist(S, nu1, nu2):
    return json.loads(_monarel.member_dist(json.dumps(S), json.dumps(nu1), json.dumps(nu2)))


def member_powerset(S, B1, B2):
    return _monarel.member_powerset(json.dumps(S), list(B1), list(B2))


def lift(monad, S):
    return json.loads(_monarel.lift(monad, json.dumps(S)))
