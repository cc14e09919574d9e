"""Search budgets.  SEGALKIT_BUDGET overrides the default node budget of
every exhaustive search."""

import os

DEFAULT_BUDGET = 200000


def default_budget(budget=None):
    if budget is not None:
        return budget
    env = os.environ.get("SEGALKIT_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET
