"""Exception types shared across the package."""


class SegalkitError(Exception):
    pass


class StructureError(SegalkitError):
    """A structural invariant is violated (arities, simplicial identities,
    discreteness, dangling faces, malformed files)."""


class BudgetError(SegalkitError):
    """An exhaustive search exceeded its node budget."""
