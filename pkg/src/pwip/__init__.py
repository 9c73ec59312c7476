"""Integer programming feasibility over low path-width column matroids.

Exact rational linear algebra, column-matroid connectivity, CNF-to-IP
constructions and pseudo-polynomial feasibility solvers for ``Ax = b, x >= 0``
with non-negative ``A``.
"""

from pwip.errors import ContractError, ParseError, PwipError, SizeError, WitnessError

__version__ = "0.1.0"

__all__ = [
    "ContractError",
    "ParseError",
    "PwipError",
    "SizeError",
    "WitnessError",
    "__version__",
]
