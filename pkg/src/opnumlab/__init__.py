"""opnumlab package.

Numerical laboratory for (weighted) composition operators on Hardy spaces of
the disk and the bidisk: symbols, truncated matrices, approximation numbers,
capacities and decay-rate fitting. Every computation runs locally on dense
double precision matrices.
"""

__version__ = "0.1.0"

__all__ = [
    "config",
    "errors",
    "parallel",
    "symbols",
    "hardy",
    "bidisk",
    "capacity",
    "rates",
    "experiments",
]
