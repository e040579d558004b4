"""Exact computation in free idempotent monoids and free multiplicatively
idempotent rigs: canonical forms, exact arithmetic, enumeration, counting,
and brute-force cross-checks."""

__version__ = "0.1.0"
