"""Desk-scale verification workbench for p-adic and archimedean measure
algebras attached to elliptic curves over Q.

Subpackages:
    padics     exact Q_p and Z_p[zeta_{p^k}] arithmetic
    measures   finite-level group rings, measure towers, moment series
    dirichlet  truncated formal Dirichlet series and their level measures
    curves     Weierstrass models, reduction data, twists, periods
    lvalues    complex L-values, characters, Gauss sums
    padic_l    p-adic L-series construction and conjecture verdicts
    cli        ingestion, caching and machine-readable reporting
"""

__version__ = "0.1.0"
