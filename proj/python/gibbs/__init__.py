"""Equilibrium measures of iterated function systems on [-1, 1].

    >>> import gibbs
    >>> data = gibbs.solve(gibbs.cantor(1/3), 64)
    >>> gibbs.integrate(data, "x^2")
"""

from ._core import (
    ChebGrid,
    ConfigError,
    DomainError,
    Expr,
    GibbsError,
    IFSSystem,
    NumericalError,
    ParseError,
    SpectralData,
    SystemConfig,
    UlamOperator,
    cantor,
    cantor_oracle,
    diagnose,
    fourier_direct,
    fourier_mc,
    gauss,
    integrate,
    load_config,
    parse_config,
    sample,
    sample_orbit,
    solve,
    transfer_matrix,
    ulam,
)

__all__ = [name for name in dir() if not name.startswith("_")]
