"""Exact checks of costalk / invariant-theory identities for small groups."""

__version__ = "0.1.0"

from .poly import PolyZ  # noqa: E402
from .rootdata import LeviDatum, RootDatum, root_datum  # noqa: E402

__all__ = ["PolyZ", "RootDatum", "LeviDatum", "root_datum", "__version__"]
