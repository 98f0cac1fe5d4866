"""Fourier frame bounds, dimension diagnostics and obstruction witnesses on
discretized measures.

Measures are weighted point clouds; frequency sets are finite point sets.
Everything numeric happens in the compiled ``_framelab`` extension.
"""

from ._framelab import *  # noqa: F401,F403
from ._framelab import __version__  # noqa: F401
