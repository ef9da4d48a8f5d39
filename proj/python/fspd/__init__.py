"""European call pricing under the space-time fractional diffusion model.

The compiled core exposes the drift-factor routes, the double-series call
pricer with its term grid, the Mellin-Barnes transition density, and two
independent oracle pricers used for cross-checking.
"""

from ._fspd import *  # noqa: F401,F403
from ._fspd import __doc__ as _core_doc  # noqa: F401

__version__ = "1.0.0"
