"""divaria: dialgebra varieties, conformal envelopes and representations,
all by exact rational arithmetic."""

__version__ = "0.1.0"

from .errors import InputError, ResourceError
from .operads import IdentitySet

__all__ = ["IdentitySet", "InputError", "ResourceError", "__version__"]
