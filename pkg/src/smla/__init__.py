"""Linear algebra on block-partitioned ("super") vectors and matrices.

Partitioned vectors and supermatrices live in :mod:`smla.core`; operators are
super diagonal matrices (:mod:`smla.operator`) with blockwise spectral theory
(:mod:`smla.spectral`), metric structure and bilinear forms
(:mod:`smla.inner_product`).  :mod:`smla.models` holds Markov and Leontief
models built from independent blocks.

>>> from smla import SuperVector
>>> SuperVector([3, 2, 1, -5, 3], [3, 2]) + SuperVector([0, 2, 4, 1, -2], [3, 2])
SuperVector((3 4 5 | -4 1))
"""

from .core import *  # noqa: F401,F403
from .errors import *  # noqa: F401,F403
from .inner_product import *  # noqa: F401,F403
from .models import *  # noqa: F401,F403
from .operator import *  # noqa: F401,F403
from .polynomial import *  # noqa: F401,F403
from .spectral import *  # noqa: F401,F403
from . import core, errors, inner_product, io, models, operator, polynomial, spectral

__version__ = "0.1.0"
