"""GF(2^m) matrix toolkit: MDS/involutory predicates, exhaustive searches
over matrices with few distinct entries, and the distinct-entry claim suite.

Everything is implemented in the C++ extension; this package re-exports it.
"""

from ._core import *  # noqa: F401,F403
from ._core import tool_version as __version__  # noqa: F401
