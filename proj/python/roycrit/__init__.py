"""Safety-first asset scoring via Edgeworth and Cornish-Fisher expansions.

The heavy lifting lives in the compiled extension ``_roycrit``; this package
re-exports its surface. When running from a build tree (extension on
``PYTHONPATH`` rather than installed into the package), the top-level module
is used instead.
"""

try:
    from ._roycrit import *  # noqa: F401,F403
    from ._roycrit import __version__  # noqa: F401
except ImportError:  # build-tree layout
    from _roycrit import *  # noqa: F401,F403
    from _roycrit import __version__  # noqa: F401
