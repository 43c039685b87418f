"""Hot kernels: compiled extension with a pure-Python fallback.

``active`` is the backend the library calls.  It is the compiled module
when the extension was built, otherwise ``_pykernels``.  Both expose the
same functions with identical results, so tests may swap ``active`` freely.
"""

from . import _pykernels as python

try:
    from . import _ckernels as compiled
except ImportError:  # extension not built
    compiled = None

active = compiled if compiled is not None else python

#: largest instance the bitmask kernels accept
MAX_VERTICES = 24
MAX_ARCS = 64


def fits(n, m, max_vertices=MAX_VERTICES):
    """Whether an ``n``-vertex, ``m``-arc instance is within kernel limits."""
    return 1 <= n <= max_vertices and m <= MAX_ARCS


def use(name):
    """Select the backend by name (``"compiled"`` or ``"python"``)."""
    global active
    if name == "compiled":
        if compiled is None:
            raise RuntimeError("compiled kernels are not built")
        active = compiled
    elif name == "python":
        active = python
    else:
        raise ValueError(f"unknown backend {name!r}")
    return active


__all__ = ["active", "compiled", "python", "fits", "use",
           "MAX_VERTICES", "MAX_ARCS"]
