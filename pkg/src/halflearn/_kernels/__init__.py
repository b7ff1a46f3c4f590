"""Hot numeric kernels with a compiled core and a NumPy fallback.

The compiled extension is preferred when importable; set the environment
variable ``HALFLEARN_DISABLE_EXT=1`` to force the fallback. Both
implementations share the same contract: ``chain_sums(points, parents,
coords)`` returns, for each node of a monomial evaluation chain, the sum
over samples of the monomial's value, where node ``j`` is the product of
its parent node (-1 means the empty product) and coordinate ``coords[j]``.
"""

import os

if os.environ.get("HALFLEARN_DISABLE_EXT", "") not in ("", "0"):
    from ._fallback import chain_sums

    USING_EXTENSION = False
else:
    try:
        from ._monomials import chain_sums  # type: ignore[attr-defined]

        USING_EXTENSION = True
    except ImportError:
        from ._fallback import chain_sums

        USING_EXTENSION = False

__all__ = ["chain_sums", "USING_EXTENSION"]
