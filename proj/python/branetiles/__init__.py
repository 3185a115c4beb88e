"""Exact-arithmetic toolkit for superpotential algebras of brane tilings.

The heavy lifting lives in the compiled ``_branetiles`` extension; this
package re-exports its public surface. Paths are given as arrow-id lists (or
printed as strings) in product order: the rightmost arrow acts first.
"""

try:
    from ._branetiles import (
        InputError,
        Tiling,
        adequacy,
        cancellativity,
        central,
        compare_s,
        contract,
        finite_point_gluing,
        geometry,
        labels,
        load,
        parse,
        paths_equivalent,
        relations,
        remove_two_cycles,
        rings,
        to_text,
        validate,
    )
except ImportError:  # development tree: extension built out-of-package
    from _branetiles import (  # type: ignore[no-redef]
        InputError,
        Tiling,
        adequacy,
        cancellativity,
        central,
        compare_s,
        contract,
        finite_point_gluing,
        geometry,
        labels,
        load,
        parse,
        paths_equivalent,
        relations,
        remove_two_cycles,
        rings,
        to_text,
        validate,
    )

__version__ = "0.1.0"

__all__ = [
    "InputError",
    "Tiling",
    "adequacy",
    "cancellativity",
    "central",
    "compare_s",
    "contract",
    "finite_point_gluing",
    "geometry",
    "labels",
    "load",
    "parse",
    "paths_equivalent",
    "relations",
    "remove_two_cycles",
    "rings",
    "to_text",
    "validate",
]
