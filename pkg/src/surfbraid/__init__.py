"""Universal Vassiliev invariant of braids on a closed orientable surface.

The invariant is truncated at a chosen chord degree N.  Typical use::

    from surfbraid import parse_word, u_of
    u = u_of(parse_word("a[1,1] s[1] s[1] a[1,1]^-1", n=2, g=1), N=2)
"""

from .braid_words import BraidWord, parse_word, resolve_singular
from .coset_split import HElem, k_part, phi, section
from .combing import KDecomposition, decompose, to_pure
from .diagram_algebra import (AElem, UElem, format_uelem, graded_part, magnus_v, sd_mul,
                              u_any, u_linear, u_of, uelem_from_json, uelem_to_json)
from .surface_group import SurfaceGroup

__all__ = [
    "AElem", "BraidWord", "HElem", "KDecomposition", "SurfaceGroup", "UElem",
    "decompose", "format_uelem", "graded_part", "k_part", "magnus_v", "parse_word", "phi",
    "resolve_singular", "sd_mul", "section", "to_pure", "u_any",
    "u_linear", "u_of", "uelem_from_json", "uelem_to_json",
]
