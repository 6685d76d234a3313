"""Exact homotopy invariants of finite spaces (finite posets)."""

from .certificates import (CatCertificate, SectionCertificate, Verification, dumps_certificate,
                           loads_certificate, verify_certificate)
from .cohomology import (betti_numbers, cohomology_ring, cup_product, tc_lower_bound_report,
                         zero_divisor_cup_length)
from .complexity import (cat, cat_square, cc, cc_m, homotopy_cover_bound, inequality_report,
                         section_feasible)
from .errors import (CycleError, EmptyPoset, NotPathConnected, ParseError, SizeLimit,
                     UnknownFormat, UnknownLabel)
from .homotopy import (MapPoint, ZigzagPath, core, endpoints, hom_poset, homotopic,
                       is_contractible, is_contractible_in, is_path_connected, path_space)
from .order_complex import euler_characteristic, export, f_vector, import_complex, order_complex
from .poset import (FinitePoset, OpenSet, antichain, chain, fence, format_poset, from_hasse,
                    isomorphic, load_poset, opposite, parse_poset, product)

__version__ = "0.1.0"
