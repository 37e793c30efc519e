"""
Codes Package

This package contains the code families of the locality-code toolkit:
product-matrix MBR codes, Tamo-Barg codes, vector codes with all-symbol MBR
locality and vector codes with all-symbol MSR locality (pairwise coupling).
"""

# Use relative imports for internal modules
from .pm_mbr import (
    PmMbrParams, pm_encode, pm_repair, pm_data_collect,
    pm_generator_matrix, pm_helper_symbol,
)
from .tamo_barg import (
    TbParams, tb_encode, tb_local_repair, tb_decode, tb_generator_matrix,
    tb_local_parts, tb_distance_lower_bound,
)
from .mbr_locality import (
    MbrLocalityParams, build_dependency_system, degree_caps, mbrloc_encode,
    mbrloc_local_repair, mbrloc_decode, mbrloc_generator_matrix, mbrloc_helper_symbol,
)
from .pct_msr import (
    PctParams, MsrLocalityParams, couple, uncouple, pair_recover, msrloc_encode,
    msrloc_repair, msrloc_decode, msrloc_generator_matrix, msrloc_helper_symbols,
    check_vanishing_propagation, check_vanishing_layer,
)

__all__ = [
    "PmMbrParams", "pm_encode", "pm_repair", "pm_data_collect", "pm_generator_matrix",
    "pm_helper_symbol",
    "TbParams", "tb_encode", "tb_local_repair", "tb_decode", "tb_generator_matrix",
    "tb_local_parts", "tb_distance_lower_bound",
    "MbrLocalityParams", "build_dependency_system", "degree_caps", "mbrloc_encode",
    "mbrloc_local_repair", "mbrloc_decode", "mbrloc_generator_matrix", "mbrloc_helper_symbol",
    "PctParams", "MsrLocalityParams", "couple", "uncouple", "pair_recover", "msrloc_encode",
    "msrloc_repair", "msrloc_decode", "msrloc_generator_matrix", "msrloc_helper_symbols",
    "check_vanishing_propagation", "check_vanishing_layer",
]
