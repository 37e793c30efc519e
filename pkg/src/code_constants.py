#!/usr/bin/env python3
"""
Code Constants and Fixed Tables

This module contains constants used across the locality-code toolkit,
including the irreducible moduli for binary extension fields, the supported
code families, CLI exit codes and oracle budget defaults.
"""

# Irreducible (primitive) moduli for GF(2^m), written as bitmasks including the
# leading term. Fixed so that serialized codewords stay comparable across runs.
BINARY_FIELD_MODULI = {
    2: 0x7,        # x^2 + x + 1
    3: 0xB,        # x^3 + x + 1
    4: 0x13,       # x^4 + x + 1
    5: 0x25,       # x^5 + x^2 + 1
    6: 0x43,       # x^6 + x + 1
    7: 0x83,       # x^7 + x + 1
    8: 0x11D,      # x^8 + x^4 + x^3 + x^2 + 1
    9: 0x211,      # x^9 + x^4 + 1
    10: 0x409,     # x^10 + x^3 + 1
    11: 0x805,     # x^11 + x^2 + 1
    12: 0x1053,    # x^12 + x^6 + x^4 + x + 1
    13: 0x201B,    # x^13 + x^4 + x^3 + x + 1
    14: 0x4443,    # x^14 + x^10 + x^6 + x + 1
    15: 0x8003,    # x^15 + x + 1
    16: 0x1100B,   # x^16 + x^12 + x^3 + x + 1
}

MAX_BINARY_DEGREE = 16

# Code families understood by the spec loader and the CLI
FAMILY_PM_MBR = "pm-mbr"
FAMILY_TAMO_BARG = "tamo-barg"
FAMILY_MBR_LOCALITY = "mbr-locality"
FAMILY_MSR_LOCALITY = "msr-locality"

FAMILIES = (
    FAMILY_PM_MBR,
    FAMILY_TAMO_BARG,
    FAMILY_MBR_LOCALITY,
    FAMILY_MSR_LOCALITY,
)

# Human readable family descriptions used in reports
FAMILY_TITLES = {
    FAMILY_PM_MBR: "Product-Matrix MBR code",
    FAMILY_TAMO_BARG: "Tamo-Barg code with (r, delta) all-symbol locality",
    FAMILY_MBR_LOCALITY: "Vector code with all-symbol MBR locality",
    FAMILY_MSR_LOCALITY: "Vector code with all-symbol MSR locality (coupled layers)",
}

# CLI exit codes
EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_NOT_OPTIMAL = 3

# Field size is reported as "linear" when q <= FIELD_SIZE_FACTOR * n
FIELD_SIZE_FACTOR = 4

# Default number of subset-rank evaluations allowed per sweep instance
DEFAULT_SWEEP_BUDGET = 2000

# Random samples drawn on top of the kernel basis when checking vanishing properties of the coupling
VANISHING_RANDOM_SAMPLES = 8

# Labels of the four symbols of one coupling pair
PAIR_LABELS = ("A1", "A2", "B1", "B2")
