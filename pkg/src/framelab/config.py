"""Capacity bounds.

All bounds are configuration, not hard constants: callers may override them
per call, and these module attributes can be adjusted for a whole session.
"""

# Largest poset size enumerate_posets / gen_corpus accept by default.
MAX_POSET_SIZE = 6

# Upset families larger than this (i.e. 2**size) are refused.
MAX_UPSET_FAMILY = 1 << 16

# Map/hom enumerations whose raw search space exceeds this are refused.
MAX_SEARCH_SPACE = 1 << 20

# Subset-enumeration prime-filter oracle runs only for lattices this small.
PRIME_FILTER_ORACLE_BOUND = 16

# The proper/coherent hom sweep pairs a lattice with corpus lattices having
# at most this many join-irreducibles (and never more than the lattice's own
# count). Bounds the quadratic blowup of the corpus-wide hom enumeration.
PROPER_COHERENT_IRREDUCIBLE_CAP = 3
