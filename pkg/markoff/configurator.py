# (c) Copyright The markoff toolkit authors 2026

"""
This file contains a config object that will hold tunables for the package.
Defaults are set and can be overridden after package load.
"""
from .util import DictionaryOfStan

config = DictionaryOfStan()

# Groups up to this order get a dense multiplication table; larger ones multiply through labels.
config['groups']['dense_limit'] = 4096

# Closure from generators aborts past this many elements.
config['groups']['closure_cap'] = 100000

# Random triples checked for associativity when a group is built.
config['groups']['associativity_samples'] = 64

# Packed point keys x + p*y + p*p*z must fit a signed 64-bit integer.
config['surface']['p_cap'] = 1 << 21

# Transitivity on X*(p) has been checked for every prime below this bound.
config['markoff']['verified_prime_bound'] = 3000

# Largest number of decimal digits the integral tree may grow to when hunting for coverage.
config['markoff']['tree_digits_cap'] = 400

# Random attempts before the exhaustive search when lifting trace coordinates to matrices.
config['nielsen']['lift_attempts'] = 64

# Strong approximation mod a composite n walks a visited bitmap of n^3 residues; n^3 must stay below this.
config['markoff']['residue_cap'] = 1 << 24
