"""Everything the library knows about one value of n.

catalog() picks the family that covers n, runs its completion pipeline
for the genus embedding of K_n and then subtracts handles for the (n,t)
triangulations.
"""
import sys

from indexthree import catalog
from indexthree.catalog import recipe

n = int(sys.argv[1]) if len(sys.argv) > 1 else 32
print(recipe(n).describe())
for label, rot in catalog(n):
    s = rot.analyze()
    print(f"{label:>22}  E={s.E:<5} genus={s.genus:<4} triangular={s.triangular}")
