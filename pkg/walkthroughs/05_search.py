"""Rediscover the n = 17 current assignment by exhaustive search.

The skeleton fixes the cubic graph, its circuits and the vortices, and
leaves every current open. The search fills in currents under the
construction principles and keeps the solutions up to multiplication by
units of Z_15.
"""
import os
import time

from indexthree import Skeleton, search

here = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(here, "..", "tests", "fixtures", "c5s1.skeleton")) as fh:
    sk = Skeleton.from_text(fh.read())

t0 = time.time()
rep = search(sk, budget=5_000_000)
print(rep, f"in {time.time() - t0:.1f}s")
good = [cg for cg in rep.solutions if cg.derive_embedding().is_triangular()]
print(len(good), "of", len(rep.solutions), "solutions derive a triangular K17 - K2")
