"""Trade handles for edges along an arithmetic 3-ladder.

A C8 current graph for n = 32 contains a ladder whose rungs carry currents
3, -6, 9, ... Each subtraction removes six edges and one handle while
keeping every face a triangle, which walks down the list of minimum
triangulations of the orientable surfaces.
"""
from indexthree import FamilyParams, build, mt_valid, subtract_handles

cg = build(FamilyParams("C8", 2))
rot = cg.derive_embedding()
ladder = cg.find_ladders()[0]
t0 = rot.deficit().t
print(f"start: {rot.num_edges()} edges, genus {rot.genus()}, t={t0}")

for k in range(1, 4):
    shifts = list(range(0, 3 * k, 3))
    r = subtract_handles(rot, ladder, shifts)
    t = t0 + 6 * k
    print(f"k={k}: {r.num_edges()} edges, genus {r.genus()}, triangular {r.is_triangular()}, "
          f"minimum triangulation: {mt_valid(32, t)}")
