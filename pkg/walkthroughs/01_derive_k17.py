"""Derive a triangular embedding of K17 - K2 from an index 3 current graph.

The current graph for n = 17 carries currents in Z_15 and two vortices,
a and b. Reading its three circuits gives the logs; the additive rule turns
the logs into a rotation for each of the 15 numbered vertices.
"""
from indexthree import FamilyParams, build, format_rotation

cg = build(FamilyParams("C5", 1))
report = cg.verify_principles()
print("construction principles hold:", report.ok)

for log in cg.circuit_logs():
    print(f"[{log.index}]", " ".join(str(x) for x in log.entries))

rot = cg.derive_embedding()
summary = rot.analyze()
print(f"V={summary.V} E={summary.E} F={summary.F} genus={summary.genus} triangular={summary.triangular}")
print("missing edges:", rot.deficit().missing)

# the first few rows, in the same text format the CLI writes
print("\n".join(format_rotation(rot).splitlines()[:4]))
