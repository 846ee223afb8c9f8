"""Add the one missing edge of K17 - K2 with a handle.

The handle raises the genus from 15 to 16, which is the genus of K17.
The new edge runs through a merged face, so the result has one large
face and is no longer triangular.
"""
from indexthree import complete_k2, genus_Kn, sporadic

rot = sporadic("K17mK2")
out = complete_k2(rot)
for line in out.transcript:
    print(line)

final = out.final
print("genus", final.genus(), "expected", genus_Kn(17))
print("complete:", final.num_edges() == 17 * 16 // 2)
