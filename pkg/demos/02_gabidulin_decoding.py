"""
Rank-metric encoding and decoding
=================================

A length-n code over GF(q^m) whose codewords, expanded to n x m matrices
over GF(q), are pairwise far apart in rank.  Corrupting a codeword by any
matrix of rank <= t leaves it decodable, no matter how many entries the
corruption touches.
"""

import numpy as np

from secnc import ExtField, GabidulinCode, brute_force_decode
from secnc import linalg as la

F = ExtField(2, 4)
code = GabidulinCode(F, 4, 2)
print(code)
print("generator rows:", code.generator_matrix())

u = (3, 7)
c = code.encode(u)
print("message", u, "-> codeword", c)

# an error of rank 1 that touches all four packets
E = np.array([[1, 1, 0, 1]] * 4)
e = la.contract(F, E)
y = [F.add(a, b) for a, b in zip(c, e)]
print("received:", y, " (every packet corrupted)")

out = code.decode(y, 1)
print("decoded:", out.message, " error rank:", out.error_rank)

# the exhaustive nearest-codeword search finds the same unique answer
print("oracle says:", brute_force_decode(code, y, 1))

# rank 2 exceeds what t=1 promises.  The decoder never fabricates: it
# either fails or returns some codeword genuinely within distance 1 of
# the received word; here that nearest codeword belongs to another message
E2 = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
y2 = [F.add(a, b) for a, b in zip(c, la.contract(F, E2))]
out2 = code.decode(y2, 1)
print("rank-2 corruption ->", out2.message if out2.ok else out2.reason)
print("oracle confirms:", brute_force_decode(code, y2, 1))
