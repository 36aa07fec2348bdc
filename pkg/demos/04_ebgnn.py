"""
An edge-based message passing network with random weights
==========================================================

With seeded random weights the network already separates the circulant
pair, while it can never separate graphs the edge-based test cannot.
"""

import numpy as np

from ebwl import figure2_pair, figure3_pair, forward, gnn_distinguish, init_params

G, H = figure2_pair()
C8, C44 = figure3_pair()

p = init_params(16, 3, seed=0)
print("G readout (first 4):", np.round(forward(G, None, p)[:4], 4))
print("H readout (first 4):", np.round(forward(H, None, p)[:4], 4))

print("circulants, per seed:", gnn_distinguish(G, H, 16, 3, range(10), tol=1e-6))
print("C8 vs C4+C4, per seed:", gnn_distinguish(C8, C44, 16, 3, range(10), tol=1e-9))
