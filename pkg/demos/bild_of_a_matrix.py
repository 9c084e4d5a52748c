#!/usr/bin/env python3
"""Upper bild of a small quaternionic matrix, from both directions.

The inner route samples values <Tx, x> at random unit vectors and maps them
to bild coordinates (Re q, |Im q|); the outer route bounds the region by its
support function, one symmetric eigenvalue problem per direction.  The gap
between the two is the certificate of what remains unresolved.
"""

import numpy as np

import quatrange as qr
from quatrange import Quaternion

# a 3x3 matrix with a little of everything: a real entry, two imaginary
# classes and one off-diagonal coupling
T = qr.QMatrix.from_quaternions([
    [Quaternion(1.0), Quaternion(0.0, 0.5, 0.0, 0.0), Quaternion()],
    [Quaternion(), Quaternion(-0.5, 0.0, 1.0, 0.0), Quaternion()],
    [Quaternion(), Quaternion(), Quaternion(0.2, 0.0, 0.0, 0.8)],
])

print("matrix size:", T.n, " Frobenius norm:", round(T.frobenius(), 4))

region = qr.upper_bild(T, m=50000, k=360, seed=1)
outer = region.outer_polygon
print(f"\nouter support polygon: {len(outer)} vertices from 360 half-planes,")
print(f"  a in [{outer[:, 0].min():+.4f}, {outer[:, 0].max():+.4f}], "
      f"b up to {outer[:, 1].max():.4f}")

hull = region.inner_hull
print(f"inner hull from 50000 sampled values: {len(hull)} vertices,")
print(f"  a in [{hull[:, 0].min():+.4f}, {hull[:, 0].max():+.4f}], "
      f"b up to {hull[:, 1].max():.4f}")

print(f"\nhausdorff gap between the hull and the outer polygon: "
      f"{region.hausdorff_gap:.4f}")
print(f"support-direction deficiency of the sampling: {region.support_gap:.4f}")

# the attained real values form an interval strictly inside the outer width
section = qr.real_section(T, m=20000, seed=1)
print(f"\nattained real section: [{section.lo:.4f}, {section.hi:.4f}]")
print(f"outer polygon width at b = 0: "
      f"[{region.outer_polygon[:, 0].min():.4f}, {region.outer_polygon[:, 0].max():.4f}]")

# every sampled value respects every support half-plane
dirs = np.stack([np.cos(region.thetas), np.sin(region.thetas)], axis=1)
slack = float((region.inner_points @ dirs.T - region.offsets[None, :]).max())
print(f"\nworst support violation over all samples: {slack:.2e} (<= 0 expected)")
