#!/usr/bin/env python3
"""The matrix S-spectrum sits inside the closed numerical range.

The S-spectrum of a quaternionic matrix is a finite union of similarity
spheres: the classes q where T^2 - 2 Re(q) T + |q|^2 I is singular.  Every
sphere representative must satisfy every support half-plane of the bild.
"""

import numpy as np

import quatrange as qr
from quatrange import Quaternion
from quatrange.geometry import signed_inner_distance

# a diagonal warm-up: i and j are similar, so diag(i, j) has ONE spectral sphere
T0 = qr.QMatrix.diag([Quaternion(0, 1, 0, 0), Quaternion(0, 0, 1, 0)])
print("S-spectrum of diag(i, j):", qr.s_spectrum(T0))

# random matrices: spheres against the support polygon
rng = np.random.default_rng(1234)
print("\nrandom matrices, minimum slack of spectral spheres inside the outer bild:")
for trial in range(5):
    n = int(rng.integers(2, 6))
    T = qr.QMatrix(rng.standard_normal((n, n, 4)))
    spheres = qr.s_spectrum(T)
    region = qr.upper_bild(T, m=100, k=360, seed=trial)
    slack = min(signed_inner_distance(region.outer_polygon, s.point())
                for s in spheres)
    print(f"  n = {n}: {len(spheres)} spheres, worst slack {slack:+.2e}")

# the pencil is singular exactly on the spheres
T = qr.QMatrix(rng.standard_normal((3, 3, 4)))
spheres = qr.s_spectrum(T)
rep = spheres.points()[0]
on_sphere = Quaternion(rep[0], rep[1], 0.0, 0.0)
off_sphere = Quaternion(rep[0] + 0.5, rep[1] + 0.5, 0.0, 0.0)
sv = lambda q: np.linalg.svd(qr.delta(T, q).complex_rep(), compute_uv=False)[-1]
print(f"\nsmallest singular value of the pencil on a sphere:   {sv(on_sphere):.2e}")
print(f"smallest singular value of the pencil off the sphere: {sv(off_sphere):.2e}")
