"""Writes grid_cauchy.csv: fluid at rest in a frame spinning about e3 with the
centrifugal field included, p = p0 + rho (g x3 + w^2 (x1^2 + x2^2) / 2)."""
import itertools

rho, p0, g3, w = 1000.0, 1e5, -9.81, 0.8
ts = [0.25 * i for i in range(5)]
xs = [-1.0 + 0.5 * i for i in range(5)]
with open("grid_cauchy.csv", "w") as f:
    f.write("t,x1,x2,x3,rho,v1,v2,v3,s11,s12,s13,s22,s23,s33\n")
    for t, x1, x2, x3 in itertools.product(ts, xs, xs, xs):
        p = p0 + rho * (g3 * x3 + w * w * (x1 * x1 + x2 * x2) / 2)
        row = [t, x1, x2, x3, rho, 0.0, 0.0, 0.0, -p, 0.0, 0.0, -p, 0.0, -p]
        f.write(",".join(repr(v) for v in row) + "\n")
