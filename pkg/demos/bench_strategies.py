"""Time the block-dense chain, the sparse reference and the naive method."""

import time

from fxi import parse_polynomial, truncate
from fxi.linalg import image_chain, naive_chain

f = parse_polynomial("x^2 + y^3 + x*y", 2, 3)
for e in range(1, 4):
    g = truncate(f, e)
    timings = {}
    dims = {}
    for name, run in [("dense", lambda: image_chain(g)),
                      ("sparse", lambda: image_chain(g, strategy="sparse")),
                      ("naive", lambda: naive_chain(g))]:
        start = time.perf_counter()
        dims[name] = run().dims
        timings[name] = time.perf_counter() - start
    same = len(set(dims.values())) == 1
    print(e, same, {k: round(v, 4) for k, v in timings.items()})
