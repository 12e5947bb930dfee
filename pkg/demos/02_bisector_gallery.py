"""A tour of l_p bisector geometry, rendered to SVG.

The bisector of u, v is a line exactly when the segment uv has slope
0, 1, -1, or infinity (and always for p = 2).  Otherwise it is a strictly
monotone curve meeting five of the nine regions cut by the lines through
the coordinates of u and v, with exactly three inflection points; the
midpoint is one of them, exactly.
"""

from fractions import Fraction as F

from lplab import (
    bisector_eval,
    bisector_intersections,
    build_bisector,
    inflection_points,
    monotonicity_probe,
    point,
)
from lplab.svg import Scene, render_svg

u, v = point(0, 0), point(3, 1)
for p in (2, 3, 4, 5):
    B = build_bisector(u, v, p)
    print(f"p={p}: kind={B.kind}", end="")
    if B.kind == "curve":
        probe = monotonicity_probe(B, samples=25)
        print(f", regions={B.regions_intersected}, {probe.orientation}", end="")
    print()

B3 = build_bisector(u, v, 3)
print("\npiece polynomials (sign-resolved on their regions):")
for pc in B3.pieces:
    tag = "bounded" if pc.bounded else "unbounded"
    print(f"  region {pc.region_index} ({tag}): signs {pc.signs}")

rep = inflection_points(B3, precision=F(1, 2**30))
print("\ninflection enclosures (one contains the midpoint exactly):")
for bx in rep.points:
    print(f"  x in [{float(bx.x_lo):.9f}, {float(bx.x_hi):.9f}],"
          f" y in [{float(bx.y_lo):.9f}, {float(bx.y_hi):.9f}]")

lo, hi = bisector_eval(B3, F(10), precision=F(1, 2**30))
print(f"\ncurve point above x=10: y in [{float(lo):.9f}, {float(hi):.9f}]")

B3b = build_bisector(point(0, 1), point(3, 0), 3)
crossings = bisector_intersections(B3, B3b, precision=F(1, 2**16))
print(f"\nintersections with the mirrored bisector: {len(crossings)}"
      f" (at the shared midpoint)")

render_svg(Scene(bisectors=[B3, B3b]), "bisector_gallery.svg")
print("\nwrote bisector_gallery.svg")
