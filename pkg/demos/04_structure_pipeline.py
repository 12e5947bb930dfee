"""The l_inf structure pipeline on sets with few distinct distances.

Stages: axis-parallel line cover from squares around the extreme points,
rich-line filtering, per-line difference sets and GAP fits, the saved-line
process (lines with matching difference sets share one progression up to
translation), and the intercept partition.  All thresholds are explicit
rationals, defaults 1/4.
"""

from fractions import Fraction as F

from lplab import (
    corollary_pipeline,
    difference_energy,
    difference_set,
    gap_fit,
    grid,
    point_set,
    row_construction,
)

A = [F(1), F(2), F(3)]
print(f"difference set of {{1,2,3}}: size {len(difference_set(A))} (= 2n-1: an AP)")
print(f"difference energy E({{1,2,3}}) = {difference_energy(A).energy}")
print(f"GAP fit of {{0,1,10,11,20,21}}: {gap_fit([F(v) for v in (0,1,10,11,20,21)], 2, 12)}")

for build, name in ((grid, "grid"), (row_construction, "rows")):
    rep = corollary_pipeline(build(8))
    part = rep.partition.parts[0]
    print(f"\n{name}(8): {rep.cover.orientation} cover with "
          f"{len(rep.cover.intercepts)} lines, "
          f"survivor fraction {rep.survivor_fraction}, "
          f"s = {len(rep.progressions)} saved progression(s)")
    print(f"  intercept GAP: base {part.gap.base}, step {part.gap.generators[0]},"
          f" length {part.gap.sizes[0]} (via {part.via})")

# A grid with far outliers: the ledger accounts for every removed point.
k = 8
pts = [(F(x), F(y)) for x in range(1, k + 1) for y in range(1, k + 1)]
outliers = [(F(60 + 7 * i), F(300 + 11 * i)) for i in range(k)]
rep = corollary_pipeline(point_set(pts + outliers))
print(f"\ngrid(8) + 8 outliers: survivors {len(rep.survivors)} (>= 64), "
      f"discarded {len(rep.discarded)} (the outliers)")

# Two grids with incommensurable spacings keep separate progressions.
g1 = [(F(i), F(j)) for i in range(1, 7) for j in range(1, 7)]
g2 = [(F(7, 5) * i, F(j + 100)) for i in range(1, 7) for j in range(1, 7)]
rep = corollary_pipeline(point_set(g1 + g2))
print(f"two interleaved grids (spacings 1 vs 7/5): s = {len(rep.progressions)}")
