"""Distance censuses of the two extremal families.

The k x k grid spans exactly k - 1 distinct l_inf distances, the minimum
possible for n = k^2 points.  The row construction shows that near-minimal
sets need not look like grids at all: no two of its points share an
x-coordinate, yet it spans only 2k - 2 distances.
"""

from fractions import Fraction

from lplab import LINF, L1, distance_census, grid, l1_to_linf_transform, random_rational, row_construction

for k in (3, 5, 10, 20):
    c = distance_census(grid(k), LINF)
    print(f"grid({k:>2}): n={k*k:>4}  distinct l_inf distances = {c.distinct_count}"
          f"  (= k-1 = {k-1})")

print()
for k in (3, 5, 10, 20):
    P = row_construction(k)
    c = distance_census(P, LINF)
    xs = {p.x for p in P}
    print(f"rows({k:>2}): n={k*k:>4}  distinct = {c.distinct_count}  (= 2k-2 = {2*k-2});"
          f" all {len(xs)} x-coordinates distinct")

# The smallest same-line distances of rows(3) sit at 1/90 and 2/90.
c3 = distance_census(row_construction(3), LINF)
print("\nrows(3) distance keys:", sorted(str(k) for k in c3.histogram))

# l_1 distances turn into l_inf distances under (x, y) -> (x - y, x + y).
P = random_rational(60, seed=5, denom_bound=30)
a = distance_census(P, L1)
b = distance_census(l1_to_linf_transform(P), LINF)
print("\nl_1 vs transformed l_inf censuses agree exactly:", a.histogram == b.histogram)

# Per-point distance counts: t = max_u D(u, P) drives the circle graph.
c = distance_census(grid(6), LINF)
print(f"grid(6): t = max_u D(u,P) = {c.t_max}, D(P) = {c.distinct_count}")
