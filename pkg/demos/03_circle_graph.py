"""The circle multigraph behind the crossing-number distance bound.

Vertices are the points; for each l_p circle centered at a point and
passing through at least three others, consecutive points along the circle
are joined by the connecting arc.  Crossings of this concrete drawing are
counted exactly and never exceed twice the number of circle pairs; an
independent edge-pair oracle recounts them.
"""

from fractions import Fraction as F

from lplab import (
    build_multigraph,
    crossing_count,
    crossing_count_by_edges,
    grid,
    multiplicity_histogram,
    random_rational,
)
from lplab.errors import DegeneratePosition

G = build_multigraph(grid(3), 2)
rep = crossing_count(G)
print(f"grid(3), p=2: {len(G.circles)} circles, e={rep.e}, max multiplicity {rep.m}")
print(f"  crossings cr={rep.cr} <= 2*C(|C|,2) = {rep.upper_bound}")
print(f"  independent edge-pair oracle: {crossing_count_by_edges(G)}")
print(f"  multiplicity histogram: {multiplicity_histogram(G)}")
print(f"  e > 5mn? {rep.lemma_applicable}; ratio e^3/(m n^2 cr) = {rep.ratio}")

# Random lattice sets: exact counting or a precise rejection.
print("\nrandom lattice drawings (p=3):")
done = 0
seed = 0
while done < 4:
    seed += 1
    P = random_rational(18, seed=seed, box=(F(0), F(8), F(0), F(9)), denom_bound=1)
    G = build_multigraph(P, 3)
    try:
        rep = crossing_count(G)
    except DegeneratePosition as exc:
        print(f"  seed {seed}: rejected degenerate drawing ({exc})")
        continue
    oracle = crossing_count_by_edges(G)
    print(f"  seed {seed}: circles={len(G.circles)} e={rep.e} cr={rep.cr}"
          f" oracle={oracle} bound={rep.upper_bound}")
    done += 1
