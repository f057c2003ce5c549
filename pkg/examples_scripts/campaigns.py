"""
Seeded campaigns: theorem checks, obtuse counts and conjectures
===============================================================

Every trial derives its own seed from (seed, index), so a reported seed
regenerates the same simplex with ``generate(family, n, seed, **params)``.
"""

import nonobtuse.lab as lab

suite = lab.verify_theorem_suite(4, 60, seed=1)
for name, row in suite["rows"].items():
    print(f"{name:28s} applicable={row['applicable']:3d} pass={row['pass']}")

# obtuse counts when all 2-faces are nonobtuse
rep = lab.test_conjecture_kfacets(4, 2, 60, seed=1)
print("bounds", rep["bounds"], "observed", rep["observed_max"])

# best obtuse count found with nonobtuse facets, against the proven bound
for n in (2, 3, 4):
    best = lab.extremal_search(n, 200, seed=0)
    print(f"n={n}: best {best['best']} bound {best['bound']}")

sub = lab.test_conjecture_suborthocentric(5, 50, seed=1)
print("sub-orthocentric facets at n=5:", sub["accepted"], "samples,",
      sub["non_ultrametric"], "non-ultrametric,", len(sub["counterexamples"]), "counterexamples")
