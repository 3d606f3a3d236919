"""
The seeded 100-scenario benchmark
=================================

Fifty scenarios end in a collision, fifty do not. Every one is simulated
with 2 px noise and 5% dropout, run through the full pipeline, and scored
against the simulator's ground truth.
"""

import statistics
from collections import Counter

from pathtwin.suite import run_suite

res = run_suite()
m = res.metrics
print("TP %d  FP %d  FN %d" % (m.true_positives, m.false_positives, m.false_negatives))
print("recall %.3f  precision %.3f  mean lead time %.2f s" % (m.recall, m.precision, m.mean_lead_time))
print("median frame time %.2f ms" % (statistics.median(res.frame_times) * 1e3))

# which kinds of scenario produce the mistakes?
misses = Counter()
for name, r in res.per_scenario.items():
    kind = name.split("_", 1)[1]
    if r.false_positives:
        misses["false alarm in " + kind] += 1
    if r.false_negatives:
        misses["missed " + kind] += 1
for what, n in sorted(misses.items()):
    print("%3d  %s" % (n, what))
