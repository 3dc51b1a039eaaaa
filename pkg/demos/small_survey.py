"""Orders of all products of two class transpositions with moduli up to 5.

Every finite order found should belong to the 19-element list of orders
observed in much larger searches; all of them divide 840.
"""
from classtrans.survey import SurveyConfig, check_kohl_set, timed_survey

hist, _, seconds = timed_survey(SurveyConfig(5))
print(f"{hist.total} pairs in {seconds:.1f}s")
for order, count in sorted(hist.finite_counts.items()):
    _, s1, s2 = hist.realizations[order]
    print(f"  order {order:3d}: {count:5d}   first seen at {s1} * {s2}")
print(f"  infinite (certified): {hist.infinite_certified}")
print(f"  infinite (heuristic): {hist.infinite_heuristic}")
print(f"  inconclusive:         {hist.inconclusive}")
print("within the known order set:", check_kohl_set(hist).all_in_kohl_set)
