"""Pairs sharing a residue class have order 1, 3 or infinity.

Which one depends only on the two classes that are not shared: equal
classes give 1, disjoint ones give 3 and overlapping ones give infinity.
"""
from classtrans import classify_pair, ct, order_of_product

pairs = [
    (ct(0, 2, 1, 4), ct(0, 2, 1, 4)),  # same transposition
    (ct(0, 2, 1, 4), ct(0, 2, 3, 4)),  # 1(4) and 3(4) are disjoint
    (ct(0, 2, 1, 4), ct(0, 2, 1, 8)),  # 1(4) contains 1(8)
    (ct(0, 6, 1, 2), ct(0, 6, 1, 3)),  # 1(2) and 1(3) meet in 1(6)
]

for t1, t2 in pairs:
    flags = ", ".join(classify_pair(t1, t2).names())
    verdict = order_of_product(t1, t2)
    print(f"{t1} * {t2}  [{flags}]")
    print(f"    {verdict.describe()}")
    print(f"    via {' -> '.join(verdict.method)}")
