"""Closure as a normal form.

Two matrices can describe the same set of points while being incomparable
entry by entry.  Closing them (all-pairs shortest paths) gives the same
matrix, which is why comparisons in the library go through the closure.
"""
# %% two descriptions of one zone
from dbmlib import INF, Dbm, close, includes, is_empty, leq, project

a = Dbm.from_rows([[INF, 4, 3], [-1, INF, INF], [-1, 1, INF]])
b = Dbm.from_rows([[0, 5, 3], [-1, INF, INF], [-1, 1, INF]])
print("a =\n" + a.dump())
print("b =\n" + b.dump())
print("a <= b entrywise:", leq(a, b), "| b <= a entrywise:", leq(b, a))
print("same points:", includes(a, b) and includes(b, a))

# %% closing both
ca, cb = close(a), close(b)
print("\nclose(a) =\n" + ca.dump())
print("close(a) == close(b):", ca == cb)
# the entry for x2 - x1 was +inf in both, the path through the zero node gives 2
print("x2 - x1 <=", ca[1, 2])
print("x1 in", project(a, 1), " x2 in", project(a, 2))

# %% an inconsistent matrix has a negative cycle
bad = Dbm.from_rows([[INF, -1], [0, INF]])
print("\nx1 <= -1 and x1 >= 0: empty =", is_empty(bad), "close ->", close(bad))
