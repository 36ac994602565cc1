"""Why the widening accumulator must stay unclosed.

Widening drops the bounds of the old value that the new value violates.
If the old value is closed first, bounds dropped in one step are rebuilt
from the surviving ones, and the sequence can climb forever.
"""
# %% the sequence to be widened
from dbmlib import close, from_constraints, widen


def step(i):
    # |x1|, |x2| <= i + 1 and |x1 - x2| <= 1
    return from_constraints(3, [(0, 1, i + 1), (0, 2, i + 1), (1, 0, i + 1),
                                (2, 0, i + 1), (1, 2, 1), (2, 1, 1)])


start = from_constraints(3, [(0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1)])

# %% disciplined: old widen close(new), result fed back as is
x = close(start)
for i in range(6):
    x = widen(x, close(step(i)))
    print(f"disciplined step {i + 1}: x1 <= {x[0, 1]}, x2 <= {x[0, 2]}")

# %% closing the accumulator each time
x = close(start)
for i in range(6):
    x = close(widen(x, step(i)))
    print(f"closed step {i + 1}: x1 <= {x[0, 1]}, x2 <= {x[0, 2]}")
print("the closed variant never reaches a fixpoint; its bounds grow by one per step")
