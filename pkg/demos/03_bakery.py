"""Mutual exclusion in the two-process Bakery protocol.

The product of the two control-flow graphs has nine points.  With
difference constraints the critical-section pair (2,c) comes out empty;
a plain interval analysis cannot see that.
"""
# %% analysis with difference-bound matrices
from dbmlib import AnalysisOptions, analyze_program, compare_domains, load_program

prog = load_program("bakery")
dbm = analyze_program(prog)
for point, cs in dbm.table().items():
    print(f"{point:7s} {', '.join(cs) or 'true'}")

# %% the same program with intervals
box = analyze_program(prog, AnalysisOptions(domain="interval"))
print("\ninterval result at (2,c):", ", ".join(box.table()["(2,c)"]))

# %% where the relational domain wins
rep = compare_domains(prog)
print("\ncontainment violations:", len(rep.violations))
print("strictly more precise at:", " ".join(rep.strict_points))
