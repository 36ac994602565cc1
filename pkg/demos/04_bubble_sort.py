"""Array index bounds in bubble sort.

Only the index arithmetic is kept; each comparison of array cells becomes a
test on an unknown value.  The asserts state that every access a[j] and
a[j + 1] stays within 1..n.
"""
# %% source
from dbmlib import AnalysisOptions, analyze_program, load_program, program_path

print(program_path("bubble_sort").read_text())

# %% verdicts per domain
prog = load_program("bubble_sort")
for domain in ("dbm", "interval"):
    res = analyze_program(prog, AnalysisOptions(domain=domain))
    print(domain, [(a.line, a.verdict) for a in res.asserts])

# %% the invariant that makes the difference: j <= b - 1 <= n - 1
res = analyze_program(prog)
for point, cs in res.table().items():
    print(f"{point:6s} {', '.join(cs) or 'true'}")
