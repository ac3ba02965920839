# %% [markdown]
# # Running the discharging rules on a concrete pattern
#
# Code vertices start at weight 1, everything else at 0.  After the rules run,
# each non-code vertex holds exactly 4/13 and each cluster holds at least
# 4/13 per member.

# %%
from collections import Counter

from oldgrid import apply_rules, audit, builtin_lattice, search_min_density
from oldgrid.discharging import format_report

tri = builtin_lattice("triangular")
best = search_min_density(tri, 13)
ledger = apply_rules(best.witnesses[0])
print(format_report(audit(ledger)))

# %% Transfers by rule
print(Counter(t.rule for t in ledger.transfers))

# %% A pattern with 5-clusters, where the third rule starts moving charge
from oldgrid import parse_pattern

five = parse_pattern("""oldpattern 1
lattice triangular
period 1 2 0 11
code 0 0
code 0 1
code 0 3
code 0 4
code 0 7
""")
led = apply_rules(five)
for t in led.transfers:
    if t.rule == "R3":
        print(t)
print(format_report(audit(led)))
