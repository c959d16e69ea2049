"""Why plain strategy improvement stalls on P_e, and how a neutral round fixes it."""

from stochparity import (
    Mode,
    Owner,
    Strategy,
    classify_switches,
    example_pe,
    improve,
    induced_mdp,
    mdp_parity_value,
    quali_solve,
    restrict_edges,
)

g = example_pe()
f = Strategy(Owner.P0, {0: 2})
vals, _ = mdp_parity_value(induced_mdp(g, f), Mode.MINIMIZE)
print("values of v0->v0.55:", {g.name(v): str(x) for v, x in enumerate(vals)})

sw = classify_switches(g, vals)
print("profitable switches:", sorted(sw.profitable))
print("neutral edges:", sorted(sw.neutral))

res = quali_solve(restrict_edges(g, sw.neutral))
print("almost-sure region of the neutral subgame:", sorted(g.name(v) for v in res.w0))

rep = improve(g, f, trace=True)
for e in rep.trace:
    print(f"round {e.iteration}: {e.kind}, {e.switches} switch(es), v0 = {e.values[0]}")
print("final strategy:", {g.name(v): g.name(w) for v, w in rep.strategy0.items()})
