"""Full run of the solver on P_x, showing the initialisation recursion."""

from stochparity import example_px, main_solve

g = example_px()
rep = main_solve(g, trace=True)
for e in rep.init_trace:
    print(f"initialise depth {e.depth}: subgame {sorted(g.name(v) for v in e.subgame)}"
          f" -> almost-sure region {sorted(g.name(v) for v in e.winning)}")
for e in rep.trace:
    print(f"round {e.iteration}: {e.kind}, switches={e.switches}, v0={e.values[0]}")
for v, x in enumerate(rep.values):
    print(f"{g.name(v)} = {x}")
