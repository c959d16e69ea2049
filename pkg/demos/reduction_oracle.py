"""Solve P_e through the reachability gadget and compare with the main solver."""

from stochparity import andersson_delta, build_gadget, example_pe, main_solve, oracle_solve_via_reduction

g = example_pe()
delta = andersson_delta(g)
gg = build_gadget(g, delta)
print(f"gadget: {gg.game.n} vertices, delta has {len(str(delta.denominator))} denominator digits")
oracle = oracle_solve_via_reduction(g)
main = main_solve(g)
for v in range(g.n):
    print(f"{g.name(v)}: oracle {oracle.values[v]}, main {main.values[v]}")
print("agree:", oracle.values == main.values)
