"""Win probability on a 7x7 battlefield as bullets and hit probability grow."""

from fractions import Fraction

from stochparity import battlefield, main_solve

ps = [Fraction(1, 10), Fraction(1, 2), Fraction(9, 10)]
print("bullets  " + "  ".join(f"p={p!s:>5}" for p in ps))
for b in range(3):
    row = [main_solve(battlefield(7, b, p)).values[0] for p in ps]
    print(f"{b:>7}  " + "  ".join(f"{float(x):7.4f}" for x in row))
