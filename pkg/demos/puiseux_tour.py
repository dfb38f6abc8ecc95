"""Puiseux series: ramification bookkeeping and automorphisms over Q."""
from fractions import Fraction

from hahnaut.puiseux import PuiseuxSeries, puiseux_oaut_apply, puiseux_unit_pow_q
from hahnaut.exponents import Exponent
from hahnaut.parsing import parse_series

a = PuiseuxSeries.parse("t^(1/2)")
b = PuiseuxSeries.parse("t^(1/3)")
ab = a * b
print(f"{a} * {b} = {ab}  (ramification {ab.ramification})")

c = PuiseuxSeries.parse("1 + t^(1/2)", cutoff=Exponent((Fraction(5, 2),)))
print("c       =", c, " n =", c.ramification)
print("c^-1    =", PuiseuxSeries.parse("1", cutoff=Exponent((3,))) / c)
print("c(t^2)  =", puiseux_oaut_apply(2, c))

u = parse_series("1 + t + O(t^5)")
print("(1+t)^(1/2) =", puiseux_unit_pow_q(u, Fraction(1, 2)))
