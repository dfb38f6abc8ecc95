"""Composing substitutions t -> u*t in k((t)) and reading off the unit product.

Run with ``python3 demos/schilling_walkthrough.py``.
"""
from hahnaut.exponents import Exponent
from hahnaut.laurent import LaurentUnit, schilling_inverse, schilling_xs, substitute
from hahnaut.parsing import parse_series

CUT = Exponent((6,))


def unit(text):
    return LaurentUnit.parse(text, cutoff=CUT)


u1 = unit("1 + t")
u2 = unit("2 - t^2")
print("u1 =", u1.series)
print("u2 =", u2.series)

prod = schilling_xs(u1, u2)
print("u1 xs u2 =", prod.series)

# the same thing by substituting t*u2 into t*u1 by hand
t_u1 = parse_series("t + t^2 + O(t^7)")
t_u2 = parse_series("2*t - t^3 + O(t^7)")
by_hand = substitute(t_u2, t_u1).shift(Exponent((-1,)))
print("substitution / t =", by_hand)
print("agree up to the cutoff:", prod.series.equal_to_cutoff(by_hand))

inv = schilling_inverse(u1)
print("inverse of u1 =", inv.series)
print("u1 xs inverse =", schilling_xs(u1, inv).series)
