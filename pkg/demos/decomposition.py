"""Recovering the normal form of an automorphism given only as a black box."""
from hahnaut.autalg import BlackBoxAut, decompose
from hahnaut.coeffs import FieldAut, FieldDescriptor
from hahnaut.exponents import Exponent, GroupDescriptor
from hahnaut.parsing import parse_series

Z = GroupDescriptor.integer(1)
QQ = FieldDescriptor.rationals()

# t -> 3t + t^2 - t^4, known up to t^9
image = parse_series("3*t + t^2 - t^4 + O(t^9)")
box = BlackBoxAut.from_generators(FieldAut.IDENTITY, [image], Z, QQ)

nf = decompose(box, Exponent((8,)))
print("rho  =", nf.rho.name)
print("tau  =", [[str(c) for c in r] for r in nf.tau.entries])
print("x(1) =", nf.x.values[0])
print("u(1) =", nf.u.values[0])

probe = parse_series("1 + t^-1 + O(t^4)")
print("box(probe)  =", box(probe))
print("nf(probe)   =", nf(probe))
