"""
An example of reducing kinematics to natural units with the library
directly: set the speed of light to 1 and measure everything in seconds.
"""

from pathlib import Path

from qcalc.algebra.homomorphisms import first_isomorphism, hom_kernel, make_hom
from qcalc.algebra.lattice import IntMatrix
from qcalc.algebra.units import Character
from qcalc.system.parser import parse_quantity, parse_system
from qcalc.system.reduction import reduce_system

system = parse_system((Path(__file__).parent / "kinematics.qc").read_text())
reduction = reduce_system(system, ["c"])

print("Reduced system:")
print(reduction.system.to_text())

for expression in ["c", "1 km", "3 m s^-1", "2 h"]:
    q = parse_quantity(expression, system)
    print(f"{expression:>10} -> {reduction.quotient.reduce(q)}")

# The same identification as a homomorphism onto time: L -> T, scaled so
# that c goes to 1.
time = parse_system((Path(__file__).parent / "time.qc").read_text())
psi = make_hom(
    system.space,
    time.space,
    IntMatrix([[1], [1]]),
    Character.from_mapping(system.space.basis, {"L": parse_quantity("1/c", system).value}),
)

print("Kernel generated by:", hom_kernel(psi).subgroup.basis_dimensions())
print("Quotient by the kernel -> image:", first_isomorphism(psi).matrix)
