"""
The algebra of quantity calculus: groups of dimensions, spaces of
quantities, systems of units, constructions of new spaces from old ones
and homomorphisms between them.

Everything here is exact (integers and fractions) and immutable.
"""
