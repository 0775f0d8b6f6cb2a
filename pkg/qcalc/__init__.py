"""
Exact quantity calculus: dimensions, quantities, units, natural-unit
reduction and classification of spaces of quantities.
"""
