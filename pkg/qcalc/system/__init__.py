"""
System-definition files and quantity expressions: the text layer on top of
the algebra.
"""
