"""
Exact arithmetic: cyclotomic scalars, sparse linear algebra and polynomials.
"""
