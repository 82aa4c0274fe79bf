"""
Local Weyl modules of (twisted) loop algebras as explicit cyclic quotients.
"""
