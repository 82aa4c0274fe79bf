"""
Root data, Chevalley algebras and (twisted) loop algebras.
"""
