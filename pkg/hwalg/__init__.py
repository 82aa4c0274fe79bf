"""
The highest-weight algebra as tensor products of symmetric Laurent polynomial rings.
"""
