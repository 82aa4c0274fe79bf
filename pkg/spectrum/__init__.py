"""
Finitely supported functions on points, equivariance and the multiset model.
"""
