"""
Spectral lower bounds for orthogonal rank, projective rank and chromatic-type
graph parameters, with exact small-graph oracles and certificate verification.
"""
__version__ = "0.1.0"
