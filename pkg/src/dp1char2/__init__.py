"""Del Pezzo surfaces of degree 1 in characteristic 2: normal forms and automorphism groups."""

__version__ = "0.1.0"
