"""Binary acyclic complexes and combinatorial presentations of algebraic K-groups."""

__version__ = "0.1.0"
