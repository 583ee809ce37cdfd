"""dirac-atlas: exact representation-theoretic classification tools.

Modules:
  rootsys     exact root systems, weight lattices, Weyl groups
  repring     representation ring of a compact group: characters,
              products, decompositions
  spinmod     spin modules of equal-rank real pairs and the pair catalog
  dirac       discrete-series parameters, formal degrees, enumeration
  ktheory     K0 of finite-dimensional semisimple algebras, Fredholm
              index, finite-group convolution algebras
  rapid_decay unconditional completions, truncated reduced norms,
              rapid-decay probes
  cli         single command-line entry point
"""

__version__ = "0.1.0"
