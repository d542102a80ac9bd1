"""Desk-scale verification lab for Artin representations attached to cuspidal data.

Subpackages:

* ``arith``            exact rationals, number fields, certified embeddings, F_q
* ``matgroup``         finite subgroups of GL_n(F_q) and their structure
* ``chevalley``        classical group census and counting formulas
* ``satake``           Satake systems, Hecke polynomials, exterior powers
* ``density``          bounded integer sets, exceptional primes, den.sup
* ``langlands_params`` sign vectors and the GSp4 / Asai identities
* ``recover``          cyclotomic matching of mod-l Frobenius tables, lifting
* ``cli``              command line entry point
"""

__version__ = "0.1.0"
