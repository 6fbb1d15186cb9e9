"""Exact computational topology of finite simplicial complexes.

Three interlocking tools:

* the Mayer-Vietoris spectral sequence of a cover (with the anti-star
  cover as the distinguished case), over field coefficients;
* poset-graded homology of vertex two-colourings (the full triply graded
  invariant over GF(2), its zero-weight slice over any field, and the
  degree-zero "component counting" theory over any ring, integers
  included);
* connected domination polynomials of graphs, tied to the above by an
  Euler characteristic identity.

Everything is exact: prime fields, rationals and integers only.
"""

__version__ = "0.1.0"
