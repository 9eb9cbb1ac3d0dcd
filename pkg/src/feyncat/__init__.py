"""Finite, checkable models of Feynman categories.

Modules:

* :mod:`feyncat.graphs`, :mod:`feyncat.aggregates`: graphs, graph morphisms, ghost graphs, aggregates of corollas.
* :mod:`feyncat.feynman`, :mod:`feyncat.finsets`: bounded models and the axiom checker; finite-set categories.
* :mod:`feyncat.decoration`: decorated categories and covers.
* :mod:`feyncat.ops`: monoid ops, left Kan extensions, Frobenius reciprocity, free operads.
* :mod:`feyncat.plus`: the plus construction and its gcp and hyp quotients.
* :mod:`feyncat.hopf`: deconcatenation bialgebras and quotient Hopf algebras.
* :mod:`feyncat.transforms`: edge-contraction complexes, bar, cobar and Feynman transforms, master equation.
* :mod:`feyncat.wconstruct`: cubical W-construction and associahedra.
"""

__version__ = "0.1.0"
