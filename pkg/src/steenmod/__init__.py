"""Desk-scale computations with graded modules over the mod-2 Steenrod algebra.

Subpackages cover exact GF(2) linear algebra (f2), Milnor-basis arithmetic
and finite subalgebras (milnor), graded modules on degree windows
(gmodule), annihilator chains and the suspension-injectivity classifier
(annihilator), graded extension tests (baer), comodules over the dual
algebra and their embedding into modules (comodule), and a batch CLI (cli).
"""

__version__ = "0.1.0"
