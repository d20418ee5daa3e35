"""Exact computations with the two-parameter quantized algebra U+_{r,s}(B2) at roots of unity.

Submodules:

* ``cyclotomic`` -- exact arithmetic in Q(zeta_L) and root-of-unity settings
* ``pbw`` -- PBW normal forms and the identities of the algebra
* ``pidegree`` -- PI degree by Smith normal form and by closed form
* ``repmod`` -- explicit simple-module families
* ``verify`` -- relation, simplicity and dimension-bound checks
* ``iso`` -- isomorphism criteria and intertwiner solving
* ``workbench`` / ``cli`` -- sweeps, JSON files and the ``ursb2`` command
"""
from .cyclotomic import CycScalar, RootConfig, make_root_config, order_of
from .modular import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "CycScalar", "RootConfig", "make_root_config", "order_of", "__version__"]
