"""Computable core of Weil-Petersson geometry at desk scale.

Subpackages cover exact tensor algebra and spectral operators on the flat
torus, the torus moduli space with its closed-form geodesics, harmonic-map
energies, the model metric near completion strata, Funk-type metrics on
convex bodies, CAT(0) comparison machinery, right-angled Coxeter word
calculus, and the Fourier-side pairing on circle vector fields.
"""

__version__ = "0.1.0"

from . import (  # noqa: F401
    cat0,
    circle,
    coxeter,
    cusp,
    energy,
    funk,
    rng,
    tensor_core,
    torus,
)
