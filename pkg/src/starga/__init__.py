"""starga: an exact star-product engine for geometric algebra.

Grassmann algebras with metric-parameterised Clifford star products, the
bosonic Moyal product with exact oscillator phase-space states, rotor and
spacetime calculus, the regularised Kepler integrator, an expression
language with a CLI, and an HTTP service exposing the same operations.
"""

__version__ = "0.1.0"

from .scalars import (
    C, Coefficient, I, ONE, RelationSet, ZERO, circular_relations, frac,
    hyperbolic_relations, series_coefficient, substitute, sym,
)
from .grassmann import (
    AlgebraSpec, Multivector, algebra_new, berezin, clifford_star,
    grade_project, grassmann_product, hodge_dual, involution, pauli_function,
    phase_space_algebra, sigma_algebra, spacetime_algebra, theta_algebra,
    trace,
)
from .geometric import (
    Rotor, dual, dual_basis, exp_bivector, graded_products, inner, outer,
    plane_split, reflect, rotor_from, sandwich, star_many, vector_derivative,
    wick_expand,
)
from .moyal import (
    HarmonicOscillator, RadialFunction, correspondence_order,
    fermionic_star_exp, hydrogen_levels, moyal_clifford_star, moyal_star,
    pauli_split, phase_pairs, phase_space_integral, poisson_bracket,
    radial_star_H, spin_wigner, stargenvalue_check, wigner_harmonic,
)
from .mechanics import (
    OrbitState, hamilton_field, kepler_integrate, kepler_run, ks_map,
    ks_position, poisson_ga, regularize_hamiltonian, symplectic_bivector,
)
from .spacetime import (
    boost, dirac_projector, four_vector, lorentz_generators,
    proper_velocity_split, sigma_blades, spacetime_split, spin_projector,
)
