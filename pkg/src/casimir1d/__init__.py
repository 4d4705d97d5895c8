"""Casimir force between frequency-dependent mirrors in a 1D scalar-field cavity.

Multilayer dielectric mirrors are composed as reciprocal two-ports, the force
is evaluated by imaginary-frequency quadrature, and the passivity, attraction,
monotonicity and narrow-band bounds are exposed as checkable properties.
"""

from .errors import (
    AccuracyError,
    CasimirError,
    ConfigError,
    SingularCompositionError,
    UnstableCavityError,
    UnsupportedAxisError,
)
from .permittivity import (
    ConstantPermittivity,
    LorentzPermittivity,
    TabulatedPermittivity,
    ValidationReport,
    validate_model,
)
from .quadrature import QuadratureSpec, adaptive_panels
from .scattering import (
    ConstantMirror,
    ImpedanceMatrix,
    LayeredMirror,
    MagneticMirror,
    MirrorStack,
    NarrowBandMirror,
    PassivityReport,
    PerfectMirror,
    Slab,
    TransferMatrix,
    TwoPortScattering,
    check_passivity,
    compose,
    default_passivity_grid,
    identity_scattering,
    impedance_from_scattering,
    scattering_from_transfer,
    slab_amplitudes_imag,
    slab_amplitudes_real,
    stack_amplitudes,
    transfer_from_scattering,
)
from .force import (
    CavityConfig,
    ForceResult,
    NarrowBandEstimate,
    SweepEntry,
    SweepResult,
    UnitSystem,
    force_gradient,
    force_imag,
    fresnel_scale,
    narrowband_force,
    perfect_force,
    sweep_force,
    theta_static,
)
from .spectral import (
    ResonancePeak,
    SpectralSample,
    airy,
    find_resonances,
    loop_function,
    spectrum,
    theta_dispersion,
)
from .config import RunConfig, canonical_config, parse_config

__version__ = "0.1.0"
