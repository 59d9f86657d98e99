"""Particle creation in accelerated cavities, for photons and for BEC phonons.

The phonons of a condensate see flat spacetime with the light speed replaced
by the sound speed. Everything downstream depends on the signal speed only
through ``h = a L / c_eff**2``.
"""

from .acoustic_metric import (
    BackgroundState,
    FourVelocity,
    MetricTensor,
    Polytrope,
    TabulatedEOS,
    analogue_metric,
    comoving_velocity,
    effective_metric,
    minkowski,
    rescale_time,
    speed_of_sound,
)
from .bogoliubov import (
    BogoliubovPair,
    compose,
    compute_coefficients,
    galilean_coefficients,
    h_parameter,
    inverse,
    particle_number,
)
from .cavity_modes import (
    Cavity,
    InertialMode,
    RindlerMode,
    WedgeCavity,
    kg_inner_product,
    kg_matrix,
    wave_equation_residual,
    wedge_from_h,
)
from .charts import RindlerChart
from .scenario import ScenarioConfig, compare, galilean_report, run

__version__ = "0.1.0"
