"""Position-only beamforming and area spectral efficiency for airliner/HAP mmWave downlinks."""

from .array import (ArrayGeometry, DerivativePair, SteeringVector, inner_product,
                    inner_product_closed_form, steering_derivatives, steering_vector)
from .beamform import (BeamformerWeights, DegenerateDirections, SteeringBank,
                       array_pattern, design_span, mpdrb, nsb, nsb_d)
from .channel import (LinkBudget, RicianConfig, noise_power, path_loss_linear,
                      received_power, sample_channel)
from .geometry import (CellLayout, DirectionAngles, GroundPosition, angles_of,
                       build_layout, direction_cosines, sample_uniform_in_disc)
from .impairments import DopplerConfig, PositionOffset
from .metrics import (CapacityReport, SinrMoments, approx_capacity, ase_from_se,
                      instantaneous_sinr, moments_generic, moments_nsb)
from .sim import (Scenario, SweepResult, doppler_table, offset_table, run_point,
                  sweep_array, sweep_distance)

__version__ = "0.1.0"
