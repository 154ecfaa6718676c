"""galikit: Galilean-group kinematics, manipulator kinematics and timestamp-aware fusion."""
from ._jit import JIT_ENABLED
from .liegroup import (GalileanElement, GalileanError, SingularityError, StructureError,
                       Event, Velocity, Direction, EventNoise, VelocityNoise,
                       identity, compose, inverse, skew3, unskew3, wedge, vee, tangent,
                       exp, log, adjoint, ad, right_jacobian,
                       act_event, act_velocity, act_direction, act_event_noise, act_velocity_noise)
from .frames import (GalileanFrame, IsochronousFrame, ExtendedPose, identity_frame,
                     frame_compose, frame_inverse, relative_frame, change_event,
                     change_velocity, change_direction, frame_to_extended, extended_to_frame,
                     as_element, as_frame)

__version__ = "0.1.0"
