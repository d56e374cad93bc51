"""Hip-rotation fluency from smartphone orientation streams.

Rotation samples are turned into a discrete angular velocity through the
group logarithm, and the accumulated second difference of that velocity is
normalized into a dimensionless kinematic jerk index.
"""
from .acquisition import (ListenConfig, Listener, Session, acquire_session, listen,
                          load_session, save_session)
from .errors import (AmbiguousStepWarning, BindError, DegeneratePath, EmptyAcquisition,
                     FormatError, HipJerkError, InvalidInput, InvalidRecord, NotRotation,
                     NotSkew, SendError, TooShort)
from .jerk import (AngularVelocitySeries, JerkReport, RotationTrajectory, angular_velocity,
                   jerk_index, path_length, second_difference)
from .so3 import (DEFAULT_CONVENTION, AngleTriple, EulerConvention, euler_to_rotation,
                  exp_so3, hat, log_so3, vee)
from .synth import WalkParams, generate_walk, replay, trajectory_to_angles
from .wire import ParseReport, encode_stream, parse_stream

__version__ = "0.1.0"
