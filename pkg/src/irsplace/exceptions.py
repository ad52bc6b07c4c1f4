"""Exception hierarchy shared across the package."""


class ScenarioError(ValueError):
    """Invalid or malformed scenario parameters."""


class InfeasibleError(ValueError):
    """The requested configuration admits no valid active-IRS operating point."""


class AmplifierInfeasibleError(InfeasibleError):
    """Amplification budget does not exceed the amplified-noise power N * sigma_F^2."""


class PlacementInfeasibleError(InfeasibleError):
    """Placement would require an amplification factor below one."""


class JointInfeasibleError(InfeasibleError):
    """Uplink and downlink minimum distances do not fit inside [0, D]."""
