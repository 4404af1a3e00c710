from enum import Enum

__all__ = ("SweepParameter",)


class SweepParameter(str, Enum):
    """
    Defines the experimental parameter varied by a flux sweep.

    - `SIGMA`: Pump bandwidth, keeping the energy per pulse constant.
    - `LENGTH`: Fiber length.
    - `POWER`: Average pump power.
    """

    SIGMA = "sigma"
    LENGTH = "L"
    POWER = "p"

    def __str__(self) -> str:
        return self.value
