from enum import Enum

__all__ = ("ModeId",)


class ModeId(str, Enum):
    """
    Identifies the azimuthal-order-one hybrid modes of a step-index fiber.

    This enumeration includes the following modes:
    - `HE11`: The fundamental mode, carrying the three emitted photons.
    - `HE12`: The first excited HE mode, carrying the pump.
    """

    HE11 = "HE11"
    HE12 = "HE12"

    @property
    def family(self) -> str:
        return "HE"

    @property
    def azimuthal_order(self) -> int:
        return 1

    @property
    def radial_index(self) -> int:
        """
        Return the radial index m, i.e. the position of the root when ordered by
        descending effective index.

        :return: 1 for HE11, 2 for HE12.
        """
        return int(self.value[-1])

    def __str__(self) -> str:
        return self.value
