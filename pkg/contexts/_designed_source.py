import vedro

from tospdc import Design, preset

__all__ = ("designed_source", "relative_gap",)


@vedro.context
def designed_source(name: str) -> Design:
    """
    Resolve a built-in design: automatic radius and, if needed, the emitted pair.
    """
    return preset(name)


def relative_gap(value: float, reference: float) -> float:
    return abs(value - reference) / abs(reference)
