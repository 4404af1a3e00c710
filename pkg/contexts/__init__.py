from ._designed_source import designed_source, relative_gap

__all__ = ("designed_source", "relative_gap",)
