import vedro


class Config(vedro.Config):
    """
    Acceptance scenarios reproducing the reference design points; run with `vedro run`.
    """
