class DepthExhausted(Exception):
    """The truncated tree ran out of room before the construction finished.

    ``stage`` names where it happened (an index string inside a reduction,
    or ``"stage i"`` / ``"base"`` inside the full pipeline); ``ledger`` holds
    whatever accounting was recorded up to that point.
    """

    def __init__(self, message, stage=None, ledger=None):
        super().__init__(message)
        self.stage = stage
        self.ledger = ledger


class CapExceeded(Exception):
    """A brute-force oracle was asked to search more candidates than allowed."""
