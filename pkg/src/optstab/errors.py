class DomainError(ValueError):
    """Invalid mathematical input (bad degree, inconsistent tableau, ...).

    ``code`` is a short machine-readable tag the CLI reports verbatim.
    """

    def __init__(self, code: str, detail: str = ""):
        super().__init__(detail or code)
        self.code = code
        self.detail = detail or code
