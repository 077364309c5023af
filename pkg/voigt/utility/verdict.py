from typing import Any

from .dotdictionary import dotdictionary


class verdict(dotdictionary):
    """
    Named pass/fail record. Every verdict carries the numeric margin that
    produced it (positive means satisfied), free-form details and warnings.
    """

    def __init__(
        self,
        name: str,
        passed: bool,
        margin: float,
        **details: Any,
    ) -> None:
        super().__init__(
            name=name,
            passed=bool(passed),
            margin=float(margin),
            details=dotdictionary(details),
            warnings=[],
        )

    def warn(self, message: str) -> "verdict":
        self.warnings.append(message)
        return self
