class CkahError(Exception):
    """Base class for every error raised by the library."""

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class NotAPartialOrder(CkahError):
    pass


class NotSeriesParallel(CkahError):
    def __init__(self, detail: str, pattern: tuple[int, int, int, int] | None = None):
        super().__init__(detail)
        self.pattern = pattern


class PreconditionViolated(CkahError):
    pass


class ContainsStar(CkahError):
    pass


class ContainsObs(CkahError):
    pass


class OmegaTooLarge(CkahError):
    pass


class TermSyntaxError(CkahError):
    """`position` is a character offset into `text`; the message reports the UTF-8 byte offset."""

    def __init__(self, detail: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{detail} at byte offset {self.byte_offset}")

    @property
    def byte_offset(self) -> int:
        return len(self.text[: self.position].encode("utf-8"))

    def pointer(self) -> str:
        line_start = self.text.rfind("\n", 0, self.position) + 1
        line_end = self.text.find("\n", self.position)
        line = self.text[line_start : None if line_end == -1 else line_end]
        return f"{line}\n{' ' * (self.position - line_start)}^"


class HypothesisFileError(CkahError):
    def __init__(self, detail: str, source: str, line_number: int):
        super().__init__(f"{source}:{line_number}: {detail}")
        self.source = source
        self.line_number = line_number


class RequestError(CkahError):
    pass


def raise_precondition(detail: str):
    raise PreconditionViolated(detail)
