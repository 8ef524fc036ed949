class TafreqError(Exception):
    pass


class ModelSyntaxError(TafreqError):
    def __init__(self, message, line, col, expected=()):
        self.line = line
        self.col = col
        self.expected = tuple(expected)
        text = f"{line}:{col}: {message}"
        if self.expected:
            text += " (expected " + ", ".join(self.expected) + ")"
        super().__init__(text)


class SemanticError(TafreqError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"{line}:{col}: {message}"
        super().__init__(message)


class ZeroDelay(TafreqError):
    pass


class EmptyRun(TafreqError):
    pass


class NotACycle(TafreqError):
    pass


class MultiClock(TafreqError):
    pass


class Unrealizable(TafreqError):
    pass


class MismatchedAutomaton(TafreqError):
    pass


class TargetOutOfRange(TafreqError):
    pass


class NotDeterministic(TafreqError):
    pass


class TooLarge(TafreqError):
    pass
