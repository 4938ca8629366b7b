"""Exception hierarchy.

Each class carries the process exit code the command line reports for it:
2 for malformed input text, 3 for semantic problems, 4 for broken internal
invariants.
"""


class QubitLogicError(Exception):
    exit_code = 3


class ParseError(QubitLogicError):
    exit_code = 2

    def __init__(self, message, line=None, column=None, source=None):
        self.line = line
        self.column = column
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}" if where else message)


class SemanticError(QubitLogicError):
    pass


class InvalidArity(QubitLogicError):
    pass


class IncompleteTable(QubitLogicError):
    pass


class InvalidFunctionNumber(QubitLogicError):
    pass


class EnumerationTooLarge(QubitLogicError):
    pass


class InvalidFunctionSet(QubitLogicError):
    pass


class InconsistentCoverage(QubitLogicError):
    pass


class IncompleteCoverage(QubitLogicError):
    pass


class CyclicCircuit(SemanticError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("combinational cycle through lines " + " -> ".join(self.cycle))


class InternalInvariantViolation(QubitLogicError):
    exit_code = 4


class InvalidPattern(ParseError):
    pass


class InvalidCell(QubitLogicError):
    pass


class RepairExhausted(QubitLogicError):
    def __init__(self, column, faults, spares):
        self.column = column
        super().__init__(
            f"column {column}: {faults} faulty quanta but only {spares} free spares"
        )


class FaultEncountered(QubitLogicError):
    def __init__(self, row, col, pattern_index):
        self.row = row
        self.col = col
        self.pattern_index = pattern_index
        super().__init__(
            f"faulty quantum at ({row},{col}) reached while processing pattern {pattern_index}"
        )


class SuperpositionTooLarge(QubitLogicError):
    pass


class UnsupportedArity(QubitLogicError):
    pass


class CapacityExceeded(QubitLogicError):
    pass


class EmuSequenceError(QubitLogicError):
    pass


class ImageFormatError(ParseError):
    pass
