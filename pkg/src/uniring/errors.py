"""Exception types shared across the package."""


class UniringError(Exception):
    """Base class for all library errors."""


class ParseError(UniringError):
    """Syntax error in the term / flow / wiring text format."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SymbolArityError(UniringError):
    """The same symbol name was used with two different arities."""


class UnsafeFlowError(UniringError):
    """A head variable does not occur in the body."""

    def __init__(self, variable: str):
        super().__init__(f"unsafe flow: head variable {variable} does not occur in the body")
        self.variable = variable


class MatchSubjectOpenError(UniringError):
    """match_term was called with a subject that contains variables."""


class UnbalancedWiringError(UniringError):
    """An operation requiring balance was given an unbalanced wiring."""

    def __init__(self, flow_text: str, variable: str):
        super().__init__(
            f"wiring is not balanced: variable {variable} occurs at several heights in {flow_text}"
        )
        self.flow_text = flow_text
        self.variable = variable


class VertexBudgetError(UniringError):
    """The computation space is larger than the configured vertex budget."""

    def __init__(self, bound: int, budget: int):
        super().__init__(f"computation space needs {bound} vertices, budget is {budget}")
        self.bound = bound
        self.budget = budget


class OutDegreeError(UniringError):
    """The out-degree-1 walk was run on a graph with a fan-out vertex."""

    def __init__(self, vertex_text: str):
        super().__init__(f"vertex {vertex_text} has out-degree > 1")
        self.vertex_text = vertex_text


class AlphabetError(UniringError):
    """Invalid alphabet declaration."""


class PositionCountMismatchError(UniringError):
    """A word of length n needs exactly n+1 position constants."""


class DuplicatePositionError(UniringError):
    """Position constants must be pairwise distinct."""


class SymbolNotInAlphabetError(UniringError):
    """A word contains a symbol outside the declared alphabet."""


class AutomatonSpecError(UniringError):
    """Malformed automaton description."""
