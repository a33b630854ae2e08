"""Exception hierarchy shared by all modules."""


class QMError(Exception):
    """Base class for every error raised by this package."""


class ParseError(QMError, ValueError):
    """An algebra expression could not be parsed.

    ``position`` is the 0-based character offset into the source text.
    """

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


class ConfigError(QMError, ValueError):
    """A poset configuration file is malformed (1-based line/column)."""

    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class UnknownElement(QMError, KeyError):
    def __init__(self, element):
        super().__init__(element)
        self.element = element

    def __str__(self):
        return f"unknown element {self.element!r}"


class CycleDetected(QMError, ValueError):
    """The cover relation contains a directed cycle."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("cover relation has a cycle: " + " < ".join(map(str, self.cycle)))


class LabelError(QMError, ValueError):
    """A cover label is missing or is not a natural number."""


class PathInconsistency(QMError, ValueError):
    """Two cover paths from ``lower`` to ``upper`` carry different label products."""

    def __init__(self, lower, upper, path1, product1, path2, product2):
        self.lower = lower
        self.upper = upper
        self.path1 = tuple(path1)
        self.path2 = tuple(path2)
        self.product1 = product1
        self.product2 = product2
        # the last cover of path2 gives a triple violating n_ca = n_cb * n_ba
        self.triple = (lower, self.path2[-2], upper)
        super().__init__(
            f"label products from {lower!r} to {upper!r} disagree "
            f"(triple {self.triple[0]!r}, {self.triple[1]!r}, {self.triple[2]!r}): "
            f"{' < '.join(map(str, self.path1))} gives {product1}, "
            f"{' < '.join(map(str, self.path2))} gives {product2}"
        )


class FactorizationViolation(QMError, ValueError):
    """A triple a <= b <= c with n_ca != n_cb * n_ba (or n_aa != 1 when a = b = c)."""

    def __init__(self, a, b, c, detail=""):
        self.triple = (a, b, c)
        msg = f"factorization fails for triple ({a!r}, {b!r}, {c!r})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NotDirected(QMError, ValueError):
    """The pair ``(b, c)`` has no upper bound inside the set under consideration."""

    def __init__(self, b, c):
        self.pair = (b, c)
        super().__init__(f"{b!r} and {c!r} have no common upper bound")


class DepthExhausted(QMError, RuntimeError):
    """A lazily enumerated system ran out before the requested depth was reached."""


class StageOverflow(QMError, IndexError):
    """A Z-colimit stage needs more denominator terms than are available."""


class UnrepresentableExponent(QMError, ValueError):
    """An exponent ``p`` is not an integer multiple of ``1/D``."""

    def __init__(self, exponent, D, required):
        self.exponent = exponent
        self.D = D
        self.required = required
        super().__init__(
            f"exponent {exponent} is not representable on a grid with D={D}; "
            f"need D divisible by {required}"
        )
