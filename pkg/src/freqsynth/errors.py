"""Exception hierarchy.

Every contract violation raises a subclass of :class:`FreqSynthError`, so
callers can catch one base type at a pipeline boundary while tests pin the
specific failure mode.
"""


class FreqSynthError(Exception):
    """Base class for all library errors."""


# -- series / spectra -------------------------------------------------------

class InvalidSeries(FreqSynthError):
    """Series is too short or contains non-finite values."""


class WindowTooLong(FreqSynthError):
    """A requested window exceeds the available series length."""


class DegenerateSpectrum(FreqSynthError):
    """A power vector has zero variance; correlation is undefined."""


class NoDominantFrequency(FreqSynthError):
    """All periodogram powers are zero; no peak exists."""


# -- sampling rates ---------------------------------------------------------

class UnknownSamplingRate(FreqSynthError):
    """Sampling-rate token is not in the supported set."""


class InvalidPeriod(FreqSynthError):
    """Period (steps per cycle) is out of range."""


# -- generation -------------------------------------------------------------

class InvalidAmplitudeScale(FreqSynthError):
    """Expected amplitude must exceed the 0.01 shift."""


class DegenerateChannel(FreqSynthError):
    """A channel has zero variance and cannot be standardized."""


class InsufficientData(FreqSynthError):
    """Requested more windows than distinct start positions exist."""


# -- forecasting ------------------------------------------------------------

class InvalidWindow(FreqSynthError):
    """Lookback window is empty or has the wrong length."""


class PeriodTooLong(FreqSynthError):
    """Seasonal period exceeds the lookback length."""


class EmptyTrainingSet(FreqSynthError):
    """A fit was requested on zero windows."""


# -- evaluation -------------------------------------------------------------

class SplitTooSmall(FreqSynthError):
    """A chronological split segment is too short to evaluate."""


class ShapeMismatch(FreqSynthError):
    """Prediction and target arrays disagree in shape."""


# -- data IO ----------------------------------------------------------------

class MissingHeader(FreqSynthError):
    """CSV file has no header row."""


class RaggedRows(FreqSynthError):
    """CSV row has a different number of cells than the header.

    Carries the 1-based ``row`` index (data rows, header excluded).
    """

    def __init__(self, row: int, expected: int, got: int):
        self.row = row
        super().__init__(f"row {row} has {got} cells, expected {expected}")


class NonNumericCell(FreqSynthError):
    """CSV value cell failed to parse as a number.

    Carries 1-based ``row`` (data rows, header excluded) and 1-based
    ``col`` (absolute, date column included).
    """

    def __init__(self, row: int, col: int):
        self.row = row
        self.col = col
        super().__init__(f"non-numeric cell at row {row}, col {col}")


class EmptyDataset(FreqSynthError):
    """Dataset has no channels or no samples."""


class DuplicateId(FreqSynthError):
    """Registry contains two entries with the same id."""
