"""Exception hierarchy shared across the package."""


class SliceMaskError(Exception):
    """Base class for all errors raised by slicemask."""


class UnsupportedLanguage(SliceMaskError):
    pass


class EmptySource(SliceMaskError):
    """Source text produced zero tokens."""


class UnknownNode(SliceMaskError):
    """A node id that is not part of the graph."""


class NotAStatement(SliceMaskError):
    """Operation requires a statement node but got a holder."""


class MismatchedSnippet(SliceMaskError):
    """Graphs built over different node universes cannot be combined."""


class MaskMismatch(SliceMaskError):
    """Statement masks do not line up with the snippet's statement table."""


class MapMismatch(SliceMaskError):
    """Subword map does not cover the mask's token positions."""


class DimensionMismatch(SliceMaskError):
    pass


class EmptyInput(SliceMaskError):
    pass


class LengthMismatch(SliceMaskError):
    pass


class UnknownLabel(SliceMaskError):
    pass


class ConfigError(SliceMaskError):
    pass


class IoError(SliceMaskError):
    pass


class MissingManifest(IoError):
    pass
