"""Jerarquía de excepciones del motor de operadores de cuerdas."""


class StringTopologyError(ValueError):
    """Error base; hereda de ValueError para no romper los ``except ValueError``."""


class WordParseError(StringTopologyError):
    """Texto de palabra con un carácter que no es letra"""

    def __init__(self, message, position):
        super().__init__(f"{message} (posición {position})")
        self.position = position


class AlphabetMismatchError(StringTopologyError):
    """Letra fuera del alfabeto de la superficie"""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (posición {position})"
        super().__init__(message)
        self.position = position


class MalformedSurfaceError(StringTopologyError):
    pass


class UnsupportedSurfaceError(StringTopologyError):
    pass


class EqualRaysError(StringTopologyError):
    pass


class InvalidDiagramError(StringTopologyError):
    pass


class InvalidPartError(InvalidDiagramError):
    pass


class InvalidPartitionError(InvalidDiagramError):
    pass
