"""Exception hierarchy. Every error carries a stable ``code`` used by the CLI."""


class AdhesiaError(Exception):
    code = "error"

    def to_json(self):
        return {"code": self.code, "message": str(self)}


class UnknownAtom(AdhesiaError):
    code = "unknown_atom"


class ShapeMismatch(AdhesiaError):
    """A term does not have the shape a functor expression expects."""

    code = "shape_mismatch"


class DomainMismatch(AdhesiaError):
    code = "domain_mismatch"


class CodomainMismatch(AdhesiaError):
    code = "codomain_mismatch"


class NotInjective(AdhesiaError):
    code = "not_injective"


class ParseError(AdhesiaError):
    code = "parse_error"

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotAnElement(AdhesiaError):
    code = "not_an_element"


class NotInPullback(AdhesiaError):
    code = "not_in_pullback"


class NonInjectiveLeg(AdhesiaError):
    code = "non_injective_leg"


class SignatureMismatch(AdhesiaError):
    code = "signature_mismatch"


class NotInM(AdhesiaError):
    code = "not_in_m"


class StructureClash(AdhesiaError):
    code = "structure_clash"


class MalformedCube(AdhesiaError):
    code = "malformed_cube"


class GluingViolation(AdhesiaError):
    code = "gluing_violation"

    def __init__(self, message, witnesses=(), step=None):
        super().__init__(message)
        self.witnesses = tuple(witnesses)
        self.step = step


class NoSuchMatch(AdhesiaError):
    code = "no_such_match"

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class InvalidGraph(AdhesiaError):
    code = "invalid_graph"


class InvalidMorphism(AdhesiaError):
    code = "invalid_morphism"


class UnknownFixture(AdhesiaError):
    code = "unknown_fixture"


class FormatError(AdhesiaError):
    """Malformed JSON input."""

    code = "format_error"
