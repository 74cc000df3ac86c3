"""Exception hierarchy shared by all iwasawa modules."""


class IwasawaError(Exception):
    """Base class for all library errors."""


class RingMismatch(IwasawaError):
    """Operands live in different rings (p, N, D or variables differ)."""


class NonUnit(IwasawaError):
    """Inversion was requested for an element of positive valuation."""


class BadVariable(IwasawaError):
    """Variable index out of range, or not the last variable where required."""


class PrecisionExhausted(IwasawaError):
    """A value is indistinguishable from 0 at the working precision p^N.

    Never silently treated as 0; callers may retry at higher N.
    """


class Inconclusive(PrecisionExhausted):
    """A decision was obstructed purely by precision (distinct from False)."""


class NotPreparable(IwasawaError):
    """No coefficient of the prepared variable is a unit; the mixed
    multivariate case must go through the polynomial-representative route."""


class DegreeCapExceeded(IwasawaError):
    """A computation required monomials of total degree >= D."""


class UnitGenerator(IwasawaError):
    """An elementary-module generator is a unit (the summand would vanish)."""


class NonTorsion(IwasawaError):
    """The operation is defined for torsion modules only."""


class NotPseudoNull(IwasawaError):
    """Precondition failure: the module is not pseudo-null."""


class HypothesisViolated(IwasawaError):
    """A stated hypothesis of a descent/tower operation does not hold."""


class UnstableFit(IwasawaError):
    """Growth-exponent differencing did not stabilize on the grid."""


class SizeLimit(IwasawaError):
    """A finite-quotient matrix would exceed the configured size bound."""


class SchemaError(IwasawaError):
    """A problem file failed JSON-schema validation."""
