"""Exception hierarchy shared by all modules."""


class ArtinLabError(Exception):
    """Base class; the CLI maps these to exit code 2 unless noted."""


class InputError(ArtinLabError, ValueError):
    """Malformed or inconsistent input data."""


class RefinementError(ArtinLabError):
    """Root isolation did not converge within the precision budget."""


class BadReductionError(InputError):
    """The residue characteristic divides a denominator."""


class InvalidPlaceError(InputError):
    """The supplied residue is not a simple root of the defining polynomial."""


class EnumerationOverflow(ArtinLabError):
    """A closure or enumeration exceeded its configured cap."""


class InvalidGeneratorError(InputError):
    """A group generator is singular."""


class NotIrreducibleError(InputError):
    pass


class InternalConsistencyError(ArtinLabError):
    """A check that must hold mathematically failed: an implementation bug.

    The CLI maps this to exit code 1.
    """


class SearchFailure(ArtinLabError):
    pass


class AbsentDataError(InputError):
    pass


class SingularParameterError(InputError):
    pass


class InvalidAutomorphismError(InputError):
    pass


class RecoveryError(ArtinLabError):
    pass


class UnmatchedPrimeError(RecoveryError):
    def __init__(self, p, ell=None):
        self.p = p
        self.ell = ell
        where = f" in the table at ell={ell}" if ell is not None else ""
        super().__init__(f"no member of Y matches the entry at p={p}{where}")


class InconsistentTablesError(RecoveryError):
    def __init__(self, p, detail=""):
        self.p = p
        super().__init__(f"tables disagree at p={p}" + (f": {detail}" if detail else ""))


class ExhaustedSearchError(RecoveryError):
    pass


class PreconditionError(InputError):
    pass


class InvalidConjugationDatum(InputError):
    pass
