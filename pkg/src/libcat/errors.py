"""Exception types shared across the workbench.

Every domain failure raises a subclass of :class:`LibcatError`; callers
(CLI, HTTP API) map each type to exactly one exit code / status code.
"""


class LibcatError(Exception):
    """Base class for all domain errors."""


# --- taxonomy ---------------------------------------------------------------

class UnknownTopic(LibcatError):
    """Name is not one of the 24 canonical topic names."""


# --- parsing / import -------------------------------------------------------

class MalformedCoordinate(LibcatError):
    """Library coordinate line is not a well-formed ``group:artifact``."""


class DuplicateCoordinate(LibcatError):
    """Same coordinate appears twice in one import."""


class UnknownLibrary(LibcatError):
    """Referenced coordinate is not registered in the project."""


class InvalidUrl(LibcatError):
    """Source link is not a syntactically valid http(s) URL."""


class DuplicateCve(LibcatError):
    """A CVE id is listed under more than one library."""


# --- protocol engine --------------------------------------------------------

class EmptyEntry(LibcatError):
    """An assessor's category set is empty (unfinished assessment)."""


class InconsistentState(LibcatError):
    """Non-ambiguous assessment with an empty intersection; the engine
    refuses to auto-finalize without a coincident category."""


class ChoiceOutsideCandidates(LibcatError):
    """Arbitrator picked a category no assessor pre-selected."""


class RevisionWithoutMark(LibcatError):
    """Class revision applied to a library never marked for it."""


# --- workflow ---------------------------------------------------------------

class RoleViolation(LibcatError):
    """Actor's role does not permit the requested operation."""


class TooManyChoices(LibcatError):
    """Assessment exceeds the configured per-assessor category cap."""


class AlreadyFinalized(LibcatError):
    """Library is frozen; the submission can no longer be changed."""


class NotQueueOwner(LibcatError):
    """Arbitration submitted for an item the actor does not own."""


class InvalidTransition(LibcatError):
    """Requested operation would leave the allowed state graph."""


class StaleVersion(LibcatError):
    """Optimistic write carried an outdated version counter."""


# --- statistics -------------------------------------------------------------

class DegenerateAgreement(LibcatError):
    """Expected agreement equals 1; Fleiss' kappa is undefined."""


class EmptyInput(LibcatError):
    """Statistic requested over an empty value list."""


# --- NVD client -------------------------------------------------------------

class NvdError(LibcatError):
    """Base class for NVD client failures."""


class NotFound(NvdError):
    """CVE id unknown to the upstream service."""


class RateLimited(NvdError):
    """Upstream rejected the request; caller must back off."""


class UpstreamSchemaError(NvdError):
    """Upstream payload does not have the expected shape."""


# --- persistence ------------------------------------------------------------

class CorruptSnapshot(LibcatError):
    """Project snapshot failed to parse or validate."""


class VersionConflict(LibcatError):
    """Concurrent save with a stale snapshot version."""
