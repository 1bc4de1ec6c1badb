"""Constants for the restricted sumset toolkit."""

from enum import IntEnum, StrEnum

TOOL_NAME = "rsumset"

# Moduli must keep products inside signed 64-bit intermediates
MAX_MODULUS = 2**31


class TheoremId(StrEnum):
    """Stable theorem identifiers used on the command line and in reports."""

    CAUCHY_DAVENPORT = "cd"
    DIAS_DA_SILVA_HAMIDOUNE = "dh"
    ALON_NATHANSON_RUZSA = "anr"
    CONJ_1_1 = "conj1.1"
    THM_1_1 = "thm1.1"
    THM_1_2 = "thm1.2"
    EQ_1_8 = "eq1.8"
    COR_1_1 = "cor1.1"
    THM_1_3 = "thm1.3"
    COR_1_2_F = "cor1.2f"
    COR_1_2_DIFF = "cor1.2d"
    COR_1_3 = "cor1.3"
    THM_5_1_I = "thm5.1i"
    THM_5_1_II = "thm5.1ii"
    THM_5_2 = "thm5.2"
    COR_5_1 = "cor5.1"
    COR_5_2 = "cor5.2"
    CONJ_5_2 = "conj5.2"


# Statements that are conjectures: violations are reported, never asserted away
CONJECTURES = frozenset({TheoremId.CONJ_1_1, TheoremId.CONJ_5_2})


class Status(StrEnum):
    """Outcome of checking one instance against a bound."""

    HOLDS = "holds"
    VIOLATED = "violated"
    VACUOUS = "vacuous"


class Restriction(StrEnum):
    """Side condition imposed on the tuples (x_1, ..., x_n)."""

    NONE = "none"
    DISTINCT = "distinct"
    POLYNOMIAL = "poly"
    COLLISION = "collision"
    DIFFERENCE = "difference"


class RingKind(StrEnum):
    """Coefficient ring of a polynomial."""

    MOD_P = "mod_p"
    INTEGER = "integer"


class CoeffMode(StrEnum):
    """How coefficient vectors are enumerated during a scan."""

    ALL = "all"
    CANONICAL = "canonical"


class ReportFormat(StrEnum):
    """Report stream formats."""

    CSV = "csv"
    JSONL = "jsonl"


class SetSource(StrEnum):
    """Where a scan takes its sets from."""

    INTERVALS = "intervals"
    ALL_SUBSETS = "all"
    RANDOM = "random"


class GMode(StrEnum):
    """Lower-order part g of a value polynomial in value-set scans."""

    ZERO = "zero"
    RANDOM = "random"


class CertificateKind(StrEnum):
    """Coefficient identities that can be checked on an instance."""

    THM_1_2 = "thm_1_2"
    THM_1_3 = "thm_1_3"


class ExitCode(IntEnum):
    """Process exit codes of the command line tool."""

    OK = 0
    ERROR = 1
    VIOLATIONS = 2


# Report columns, in output order
CSV_COLUMNS = (
    "theorem",
    "p",
    "n",
    "sizes",
    "coeffs",
    "restriction",
    "card",
    "bound",
    "slack",
    "status",
)


class WitnessRoute(StrEnum):
    """Hypothesis under which a witness vector is guaranteed."""

    DELTA_ZERO = "delta_zero"
    CANCELLING_PAIR = "cancelling_pair"
    EXCEPTIONAL = "exceptional"
