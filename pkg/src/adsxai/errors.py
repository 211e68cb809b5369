"""Exception types raised across the package."""


class AdsxaiError(Exception):
    """Base class for all package errors."""


# --- structure ingestion ---

class MalformedFile(AdsxaiError):
    """Input file violates its format; message carries line/entry index."""


class UnknownElement(AdsxaiError):
    """Chemical symbol not in the periodic table."""


class MissingTagColumn(AdsxaiError):
    """Structure file lacks the mandatory per-atom tag column."""


class DuplicateSystemId(AdsxaiError):
    """Two records in one dataset share a system_id."""


class MissingEnergy(AdsxaiError):
    """Potential or reference energy is the NaN sentinel."""


# --- featurization ---

class NoElectronegativity(AdsxaiError):
    """Element has no tabulated Pauling electronegativity."""


class DegenerateCell(AdsxaiError):
    """Cell determinant is ~0 and no density override was given."""


class MillerOutOfRange(AdsxaiError):
    """Miller index component outside [0, 9]."""


class EmptyDataset(AdsxaiError):
    """Every record was dropped during featurization."""


# --- models ---

class TooFewRows(AdsxaiError):
    """Dataset too small to split."""


class SingularKernel(AdsxaiError):
    """Kernel matrix not factorizable even after jitter escalation."""


class ArityMismatch(AdsxaiError):
    """Prediction input column count does not match the fitted model."""


class LengthMismatch(AdsxaiError):
    """Vectors of unequal length passed to a pairwise metric."""


# --- shapley ---

class OutOfRange(AdsxaiError):
    """Coalition size outside [0, F-1]."""


class TooManyFeatures(AdsxaiError):
    """Feature count exceeds the exact-enumeration cap."""


class RowMismatch(AdsxaiError):
    """Attribution and dataset row counts differ."""


class UnknownFeature(AdsxaiError):
    """Feature name not present in the dataset."""


# --- symbolic regression ---

class ExpressionSyntaxError(AdsxaiError):
    """Expression text failed to parse; message carries the position."""


class UnknownVariable(AdsxaiError):
    """Expression references a name outside the dataset's features."""
