from ._core import (
    BudgetExceeded,
    CapExceeded,
    DimensionGate,
    InvariantViolation,
    NotUnimodular,
    ParseError,
    PreconditionError,
    Ring,
    RingMismatch,
    ShapeError,
    UmkError,
    Unsupported,
    audit,
    audit_kinds,
    complete,
    normalize_pair,
    normalize_star,
    right_inverse,
    row1,
    row_certificate,
    same_orbit,
    stabilize,
    star,
    verify_homotopy,
    verify_split,
    wms_inverse,
    wms_mul,
)

__all__ = [name for name in dir() if not name.startswith("_")]
