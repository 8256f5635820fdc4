from ._core import (
    DomainError,
    Group,
    ParseError,
    Structure,
    check,
    decode,
    encode,
    evaluate,
    finite_groups,
    hred,
    isomorphic,
    permute,
    profile,
    reduce,
    selftest,
    structure_isomorphic,
    ulm_invariant,
    verify,
)

__all__ = [
    "DomainError",
    "Group",
    "ParseError",
    "Structure",
    "check",
    "decode",
    "encode",
    "evaluate",
    "finite_groups",
    "hred",
    "isomorphic",
    "permute",
    "profile",
    "reduce",
    "selftest",
    "structure_isomorphic",
    "ulm_invariant",
    "verify",
]
