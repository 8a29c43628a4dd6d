from ._pellbaker import (
    ParseError,
    cf_quotients,
    find_witnesses,
    fundamental_solution,
    is_squarefree,
    reproduce,
    terms,
    x_terms,
)

__all__ = [
    "ParseError",
    "cf_quotients",
    "find_witnesses",
    "fundamental_solution",
    "is_squarefree",
    "reproduce",
    "terms",
    "x_terms",
]
