from ._core import *  # noqa: F401,F403
from ._core import ContractError, DomainError, NumericError  # noqa: F401

__version__ = "1.0.0"
