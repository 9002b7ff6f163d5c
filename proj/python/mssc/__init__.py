"""Online min-sum set cover: the DLM list algorithm, exact offline oracles and
potential-function audits."""

from ._mssc import *  # noqa: F401,F403
from ._mssc import __all__  # noqa: F401
