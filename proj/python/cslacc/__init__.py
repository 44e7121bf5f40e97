# SPDX-License-Identifier: Apache-2.0
"""Compressive subspace learning with antenna cross-correlations."""

from ._cslacc import *  # noqa: F401,F403
from ._cslacc import Error, __doc__  # noqa: F401

__version__ = "0.1.0"
