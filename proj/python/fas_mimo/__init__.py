# SPDX-License-Identifier: Apache-2.0
"""MIMO fluid-antenna-system link simulation.

Thin Python layer over the C++ core: correlated channel synthesis, strong-RRQR
port selection, SVD beamforming with waterfilling, outage Monte Carlo,
diversity-multiplexing tradeoff curves, and mutual-coupling models.
"""

from fas_mimo._core import *  # noqa: F401,F403
from fas_mimo._core import __version__  # noqa: F401
