"""Physical constants (SI units)."""

import math

MU_0 = 4.0e-7 * math.pi          # vacuum permeability, H/m
EPS_0 = 8.8541878128e-12         # vacuum permittivity, F/m
