"""Frozen expected values.

Each value was derived by hand from the defining equations (expanding
products, solving small linear systems) before the code that reproduces it
existed; tests compare against these constants, never against the code.
"""
from fractions import Fraction as F

from dhbkit.scalars import Eis

# Euler top: dX1 = 2 X2X3, ... so a^1_23 = a^1_32 = 1
EULER_NONZERO = {(0, 1, 2): F(1), (0, 2, 1): F(1), (1, 0, 2): F(1), (1, 2, 0): F(1), (2, 0, 1): F(1), (2, 1, 0): F(1)}

# Halphen I after inverting the sums: dX1 = X1X2 + X1X3 - X2X3 (cyclic)
HALPHEN1_ROW0 = ((F(0), F(1, 2), F(1, 2)), (F(1, 2), F(0), F(-1, 2)), (F(1, 2), F(-1, 2), F(0)))

# Halphen II with a=b=c=-1/8 at (X,Y,Z)=(1,0,0):
# shared = c(1)^2 + b(1)^2 + a*0 = -1/4
HALPHEN2_THETA_AT_100 = (F(3, 4), F(-1, 4), F(-1, 4))

# Riccati with A = I: (X11^2 + X12^2, X12(X11+X22), X12^2 + X22^2)
RICCATI_UNIT = (F(1), F(0), F(1))

# Level 3 inverted: dW = (2/3)(WX+WY+WZ) - (XY+XZ+YZ)/3, cofactor W+X+Y+Z
LEVEL3_W_ROW = {(0, 1): F(1, 3), (0, 2): F(1, 3), (0, 3): F(1, 3), (1, 2): F(-1, 6), (1, 3): F(-1, 6), (2, 3): F(-1, 6)}
LEVEL3_COFACTOR = (Eis(1), Eis(1), Eis(1), Eis(1))

# Hypergeometric (1/2, 1/2, 1): p = (1-2z)/(z(1-z)), q = -1/(4 z(1-z)),
# Q = q - p'/2 - p^2/4 = 1/(4 z^2) + 1/(4 (z-1)^2) - 1/(4 z (z-1))
HG_THETA_ALPHA = (F(1, 4), F(1, 4))
HG_THETA_BETA = (F(-1, 4),)
HG_THETA_ABC = (F(-1, 8), F(-1, 8), F(-1, 8))

# (alpha,beta,gamma) = (0,0,0) -> a = 0, b = -1/4, c = 0
HG_ZERO_ABC = (F(0), F(-1, 4), F(0))

# Level-3 Picard-Fuchs: Q = (2t + t^4/4)/(t^3-1)^2, partial fractions over
# poles (1, w, w^2)
LEVEL3_ALPHA = (Eis(F(1, 4)), Eis(F(1, 4)), Eis(F(1, 4)))
LEVEL3_BETA = (Eis(F(-1, 6), F(1, 6)), Eis(F(-1, 3), F(-1, 6)))

# cross ratio (a-b)(c-d)/((c-b)(a-d)) at (0,1,2,3)
CROSS_0123 = F(-1, 3)

# anharmonic quadric for poles (0, 1, -1), infinity paired with X0:
# B(e1,e2) = -1, B(e2,e3) = 2, so gamma = 2 B(e_i, e_j) = (-2, 4, -2)
POLES_0_1_M1_GAMMA = (F(-2), F(4), F(-2))

# alpha_tilde = (4, 9, 25) <-> alpha = (1 - at)/4
AT_4_9_25_ALPHA = (F(-3, 4), F(-2), F(-6))
