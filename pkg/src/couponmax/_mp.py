# Private high-precision context for closed forms with heavy cancellation.
# A dedicated MPContext is never re-configured after import, so concurrent
# readers do not race on a global precision setting.
from fractions import Fraction

from mpmath.ctx_mp import MPContext

MP = MPContext()
MP.dps = 80


def mpq(x: Fraction):
    return MP.mpf(x.numerator) / x.denominator
