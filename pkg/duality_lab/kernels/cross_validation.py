from fractions import Fraction
from typing import List

import numpy as np
import sympy

from duality_lab.common.scalars import ArithmeticMode
from duality_lab.kernels.charlier import CharlierKernel
from duality_lab.kernels.duality_kernel import DualityKernel, RowKernel
from duality_lab.kernels.hermite import HermiteKernel
from duality_lab.kernels.laguerre import LaguerreKernel
from duality_lab.kernels.meixner import KrawtchoukKernel, MeixnerKernel
from duality_lab.kernels.meixner_pollaczek import MeixnerPollaczekKernel
from duality_lab.verification_report import ResidualAccumulator, Stopwatch, VerificationReport

CROSS_TOLERANCE = 1e-12
CROSS_MAX_INDEX = 20
MP_POINTS = np.linspace(-5.0, 5.0, 21)
ROW_SCALE_NOTE = "relative residual: |recurrence - series| over max_x |series(n, x)| of the same row n"


def _exact_value(kernel: DualityKernel, n: int, x, symbol: sympy.Symbol):
    if isinstance(kernel, RowKernel):
        return complex(sympy.N(kernel.row(n, symbol).subs(symbol, sympy.Rational(x)), 30))
    return complex(Fraction(kernel.bare(n, x)))


def cross_validation_residual(kernel: DualityKernel, n_max: int = CROSS_MAX_INDEX) -> VerificationReport:
    """
    Float recurrence against the exact series for every n, x <= n_max
    Deviations are measured against the largest value of the row so that zeros of K(n, .) do not blow up
    """
    symbol = sympy.Symbol("x")
    n_top = min(n_max, kernel.j) if isinstance(kernel, KrawtchoukKernel) else n_max
    acc = ResidualAccumulator()
    with Stopwatch() as watch:
        for n in range(n_top + 1):
            if isinstance(kernel, MeixnerPollaczekKernel):
                pairs = [(kernel.precise_series_value(n, x), kernel.float_value(n, x)) for x in MP_POINTS]
            else:
                pairs = [(_exact_value(kernel, n, x, symbol), complex(kernel.float_value(n, x)))
                         for x in range(n_top + 1)]
            scale = max(max(abs(exact) for exact, _ in pairs), 1e-300)
            for exact, approx in pairs:
                acc.add_residual(abs(complex(approx) - complex(exact)), scale)
    return acc.report(f"cross-validation:{kernel.label()}:n<={n_top}", ArithmeticMode.Float, CROSS_TOLERANCE,
                      relative=True, notes=[ROW_SCALE_NOTE]).with_timing(watch.elapsed_ms)


def cross_validation_kernels() -> List[DualityKernel]:
    """One representative of every polynomial family"""
    return [
        CharlierKernel(Fraction(3, 4)),
        HermiteKernel(Fraction(3, 4)),
        MeixnerKernel(Fraction(3, 4), Fraction(1, 3)),
        KrawtchoukKernel(12, Fraction(1, 3)),
        LaguerreKernel(Fraction(3, 4)),
        MeixnerPollaczekKernel(Fraction(3, 4), float(np.pi / 3)),
    ]
